#ifndef RGK_STATE_HPP
#define RGK_STATE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rgk/trace.hpp"

namespace rgk {

inline constexpr std::size_t kDefaultStateCeiling = 4096;

/// All valuations of an ordered variable list over the values 0..N-1.
/// State ids are mixed-radix numbers with the first variable least
/// significant.
class StateSpace {
 public:
  StateSpace(std::vector<std::string> variables, std::uint32_t domain,
             std::size_t ceiling = kDefaultStateCeiling);

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::uint32_t domain() const { return domain_; }
  [[nodiscard]] const std::vector<std::string>& variables() const { return variables_; }
  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const;
  /// Throws std::invalid_argument for an unknown variable.
  std::size_t require_index(const std::string& name) const;

  [[nodiscard]] std::uint32_t value(StateId s, std::size_t var) const;
  [[nodiscard]] StateId with_value(StateId s, std::size_t var, std::uint32_t v) const;
  [[nodiscard]] StateId encode(const std::vector<std::uint32_t>& values) const;
  /// "x=2,y=0"
  [[nodiscard]] std::string describe(StateId s) const;

  [[nodiscard]] Bound bound(std::size_t max_len) const { return {max_len, size_}; }

  bool operator==(const StateSpace& other) const {
    return variables_ == other.variables_ && domain_ == other.domain_;
  }

 private:
  std::vector<std::string> variables_;
  std::uint32_t domain_;
  std::size_t size_ = 1;
  std::vector<std::size_t> stride_;
};

/// A set of state pairs, stored as a dense bit matrix.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t states);

  static Relation identity(std::size_t states);
  static Relation full(std::size_t states);
  static Relation from_pairs(std::size_t states,
                             const std::vector<std::pair<StateId, StateId>>& pairs);
  static Relation from_predicate(std::size_t states,
                                 const std::function<bool(StateId, StateId)>& keep);

  [[nodiscard]] std::size_t states() const { return states_; }
  [[nodiscard]] bool contains(StateId a, StateId b) const {
    return (bits_[a * row_words_ + b / 64] >> (b % 64)) & 1U;
  }
  void insert(StateId a, StateId b) { bits_[a * row_words_ + b / 64] |= std::uint64_t{1} << (b % 64); }

  [[nodiscard]] std::size_t count() const;
  [[nodiscard]] bool empty() const { return count() == 0; }
  [[nodiscard]] std::vector<StateId> successors(StateId a) const;
  [[nodiscard]] std::vector<std::pair<StateId, StateId>> pairs() const;

  /// Relational composition: pairs (a,c) with (a,b) in this and (b,c) in other.
  [[nodiscard]] Relation compose(const Relation& other) const;
  /// Pairs (a,b) in this with a satisfying `domain_filter`.
  [[nodiscard]] Relation restrict_domain(const std::vector<bool>& domain_filter) const;

  [[nodiscard]] bool subset_of(const Relation& other) const;
  /// First pair in this and not in other, if any.
  [[nodiscard]] std::optional<std::pair<StateId, StateId>> first_outside(const Relation& other) const;

  Relation& operator&=(const Relation& other);
  Relation& operator|=(const Relation& other);
  friend Relation operator&(Relation a, const Relation& b) { return a &= b; }
  friend Relation operator|(Relation a, const Relation& b) { return a |= b; }
  bool operator==(const Relation& other) const = default;

 private:
  void require_compatible(const Relation& other) const;

  std::size_t states_ = 0;
  std::size_t row_words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// A subset of states, indexed by StateId.
using StateSet = std::vector<bool>;

}  // namespace rgk

#endif  // RGK_STATE_HPP
