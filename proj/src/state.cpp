#include "rgk/state.hpp"

#include <bit>
#include <stdexcept>

namespace rgk {

StateSpace::StateSpace(std::vector<std::string> variables, std::uint32_t domain, std::size_t ceiling)
    : variables_(std::move(variables)), domain_(domain) {
  if (domain_ < 2) throw std::invalid_argument("domain size must be at least 2");
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].empty()) throw std::invalid_argument("empty variable name");
    for (std::size_t j = 0; j < i; ++j) {
      if (variables_[j] == variables_[i]) {
        throw std::invalid_argument("duplicate variable '" + variables_[i] + "'");
      }
    }
    stride_.push_back(size_);
    if (size_ > ceiling / domain_) {
      throw std::invalid_argument("state space " + std::to_string(domain_) + "^" +
                                  std::to_string(variables_.size()) + " exceeds the ceiling of " +
                                  std::to_string(ceiling) + " states");
    }
    size_ *= domain_;
  }
  if (size_ > ceiling) throw std::invalid_argument("state space exceeds ceiling");
}

std::optional<std::size_t> StateSpace::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t StateSpace::require_index(const std::string& name) const {
  if (auto i = index_of(name)) return *i;
  throw std::invalid_argument("unknown variable '" + name + "'");
}

std::uint32_t StateSpace::value(StateId s, std::size_t var) const {
  return static_cast<std::uint32_t>((s / stride_[var]) % domain_);
}

StateId StateSpace::with_value(StateId s, std::size_t var, std::uint32_t v) const {
  const std::size_t old = value(s, var);
  return static_cast<StateId>(s - old * stride_[var] + (v % domain_) * stride_[var]);
}

StateId StateSpace::encode(const std::vector<std::uint32_t>& values) const {
  if (values.size() != variables_.size()) throw std::invalid_argument("valuation arity mismatch");
  std::size_t s = 0;
  for (std::size_t i = 0; i < values.size(); ++i) s += (values[i] % domain_) * stride_[i];
  return static_cast<StateId>(s);
}

std::string StateSpace::describe(StateId s) const {
  std::string out;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (i) out += ',';
    out += variables_[i] + "=" + std::to_string(value(s, i));
  }
  return out.empty() ? "<unit>" : out;
}

Relation::Relation(std::size_t states)
    : states_(states), row_words_((states + 63) / 64), bits_(states * row_words_, 0) {}

Relation Relation::identity(std::size_t states) {
  Relation r(states);
  for (StateId s = 0; s < states; ++s) r.insert(s, s);
  return r;
}

Relation Relation::full(std::size_t states) {
  Relation r(states);
  for (StateId a = 0; a < states; ++a) {
    for (StateId b = 0; b < states; ++b) r.insert(a, b);
  }
  return r;
}

Relation Relation::from_pairs(std::size_t states,
                              const std::vector<std::pair<StateId, StateId>>& pairs) {
  Relation r(states);
  for (auto [a, b] : pairs) {
    if (a >= states || b >= states) throw std::invalid_argument("relation pair outside state space");
    r.insert(a, b);
  }
  return r;
}

Relation Relation::from_predicate(std::size_t states,
                                  const std::function<bool(StateId, StateId)>& keep) {
  Relation r(states);
  for (StateId a = 0; a < states; ++a) {
    for (StateId b = 0; b < states; ++b) {
      if (keep(a, b)) r.insert(a, b);
    }
  }
  return r;
}

std::size_t Relation::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<StateId> Relation::successors(StateId a) const {
  std::vector<StateId> out;
  for (std::size_t i = 0; i < row_words_; ++i) {
    std::uint64_t w = bits_[a * row_words_ + i];
    while (w) {
      const int bit = std::countr_zero(w);
      out.push_back(static_cast<StateId>(i * 64 + static_cast<std::size_t>(bit)));
      w &= w - 1;
    }
  }
  return out;
}

std::vector<std::pair<StateId, StateId>> Relation::pairs() const {
  std::vector<std::pair<StateId, StateId>> out;
  for (StateId a = 0; a < states_; ++a) {
    for (StateId b : successors(a)) out.emplace_back(a, b);
  }
  return out;
}

Relation Relation::compose(const Relation& other) const {
  require_compatible(other);
  Relation out(states_);
  for (StateId a = 0; a < states_; ++a) {
    for (StateId b : successors(a)) {
      for (std::size_t i = 0; i < row_words_; ++i) {
        out.bits_[a * row_words_ + i] |= other.bits_[b * row_words_ + i];
      }
    }
  }
  return out;
}

Relation Relation::restrict_domain(const std::vector<bool>& domain_filter) const {
  Relation out(states_);
  for (StateId a = 0; a < states_; ++a) {
    if (!domain_filter.at(a)) continue;
    for (std::size_t i = 0; i < row_words_; ++i) {
      out.bits_[a * row_words_ + i] = bits_[a * row_words_ + i];
    }
  }
  return out;
}

bool Relation::subset_of(const Relation& other) const {
  require_compatible(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

std::optional<std::pair<StateId, StateId>> Relation::first_outside(const Relation& other) const {
  require_compatible(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    const std::uint64_t extra = bits_[i] & ~other.bits_[i];
    if (extra) {
      const std::size_t a = i / row_words_;
      const std::size_t b = (i % row_words_) * 64 + static_cast<std::size_t>(std::countr_zero(extra));
      return std::make_pair(static_cast<StateId>(a), static_cast<StateId>(b));
    }
  }
  return std::nullopt;
}

Relation& Relation::operator&=(const Relation& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
  return *this;
}

Relation& Relation::operator|=(const Relation& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

void Relation::require_compatible(const Relation& other) const {
  if (states_ != other.states_) throw std::invalid_argument("relations over different state spaces");
}

}  // namespace rgk
