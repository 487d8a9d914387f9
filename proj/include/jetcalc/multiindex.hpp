#ifndef JETCALC_MULTIINDEX_HPP
#define JETCALC_MULTIINDEX_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetcalc/rational.hpp"

namespace jetcalc {

/// Exponent vector mu = (mu_1,...,mu_n), all entries >= 0.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : e_(n, 0) {}
  MultiIndex(std::initializer_list<int> l) : e_(l) {}
  explicit MultiIndex(std::vector<int> v) : e_(std::move(v)) {}

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }
  const std::vector<int>& exponents() const { return e_; }

  int total() const {
    int s = 0;
    for (int x : e_) s += x;
    return s;
  }

  /// mu + 1_i
  MultiIndex plus(std::size_t i) const {
    MultiIndex r = *this;
    r.e_.at(i) += 1;
    return r;
  }
  /// mu - 1_i; requires mu_i > 0
  MultiIndex minus(std::size_t i) const {
    MultiIndex r = *this;
    if (r.e_.at(i) <= 0) throw std::invalid_argument("MultiIndex::minus: zero slot");
    r.e_[i] -= 1;
    return r;
  }

  MultiIndex operator+(const MultiIndex& o) const {
    MultiIndex r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
  }
  /// Componentwise difference; requires *this >= o.
  MultiIndex operator-(const MultiIndex& o) const {
    MultiIndex r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      r.e_[i] -= o.e_[i];
      if (r.e_[i] < 0) throw std::invalid_argument("MultiIndex difference negative");
    }
    return r;
  }
  bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
  bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }

  /// Componentwise mu <= nu.
  bool divides(const MultiIndex& nu) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > nu.e_[i]) return false;
    return true;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i)
      s += (i ? "," : "") + std::to_string(e_[i]);
    return s + ")";
  }

 private:
  std::vector<int> e_;
};

/// Graded lexicographic order: compare |mu| first, then lexicographically.
inline int grlex_cmp(const MultiIndex& a, const MultiIndex& b) {
  int da = a.total(), db = b.total();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return grlex_cmp(a, b) < 0;
  }
};

/// mu! = prod_i mu_i!
inline Z mi_factorial(const MultiIndex& mu) {
  Z r = 1;
  for (std::size_t i = 0; i < mu.size(); ++i) r *= factorial(static_cast<unsigned>(mu[i]));
  return r;
}

/// binom(nu, mu) = prod_i binom(nu_i, mu_i)
inline Z mi_binomial(const MultiIndex& nu, const MultiIndex& mu) {
  Z r = 1;
  for (std::size_t i = 0; i < nu.size(); ++i)
    r *= binomial(static_cast<unsigned>(nu[i]), static_cast<unsigned>(mu[i]));
  return r;
}

/// All multi-indices of length n with |mu| = q, in graded-lex order.
std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, int q);
/// All multi-indices of length n with |mu| <= q, in graded-lex order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int q);

}  // namespace jetcalc

#endif
