#ifndef JETCALC_RATFUNC_HPP
#define JETCALC_RATFUNC_HPP

#include "jetcalc/poly.hpp"

namespace jetcalc {

/// Fraction of polynomials. Normalized by rational content and sign of the
/// denominator's leading coefficient; polynomial GCDs are not computed, so
/// equality tests cross-multiply.
class RatFunc {
 public:
  RatFunc() = default;  // zero
  RatFunc(const Poly& num) : num_(num) { normalize(); }           // NOLINT(implicit)
  RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) { normalize(); }
  RatFunc(const VarSetPtr& ctx, const Q& c) : num_(Poly::constant(ctx, c)) { normalize(); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Numerator as a polynomial when the denominator is the constant 1.
  Poly as_poly() const;

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  bool operator==(const RatFunc& o) const;
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc inverse() const;
  /// Quotient-rule derivative.
  RatFunc diff(std::size_t i) const;
  Q eval(const std::vector<Q>& point) const;  // throws on vanishing denominator

  std::string str() const;

 private:
  void normalize();
  Poly num_;  // context-free zero when the fraction is 0
  Poly den_;  // empty (context-free) denominator means 1
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

}  // namespace jetcalc

#endif
