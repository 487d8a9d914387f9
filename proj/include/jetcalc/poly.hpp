#ifndef JETCALC_POLY_HPP
#define JETCALC_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetcalc/multiindex.hpp"
#include "jetcalc/rational.hpp"

namespace jetcalc {

/// Ordered variable list shared by the polynomials of one computation.
class VarSet {
 public:
  explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {}
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  /// Index of a named variable, or nullopt.
  std::optional<std::size_t> find(const std::string& v) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == v) return i;
    return std::nullopt;
  }
  bool operator==(const VarSet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

inline VarSetPtr make_vars(std::vector<std::string> names) {
  return std::make_shared<const VarSet>(std::move(names));
}
/// Convenience: x1..xn.
VarSetPtr make_x_vars(std::size_t n, const std::string& stem = "x");

/// Sparse multivariate polynomial over Q with graded-lex canonical term order.
class Poly {
 public:
  Poly() = default;  // zero polynomial with no context (usable as additive identity)
  explicit Poly(VarSetPtr ctx) : ctx_(std::move(ctx)) {}
  Poly(VarSetPtr ctx, const Q& c);

  static Poly var(const VarSetPtr& ctx, std::size_t i, int power = 1);
  static Poly var(const VarSetPtr& ctx, const std::string& name, int power = 1);
  static Poly mono(const VarSetPtr& ctx, const MultiIndex& mu, const Q& c);
  static Poly constant(const VarSetPtr& ctx, const Q& c) { return Poly(ctx, c); }

  const VarSetPtr& ctx() const { return ctx_; }
  std::size_t nvars() const { return ctx_ ? ctx_->size() : 0; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (coefficient of x^0).
  Q constant_term() const;
  const std::map<MultiIndex, Q, GrlexLess>& terms() const { return terms_; }
  int degree() const;            // total degree; -1 for zero
  int degree_in(std::size_t i) const;
  Q coeff(const MultiIndex& mu) const;
  /// Leading (graded-lex largest) term; throws on zero.
  std::pair<MultiIndex, Q> leading() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator*(const Q& c) const;
  Poly operator/(const Q& c) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Exact partial derivative d/dx_i.
  Poly diff(std::size_t i) const;
  /// Iterated derivative d_mu.
  Poly diff(const MultiIndex& mu) const;
  Poly pow(unsigned e) const;

  /// Evaluate at a full rational point.
  Q eval(const std::vector<Q>& point) const;
  /// Substitute each variable i by images[i] (polynomials over a common context).
  Poly subst(const std::vector<Poly>& images) const;
  /// Drop all terms of total degree > d.
  Poly truncate_total(int d) const;
  /// Drop all terms with degree in variable i above d.
  Poly truncate_in(std::size_t i, int d) const;

  /// GCD of all coefficients times the sign of the leading one (0 for the zero poly).
  Q content_signed() const;

  std::string str() const;

  /// Inverse of str() over the given context. Accepts integers, fractions a/b,
  /// variable powers v^k, '*' products, and '+'/'-' chains; no parentheses.
  static Poly parse(const VarSetPtr& ctx, const std::string& s);

  friend void check_same_ctx(const Poly& a, const Poly& b);

 private:
  void strip_zeros();
  VarSetPtr ctx_;
  std::map<MultiIndex, Q, GrlexLess> terms_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }
inline Poly operator*(const Q& c, const Poly& p) { return p * c; }

/// Exact quotient a/b when b divides a; throws std::domain_error otherwise.
Poly exact_div(const Poly& a, const Poly& b);
/// Quotient when divisible, nullopt otherwise.
std::optional<Poly> try_exact_div(const Poly& a, const Poly& b);

}  // namespace jetcalc

#endif
