#include "jetcalc/ratfunc.hpp"

namespace jetcalc {

// Internal convention: den_.is_zero() means "denominator 1" (covers the zero
// fraction, which carries no context at all).

void RatFunc::normalize() {
  if (!den_.is_zero() && den_.is_constant() && den_.constant_term() == 1) den_ = Poly();
  if (num_.is_zero()) {
    num_ = Poly();
    den_ = Poly();
    return;
  }
  if (den_.is_zero()) return;
  check_same_ctx(num_, den_);
  if (auto q = try_exact_div(num_, den_)) {
    num_ = *q;
    den_ = Poly();
    // fall through to content normalization below via recursion guard
  }
  if (den_.is_zero()) {
    // polynomial: clear rational denominators of coefficients? keep as-is.
    return;
  }
  Q c = den_.content_signed();
  num_ = num_ / c;
  den_ = den_ / c;
  Q cn = num_.content_signed();
  // keep numerator integral-content-free only when it stays exact: divide both? no —
  // dividing numerator alone changes the value; nothing more to do.
  (void)cn;
}

Poly RatFunc::as_poly() const {
  if (!den_.is_zero()) throw std::domain_error("RatFunc::as_poly: non-trivial denominator");
  return num_;
}

static Poly den_or_one(const Poly& d, const VarSetPtr& ctx) {
  return d.is_zero() ? Poly::constant(ctx, 1) : d;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  VarSetPtr ctx = num_.ctx() ? num_.ctx() : o.num_.ctx();
  Poly a = num_, b = den_or_one(den_, ctx), c = o.num_, d = den_or_one(o.den_, ctx);
  if (den_.is_zero() && o.den_.is_zero()) return RatFunc(a + c);
  // Common cases where one denominator divides the other: keep the larger one
  // instead of multiplying them, so repeated sums over a shared denominator
  // (or its powers) do not escalate the degree.
  if (b == d) return RatFunc(a + c, b);
  if (auto m = try_exact_div(d, b)) return RatFunc(a * *m + c, d);
  if (auto m = try_exact_div(b, d)) return RatFunc(a + c * *m, b);
  return RatFunc(a * d + c * b, b * d);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc();
  if (den_.is_zero() && o.den_.is_zero()) return RatFunc(num_ * o.num_);
  VarSetPtr ctx = num_.ctx() ? num_.ctx() : o.num_.ctx();
  // Cross-cancel whole denominators when they divide the opposite numerator.
  Poly a = num_, b = den_or_one(den_, ctx), c = o.num_, d = den_or_one(o.den_, ctx);
  if (auto m = try_exact_div(a, d)) {
    a = *m;
    d = Poly::constant(ctx, 1);
  }
  if (auto m = try_exact_div(c, b)) {
    c = *m;
    b = Poly::constant(ctx, 1);
  }
  return RatFunc(a * c, b * d);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc(den_or_one(den_, num_.ctx()), num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

bool RatFunc::operator==(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
  VarSetPtr ctx = num_.ctx();
  return num_ * den_or_one(o.den_, ctx) == o.num_ * den_or_one(den_, ctx);
}

RatFunc RatFunc::diff(std::size_t i) const {
  if (is_zero()) return RatFunc();
  if (den_.is_zero()) return RatFunc(num_.diff(i));
  return RatFunc(num_.diff(i) * den_ - num_ * den_.diff(i), den_ * den_);
}

Q RatFunc::eval(const std::vector<Q>& point) const {
  if (is_zero()) return 0;
  Q n = num_.eval(point);
  if (den_.is_zero()) return n;
  Q d = den_.eval(point);
  if (jetcalc::is_zero(d)) throw std::domain_error("RatFunc::eval: denominator vanishes");
  return n / d;
}

std::string RatFunc::str() const {
  if (is_zero()) return "0";
  if (den_.is_zero()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace jetcalc
