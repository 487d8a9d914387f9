#include <algorithm>
#include <cctype>
#include <sstream>

#include "jetcalc/poly.hpp"

namespace jetcalc {

Q parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  Q r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad input '" + s + "'");
  r.canonicalize();
  return r;
}

std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, int q) {
  std::vector<MultiIndex> out;
  if (q < 0) return out;
  MultiIndex mu(n);
  // recursive enumeration, then sort graded-lex
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rest) {
    if (i + 1 == n) {
      mu[i] = rest;
      out.push_back(mu);
      return;
    }
    for (int v = rest; v >= 0; --v) {
      mu[i] = v;
      rec(i + 1, rest - v);
    }
  };
  if (n == 0) {
    if (q == 0) out.push_back(mu);
    return out;
  }
  rec(0, q);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int q) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= q; ++d) {
    auto v = multi_indices_of_degree(n, d);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

VarSetPtr make_x_vars(std::size_t n, const std::string& stem) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return make_vars(std::move(names));
}

Poly::Poly(VarSetPtr ctx, const Q& c) : ctx_(std::move(ctx)) {
  if (!jetcalc::is_zero(c)) terms_.emplace(MultiIndex(ctx_->size()), c);
}

Poly Poly::var(const VarSetPtr& ctx, std::size_t i, int power) {
  if (i >= ctx->size()) throw std::out_of_range("Poly::var index");
  MultiIndex mu(ctx->size());
  mu[i] = power;
  return mono(ctx, mu, 1);
}

Poly Poly::var(const VarSetPtr& ctx, const std::string& name, int power) {
  auto i = ctx->find(name);
  if (!i) throw std::out_of_range("Poly::var: unknown variable '" + name + "'");
  return var(ctx, *i, power);
}

Poly Poly::mono(const VarSetPtr& ctx, const MultiIndex& mu, const Q& c) {
  Poly p(ctx);
  if (mu.size() != ctx->size()) throw std::invalid_argument("Poly::mono: arity mismatch");
  if (!jetcalc::is_zero(c)) p.terms_.emplace(mu, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
}

Q Poly::constant_term() const { return coeff(MultiIndex(nvars())); }

int Poly::degree() const {
  int d = -1;
  for (const auto& [mu, c] : terms_) d = std::max(d, mu.total());
  return d;
}

int Poly::degree_in(std::size_t i) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [mu, c] : terms_) d = std::max(d, mu[i]);
  return d;
}

Q Poly::coeff(const MultiIndex& mu) const {
  auto it = terms_.find(mu);
  return it == terms_.end() ? Q(0) : it->second;
}

std::pair<MultiIndex, Q> Poly::leading() const {
  if (terms_.empty()) throw std::domain_error("Poly::leading on zero polynomial");
  auto it = std::prev(terms_.end());
  return {it->first, it->second};
}

void check_same_ctx(const Poly& a, const Poly& b) {
  if (!a.ctx_ || !b.ctx_) return;  // context-free zero is compatible with anything
  if (a.ctx_ == b.ctx_) return;
  if (!(*a.ctx_ == *b.ctx_)) throw std::invalid_argument("Poly: mixed variable contexts");
}

void Poly::strip_zeros() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = jetcalc::is_zero(it->second) ? terms_.erase(it) : std::next(it);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [mu, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  check_same_ctx(*this, o);
  Poly r = *this;
  if (!r.ctx_) r.ctx_ = o.ctx_;
  for (const auto& [mu, c] : o.terms_) {
    auto [it, fresh] = r.terms_.emplace(mu, c);
    if (!fresh) it->second += c;
  }
  r.strip_zeros();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  check_same_ctx(*this, o);
  Poly r(ctx_ ? ctx_ : o.ctx_);
  for (const auto& [mu, c] : terms_)
    for (const auto& [nu, d] : o.terms_) {
      MultiIndex s = mu + nu;
      auto [it, fresh] = r.terms_.emplace(s, c * d);
      if (!fresh) it->second += c * d;
    }
  r.strip_zeros();
  return r;
}

Poly Poly::operator*(const Q& c) const {
  Poly r = *this;
  if (jetcalc::is_zero(c)) {
    r.terms_.clear();
    return r;
  }
  for (auto& [mu, v] : r.terms_) v *= c;
  return r;
}

Poly Poly::operator/(const Q& c) const {
  if (jetcalc::is_zero(c)) throw std::domain_error("Poly: division by zero scalar");
  return *this * (Q(1) / c);
}

bool Poly::operator==(const Poly& o) const {
  check_same_ctx(*this, o);
  return terms_ == o.terms_;
}

Poly Poly::diff(std::size_t i) const {
  if (i >= nvars()) {
    if (is_zero()) return *this;
    throw std::out_of_range("Poly::diff index");
  }
  Poly r(ctx_);
  for (const auto& [mu, c] : terms_) {
    if (mu[i] == 0) continue;
    r.terms_.emplace(mu.minus(i), c * mu[i]);
  }
  return r;
}

Poly Poly::diff(const MultiIndex& mu) const {
  Poly r = *this;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (int k = 0; k < mu[i]; ++k) r = r.diff(i);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r = constant(ctx_, 1);
  for (unsigned i = 0; i < e; ++i) r *= *this;
  return r;
}

Q Poly::eval(const std::vector<Q>& point) const {
  if (point.size() != nvars() && !is_zero())
    throw std::invalid_argument("Poly::eval: wrong point arity");
  Q s = 0;
  for (const auto& [mu, c] : terms_) {
    Q t = c;
    for (std::size_t i = 0; i < mu.size(); ++i) t *= q_pow(point[i], static_cast<unsigned>(mu[i]));
    s += t;
  }
  return s;
}

Poly Poly::subst(const std::vector<Poly>& images) const {
  if (is_zero()) return Poly();
  if (images.size() != nvars()) throw std::invalid_argument("Poly::subst: wrong image count");
  VarSetPtr tc;
  for (const auto& im : images)
    if (im.ctx()) tc = im.ctx();
  Poly s(tc);
  for (const auto& [mu, c] : terms_) {
    Poly t = Poly::constant(tc, c);
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (mu[i] > 0) t *= images[i].pow(static_cast<unsigned>(mu[i]));
    s += t;
  }
  return s;
}

Poly Poly::truncate_total(int d) const {
  Poly r(ctx_);
  for (const auto& [mu, c] : terms_)
    if (mu.total() <= d) r.terms_.emplace(mu, c);
  return r;
}

Poly Poly::truncate_in(std::size_t i, int d) const {
  Poly r(ctx_);
  for (const auto& [mu, c] : terms_)
    if (mu[i] <= d) r.terms_.emplace(mu, c);
  return r;
}

Q Poly::content_signed() const {
  if (terms_.empty()) return 0;
  Z num_g = 0, den_l = 1;
  for (const auto& [mu, c] : terms_) {
    mpz_gcd(num_g.get_mpz_t(), num_g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_l.get_mpz_t(), den_l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Q g(num_g, den_l);
  g.canonicalize();
  if (sgn(leading().second) < 0) g = -g;
  return g;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print leading (graded-lex largest) terms first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [mu, c] = *it;
    Q a = c;
    if (first) {
      if (sgn(a) < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      a = abs(a);
    }
    first = false;
    bool has_vars = mu.total() > 0;
    if (!has_vars || a != 1) os << a.get_str();
    bool need_star = !has_vars ? false : (a != 1);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (mu[i] == 0) continue;
      if (need_star) os << "*";
      need_star = true;
      os << ctx_->name(i);
      if (mu[i] > 1) os << "^" << mu[i];
    }
  }
  return os.str();
}

namespace {
// token helpers for Poly::parse
struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return s[i];
  }
};

std::string read_number(Cursor& c) {
  c.skip_ws();
  std::size_t b = c.i;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  if (c.i < c.s.size() && c.s[c.i] == '/') {
    ++c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  }
  return c.s.substr(b, c.i - b);
}

std::string read_ident(Cursor& c) {
  c.skip_ws();
  std::size_t b = c.i;
  while (c.i < c.s.size() &&
         (std::isalnum(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '_')) ++c.i;
  return c.s.substr(b, c.i - b);
}
}  // namespace

Poly Poly::parse(const VarSetPtr& ctx, const std::string& s) {
  Cursor c{s};
  Poly out(ctx);
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    if (c.peek() == '+' || c.peek() == '-') {
      if (c.peek() == '-') sign = -1;
      ++c.i;
    } else if (!first) {
      throw std::invalid_argument("Poly::parse: expected '+' or '-' in '" + s + "'");
    }
    first = false;
    // term: optional number, then *-separated variable powers
    Q coef = 1;
    MultiIndex mu(ctx->size());
    bool expect_factor = true;
    bool any = false;
    while (expect_factor) {
      if (c.done()) break;
      char p = c.peek();
      if (std::isdigit(static_cast<unsigned char>(p))) {
        coef *= parse_rational(read_number(c));
        any = true;
      } else if (std::isalpha(static_cast<unsigned char>(p)) || p == '_') {
        std::string name = read_ident(c);
        auto vi = ctx->find(name);
        if (!vi) throw std::invalid_argument("Poly::parse: unknown variable '" + name + "'");
        int e = 1;
        if (!c.done() && c.peek() == '^') {
          ++c.i;
          e = std::stoi(read_number(c));
        }
        mu[*vi] += e;
        any = true;
      } else {
        throw std::invalid_argument("Poly::parse: unexpected character in '" + s + "'");
      }
      if (!c.done() && c.peek() == '*') {
        ++c.i;
        expect_factor = true;
      } else {
        expect_factor = false;
      }
    }
    if (!any) throw std::invalid_argument("Poly::parse: empty term in '" + s + "'");
    out += mono(ctx, mu, coef * sign);
  }
  return out;
}

std::optional<Poly> try_exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Poly(a.ctx() ? a.ctx() : b.ctx());
  check_same_ctx(a, b);
  Poly rem = a, quot(a.ctx() ? a.ctx() : b.ctx());
  auto [lb, cb] = b.leading();
  while (!rem.is_zero()) {
    auto [lr, cr] = rem.leading();
    if (!lb.divides(lr)) return std::nullopt;
    Poly t = Poly::mono(quot.ctx(), lr - lb, cr / cb);
    quot += t;
    rem -= t * b;
  }
  return quot;
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto q = try_exact_div(a, b);
  if (!q) throw std::domain_error("exact_div: not divisible");
  return *q;
}

}  // namespace jetcalc
