#include "jetcalc/diffop.hpp"

#include <algorithm>
#include <sstream>

namespace jetcalc {

namespace {

RatFunc rf_diff(const RatFunc& f, const MultiIndex& mu) {
  RatFunc r = f;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (int k = 0; k < mu[i]; ++k) r = r.diff(i);
  return r;
}

/// All kappa with kappa <= nu componentwise.
std::vector<MultiIndex> sub_indices(const MultiIndex& nu) {
  std::vector<MultiIndex> out{MultiIndex(nu.size())};
  for (std::size_t i = 0; i < nu.size(); ++i) {
    std::vector<MultiIndex> next;
    for (const auto& k : out)
      for (int v = 0; v <= nu[i]; ++v) {
        MultiIndex m = k;
        m[i] = v;
        next.push_back(m);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

int LinDiffOp::order() const {
  int o = -1;
  for (const auto& [key, c] : c_) o = std::max(o, key.mu.total());
  return o;
}

bool LinDiffOp::is_zero() const { return c_.empty(); }

void LinDiffOp::set(std::size_t eq, std::size_t k, const MultiIndex& mu, RatFunc v) {
  if (eq >= m_out_ || k >= m_in_ || mu.size() != n_)
    throw std::invalid_argument("LinDiffOp::set: index out of range");
  Key key{eq, k, mu};
  if (v.is_zero())
    c_.erase(key);
  else
    c_[key] = std::move(v);
}

void LinDiffOp::add(std::size_t eq, std::size_t k, const MultiIndex& mu, const RatFunc& v) {
  set(eq, k, mu, coeff(eq, k, mu) + v);
}

RatFunc LinDiffOp::coeff(std::size_t eq, std::size_t k, const MultiIndex& mu) const {
  auto it = c_.find(Key{eq, k, mu});
  return it == c_.end() ? RatFunc() : it->second;
}

void LinDiffOp::set_const(std::size_t eq, std::size_t k, const MultiIndex& mu, const Q& v) {
  set(eq, k, mu, jetcalc::is_zero(v) ? RatFunc() : RatFunc(x_, v));
}

bool LinDiffOp::has_constant_coefficients() const {
  for (const auto& [key, c] : c_)
    if (!c.is_polynomial() || !c.num().is_constant()) return false;
  return true;
}

std::vector<RatFunc> LinDiffOp::apply(const std::vector<Poly>& u) const {
  std::vector<RatFunc> fu;
  fu.reserve(u.size());
  for (const auto& p : u) fu.emplace_back(p);
  return apply(fu);
}

std::vector<RatFunc> LinDiffOp::apply(const std::vector<RatFunc>& u) const {
  if (u.size() != m_in_) throw std::invalid_argument("LinDiffOp::apply: shape mismatch");
  std::vector<RatFunc> out(m_out_);
  for (const auto& [key, c] : c_) out[key.eq] += c * rf_diff(u[key.unknown], key.mu);
  return out;
}

bool LinDiffOp::operator==(const LinDiffOp& o) const {
  if (n_ != o.n_ || m_in_ != o.m_in_ || m_out_ != o.m_out_) return false;
  for (const auto& [key, c] : c_)
    if (!(o.coeff(key.eq, key.unknown, key.mu) == c)) return false;
  for (const auto& [key, c] : o.c_)
    if (!(coeff(key.eq, key.unknown, key.mu) == c)) return false;
  return true;
}

LinDiffOp LinDiffOp::identity(std::size_t n, std::size_t m, const VarSetPtr& xvars) {
  LinDiffOp id(n, m, m, xvars);
  for (std::size_t k = 0; k < m; ++k) id.set(k, k, MultiIndex(n), RatFunc(xvars, 1));
  return id;
}

std::string LinDiffOp::serialize() const {
  std::ostringstream os;
  os << "lindiffop " << n_ << " " << m_in_ << " " << m_out_ << "\n";
  os << "vars";
  for (std::size_t i = 0; i < (x_ ? x_->size() : 0); ++i) os << " " << x_->name(i);
  os << "\n";
  for (const auto& [key, c] : c_) {
    os << key.eq << " " << key.unknown;
    for (std::size_t i = 0; i < n_; ++i) os << " " << key.mu[i];
    os << " " << c.num().str();
    if (!c.is_polynomial()) os << " | " << c.den().str();
    os << "\n";
  }
  return os.str();
}

LinDiffOp LinDiffOp::deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("deserialize: empty input");
  std::istringstream h(line);
  std::string tag;
  std::size_t n, mi, mo;
  h >> tag >> n >> mi >> mo;
  if (tag != "lindiffop") throw std::invalid_argument("deserialize: bad header");
  if (!std::getline(is, line)) throw std::invalid_argument("deserialize: missing vars");
  std::istringstream vs(line);
  vs >> tag;
  if (tag != "vars") throw std::invalid_argument("deserialize: bad vars line");
  std::vector<std::string> names;
  std::string nm;
  while (vs >> nm) names.push_back(nm);
  auto ctx = make_vars(names);
  LinDiffOp P(n, mi, mo, ctx);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::size_t eq, k;
    ls >> eq >> k;
    MultiIndex mu(n);
    for (std::size_t i = 0; i < n; ++i) ls >> mu[i];
    std::string rest;
    std::getline(ls, rest);
    auto bar = rest.find('|');
    RatFunc c = bar == std::string::npos
                    ? RatFunc(Poly::parse(ctx, rest))
                    : RatFunc(Poly::parse(ctx, rest.substr(0, bar)),
                              Poly::parse(ctx, rest.substr(bar + 1)));
    P.set(eq, k, mu, c);
  }
  return P;
}

LinDiffOp compose(const LinDiffOp& Qop, const LinDiffOp& P) {
  if (P.m_out() != Qop.m_in()) throw std::invalid_argument("compose: shape mismatch");
  LinDiffOp R(P.n(), P.m_in(), Qop.m_out(), P.xvars() ? P.xvars() : Qop.xvars());
  for (const auto& [qk, qc] : Qop.coeffs())
    for (const auto& [pk, pc] : P.coeffs()) {
      if (pk.eq != qk.unknown) continue;
      // d_nu (pc d_mu u) = sum_{kappa<=nu} binom(nu,kappa) d_{nu-kappa}pc d_{mu+kappa}u
      for (const auto& kappa : sub_indices(qk.mu)) {
        RatFunc dc = rf_diff(pc, qk.mu - kappa);
        if (dc.is_zero()) continue;
        Q b(mi_binomial(qk.mu, kappa));
        R.add(qk.eq, pk.unknown, pk.mu + kappa,
              qc * dc * RatFunc(dc.num().ctx(), b));
      }
    }
  return R;
}

void BilinearForm::add(std::size_t a, const MultiIndex& muA, std::size_t k,
                       const MultiIndex& muB, const RatFunc& c) {
  if (c.is_zero()) return;
  Key key{a, muA, k, muB};
  auto it = t_.find(key);
  if (it == t_.end()) {
    t_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

BilinearForm BilinearForm::operator-(const BilinearForm& o) const {
  BilinearForm r = *this;
  for (const auto& [key, c] : o.t_) r.add(key.a, key.muA, key.k, key.muB, -c);
  return r;
}

BilinearForm BilinearForm::operator+(const BilinearForm& o) const {
  BilinearForm r = *this;
  for (const auto& [key, c] : o.t_) r.add(key.a, key.muA, key.k, key.muB, c);
  return r;
}

BilinearForm BilinearForm::d(std::size_t r) const {
  BilinearForm out;
  for (const auto& [key, c] : t_) {
    out.add(key.a, key.muA, key.k, key.muB, c.diff(r));
    out.add(key.a, key.muA.plus(r), key.k, key.muB, c);
    out.add(key.a, key.muA, key.k, key.muB.plus(r), c);
  }
  return out;
}

RatFunc BilinearForm::eval(const std::vector<Poly>& v, const std::vector<Poly>& u) const {
  RatFunc acc;
  for (const auto& [key, c] : t_)
    acc += c * RatFunc(v.at(key.a).diff(key.muA)) * RatFunc(u.at(key.k).diff(key.muB));
  return acc;
}

AdjointResult formal_adjoint(const LinDiffOp& P) {
  AdjointResult res;
  res.op = LinDiffOp(P.n(), P.m_out(), P.m_in(), P.xvars());
  res.flux.assign(P.n(), BilinearForm{});
  // Integrate each term c(x) v_a d_nu u^k by parts, one derivative at a time:
  //   (d_kappa v) c d_nu u = d_i[(d_kappa v) c d_{nu-1_i} u]
  //                          - (d_kappa v)(d_i c) d_{nu-1_i} u
  //                          - (d_{kappa+1_i} v) c d_{nu-1_i} u
  struct Term {
    std::size_t a;
    MultiIndex kappa;
    std::size_t k;
    MultiIndex nu;
    RatFunc c;
  };
  std::vector<Term> work;
  for (const auto& [key, c] : P.coeffs())
    work.push_back({key.eq, MultiIndex(P.n()), key.unknown, key.mu, c});
  while (!work.empty()) {
    Term t = work.back();
    work.pop_back();
    if (t.c.is_zero()) continue;
    if (t.nu.total() == 0) {
      // terminal: contributes c d_kappa v_a to (ad v)_k with sign (-1)^{|kappa|}
      // already folded into c by construction
      res.op.add(t.k, t.a, t.kappa, t.c);
      continue;
    }
    std::size_t i = 0;
    while (t.nu[i] == 0) ++i;
    MultiIndex nu1 = t.nu.minus(i);
    res.flux[i].add(t.a, t.kappa, t.k, nu1, t.c);
    work.push_back({t.a, t.kappa, t.k, nu1, -t.c.diff(i)});
    work.push_back({t.a, t.kappa.plus(i), t.k, nu1, -t.c});
  }
  return res;
}

BilinearForm adjoint_certificate_residual(const LinDiffOp& P, const AdjointResult& ad) {
  BilinearForm lhs;
  for (const auto& [key, c] : P.coeffs())
    lhs.add(key.eq, MultiIndex(P.n()), key.unknown, key.mu, c);
  for (const auto& [key, c] : ad.op.coeffs())
    lhs.add(key.unknown, key.mu, key.eq, MultiIndex(P.n()), -c);
  for (std::size_t r = 0; r < P.n(); ++r) lhs = lhs - ad.flux[r].d(r);
  return lhs;
}

LinDiffOp compatibility_conditions(const LinDiffOp& P, int order_bound) {
  if (order_bound < 1) throw std::invalid_argument("compatibility_conditions: bound < 1");
  if (!P.has_constant_coefficients())
    throw std::invalid_argument(
        "compatibility_conditions: implemented for constant-coefficient operators");
  std::size_t n = P.n(), a_cnt = P.m_out();
  int p_ord = std::max(P.order(), 0);
  auto nus = multi_indices_up_to(n, order_bound);
  // unknown covector q(a, nu); columns indexed by (a, nu)
  auto col_of = [&](std::size_t a, std::size_t nu_idx) { return a * nus.size() + nu_idx; };
  std::size_t ncols = a_cnt * nus.size();
  // constraints: for each (k, kappa), sum q(a,nu) p(a,k,kappa-nu) = 0
  auto kappas = multi_indices_up_to(n, order_bound + p_ord);
  QMatrix M(0, ncols);
  for (std::size_t k = 0; k < P.m_in(); ++k)
    for (const auto& kappa : kappas) {
      std::vector<Q> row(ncols);
      bool nonzero = false;
      for (std::size_t a = 0; a < a_cnt; ++a)
        for (std::size_t ni = 0; ni < nus.size(); ++ni) {
          const auto& nu = nus[ni];
          if (!nu.divides(kappa)) continue;
          RatFunc pc = P.coeff(a, k, kappa - nu);
          if (pc.is_zero()) continue;
          row[col_of(a, ni)] = pc.num().constant_term() /
                               (pc.is_polynomial() ? Q(1) : pc.den().constant_term());
          nonzero = true;
        }
      if (nonzero) M.append_row(row);
    }
  auto kernel = M.rows() == 0 ? std::vector<std::vector<Q>>{} : exact_kernel(M);
  if (M.rows() == 0 && ncols > 0) {
    // P has no coefficients at all; no meaningful CC
    kernel.clear();
  }
  auto row_order = [&](const std::vector<Q>& v) {
    int o = 0;
    for (std::size_t a = 0; a < a_cnt; ++a)
      for (std::size_t ni = 0; ni < nus.size(); ++ni)
        if (!is_zero(v[col_of(a, ni)])) o = std::max(o, nus[ni].total());
    return o;
  };
  std::stable_sort(kernel.begin(), kernel.end(),
                   [&](const auto& x, const auto& y) { return row_order(x) < row_order(y); });
  // greedy minimal generating set: drop candidates lying in the span of the
  // derivative prolongations of already-accepted generators
  std::vector<std::vector<Q>> accepted;
  QMatrix span(0, ncols);
  auto add_prolongations = [&](const std::vector<Q>& g) {
    int go = row_order(g);
    for (const auto& lam : multi_indices_up_to(n, order_bound - go)) {
      std::vector<Q> shifted(ncols);
      bool ok = true;
      for (std::size_t a = 0; a < a_cnt && ok; ++a)
        for (std::size_t ni = 0; ni < nus.size() && ok; ++ni) {
          if (is_zero(g[col_of(a, ni)])) continue;
          MultiIndex target = nus[ni] + lam;
          if (target.total() > order_bound) {
            ok = false;
            break;
          }
          // locate target among nus
          std::size_t ti = 0;
          while (!(nus[ti] == target)) ++ti;
          shifted[col_of(a, ti)] = g[col_of(a, ni)];
        }
      if (ok) span.append_row(shifted);
    }
  };
  for (const auto& cand : kernel) {
    bool redundant = false;
    if (span.rows() > 0) {
      QMatrix aug = span;
      aug.append_row(cand);
      redundant = exact_rank(aug) == exact_rank(span);
    }
    if (redundant) continue;
    accepted.push_back(cand);
    add_prolongations(cand);
  }
  // normalize to primitive integer content, leading coefficient positive
  LinDiffOp CC(n, a_cnt, accepted.size(), P.xvars());
  for (std::size_t r = 0; r < accepted.size(); ++r) {
    auto& g = accepted[r];
    Q scale = 0;
    Z num_g = 0, den_l = 1;
    for (const auto& v : g) {
      if (is_zero(v)) continue;
      Q av = abs(v);
      mpz_gcd(num_g.get_mpz_t(), num_g.get_mpz_t(), av.get_num().get_mpz_t());
      mpz_lcm(den_l.get_mpz_t(), den_l.get_mpz_t(), av.get_den().get_mpz_t());
    }
    scale = Q(num_g, den_l);
    scale.canonicalize();
    // sign: make the graded-lex-first nonzero coefficient positive
    for (std::size_t a = 0; a < a_cnt; ++a) {
      bool decided = false;
      for (std::size_t ni = 0; ni < nus.size(); ++ni)
        if (!is_zero(g[col_of(a, ni)])) {
          if (sgn(g[col_of(a, ni)]) < 0) scale = -scale;
          decided = true;
          break;
        }
      if (decided) break;
    }
    for (std::size_t a = 0; a < a_cnt; ++a)
      for (std::size_t ni = 0; ni < nus.size(); ++ni)
        if (!is_zero(g[col_of(a, ni)]))
          CC.set_const(r, a, nus[ni], g[col_of(a, ni)] / scale);
  }
  return CC;
}

}  // namespace jetcalc
