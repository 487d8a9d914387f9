#include "jetcalc/nljets.hpp"

#include <map>

namespace jetcalc {

namespace {

MultiIndex unit(std::size_t n, std::size_t i) {
  MultiIndex e(n);
  e[i] = 1;
  return e;
}

std::map<MultiIndex, std::size_t, GrlexLess> mu_index(std::size_t n, int q) {
  std::map<MultiIndex, std::size_t, GrlexLess> ix;
  std::size_t pos = 0;
  for (const auto& mu : multi_indices_up_to(n, q)) ix[mu] = pos++;
  return ix;
}

RatFunc subst(const RatFunc& v, const std::vector<Poly>& images) {
  if (v.is_zero()) return v;
  Poly num = v.num().subst(images);
  if (v.den().is_zero()) return RatFunc(num);
  return RatFunc(num, v.den().subst(images));
}

RatFunc laplace_det(const Matrix<RatFunc>& m, std::vector<std::size_t> cols,
                    std::size_t row) {
  if (cols.size() == 1) return m.at(row, cols[0]);
  RatFunc d;
  for (std::size_t p = 0; p < cols.size(); ++p) {
    if (m.at(row, cols[p]).is_zero()) continue;
    std::vector<std::size_t> rest = cols;
    rest.erase(rest.begin() + long(p));
    RatFunc t = m.at(row, cols[p]) * laplace_det(m, rest, row + 1);
    d += (p % 2) ? -t : t;
  }
  return d;
}

/// Inverse of the first-order block as adjugate over determinant, so every
/// entry carries the same denominator and later sums stay reduced.
Matrix<RatFunc> jet_jacobian_inverse(const JetOfMap& f) {
  const std::size_t n = f.n();
  Matrix<RatFunc> J = f.jacobian();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  RatFunc det = laplace_det(J, all, 0);
  if (det.is_zero()) throw SingularJet("jet has a singular first-order block");
  Matrix<RatFunc> G(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (n == 1) {
        G.at(0, 0) = det.inverse();
        continue;
      }
      // cofactor C_{ji}: delete row j, column i
      Matrix<RatFunc> sub(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          sub.at(rr, cc++) = J.at(r, c);
        }
        ++rr;
      }
      std::vector<std::size_t> idx(n - 1);
      for (std::size_t t = 0; t < n - 1; ++t) idx[t] = t;
      RatFunc cof = laplace_det(sub, idx, 0);
      if ((i + j) % 2) cof = -cof;
      G.at(i, j) = cof / det;
    }
  return G;
}

}  // namespace

JetOfMap::JetOfMap(std::size_t n, int q, VarSetPtr ctx)
    : n_(n), q_(q), x_(std::move(ctx)), c_(mu_index(n, q).size() * n) {}

JetOfMap JetOfMap::identity(std::size_t n, int q, const VarSetPtr& ctx) {
  JetOfMap f(n, q, ctx);
  for (std::size_t k = 0; k < n; ++k) {
    f.at(MultiIndex(n), k) = RatFunc(Poly::var(ctx, k));
    if (q >= 1) f.at(unit(n, k), k) = RatFunc(ctx, 1);
  }
  return f;
}

JetOfMap JetOfMap::holonomic(const std::vector<Poly>& f, int q) {
  const std::size_t n = f.size();
  JetOfMap j(n, q, f[0].ctx());
  for (const auto& mu : multi_indices_up_to(n, q))
    for (std::size_t k = 0; k < n; ++k) j.at(mu, k) = RatFunc(f[k].diff(mu));
  return j;
}

RatFunc& JetOfMap::at(const MultiIndex& mu, std::size_t k) {
  static thread_local std::map<std::pair<std::size_t, int>,
                               std::map<MultiIndex, std::size_t, GrlexLess>>
      cache;
  auto& ix = cache[{n_, q_}];
  if (ix.empty()) ix = mu_index(n_, q_);
  return c_[ix.at(mu) * n_ + k];
}

const RatFunc& JetOfMap::at(const MultiIndex& mu, std::size_t k) const {
  return const_cast<JetOfMap*>(this)->at(mu, k);
}

Matrix<RatFunc> JetOfMap::jacobian() const {
  Matrix<RatFunc> J(n_, n_);
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i) J.at(k, i) = at(unit(n_, i), k);
  return J;
}

JetOfMap JetOfMap::truncate(int q) const {
  if (q > q_) throw std::invalid_argument("truncate: order increase");
  JetOfMap out(n_, q, x_);
  for (const auto& mu : multi_indices_up_to(n_, q))
    for (std::size_t k = 0; k < n_; ++k) out.at(mu, k) = at(mu, k);
  return out;
}

bool JetOfMap::operator==(const JetOfMap& o) const {
  if (n_ != o.n_ || q_ != o.q_) return false;
  for (std::size_t t = 0; t < c_.size(); ++t)
    if (c_[t] != o.c_[t]) return false;
  return true;
}

JetOfMap JetOfMap::operator+(const JetOfMap& o) const {
  JetOfMap out = *this;
  for (std::size_t t = 0; t < c_.size(); ++t) out.c_[t] += o.c_[t];
  return out;
}

JetOfMap JetOfMap::operator-(const JetOfMap& o) const {
  JetOfMap out = *this;
  for (std::size_t t = 0; t < c_.size(); ++t) out.c_[t] -= o.c_[t];
  return out;
}

namespace {

/// (zeta "o" f)^k_mu for the left-linear chain rule, |mu| <= 3; zeta already
/// substituted at the relevant base point.
JetOfMap chain(const JetOfMap& zeta, const JetOfMap& f, int q_out) {
  const std::size_t n = f.n();
  JetOfMap out(n, q_out, f.ctx());
  auto e = [&](std::size_t i) { return unit(n, i); };
  for (const auto& mu : multi_indices_up_to(n, q_out)) {
    std::vector<std::size_t> id;
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < mu[i]; ++c) id.push_back(i);
    for (std::size_t k = 0; k < n; ++k) {
      RatFunc v;
      if (id.size() == 0) {
        v = zeta.at(MultiIndex(n), k);
      } else if (id.size() == 1) {
        for (std::size_t u = 0; u < n; ++u)
          v += zeta.at(e(u), k) * f.at(e(id[0]), u);
      } else if (id.size() == 2) {
        auto [i, j] = std::pair(id[0], id[1]);
        for (std::size_t u = 0; u < n; ++u) {
          for (std::size_t w = 0; w < n; ++w)
            v += zeta.at(e(u) + e(w), k) * f.at(e(i), u) * f.at(e(j), w);
          v += zeta.at(e(u), k) * f.at(e(i) + e(j), u);
        }
      } else {
        auto [i, j, l] = std::tuple(id[0], id[1], id[2]);
        for (std::size_t u = 0; u < n; ++u) {
          for (std::size_t w = 0; w < n; ++w) {
            for (std::size_t s = 0; s < n; ++s)
              v += zeta.at(e(u) + e(w) + e(s), k) * f.at(e(i), u) * f.at(e(j), w) *
                   f.at(e(l), s);
            v += zeta.at(e(u) + e(w), k) *
                 (f.at(e(i) + e(j), u) * f.at(e(l), w) +
                  f.at(e(i) + e(l), u) * f.at(e(j), w) +
                  f.at(e(j) + e(l), u) * f.at(e(i), w));
          }
          v += zeta.at(e(u), k) * f.at(e(i) + e(j) + e(l), u);
        }
      }
      out.at(mu, k) = v;
    }
  }
  return out;
}

std::vector<Poly> base_polys(const JetOfMap& f) {
  std::vector<Poly> images;
  for (std::size_t k = 0; k < f.n(); ++k) {
    const RatFunc& v = f.at(MultiIndex(f.n()), k);
    if (!v.is_polynomial())
      throw std::invalid_argument("jet composition: non-polynomial base map");
    images.push_back(v.as_poly());
  }
  return images;
}

JetOfMap subst_all(const JetOfMap& g, const std::vector<Poly>& images) {
  JetOfMap out(g.n(), g.order(), g.ctx());
  for (const auto& mu : multi_indices_up_to(g.n(), g.order()))
    for (std::size_t k = 0; k < g.n(); ++k) out.at(mu, k) = subst(g.at(mu, k), images);
  return out;
}

}  // namespace

JetOfMap jet_compose(const JetOfMap& g, const JetOfMap& f) {
  if (g.order() != f.order()) throw std::invalid_argument("jet_compose: order mismatch");
  if (g.order() > 3) throw std::invalid_argument("jet_compose: order capped at 3");
  return chain(subst_all(g, base_polys(f)), f, f.order());
}

JetOfMap jet_invert(const JetOfMap& f) {
  const std::size_t n = f.n();
  const int q = f.order();
  if (q > 3) throw std::invalid_argument("jet_invert: order capped at 3");
  auto x = f.ctx();
  auto e = [&](std::size_t i) { return unit(n, i); };

  // affine base map: f^0 = M x + b, inverted exactly
  QMatrix M(n, n);
  std::vector<Q> b(n);
  for (std::size_t k = 0; k < n; ++k) {
    const RatFunc& v = f.at(MultiIndex(n), k);
    if (!v.is_polynomial() || v.as_poly().degree() > 1)
      throw std::invalid_argument("jet_invert: base map must be affine");
    Poly p = v.as_poly();
    b[k] = p.constant_term();
    for (std::size_t i = 0; i < n; ++i) {
      Poly d = p.diff(i);
      M.at(k, i) = d.is_zero() ? Q(0) : d.constant_term();
    }
  }
  QMatrix Minv;
  try {
    Minv = inverse(M);
  } catch (const std::domain_error&) {
    throw SingularJet("jet_invert: base map is not invertible");
  }

  JetOfMap g(n, q, x);
  for (std::size_t k = 0; k < n; ++k) {
    Poly p(x);
    for (std::size_t i = 0; i < n; ++i)
      p += (Poly::var(x, i) - Poly::constant(x, b[i])) * Minv.at(k, i);
    g.at(MultiIndex(n), k) = RatFunc(p);
  }
  if (q == 0) return g;

  Matrix<RatFunc> G = jet_jacobian_inverse(f);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t u = 0; u < n; ++u) g.at(e(u), k) = G.at(k, u);

  if (q >= 2)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u; v < n; ++v) {
          RatFunc s;
          for (std::size_t w = 0; w < n; ++w)
            for (std::size_t a = 0; a < n; ++a)
              for (std::size_t c = 0; c < n; ++c)
                s += G.at(k, w) * f.at(e(a) + e(c), w) * G.at(a, u) * G.at(c, v);
          g.at(e(u) + e(v), k) = -s;
        }

  if (q >= 3)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u; v < n; ++v)
          for (std::size_t w = v; w < n; ++w) {
            RatFunc s;
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l) {
                  // R^k_{ijl}: composite third-order terms not involving g3
                  RatFunc r;
                  for (std::size_t a = 0; a < n; ++a) {
                    for (std::size_t c = 0; c < n; ++c)
                      r += g.at(e(a) + e(c), k) *
                           (f.at(e(i) + e(j), a) * f.at(e(l), c) +
                            f.at(e(i) + e(l), a) * f.at(e(j), c) +
                            f.at(e(j) + e(l), a) * f.at(e(i), c));
                    r += g.at(e(a), k) * f.at(e(i) + e(j) + e(l), a);
                  }
                  s += r * G.at(i, u) * G.at(j, v) * G.at(l, w);
                }
            g.at(e(u) + e(v) + e(w), k) = -s;
          }

  // The loops above produce the pointwise inverse as a function of the source
  // of f; re-express it over its own source by substituting the inverted base.
  auto images = base_polys(g);
  for (const auto& mu : multi_indices_up_to(n, q)) {
    if (mu.total() == 0) continue;
    for (std::size_t k = 0; k < n; ++k) g.at(mu, k) = subst(g.at(mu, k), images);
  }
  return g;
}

ChiForm::ChiForm(std::size_t n, int q, VarSetPtr ctx)
    : n_(n), q_(q), x_(std::move(ctx)), c_(mu_index(n, q).size() * n * n) {}

RatFunc& ChiForm::at(const MultiIndex& mu, std::size_t k, std::size_t i) {
  static thread_local std::map<std::pair<std::size_t, int>,
                               std::map<MultiIndex, std::size_t, GrlexLess>>
      cache;
  auto& ix = cache[{n_, q_}];
  if (ix.empty()) ix = mu_index(n_, q_);
  return c_[(ix.at(mu) * n_ + k) * n_ + i];
}

const RatFunc& ChiForm::at(const MultiIndex& mu, std::size_t k, std::size_t i) const {
  return const_cast<ChiForm*>(this)->at(mu, k, i);
}

JetOfMap ChiForm::column(std::size_t i) const {
  JetOfMap out(n_, q_, x_);
  for (const auto& mu : multi_indices_up_to(n_, q_))
    for (std::size_t k = 0; k < n_; ++k) out.at(mu, k) = at(mu, k, i);
  return out;
}

JetOfMap ChiForm::contract(const std::vector<RatFunc>& xi) const {
  JetOfMap out(n_, q_, x_);
  for (const auto& mu : multi_indices_up_to(n_, q_))
    for (std::size_t k = 0; k < n_; ++k) {
      RatFunc v;
      for (std::size_t r = 0; r < n_; ++r) v += at(mu, k, r) * xi[r];
      out.at(mu, k) = v;
    }
  return out;
}

bool ChiForm::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

bool ChiForm::operator==(const ChiForm& o) const {
  if (n_ != o.n_ || q_ != o.q_) return false;
  for (std::size_t t = 0; t < c_.size(); ++t)
    if (c_[t] != o.c_[t]) return false;
  return true;
}

JetOfMap vertical_action(const JetOfMap& f, const JetOfMap& xi) {
  const std::size_t n = f.n();
  if (f.order() < xi.order() + 1)
    throw std::invalid_argument("vertical_action: f must exceed the argument order");
  JetOfMap out(n, xi.order(), f.ctx());
  for (const auto& mu : multi_indices_up_to(n, xi.order()))
    for (std::size_t k = 0; k < n; ++k) {
      RatFunc v;
      for (const auto& nu : multi_indices_up_to(n, mu.total())) {
        if (!nu.divides(mu)) continue;
        Q coef(mi_binomial(mu, nu));
        MultiIndex rest = mu - nu;
        for (std::size_t r = 0; r < n; ++r)
          v += f.at(rest.plus(r), k) * xi.at(nu, r) * RatFunc(f.ctx(), coef);
      }
      out.at(mu, k) = v;
    }
  return out;
}

namespace {

/// Solve V(f)(xi) = w for xi, level by level.
JetOfMap vertical_solve(const JetOfMap& f, const JetOfMap& w,
                        const Matrix<RatFunc>& G) {
  const std::size_t n = f.n();
  JetOfMap xi(n, w.order(), f.ctx());
  for (const auto& mu : multi_indices_up_to(n, w.order())) {
    std::vector<RatFunc> res(n);
    for (std::size_t k = 0; k < n; ++k) {
      RatFunc v = w.at(mu, k);
      for (const auto& nu : multi_indices_up_to(n, mu.total())) {
        if (nu == mu || !nu.divides(mu)) continue;
        Q coef(mi_binomial(mu, nu));
        MultiIndex rest = mu - nu;
        for (std::size_t r = 0; r < n; ++r)
          v -= f.at(rest.plus(r), k) * xi.at(nu, r) * RatFunc(f.ctx(), coef);
      }
      res[k] = v;
    }
    for (std::size_t r = 0; r < n; ++r) {
      RatFunc v;
      for (std::size_t k = 0; k < n; ++k) v += G.at(r, k) * res[k];
      xi.at(mu, r) = v;
    }
  }
  return xi;
}

}  // namespace

ChiForm nonlinear_spencer(const JetOfMap& f) {
  const std::size_t n = f.n();
  const int q = f.order() - 1;
  if (q < 0) throw std::invalid_argument("nonlinear_spencer: order >= 1 required");
  Matrix<RatFunc> G = jet_jacobian_inverse(f);
  ChiForm chi(n, q, f.ctx());
  for (std::size_t i = 0; i < n; ++i) {
    JetOfMap w(n, q, f.ctx());
    for (const auto& mu : multi_indices_up_to(n, q))
      for (std::size_t k = 0; k < n; ++k)
        w.at(mu, k) = f.at(mu, k).diff(i) - f.at(mu.plus(i), k);
    JetOfMap col = vertical_solve(f, w, G);
    for (const auto& mu : multi_indices_up_to(n, q))
      for (std::size_t k = 0; k < n; ++k) chi.at(mu, k, i) = col.at(mu, k);
  }
  return chi;
}

ChiForm gauge_transform_chi(const ChiForm& chi, const JetOfMap& f) {
  const std::size_t n = f.n();
  const int q = chi.order();
  if (f.order() != q + 1)
    throw std::invalid_argument("gauge_transform_chi: f must have order q+1");
  auto images = base_polys(f);
  Matrix<RatFunc> G = jet_jacobian_inverse(f);
  ChiForm out = nonlinear_spencer(f);  // the Dbar f term
  JetOfMap fq = f.truncate(q);
  for (std::size_t i = 0; i < n; ++i) {
    JetOfMap w(n, q, f.ctx());
    for (std::size_t u = 0; u < n; ++u) {
      RatFunc du = f.at(MultiIndex(n), u).diff(i);
      if (du.is_zero()) continue;
      JetOfMap transported = chain(subst_all(chi.column(u), images), fq, q);
      for (const auto& mu : multi_indices_up_to(n, q))
        for (std::size_t k = 0; k < n; ++k) w.at(mu, k) += transported.at(mu, k) * du;
    }
    JetOfMap col = vertical_solve(f, w, G);
    for (const auto& mu : multi_indices_up_to(n, q))
      for (std::size_t k = 0; k < n; ++k) out.at(mu, k, i) += col.at(mu, k);
  }
  return out;
}

ChiForm chi_variation(const JetOfMap& f, const JetOfMap& df) {
  const std::size_t n = f.n();
  const int q = f.order() - 1;
  if (df.order() != f.order())
    throw std::invalid_argument("chi_variation: direction must match the order of f");
  Matrix<RatFunc> G = jet_jacobian_inverse(f);
  ChiForm chi = nonlinear_spencer(f);
  ChiForm out(n, q, f.ctx());
  for (std::size_t i = 0; i < n; ++i) {
    JetOfMap vlin = vertical_action(df, chi.column(i));
    JetOfMap w(n, q, f.ctx());
    for (const auto& mu : multi_indices_up_to(n, q))
      for (std::size_t k = 0; k < n; ++k)
        w.at(mu, k) = df.at(mu, k).diff(i) - df.at(mu.plus(i), k) - vlin.at(mu, k);
    JetOfMap col = vertical_solve(f, w, G);
    for (const auto& mu : multi_indices_up_to(n, q))
      for (std::size_t k = 0; k < n; ++k) out.at(mu, k, i) = col.at(mu, k);
  }
  return out;
}

JetOfMap source_variation(const JetOfMap& f, const JetOfMap& xi) {
  const std::size_t n = f.n();
  JetOfMap out = vertical_action(f, xi);
  for (const auto& mu : multi_indices_up_to(n, xi.order()))
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r)
        out.at(mu, k) += xi.at(MultiIndex(n), r) * (f.at(mu, k).diff(r) - f.at(mu.plus(r), k));
  return out;
}

JetOfMap target_variation(const JetOfMap& f, const JetOfMap& xi) {
  ChiForm chi = nonlinear_spencer(f);  // order q+1 when f has order q+2
  std::vector<RatFunc> xi0;
  for (std::size_t r = 0; r < f.n(); ++r) xi0.push_back(xi.at(MultiIndex(f.n()), r));
  JetOfMap xibar = xi + chi.contract(xi0);
  return vertical_action(f, xibar);
}

VariationReport variation_check(const JetOfMap& f, const JetOfMap& xi) {
  const std::size_t n = f.n();
  const int q = xi.order() - 1;
  if (q < 0 || q > 1) throw UnsupportedOrder("variation_check: q must be 0 or 1");
  if (f.order() != q + 2)
    throw std::invalid_argument("variation_check: f must have order q+2");
  auto e = [&](std::size_t i) { return unit(n, i); };

  JetOfMap fq1 = f.truncate(q + 1);
  ChiForm chi = nonlinear_spencer(fq1);
  ChiForm src = chi_variation(fq1, source_variation(f, xi));
  ChiForm tgt = chi_variation(fq1, target_variation(f, xi));

  ChiForm frm(n, q, f.ctx());
  MultiIndex z(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      RatFunc v = xi.at(z, k).diff(i) - xi.at(e(i), k);
      for (std::size_t r = 0; r < n; ++r)
        v += xi.at(z, r) * chi.at(z, k, i).diff(r) + chi.at(z, k, r) * xi.at(z, r).diff(i) -
             chi.at(z, r, i) * xi.at(e(r), k);
      frm.at(z, k, i) = v;
    }
  if (q == 1)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
          RatFunc v = xi.at(e(j), k).diff(i) - xi.at(e(i) + e(j), k);
          for (std::size_t r = 0; r < n; ++r)
            v += xi.at(z, r) * chi.at(e(j), k, i).diff(r) +
                 chi.at(e(j), k, r) * xi.at(z, r).diff(i) +
                 chi.at(e(r), k, i) * xi.at(e(j), r) - chi.at(e(j), r, i) * xi.at(e(r), k) -
                 chi.at(z, r, i) * xi.at(e(j) + e(r), k);
          frm.at(e(j), k, i) = v;
        }
  bool ok = (src == tgt) && (src == frm);
  return {std::move(src), std::move(tgt), std::move(frm), ok};
}

}  // namespace jetcalc
