#include "jetcalc/jets.hpp"

#include <algorithm>
#include <map>

namespace jetcalc {

namespace {

struct CoordLess {
  bool operator()(const JetCoord& a, const JetCoord& b) const {
    if (int c = grlex_cmp(a.first, b.first); c != 0) return c < 0;
    return a.second < b.second;
  }
};

using CoordIndex = std::map<JetCoord, std::size_t, CoordLess>;

CoordIndex index_of(const std::vector<JetCoord>& coords) {
  CoordIndex ix;
  for (std::size_t i = 0; i < coords.size(); ++i) ix[coords[i]] = i;
  return ix;
}

std::map<std::vector<int>, std::size_t> tuple_index(const std::vector<std::vector<int>>& ts) {
  std::map<std::vector<int>, std::size_t> ix;
  for (std::size_t i = 0; i < ts.size(); ++i) ix[ts[i]] = i;
  return ix;
}

/// Block-diagonal copy of basis rows across all r-tuples: a basis of
/// /\^r T* (x) span(B) inside the tuple-major ambient space.
QMatrix embed_forms(const QMatrix& B, std::size_t n, int r) {
  std::size_t T = form_tuples(n, r).size();
  QMatrix out(T * B.rows(), T * B.cols());
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t b = 0; b < B.rows(); ++b)
      for (std::size_t j = 0; j < B.cols(); ++j)
        out.at(t * B.rows() + b, t * B.cols() + j) = B.at(b, j);
  return out;
}

}  // namespace

long dim_sym(std::size_t n, int q) { return binomial(q + n - 1, q).get_si(); }
long dim_jet(std::size_t n, int q) { return binomial(q + n, q).get_si(); }

std::vector<JetDimRow> jet_dim_table(std::size_t n, std::size_t m, int q_max) {
  std::vector<JetDimRow> t;
  for (int q = 0; q <= q_max; ++q)
    t.push_back({q, dim_sym(n, q), long(m) * dim_jet(n, q)});
  return t;
}

std::vector<JetCoord> jet_coords(std::size_t n, std::size_t m, int q) {
  std::vector<JetCoord> out;
  for (const auto& mu : multi_indices_up_to(n, q))
    for (std::size_t k = 0; k < m; ++k) out.emplace_back(mu, k);
  return out;
}

std::vector<JetCoord> sym_coords(std::size_t n, std::size_t m, int q) {
  std::vector<JetCoord> out;
  for (const auto& mu : multi_indices_of_degree(n, q))
    for (std::size_t k = 0; k < m; ++k) out.emplace_back(mu, k);
  return out;
}

LinearSystem::LinearSystem(std::size_t n, std::size_t m, int q)
    : n_(n), m_(m), q_(q), rows_(0, jet_coords(n, m, q).size()) {}

void LinearSystem::add_row(
    const std::vector<std::tuple<std::size_t, MultiIndex, Q>>& terms) {
  auto ix = index_of(jet_coords(n_, m_, q_));
  std::vector<Q> row(rows_.cols());
  for (const auto& [k, mu, c] : terms) {
    auto it = ix.find({mu, k});
    if (it == ix.end()) throw std::invalid_argument("add_row: coordinate beyond order");
    row[it->second] += c;
  }
  rows_.append_row(row);
}

LinearSystem LinearSystem::from_operator(const LinDiffOp& P, int q) {
  if (!P.has_constant_coefficients())
    throw std::invalid_argument("from_operator: variable coefficients");
  if (q < P.order()) q = P.order();
  LinearSystem sys(P.n(), P.m_in(), q);
  std::vector<std::vector<std::tuple<std::size_t, MultiIndex, Q>>> eqs(P.m_out());
  for (const auto& [key, c] : P.coeffs()) {
    Q v = c.num().constant_term();
    if (!c.den().is_zero()) v /= c.den().constant_term();
    eqs[key.eq].emplace_back(key.unknown, key.mu, v);
  }
  for (const auto& e : eqs) sys.add_row(e);
  return sys;
}

long LinearSystem::dim() const {
  return long(rows_.cols()) - long(exact_rank(rows_));
}

QMatrix LinearSystem::solution_basis() const {
  QMatrix B(0, rows_.cols());
  for (const auto& v : exact_kernel(rows_)) B.append_row(v);
  return B;
}

LinearSystem prolong(const LinearSystem& sys, int r) {
  if (r < 1) throw std::invalid_argument("prolong: r >= 1 required");
  LinearSystem out(sys.n(), sys.m(), sys.q() + r);
  auto coords = jet_coords(sys.n(), sys.m(), sys.q());
  for (std::size_t i = 0; i < sys.rows().rows(); ++i)
    for (const auto& lam : multi_indices_up_to(sys.n(), r)) {
      std::vector<std::tuple<std::size_t, MultiIndex, Q>> terms;
      for (std::size_t j = 0; j < coords.size(); ++j) {
        const Q& c = sys.rows().at(i, j);
        if (is_zero(c)) continue;
        terms.emplace_back(coords[j].second, coords[j].first + lam, c);
      }
      out.add_row(terms);
    }
  return out;
}

SymbolSpace::SymbolSpace(std::size_t n, std::size_t m, int q, QMatrix eqs)
    : n_(n), m_(m), q_(q), eqs_(std::move(eqs)) {
  if (eqs_.cols() != sym_coords(n, m, q).size())
    throw std::invalid_argument("SymbolSpace: wrong column count");
}

long SymbolSpace::dim() const {
  return long(eqs_.cols()) - long(exact_rank(eqs_));
}

QMatrix SymbolSpace::basis() const {
  QMatrix B(0, eqs_.cols());
  for (const auto& v : exact_kernel(eqs_)) B.append_row(v);
  return B;
}

SymbolSpace symbol(const LinearSystem& sys) {
  auto jc = jet_coords(sys.n(), sys.m(), sys.q());
  auto sc = sym_coords(sys.n(), sys.m(), sys.q());
  auto ix = index_of(sc);
  QMatrix eqs(sys.rows().rows(), sc.size());
  for (std::size_t i = 0; i < eqs.rows(); ++i)
    for (std::size_t j = 0; j < jc.size(); ++j) {
      if (jc[j].first.total() != sys.q()) continue;
      eqs.at(i, ix.at(jc[j])) = sys.rows().at(i, j);
    }
  return SymbolSpace(sys.n(), sys.m(), sys.q(), std::move(eqs));
}

SymbolSpace prolong_symbol(const SymbolSpace& g) {
  auto sc = sym_coords(g.n(), g.m(), g.q());
  auto tix = index_of(sym_coords(g.n(), g.m(), g.q() + 1));
  QMatrix eqs(g.eqs().rows() * g.n(), tix.size());
  for (std::size_t i = 0; i < g.eqs().rows(); ++i)
    for (std::size_t d = 0; d < g.n(); ++d)
      for (std::size_t j = 0; j < sc.size(); ++j) {
        const Q& c = g.eqs().at(i, j);
        if (is_zero(c)) continue;
        eqs.at(i * g.n() + d, tix.at({sc[j].first.plus(d), sc[j].second})) += c;
      }
  return SymbolSpace(g.n(), g.m(), g.q() + 1, std::move(eqs));
}

std::vector<std::vector<int>> form_tuples(std::size_t n, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0 || std::size_t(r) > n) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (int(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < int(n); ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

QMatrix delta_map(std::size_t n, std::size_t m, int q, int r) {
  auto dom_t = form_tuples(n, r);
  auto cod_t = form_tuples(n, r + 1);
  auto dom_c = sym_coords(n, m, q + 1);
  auto cod_c = sym_coords(n, m, q);
  auto dom_tix = tuple_index(dom_t);
  auto dom_cix = index_of(dom_c);
  QMatrix M(cod_t.size() * cod_c.size(), dom_t.size() * dom_c.size());
  for (std::size_t J = 0; J < cod_t.size(); ++J) {
    for (std::size_t l = 0; l < cod_t[J].size(); ++l) {
      int i = cod_t[J][l];
      std::vector<int> I = cod_t[J];
      I.erase(I.begin() + l);
      std::size_t It = dom_tix.at(I);
      Q sign = (l % 2 == 0) ? 1 : -1;
      for (std::size_t cj = 0; cj < cod_c.size(); ++cj) {
        std::size_t dj = dom_cix.at({cod_c[cj].first.plus(i), cod_c[cj].second});
        M.at(J * cod_c.size() + cj, It * dom_c.size() + dj) += sign;
      }
    }
  }
  return M;
}

long delta_cohomology(const SymbolSpace& g, int r) {
  if (g.q() < 1) throw std::invalid_argument("delta_cohomology: order >= 1 required");
  if (r < 0 || std::size_t(r) > g.n()) throw std::invalid_argument("delta_cohomology: bad degree");
  QMatrix B = g.basis();
  QMatrix sub = embed_forms(B, g.n(), r);
  QMatrix down = delta_map(g.n(), g.m(), g.q() - 1, r);
  long ker = long(sub.rows()) - long(exact_rank(sub * down.transpose()));
  long im = 0;
  if (r >= 1) {
    QMatrix B1 = prolong_symbol(g).basis();
    QMatrix up = delta_map(g.n(), g.m(), g.q(), r - 1);
    im = long(exact_rank(embed_forms(B1, g.n(), r - 1) * up.transpose()));
  }
  return ker - im;
}

DiagramDims spencer_janet_dims(const LinearSystem& sys) {
  const std::size_t n = sys.n(), m = sys.m();
  const int q = sys.q();
  const long dimR = sys.dim();
  const long dimJ = long(m) * dim_jet(n, q);

  LinearSystem R1 = prolong(sys, 1);
  SymbolSpace g1 = symbol(R1);
  if (R1.dim() - g1.dim() != dimR)
    throw NotStabilized("prolongation drops the dimension at order " + std::to_string(q));

  QMatrix B1 = g1.basis();
  QMatrix Rbasis = sys.solution_basis();
  auto jc = jet_coords(n, m, q);
  auto sc = sym_coords(n, m, q);
  auto jix = index_of(jc);

  DiagramDims d;
  for (int r = 0; r <= int(n); ++r) {
    long forms = binomial(n, r).get_si();

    long rank_g = 0, rank_full = 0;
    QMatrix up;  // delta into /\^r (x) S_q, codomain tuple-major over sym_coords
    if (r >= 1) {
      up = delta_map(n, m, q, r - 1);
      rank_g = long(exact_rank(embed_forms(B1, n, r - 1) * up.transpose()));
      rank_full = long(exact_rank(up));
    }
    d.spencer.push_back(forms * dimR - rank_g);
    d.middle.push_back(forms * dimJ - rank_full);

    // Janet: quotient of /\^r (x) J_q by /\^r (x) R_q + delta(/\^{r-1} (x) S_{q+1})
    QMatrix stack = embed_forms(Rbasis, n, r);
    if (r >= 1) {
      std::size_t T = form_tuples(n, r).size();
      QMatrix img = up.transpose();  // rows span the image, in /\^r (x) S_q coords
      for (std::size_t v = 0; v < img.rows(); ++v) {
        std::vector<Q> row(T * jc.size());
        for (std::size_t t = 0; t < T; ++t)
          for (std::size_t j = 0; j < sc.size(); ++j)
            row[t * jc.size() + jix.at(sc[j])] = img.at(v, t * sc.size() + j);
        stack.append_row(row);
      }
    }
    d.janet.push_back(forms * dimJ - long(exact_rank(stack)));
  }
  return d;
}

long euler_poincare(const std::vector<long>& dims) {
  long s = 0;
  int sign = 1;
  for (long v : dims) {
    s += sign * v;
    sign = -sign;
  }
  return s;
}

}  // namespace jetcalc
