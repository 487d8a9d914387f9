#include "jetcalc/groups.hpp"

#include <map>

namespace jetcalc {

namespace {

MultiIndex unit(std::size_t n, std::size_t i) {
  MultiIndex e(n);
  e[i] = 1;
  return e;
}

bool has_dilatation(GroupKind k) { return k != GroupKind::killing; }
bool has_elations(GroupKind k) {
  return k == GroupKind::conformal || k == GroupKind::projective_line;
}

/// Index of each parametric coordinate by role.
struct ParamIndex {
  std::map<std::size_t, std::size_t> trans;                       // k -> a
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> rot; // (i<j) -> a
  std::size_t dil = SIZE_MAX;
  std::map<std::size_t, std::size_t> ela;                         // i -> a
};

ParamIndex index_params(const std::vector<ParamCoord>& ps) {
  ParamIndex ix;
  for (std::size_t a = 0; a < ps.size(); ++a) switch (ps[a].type) {
      case ParamCoord::translation: ix.trans[ps[a].i] = a; break;
      case ParamCoord::rotation: ix.rot[{ps[a].i, ps[a].j}] = a; break;
      case ParamCoord::dilatation: ix.dil = a; break;
      case ParamCoord::elation: ix.ela[ps[a].i] = a; break;
    }
  return ix;
}

std::string sup(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

GroupSystem build_group_system(GroupKind kind, const QMatrix& omega_in, std::size_t n) {
  if (kind == GroupKind::projective_line && n != 1)
    throw std::invalid_argument("projective line requires n = 1");
  QMatrix omega = omega_in;
  if (kind == GroupKind::projective_line) omega = QMatrix::identity(1);
  if (omega.rows() != n || omega.cols() != n)
    throw std::invalid_argument("omega must be n x n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (omega.at(i, j) != omega.at(j, i))
        throw std::invalid_argument("omega must be symmetric");
  QMatrix omega_inv = inverse(omega);

  auto x = make_x_vars(n);
  auto xi = [&](std::size_t i) { return Poly::var(x, i); };
  auto xlow = [&](std::size_t i) {  // x_i = omega_{is} x^s
    Poly p(x);
    for (std::size_t s = 0; s < n; ++s) p += xi(s) * omega.at(i, s);
    return p;
  };

  std::vector<VectorField> gens;
  std::vector<ParamCoord> params;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Poly> c(n, Poly(x));
    c[k] = Poly::constant(x, 1);
    gens.emplace_back(std::move(c));
    params.push_back({ParamCoord::translation, k, 0});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Poly> c(n, Poly(x));
      c[j] += xlow(i);
      c[i] -= xlow(j);
      gens.emplace_back(std::move(c));
      params.push_back({ParamCoord::rotation, i, j});
    }
  if (has_dilatation(kind)) {
    std::vector<Poly> c(n);
    for (std::size_t r = 0; r < n; ++r) c[r] = xi(r);
    gens.emplace_back(std::move(c));
    params.push_back({ParamCoord::dilatation, 0, 0});
  }
  if (has_elations(kind)) {
    Poly x2(x);  // omega_{ab} x^a x^b
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) x2 += xi(a) * xi(b) * omega.at(a, b);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<Poly> c(n);
      for (std::size_t r = 0; r < n; ++r) {
        c[r] = xlow(s) * xi(r);
        if (r == s) c[r] -= x2 / Q(2);
      }
      gens.emplace_back(std::move(c));
      params.push_back({ParamCoord::elation, s, 0});
    }
  }

  // Medolaghi form of the Lie equations.
  int q = has_elations(kind) ? 3 : 2;
  LinearSystem lie(n, n, q);
  Q tr = has_dilatation(kind) ? Q(-2) / Q(long(n)) : Q(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::vector<std::tuple<std::size_t, MultiIndex, Q>> row;
      for (std::size_t r = 0; r < n; ++r) {
        row.emplace_back(r, unit(n, i), omega.at(r, j));
        row.emplace_back(r, unit(n, j), omega.at(i, r));
        if (i == j && !is_zero(tr)) row.emplace_back(r, unit(n, r), tr * omega.at(i, j));
      }
      lie.add_row(row);
    }
  if (!has_elations(kind)) {
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& mu : multi_indices_of_degree(n, 2)) lie.add_row({{k, mu, 1}});
  } else {
    Q inv_n = Q(1) / Q(long(n));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          std::vector<std::tuple<std::size_t, MultiIndex, Q>> row{
              {k, unit(n, i) + unit(n, j), 1}};
          for (std::size_t r = 0; r < n; ++r) {
            if (k == i) row.emplace_back(r, unit(n, r) + unit(n, j), -inv_n);
            if (k == j) row.emplace_back(r, unit(n, r) + unit(n, i), -inv_n);
            for (std::size_t s = 0; s < n; ++s)
              row.emplace_back(r, unit(n, r) + unit(n, s),
                               inv_n * omega.at(i, j) * omega_inv.at(k, s));
          }
          lie.add_row(row);
        }
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& mu : multi_indices_of_degree(n, 3)) lie.add_row({{k, mu, 1}});
  }

  return GroupSystem(kind, n, std::move(omega), std::move(omega_inv), x,
                     std::move(gens), std::move(params), std::move(lie));
}

Matrix<Poly> jet_matrix(const GroupSystem& gs) {
  const std::size_t n = gs.n(), N = gs.param_count();
  const auto& om = gs.omega();
  Matrix<Poly> M(N, N);
  for (std::size_t tau = 0; tau < N; ++tau) {
    const auto& th = gs.generators()[tau];
    Poly div(gs.xvars());
    for (std::size_t r = 0; r < n; ++r) div += th[r].diff(r);
    Poly A = div / Q(long(n));
    for (std::size_t a = 0; a < N; ++a) {
      const auto& p = gs.params()[a];
      switch (p.type) {
        case ParamCoord::translation:
          M.at(a, tau) = th[p.i];
          break;
        case ParamCoord::rotation: {  // omega_{jr} d_i theta^r - A omega_{ij}
          Poly v(gs.xvars());
          for (std::size_t r = 0; r < n; ++r) v += th[r].diff(p.i) * om.at(p.j, r);
          M.at(a, tau) = v - A * om.at(p.i, p.j);
          break;
        }
        case ParamCoord::dilatation:
          M.at(a, tau) = A;
          break;
        case ParamCoord::elation:
          M.at(a, tau) = A.diff(p.i);
          break;
      }
    }
  }
  Poly det = bareiss_det(M);
  if (det.is_zero()) throw RankDeficient("jet matrix of the generators is singular");
  return M;
}

LinDiffOp spencer_d1(const GroupSystem& gs) {
  const std::size_t n = gs.n(), N = gs.param_count();
  auto ix = index_params(gs.params());
  const auto& om = gs.omega();
  const auto& omi = gs.omega_inv();
  LinDiffOp D(n, N, N * n, gs.xvars());
  auto C = [&](std::size_t row, std::size_t b, const Q& c) {
    if (!is_zero(c)) D.add(row, b, MultiIndex(n), RatFunc(gs.xvars(), c));
  };
  for (std::size_t a = 0; a < N; ++a) {
    const auto& p = gs.params()[a];
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t row = a * n + r;
      D.set_const(row, a, unit(n, r), 1);
      switch (p.type) {
        case ParamCoord::translation: {
          // xi^k_r = omega^{kj} xi_{r,j} + A delta^k_r
          std::size_t k = p.i;
          for (std::size_t j = 0; j < n; ++j) {
            if (j == r) continue;
            Q sgn = r < j ? 1 : -1;
            std::size_t b = r < j ? ix.rot.at({r, j}) : ix.rot.at({j, r});
            C(row, b, -omi.at(k, j) * sgn);
          }
          if (k == r && ix.dil != SIZE_MAX) C(row, ix.dil, -1);
          break;
        }
        case ParamCoord::rotation:
          // d_r rho_{ij} = omega_{jr} A_i - omega_{ir} A_j
          if (!ix.ela.empty()) {
            C(row, ix.ela.at(p.i), -om.at(p.j, r));
            C(row, ix.ela.at(p.j), om.at(p.i, r));
          }
          break;
        case ParamCoord::dilatation:
          if (!ix.ela.empty()) C(row, ix.ela.at(r), -1);
          break;
        case ParamCoord::elation:
          break;
      }
    }
  }
  return D;
}

LinDiffOp spencer_d2(const GroupSystem& gs) {
  return compatibility_conditions(spencer_d1(gs), 1);
}

EquilibriumSystem equilibrium(const GroupSystem& gs) {
  const std::size_t n = gs.n(), N = gs.param_count();
  LinDiffOp D1 = spencer_d1(gs);
  AdjointResult ad = formal_adjoint(D1);
  LinDiffOp rows(n, N * n, N, gs.xvars());
  for (const auto& [key, c] : ad.op.coeffs()) rows.set(key.eq, key.unknown, key.mu, -c);

  std::vector<std::string> row_labels, dual_labels;
  for (std::size_t a = 0; a < N; ++a) {
    const auto& p = gs.params()[a];
    std::string base;
    switch (p.type) {
      case ParamCoord::translation:
        row_labels.push_back("f^" + sup(p.i));
        base = "sigma^{" + sup(p.i) + ",";
        break;
      case ParamCoord::rotation:
        row_labels.push_back("m^{" + sup(p.i) + sup(p.j) + "}");
        base = "mu^{" + sup(p.i) + sup(p.j) + ",";
        break;
      case ParamCoord::dilatation:
        row_labels.push_back("u");
        base = "nu^{";
        break;
      case ParamCoord::elation:
        row_labels.push_back("v^" + sup(p.i));
        base = "pi^{" + sup(p.i) + ",";
        break;
    }
    for (std::size_t r = 0; r < n; ++r)
      dual_labels.push_back(p.type == ParamCoord::dilatation ? "nu^" + sup(r)
                                                             : base + sup(r) + "}");
  }
  return {std::move(rows), std::move(ad), std::move(row_labels), std::move(dual_labels)};
}

DivergenceForm divergence_certificate(const EquilibriumSystem& eq, const GroupSystem& gs) {
  const std::size_t n = gs.n(), N = gs.param_count();
  Matrix<Poly> M = jet_matrix(gs);
  DivergenceForm out;
  out.rhs = M;
  out.flux.assign(N, std::vector<std::vector<Poly>>(n, std::vector<Poly>(N * n, Poly(gs.xvars()))));
  for (std::size_t tau = 0; tau < N; ++tau) {
    LinDiffOp L(n, N * n, 1, gs.xvars());
    for (const auto& [key, c] : eq.rows.coeffs())
      L.add(0, key.unknown, key.mu, RatFunc(M.at(key.eq, tau)) * c);
    LinDiffOp Div(n, N * n, 1, gs.xvars());
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t r = 0; r < n; ++r) {
        const Poly& w = M.at(a, tau);
        if (w.is_zero()) continue;
        Div.add(0, a * n + r, unit(n, r), RatFunc(w));
        Poly dw = w.diff(r);
        if (!dw.is_zero()) Div.add(0, a * n + r, MultiIndex(n), RatFunc(dw));
        out.flux[tau][r][a * n + r] = w;
      }
    if (!(L == Div))
      throw CertificateFailed("weighted equilibrium rows are not a pure divergence");
  }
  return out;
}

LinDiffOp parametrize(const EquilibriumSystem& eq, const GroupSystem& gs) {
  LinDiffOp D2 = spencer_d2(gs);
  LinDiffOp P = formal_adjoint(D2).op;
  if (!compose(eq.rows, P).is_zero())
    throw CertificateFailed("parametrization does not annihilate the equilibrium rows");
  return P;
}

LinDiffOp airy_parametrization() {
  auto x = make_x_vars(2);
  LinDiffOp A(2, 1, 3, x);
  A.set_const(0, 0, MultiIndex{0, 2}, 1);
  A.set_const(1, 0, MultiIndex{1, 1}, -1);
  A.set_const(2, 0, MultiIndex{2, 0}, 1);
  return A;
}

LinDiffOp planar_cauchy() {
  auto x = make_x_vars(2);
  LinDiffOp C(2, 3, 2, x);
  C.set_const(0, 0, MultiIndex{1, 0}, 1);  // d_1 sigma^{11}
  C.set_const(0, 1, MultiIndex{0, 1}, 1);  // d_2 sigma^{12}
  C.set_const(1, 1, MultiIndex{1, 0}, 1);  // d_1 sigma^{21}
  C.set_const(1, 2, MultiIndex{0, 1}, 1);  // d_2 sigma^{22}
  return C;
}

MaxwellReport maxwell_block(const QMatrix& omega) {
  const std::size_t n = omega.rows();
  if (omega.cols() != n || n < 2) throw std::invalid_argument("omega must be n x n, n >= 2");
  QMatrix omi = inverse(omega);

  // Charge conservation d_i d_r FF^{ir} = 0 for an arbitrary skew polynomial field.
  auto x = make_x_vars(n);
  std::vector<std::vector<Poly>> FF(n, std::vector<Poly>(n, Poly(x)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Poly p = Poly::var(x, i, 2) * Poly::var(x, j) +
               Poly::var(x, i) * Poly::var(x, j, 2) * Q(3) +
               Poly::var(x, (i + j) % n) * Q(long(i) + 2);
      FF[i][j] = p;
      FF[j][i] = -p;
    }
  Poly charge(x);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r) charge += FF[i][r].diff(r).diff(i);

  // Maxwell stress trace, on a fully generic skew field strength.
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l)
      names.push_back("F" + std::to_string(k + 1) + std::to_string(l + 1));
  auto fv = make_vars(names);
  std::vector<std::vector<Poly>> F(n, std::vector<Poly>(n, Poly(fv)));
  std::size_t slot = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      F[k][l] = Poly::var(fv, slot);
      F[l][k] = -F[k][l];
      ++slot;
    }
  std::vector<std::vector<Poly>> Fu(n, std::vector<Poly>(n, Poly(fv)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          Fu[i][j] += F[k][l] * (omi.at(i, k) * omi.at(j, l));
  Poly quad(fv);  // FF^{rs} F_{rs}
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) quad += Fu[r][s] * F[r][s];
  Poly trace(fv);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < n; ++r) trace += Fu[i][r] * F[r][i];
    trace += quad / Q(long(n));
  }
  return {charge.is_zero(), trace.is_zero(), trace};
}

ProjectionChain theorem33_projection(const Poly& A, const std::vector<Poly>& Ai) {
  const std::size_t n = Ai.size();
  ProjectionChain out;
  for (std::size_t i = 0; i < n; ++i) out.B.push_back((A.diff(i) - Ai[i]) * Q(long(n)));
  out.F = Matrix<Poly>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.F.at(i, j) = out.B[j].diff(i) - out.B[i].diff(j);
  return out;
}

}  // namespace jetcalc
