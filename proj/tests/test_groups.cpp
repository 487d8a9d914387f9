#include <map>

#include "doctest.h"
#include "jetcalc/groups.hpp"

using namespace jetcalc;

namespace {

QMatrix euclid(std::size_t n) { return QMatrix::identity(n); }

QMatrix diag(std::vector<Q> d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

MultiIndex unit(std::size_t n, std::size_t i) {
  MultiIndex e(n);
  e[i] = 1;
  return e;
}

RatFunc rc(const VarSetPtr& x, const Q& c) { return RatFunc(x, c); }

// One equation of a LinDiffOp as a plain coefficient map, for order-agnostic
// row comparisons.
using Row = std::map<std::pair<std::size_t, MultiIndex>, RatFunc,
                     bool (*)(const std::pair<std::size_t, MultiIndex>&,
                              const std::pair<std::size_t, MultiIndex>&)>;

bool key_less(const std::pair<std::size_t, MultiIndex>& a,
              const std::pair<std::size_t, MultiIndex>& b) {
  if (a.first != b.first) return a.first < b.first;
  return grlex_cmp(a.second, b.second) < 0;
}

Row op_row(const LinDiffOp& P, std::size_t eq) {
  Row r(key_less);
  for (const auto& [key, c] : P.coeffs())
    if (key.eq == eq) r[{key.unknown, key.mu}] = c;
  return r;
}

// Index of the unique equation of P equal to the given row (throws if absent).
std::size_t find_row(const LinDiffOp& P, const Row& want) {
  for (std::size_t e = 0; e < P.m_out(); ++e)
    if (op_row(P, e) == want) return e;
  throw std::runtime_error("row not found");
}

}  // namespace

TEST_CASE("generator counts and parametric coordinates") {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto k = build_group_system(GroupKind::killing, euclid(n), n);
    auto w = build_group_system(GroupKind::weyl, euclid(n), n);
    auto c = build_group_system(GroupKind::conformal, euclid(n), n);
    CHECK(k.param_count() == n * (n + 1) / 2);
    CHECK(w.param_count() == (n * n + n + 2) / 2);
    CHECK(c.param_count() == (n + 1) * (n + 2) / 2);
    CHECK(k.generators().size() == k.param_count());
    CHECK(w.generators().size() == w.param_count());
    CHECK(c.generators().size() == c.param_count());
  }
  CHECK(build_group_system(GroupKind::conformal, euclid(4), 4).param_count() == 15);
  CHECK(build_group_system(GroupKind::projective_line, euclid(1), 1).param_count() == 3);
  CHECK_THROWS(build_group_system(GroupKind::projective_line, euclid(2), 2));
}

TEST_CASE("generators close under bracket and satisfy Jacobi") {
  std::vector<std::pair<GroupKind, std::size_t>> cases = {
      {GroupKind::killing, 2},   {GroupKind::killing, 3},
      {GroupKind::weyl, 2},      {GroupKind::weyl, 3},
      {GroupKind::conformal, 2}, {GroupKind::conformal, 3},
      {GroupKind::projective_line, 1}};
  for (auto [kind, n] : cases) {
    auto gs = build_group_system(kind, euclid(n), n);
    auto sc = structure_constants(gs.generators());
    CHECK(!jacobi_check(sc).has_value());
  }
  // Lorentzian signature closes as well.
  auto lor = build_group_system(GroupKind::conformal, diag({1, -1}), 2);
  CHECK(!jacobi_check(structure_constants(lor.generators())).has_value());
}

TEST_CASE("elation divergence is n omega_{st} x^t") {
  for (auto om : {euclid(3), diag({1, 1, -1})}) {
    auto gs = build_group_system(GroupKind::conformal, om, 3);
    auto x = gs.xvars();
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& th = gs.generators()[gs.param_count() - 3 + s];
      Poly div(x);
      for (std::size_t r = 0; r < 3; ++r) div += th[r].diff(r);
      Poly want(x);
      for (std::size_t t = 0; t < 3; ++t) want += Poly::var(x, t) * (om.at(s, t) * 3);
      CHECK(div == want);
    }
  }
}

TEST_CASE("jet matrix of the projective line") {
  auto gs = build_group_system(GroupKind::projective_line, euclid(1), 1);
  auto M = jet_matrix(gs);
  auto x = gs.xvars();
  auto P = [&](const char* s) { return Poly::parse(x, s); };
  Matrix<Poly> want(3, 3);
  Poly row0[] = {P("1"), P("x1"), P("1/2*x1^2")};
  Poly row1[] = {P("0"), P("1"), P("x1")};
  Poly row2[] = {P("0"), P("0"), P("1")};
  for (int j = 0; j < 3; ++j) {
    want.at(0, j) = row0[j];
    want.at(1, j) = row1[j];
    want.at(2, j) = row2[j];
  }
  CHECK(M == want);
  CHECK(bareiss_det(M) == P("1"));
}

TEST_CASE("jet matrix of the Weyl group, n=2") {
  auto gs = build_group_system(GroupKind::weyl, euclid(2), 2);
  auto M = jet_matrix(gs);
  auto x = gs.xvars();
  auto P = [&](const char* s) { return Poly::parse(x, s); };
  const char* rows[4][4] = {{"1", "0", "-x2", "x1"},
                            {"0", "1", "x1", "x2"},
                            {"0", "0", "1", "0"},
                            {"0", "0", "0", "1"}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(M.at(i, j) == P(rows[i][j]));
  CHECK(bareiss_det(M) == P("1"));
}

TEST_CASE("jet matrix of the Mobius group, n=2") {
  auto gs = build_group_system(GroupKind::conformal, euclid(2), 2);
  auto M = jet_matrix(gs);
  auto x = gs.xvars();
  auto P = [&](const char* s) { return Poly::parse(x, s); };
  const char* rows[6][6] = {
      {"1", "0", "-x2", "x1", "1/2*x1^2 - 1/2*x2^2", "x1*x2"},
      {"0", "1", "x1", "x2", "x1*x2", "1/2*x2^2 - 1/2*x1^2"},
      {"0", "0", "1", "0", "x2", "-x1"},
      {"0", "0", "0", "1", "x1", "x2"},
      {"0", "0", "0", "0", "1", "0"},
      {"0", "0", "0", "0", "0", "1"}};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(M.at(i, j) == P(rows[i][j]));
  CHECK(bareiss_det(M) == P("1"));
}

TEST_CASE("jet matrices are unimodular for n=3") {
  for (auto kind : {GroupKind::killing, GroupKind::weyl, GroupKind::conformal}) {
    auto gs = build_group_system(kind, euclid(3), 3);
    Poly det = bareiss_det(jet_matrix(gs));
    CHECK(det.degree() == 0);
  }
}

TEST_CASE("first Spencer operator annihilates the jets of the generators") {
  for (auto [kind, n] : std::vector<std::pair<GroupKind, std::size_t>>{
           {GroupKind::projective_line, 1},
           {GroupKind::killing, 3},
           {GroupKind::conformal, 2}}) {
    auto gs = build_group_system(kind, euclid(n), n);
    auto D1 = spencer_d1(gs);
    auto M = jet_matrix(gs);
    for (std::size_t tau = 0; tau < gs.param_count(); ++tau) {
      std::vector<Poly> col;
      for (std::size_t a = 0; a < gs.param_count(); ++a) col.push_back(M.at(a, tau));
      for (const auto& v : D1.apply(col)) CHECK(v.is_zero());
    }
  }
}

TEST_CASE("Spencer operator of the projective line") {
  auto gs = build_group_system(GroupKind::projective_line, euclid(1), 1);
  auto D1 = spencer_d1(gs);
  auto x = gs.xvars();
  CHECK(D1.m_in() == 3);
  CHECK(D1.m_out() == 3);
  Row r0(key_less), r1(key_less), r2(key_less);
  r0[{0, MultiIndex{1}}] = rc(x, 1);  // d xi - A
  r0[{1, MultiIndex{0}}] = rc(x, -1);
  r1[{1, MultiIndex{1}}] = rc(x, 1);  // d A - A_1
  r1[{2, MultiIndex{0}}] = rc(x, -1);
  r2[{2, MultiIndex{1}}] = rc(x, 1);  // d A_1
  CHECK(op_row(D1, 0) == r0);
  CHECK(op_row(D1, 1) == r1);
  CHECK(op_row(D1, 2) == r2);
}

TEST_CASE("second Spencer operator, Killing n=2") {
  auto gs = build_group_system(GroupKind::killing, euclid(2), 2);
  auto D1 = spencer_d1(gs);
  auto D2 = spencer_d2(gs);
  auto x = gs.xvars();
  CHECK(D2.m_out() == 3);
  CHECK(compose(D2, D1).is_zero());
  // d_2(d_1 xi^1) - d_1(d_2 xi^1) picks up the zero-order rho couplings.
  Row a(key_less), b(key_less), c(key_less);
  a[{0, unit(2, 1)}] = rc(x, 1);
  a[{1, unit(2, 0)}] = rc(x, -1);
  a[{4, MultiIndex(2)}] = rc(x, 1);
  b[{2, unit(2, 1)}] = rc(x, 1);
  b[{3, unit(2, 0)}] = rc(x, -1);
  b[{5, MultiIndex(2)}] = rc(x, 1);
  c[{4, unit(2, 1)}] = rc(x, 1);
  c[{5, unit(2, 0)}] = rc(x, -1);
  CHECK_NOTHROW(find_row(D2, a));
  CHECK_NOTHROW(find_row(D2, b));
  CHECK_NOTHROW(find_row(D2, c));
}

TEST_CASE("second Spencer operator sizes and exactness") {
  auto pl = build_group_system(GroupKind::projective_line, euclid(1), 1);
  CHECK(spencer_d2(pl).m_out() == 0);
  auto gs = build_group_system(GroupKind::conformal, euclid(2), 2);
  auto D2 = spencer_d2(gs);
  CHECK(D2.m_out() == 6);  // dim /\^2 T* (x) R_3
  CHECK(compose(D2, spencer_d1(gs)).is_zero());
}

TEST_CASE("equilibrium equations of the projective line") {
  auto gs = build_group_system(GroupKind::projective_line, euclid(1), 1);
  auto eq = equilibrium(gs);
  auto x = gs.xvars();
  // d sigma = f, d nu + sigma = u, d pi + nu = v
  Row r0(key_less), r1(key_less), r2(key_less);
  r0[{0, MultiIndex{1}}] = rc(x, 1);
  r1[{1, MultiIndex{1}}] = rc(x, 1);
  r1[{0, MultiIndex{0}}] = rc(x, 1);
  r2[{2, MultiIndex{1}}] = rc(x, 1);
  r2[{1, MultiIndex{0}}] = rc(x, 1);
  CHECK(op_row(eq.rows, 0) == r0);
  CHECK(op_row(eq.rows, 1) == r1);
  CHECK(op_row(eq.rows, 2) == r2);
  CHECK(eq.row_labels == std::vector<std::string>{"f^1", "u", "v^1"});
  CHECK(eq.dual_labels == std::vector<std::string>{"sigma^{1,1}", "nu^1", "pi^{1,1}"});
}

TEST_CASE("Cauchy, Cosserat and Clausius equations, Weyl n=2") {
  auto gs = build_group_system(GroupKind::weyl, euclid(2), 2);
  auto eq = equilibrium(gs);
  auto x = gs.xvars();
  // duals: sigma^{1,r}=0,1  sigma^{2,r}=2,3  mu^{12,r}=4,5  nu^r=6,7
  Row cauchy1(key_less), cauchy2(key_less), cosserat(key_less), clausius(key_less);
  cauchy1[{0, unit(2, 0)}] = rc(x, 1);
  cauchy1[{1, unit(2, 1)}] = rc(x, 1);
  cauchy2[{2, unit(2, 0)}] = rc(x, 1);
  cauchy2[{3, unit(2, 1)}] = rc(x, 1);
  cosserat[{4, unit(2, 0)}] = rc(x, 1);
  cosserat[{5, unit(2, 1)}] = rc(x, 1);
  cosserat[{2, MultiIndex(2)}] = rc(x, 1);   // + sigma^{2,1}
  cosserat[{1, MultiIndex(2)}] = rc(x, -1);  // - sigma^{1,2}
  clausius[{6, unit(2, 0)}] = rc(x, 1);
  clausius[{7, unit(2, 1)}] = rc(x, 1);
  clausius[{0, MultiIndex(2)}] = rc(x, 1);
  clausius[{3, MultiIndex(2)}] = rc(x, 1);
  CHECK(op_row(eq.rows, 0) == cauchy1);
  CHECK(op_row(eq.rows, 1) == cauchy2);
  CHECK(op_row(eq.rows, 2) == cosserat);
  CHECK(op_row(eq.rows, 3) == clausius);
  CHECK(eq.row_labels == std::vector<std::string>{"f^1", "f^2", "m^{12}", "u"});
  CHECK(eq.dual_labels[4] == "mu^{12,1}");
  CHECK(eq.dual_labels[6] == "nu^1");
}

TEST_CASE("Maxwell-Weyl elation equations, conformal n=2") {
  auto gs = build_group_system(GroupKind::conformal, euclid(2), 2);
  auto eq = equilibrium(gs);
  auto x = gs.xvars();
  // duals: sigma 0..3, mu^{12,r} 4,5, nu^r 6,7, pi^{1,r} 8,9, pi^{2,r} 10,11
  Row v1(key_less), v2(key_less);
  v1[{8, unit(2, 0)}] = rc(x, 1);
  v1[{9, unit(2, 1)}] = rc(x, 1);
  v1[{5, MultiIndex(2)}] = rc(x, 1);  // + mu^{12,2}
  v1[{6, MultiIndex(2)}] = rc(x, 1);  // + nu^1
  v2[{10, unit(2, 0)}] = rc(x, 1);
  v2[{11, unit(2, 1)}] = rc(x, 1);
  v2[{4, MultiIndex(2)}] = rc(x, -1);  // - mu^{12,1}
  v2[{7, MultiIndex(2)}] = rc(x, 1);   // + nu^2
  CHECK(op_row(eq.rows, 4) == v1);
  CHECK(op_row(eq.rows, 5) == v2);
  CHECK(eq.row_labels[4] == "v^1");
  CHECK(eq.row_labels[5] == "v^2");
  // the adjoint certificate of D_1 itself is exact
  auto D1 = spencer_d1(gs);
  CHECK(adjoint_certificate_residual(D1, eq.adjoint).is_zero());
}

TEST_CASE("divergence certificates for every boxed identity") {
  for (auto [kind, n] : std::vector<std::pair<GroupKind, std::size_t>>{
           {GroupKind::projective_line, 1},
           {GroupKind::killing, 2},
           {GroupKind::killing, 3},
           {GroupKind::weyl, 2},
           {GroupKind::conformal, 2},
           {GroupKind::conformal, 3}}) {
    auto gs = build_group_system(kind, euclid(n), n);
    auto eq = equilibrium(gs);
    CHECK_NOTHROW(divergence_certificate(eq, gs));
  }
}

TEST_CASE("projective line fluxes, including the quadratic weight") {
  auto gs = build_group_system(GroupKind::projective_line, euclid(1), 1);
  auto d = divergence_certificate(equilibrium(gs), gs);
  auto x = gs.xvars();
  auto P = [&](const char* s) { return Poly::parse(x, s); };
  CHECK(d.flux[0][0] == std::vector<Poly>{P("1"), P("0"), P("0")});
  CHECK(d.flux[1][0] == std::vector<Poly>{P("x1"), P("1"), P("0")});
  // x f weight: d(1/2 x^2 sigma + x nu + pi) = 1/2 x^2 (d sigma) + x (d nu + sigma) + (d pi + nu)
  CHECK(d.flux[2][0] == std::vector<Poly>{P("1/2*x1^2"), P("x1"), P("1")});
}

TEST_CASE("Weyl n=2 rotation and dilatation fluxes") {
  auto gs = build_group_system(GroupKind::weyl, euclid(2), 2);
  auto d = divergence_certificate(equilibrium(gs), gs);
  auto x = gs.xvars();
  auto P = [&](const char* s) { return Poly::parse(x, s); };
  for (std::size_t r = 0; r < 2; ++r) {
    // rotation: x^1 sigma^{2,r} - x^2 sigma^{1,r} + mu^{12,r}
    CHECK(d.flux[2][r][0 * 2 + r] == P("-x2"));
    CHECK(d.flux[2][r][1 * 2 + r] == P("x1"));
    CHECK(d.flux[2][r][2 * 2 + r] == P("1"));
    // dilatation: x^1 sigma^{1,r} + x^2 sigma^{2,r} + nu^r
    CHECK(d.flux[3][r][0 * 2 + r] == P("x1"));
    CHECK(d.flux[3][r][1 * 2 + r] == P("x2"));
    CHECK(d.flux[3][r][2 * 2 + r] == P("0"));
    CHECK(d.flux[3][r][3 * 2 + r] == P("1"));
  }
}

TEST_CASE("Mobius n=2 elation fluxes") {
  auto gs = build_group_system(GroupKind::conformal, euclid(2), 2);
  auto d = divergence_certificate(equilibrium(gs), gs);
  auto x = gs.xvars();
  auto P = [&](const char* s) { return Poly::parse(x, s); };
  for (std::size_t r = 0; r < 2; ++r) {
    CHECK(d.flux[4][r][0 * 2 + r] == P("1/2*x1^2 - 1/2*x2^2"));
    CHECK(d.flux[4][r][1 * 2 + r] == P("x1*x2"));
    CHECK(d.flux[4][r][2 * 2 + r] == P("x2"));
    CHECK(d.flux[4][r][3 * 2 + r] == P("x1"));
    CHECK(d.flux[4][r][4 * 2 + r] == P("1"));
    CHECK(d.flux[5][r][0 * 2 + r] == P("x1*x2"));
    CHECK(d.flux[5][r][1 * 2 + r] == P("1/2*x2^2 - 1/2*x1^2"));
    CHECK(d.flux[5][r][2 * 2 + r] == P("-x1"));
    CHECK(d.flux[5][r][3 * 2 + r] == P("x2"));
    CHECK(d.flux[5][r][5 * 2 + r] == P("1"));
  }
}

TEST_CASE("three-potential parametrization of planar stress") {
  auto gs = build_group_system(GroupKind::killing, euclid(2), 2);
  auto eq = equilibrium(gs);
  auto P = parametrize(eq, gs);
  auto x = gs.xvars();
  CHECK(P.m_in() == 3);
  CHECK(P.m_out() == 6);
  // identify the potentials through their zero-order entries in the couple rows
  std::size_t p1 = SIZE_MAX, p2 = SIZE_MAX;
  for (std::size_t c = 0; c < 3; ++c) {
    if (P.coeff(4, c, MultiIndex(2)) == rc(x, 1)) p1 = c;
    if (P.coeff(5, c, MultiIndex(2)) == rc(x, 1)) p2 = c;
  }
  REQUIRE(p1 != SIZE_MAX);
  REQUIRE(p2 != SIZE_MAX);
  std::size_t p3 = 3 - p1 - p2;
  // sigma^{1,1} = -d_2 phi^1, sigma^{1,2} = d_1 phi^1
  CHECK(P.coeff(0, p1, unit(2, 1)) == rc(x, -1));
  CHECK(P.coeff(1, p1, unit(2, 0)) == rc(x, 1));
  // sigma^{2,1} = -d_2 phi^2, sigma^{2,2} = d_1 phi^2
  CHECK(P.coeff(2, p2, unit(2, 1)) == rc(x, -1));
  CHECK(P.coeff(3, p2, unit(2, 0)) == rc(x, 1));
  // mu^{12,1} = phi^1 - d_2 phi^3, mu^{12,2} = phi^2 + d_1 phi^3
  CHECK(P.coeff(4, p3, unit(2, 1)) == rc(x, -1));
  CHECK(P.coeff(5, p3, unit(2, 0)) == rc(x, 1));
  // and nothing else anywhere
  CHECK(P.coeffs().size() == 8);
  CHECK(compose(eq.rows, P).is_zero());
}

TEST_CASE("parametrization chains and potential counts") {
  for (auto [kind, n] : std::vector<std::pair<GroupKind, std::size_t>>{
           {GroupKind::projective_line, 1},
           {GroupKind::killing, 2},
           {GroupKind::killing, 3},
           {GroupKind::conformal, 2},
           {GroupKind::conformal, 3}}) {
    auto gs = build_group_system(kind, euclid(n), n);
    auto eq = equilibrium(gs);
    auto P = parametrize(eq, gs);
    long want = kind == GroupKind::projective_line
                    ? 0
                    : (kind == GroupKind::killing
                           ? long(n * n * (n * n - 1) / 4)
                           : long(n * (n * n - 1) * (n + 2) / 4));
    CHECK(long(P.m_in()) == want);
  }
}

TEST_CASE("Airy parametrization and planar equilibrium") {
  auto A = airy_parametrization();
  auto C = planar_cauchy();
  CHECK(compose(C, A).is_zero());
  auto x = A.xvars();
  // phi = 1/2 (x^1)^2 gives the uniaxial stress (0, 0, 1)
  std::vector<Poly> phi{Poly::parse(x, "1/2*x1^2")};
  auto s = A.apply(phi);
  CHECK(s[0].is_zero());
  CHECK(s[1].is_zero());
  CHECK(s[2] == RatFunc(Poly::constant(x, 1)));
  // a non-trivial stress is divergence-free
  std::vector<Poly> psi{Poly::parse(x, "x1^3*x2 - 2*x1*x2^3")};
  auto sig = A.apply(psi);
  std::vector<Poly> sp;
  for (const auto& v : sig) sp.push_back(v.num());
  for (const auto& v : C.apply(sp)) CHECK(v.is_zero());
}

TEST_CASE("Maxwell block: charge conservation and traceless stress") {
  auto mink = diag({1, 1, 1, -1});
  auto rep = maxwell_block(mink);
  CHECK(rep.charge_conservation);
  CHECK(rep.stress_traceless);
  CHECK(rep.trace.is_zero());
  auto rep3 = maxwell_block(euclid(3));
  CHECK(rep3.charge_conservation);
  CHECK(rep3.stress_traceless);
}

TEST_CASE("projection chain B = n(dA - A.), F = dB") {
  auto x = make_x_vars(3);
  Poly A = Poly::parse(x, "x1*x2 + x3^2");
  std::vector<Poly> Ai = {Poly::parse(x, "x2^2"), Poly::parse(x, "x1 - x3"),
                          Poly::parse(x, "2*x3 + x1*x2")};
  auto ch = theorem33_projection(A, Ai);
  for (std::size_t i = 0; i < 3; ++i) CHECK(ch.B[i] == (A.diff(i) - Ai[i]) * Q(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(ch.F.at(i, j) == (Ai[i].diff(j) - Ai[j].diff(i)) * Q(3));
      CHECK(ch.F.at(i, j) == -ch.F.at(j, i));
    }
  // closedness dF = 0
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        CHECK((ch.F.at(i, j).diff(k) + ch.F.at(j, k).diff(i) + ch.F.at(k, i).diff(j))
                  .is_zero());
  // integrable sections are flat
  std::vector<Poly> grad = {A.diff(0), A.diff(1), A.diff(2)};
  auto flat = theorem33_projection(A, grad);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(flat.B[i].is_zero());
    for (std::size_t j = 0; j < 3; ++j) CHECK(flat.F.at(i, j).is_zero());
  }
}

TEST_CASE("first-order reduction identities of the conformal jets") {
  for (std::size_t n : {2, 3, 4}) {
    auto x = make_x_vars(n);
    QMatrix om = n == 2 ? diag({1, -1}) : euclid(n);
    QMatrix omi = inverse(om);
    // arbitrary polynomial sections for the trace part and the elation jets
    Poly A(x);
    std::vector<Poly> Ai;
    for (std::size_t i = 0; i < n; ++i) {
      A += Poly::var(x, i, 2) * Q(long(i) + 1);
      Ai.push_back(Poly::var(x, i) * Poly::var(x, (i + 1) % n) + Poly::constant(x, Q(long(i) - 1)));
    }
    // parametric second jets xi^k_{ij} = delta^k_i A_j + delta^k_j A_i - omega_{ij} omega^{kr} A_r
    auto xi2 = [&](std::size_t k, std::size_t i, std::size_t j) {
      Poly p(x);
      if (k == i) p += Ai[j];
      if (k == j) p += Ai[i];
      for (std::size_t r = 0; r < n; ++r) p -= Ai[r] * (om.at(i, j) * omi.at(k, r));
      return p;
    };
    for (std::size_t i = 0; i < n; ++i) {
      // contraction xi^r_{ri} = n A_i, hence d_i A - A_i = (1/n)(d_i xi^r_r - xi^r_{ri})
      Poly tr(x);
      for (std::size_t r = 0; r < n; ++r) tr += xi2(r, r, i);
      CHECK(tr == Ai[i] * Q(long(n)));
      Poly lhs = A.diff(i) - Ai[i];
      Poly rhs = (A.diff(i) * Q(long(n)) - tr) / Q(long(n));
      CHECK(lhs == rhs);
      // and d_i A_j is the contraction of the third jets in the same normalization
      for (std::size_t j = 0; j < n; ++j) {
        Poly trj(x);
        for (std::size_t r = 0; r < n; ++r) trj += xi2(r, r, j).diff(i);
        CHECK(Ai[j].diff(i) == trj / Q(long(n)));
      }
    }
  }
}

TEST_CASE("Lie equation solution spaces have the group dimension") {
  for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(3)}) {
    for (auto kind : {GroupKind::killing, GroupKind::weyl, GroupKind::conformal}) {
      auto gs = build_group_system(kind, euclid(n), n);
      CHECK(gs.lie_equations().dim() == long(gs.param_count()));
    }
  }
}
