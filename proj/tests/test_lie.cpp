#include "doctest.h"
#include "jetcalc/lie.hpp"
#include "test_util.hpp"

using namespace jetcalc;
using testutil::random_poly;

namespace {

VectorField vf(const VarSetPtr& X, std::initializer_list<std::string> comps) {
  std::vector<Poly> c;
  for (const auto& s : comps) c.push_back(Poly::parse(X, s));
  return VectorField(std::move(c));
}

VectorField random_vf(const VarSetPtr& X, std::mt19937& rng) {
  std::vector<Poly> c;
  for (std::size_t k = 0; k < X->size(); ++k) c.push_back(random_poly(X, rng, 2, 3));
  return VectorField(std::move(c));
}

}  // namespace

TEST_CASE("bracket basics") {
  auto X = make_x_vars(1);
  VectorField d = vf(X, {"1"}), xd = vf(X, {"x1"}), x2d = vf(X, {"1/2*x1^2"});
  CHECK(bracket(d, xd) == d);
  CHECK(bracket(xd, x2d) == x2d);
  CHECK(bracket(d, x2d) == xd);
  CHECK(bracket(xd, xd).is_zero());
}

TEST_CASE("bracket is bilinear, antisymmetric and satisfies Jacobi") {
  auto X = make_x_vars(2);
  std::mt19937 rng(23);
  for (int t = 0; t < 8; ++t) {
    VectorField u = random_vf(X, rng), v = random_vf(X, rng), w = random_vf(X, rng);
    CHECK((bracket(u, v) + bracket(v, u)).is_zero());
    Q a = testutil::random_q(rng);
    CHECK(bracket(u * a + v, w) == bracket(u, w) * a + bracket(v, w));
    VectorField jac = bracket(u, bracket(v, w)) + bracket(v, bracket(w, u)) +
                      bracket(w, bracket(u, v));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("structure constants: affine, conformal line, abelian") {
  auto X = make_x_vars(1);
  auto c_aff = structure_constants({vf(X, {"1"}), vf(X, {"x1"})});
  CHECK(c_aff.at(0, 0, 1) == 1);
  CHECK(c_aff.at(0, 1, 0) == -1);
  CHECK(c_aff.at(1, 0, 1) == 0);
  CHECK(!jacobi_check(c_aff));

  auto c_conf = structure_constants({vf(X, {"1"}), vf(X, {"x1"}), vf(X, {"1/2*x1^2"})});
  CHECK(c_conf.at(0, 0, 1) == 1);  // [t1,t2]=t1
  CHECK(c_conf.at(1, 0, 2) == 1);  // [t1,t3]=t2
  CHECK(c_conf.at(2, 1, 2) == 1);  // [t2,t3]=t3
  CHECK(c_conf.at(0, 1, 2) == 0);
  CHECK(!jacobi_check(c_conf));

  auto Y = make_x_vars(2);
  auto c_ab = structure_constants({vf(Y, {"1", "0"}), vf(Y, {"0", "1"})});
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t s = 0; s < 2; ++s) CHECK(c_ab.at(t, r, s) == 0);
}

TEST_CASE("closure failure is reported with the offending pair") {
  auto X = make_x_vars(1);
  CHECK_THROWS_AS(structure_constants({vf(X, {"1"}), vf(X, {"x1^2"})}), NotClosed);
}

TEST_CASE("jacobi_check rejects perturbed constants") {
  auto X = make_x_vars(1);
  auto c = structure_constants({vf(X, {"1"}), vf(X, {"x1"}), vf(X, {"1/2*x1^2"})});
  c.at(0, 0, 1) = -1;  // flip [t1,t2]=t1: Jacobi on (1,2,3) now fails
  c.at(0, 1, 0) = 1;
  auto w = jacobi_check(c);
  REQUIRE(w.has_value());
  CHECK(!is_zero(w->value));
}

static MCForms affine_mc(const VarSetPtr& A) {
  Poly a1 = Poly::var(A, 0), a2 = Poly::var(A, 1), one = Poly::constant(A, 1);
  MCForms f{Matrix<RatFunc>(2, 2), Matrix<RatFunc>(2, 2)};
  f.omega.at(0, 0) = RatFunc(one);
  f.omega.at(0, 1) = RatFunc(-a1, a2);
  f.omega.at(1, 1) = RatFunc(one, a2);
  f.alpha.at(0, 0) = RatFunc(one);
  f.alpha.at(0, 1) = RatFunc(a1);
  f.alpha.at(1, 1) = RatFunc(a2);
  return f;
}

TEST_CASE("Maurer-Cartan verification for the affine group") {
  auto A = make_vars({"a1", "a2"});
  auto X = make_x_vars(1);
  auto c = structure_constants({vf(X, {"1"}), vf(X, {"x1"})});
  CHECK(!mc_verify(affine_mc(A), c));

  // flipped bracket sign must fail
  StructureConstants bad(2);
  bad.at(0, 0, 1) = -1;
  bad.at(0, 1, 0) = 1;
  CHECK(mc_verify(affine_mc(A), bad).has_value());
}

TEST_CASE("Maurer-Cartan for an abelian group with identity forms") {
  auto A = make_vars({"a1", "a2"});
  Poly one = Poly::constant(A, 1);
  MCForms f{Matrix<RatFunc>(2, 2), Matrix<RatFunc>(2, 2)};
  for (int i = 0; i < 2; ++i) {
    f.omega.at(i, i) = RatFunc(one);
    f.alpha.at(i, i) = RatFunc(one);
  }
  StructureConstants c(2);
  CHECK(!mc_verify(f, c));
}

namespace {

GaugePotential random_potential(const VarSetPtr& X, std::size_t p, std::mt19937& rng) {
  GaugePotential A(X->size(), p, 1);
  for (std::size_t i = 0; i < X->size(); ++i)
    for (std::size_t t = 0; t < p; ++t) A.at({i}, t) = RatFunc(random_poly(X, rng, 2, 3));
  return A;
}

LieForm random_lambda(const VarSetPtr& X, std::size_t p, std::mt19937& rng) {
  LieForm l(X->size(), p, 0);
  for (std::size_t t = 0; t < p; ++t) l.at({}, t) = RatFunc(random_poly(X, rng, 2, 3));
  return l;
}

/// A = a^{-1}da pulled back along polynomial a1(x), a2(x) for the affine group.
GaugePotential flat_affine_potential(const VarSetPtr& X, const Poly& a1, const Poly& a2) {
  GaugePotential A(X->size(), 2, 1);
  for (std::size_t i = 0; i < X->size(); ++i) {
    A.at({i}, 0) = RatFunc(a1.diff(i)) - RatFunc(a1, a2) * RatFunc(a2.diff(i));
    A.at({i}, 1) = RatFunc(a2.diff(i), a2);
  }
  return A;
}

}  // namespace

TEST_CASE("curvature: zero potential, abelian field, flat potentials") {
  auto X = make_x_vars(2);
  auto xc = make_x_vars(1);
  auto c = structure_constants({VectorField({Poly::constant(xc, 1)}),
                                VectorField({Poly::var(xc, 0)})});
  std::mt19937 rng(31);

  GaugePotential zero(2, 2, 1);
  CHECK(curvature(zero, c).is_zero());

  // c = 0: F = dA componentwise
  StructureConstants c0(2);
  GaugePotential A = random_potential(X, 2, rng);
  LieForm F = curvature(A, c0);
  for (std::size_t t = 0; t < 2; ++t)
    CHECK(F.at({0, 1}, t) == A.at({1}, t).diff(0) - A.at({0}, t).diff(1));

  // flat potentials from explicit group elements
  for (int trial = 0; trial < 4; ++trial) {
    Poly a1 = random_poly(X, rng, 2, 3);
    Poly a2 = random_poly(X, rng, 2, 2) * random_poly(X, rng, 1, 1) +
              Poly::constant(X, testutil::random_q(rng, 1, 5));
    if (a2.is_zero()) continue;
    CHECK(curvature(flat_affine_potential(X, a1, a2), c).is_zero());
  }
}

TEST_CASE("nabla squares to the curvature action") {
  auto xc = make_x_vars(1);
  auto c = structure_constants({VectorField({Poly::parse(xc, "1")}),
                                VectorField({Poly::parse(xc, "x1")}),
                                VectorField({Poly::parse(xc, "1/2*x1^2")})});
  auto X = make_x_vars(2);
  std::mt19937 rng(37);
  for (int t = 0; t < 5; ++t) {
    GaugePotential A = random_potential(X, 3, rng);
    LieForm lam = random_lambda(X, 3, rng);
    LieForm F = curvature(A, c);
    LieForm nn = nabla(A, c, nabla(A, c, lam));
    for (std::size_t tau = 0; tau < 3; ++tau) {
      RatFunc expect;
      for (std::size_t rho = 0; rho < 3; ++rho)
        for (std::size_t sigma = 0; sigma < 3; ++sigma) {
          const Q& cc = c.at(tau, rho, sigma);
          if (is_zero(cc)) continue;
          expect += RatFunc(X, cc) * F.at({0, 1}, rho) * lam.at({}, sigma);
        }
      CHECK(nn.at({0, 1}, tau) == expect);
    }
  }
}

TEST_CASE("nabla with zero potential is the exterior derivative") {
  auto X = make_x_vars(2);
  StructureConstants c0(2);
  GaugePotential zero(2, 2, 1);
  std::mt19937 rng(41);
  LieForm lam = random_lambda(X, 2, rng);
  LieForm d1 = nabla(zero, c0, lam);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t t = 0; t < 2; ++t) CHECK(d1.at({i}, t) == lam.at({}, t).diff(i));
  CHECK(nabla(zero, c0, d1).is_zero());
}

TEST_CASE("nabla-squared vanishes for flat potentials") {
  auto X = make_x_vars(2);
  auto xc = make_x_vars(1);
  auto c = structure_constants({VectorField({Poly::constant(xc, 1)}),
                                VectorField({Poly::var(xc, 0)})});
  std::mt19937 rng(43);
  Poly a1 = random_poly(X, rng, 2, 3);
  Poly a2 = Poly::var(X, 0) * Poly::var(X, 1) + Poly::constant(X, 3);
  GaugePotential A = flat_affine_potential(X, a1, a2);
  LieForm lam = random_lambda(X, 2, rng);
  CHECK(nabla(A, c, nabla(A, c, lam)).is_zero());
}

TEST_CASE("Poincare Euler-Lagrange residual and duality certificate") {
  auto X = make_x_vars(2);
  auto xc = make_x_vars(1);
  auto c = structure_constants({VectorField({Poly::constant(xc, 1)}),
                                VectorField({Poly::var(xc, 0)})});
  std::mt19937 rng(47);
  GaugePotential A = random_potential(X, 2, rng);
  Matrix<RatFunc> sa(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t t = 0; t < 2; ++t) sa.at(i, t) = RatFunc(random_poly(X, rng, 2, 3));

  // c = 0 reduces to the plain divergence equations
  StructureConstants c0(2);
  auto el0 = poincare_el(A, c0, sa);
  for (std::size_t t = 0; t < 2; ++t)
    CHECK(el0[t] == sa.at(0, t).diff(0) + sa.at(1, t).diff(1));

  Matrix<RatFunc> zero_sa(2, 2);
  for (auto& r : poincare_el(A, c, zero_sa)) CHECK(r.is_zero());

  // duality: (nabla lambda) . A + lambda . EL(A) is a total divergence
  LieForm lam = random_lambda(X, 2, rng);
  CHECK(poincare_duality_residual(A, c, lam, sa).is_zero());
}

TEST_CASE("linearized curvature matches the infinitesimal gauge variation") {
  // delta F = d(delta A) + [delta A, A] + [A, delta A] with delta A = nabla(lambda)
  auto X = make_x_vars(2);
  auto xc = make_x_vars(1);
  auto c = structure_constants({VectorField({Poly::parse(xc, "1")}),
                                VectorField({Poly::parse(xc, "x1")}),
                                VectorField({Poly::parse(xc, "1/2*x1^2")})});
  std::mt19937 rng(53);
  GaugePotential A = random_potential(X, 3, rng);
  LieForm lam = random_lambda(X, 3, rng);
  LieForm dA = nabla(A, c, lam);  // infinitesimal gauge transformation of A

  // F(A + t dA) - F(A) to first order in t, computed two ways
  for (std::size_t tau = 0; tau < 3; ++tau) {
    RatFunc direct = dA.at({1}, tau).diff(0) - dA.at({0}, tau).diff(1);
    for (std::size_t rho = 0; rho < 3; ++rho)
      for (std::size_t sigma = 0; sigma < 3; ++sigma) {
        const Q& cc = c.at(tau, rho, sigma);
        if (is_zero(cc)) continue;
        direct += RatFunc(X, cc) * (dA.at({0}, rho) * A.at({1}, sigma) +
                                    A.at({0}, rho) * dA.at({1}, sigma));
      }
    // and via the curvature action: delta F = c F lambda-type commutator identity
    RatFunc expect;
    for (std::size_t rho = 0; rho < 3; ++rho)
      for (std::size_t sigma = 0; sigma < 3; ++sigma) {
        const Q& cc = c.at(tau, rho, sigma);
        if (is_zero(cc)) continue;
        expect += RatFunc(X, cc) * curvature(A, c).at({0, 1}, rho) * lam.at({}, sigma);
      }
    CHECK(direct == expect);
  }
}
