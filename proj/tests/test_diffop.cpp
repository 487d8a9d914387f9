#include "doctest.h"
#include "jetcalc/diffop.hpp"
#include "test_util.hpp"

using namespace jetcalc;
using testutil::random_poly;

namespace {

/// Killing operator for the flat Euclidean metric, n=2:
/// (O_11, O_12, O_22) = (2 d1 xi^1, d1 xi^2 + d2 xi^1, 2 d2 xi^2).
LinDiffOp killing2(const VarSetPtr& X) {
  LinDiffOp P(2, 2, 3, X);
  P.set_const(0, 0, MultiIndex{1, 0}, 2);
  P.set_const(1, 1, MultiIndex{1, 0}, 1);
  P.set_const(1, 0, MultiIndex{0, 1}, 1);
  P.set_const(2, 1, MultiIndex{0, 1}, 2);
  return P;
}

LinDiffOp random_op(const VarSetPtr& X, std::size_t m_in, std::size_t m_out, int order,
                    std::mt19937& rng, bool constant = false) {
  LinDiffOp P(X->size(), m_in, m_out, X);
  std::uniform_int_distribution<int> coin(0, 2);
  for (std::size_t a = 0; a < m_out; ++a)
    for (std::size_t k = 0; k < m_in; ++k)
      for (const auto& mu : multi_indices_up_to(X->size(), order)) {
        if (coin(rng) != 0) continue;
        if (constant)
          P.set_const(a, k, mu, testutil::random_q(rng));
        else
          P.set(a, k, mu, RatFunc(random_poly(X, rng, 2, 2)));
      }
  return P;
}

}  // namespace

TEST_CASE("apply: Killing operator on rotations and dilatations") {
  auto X = make_x_vars(2);
  auto P = killing2(X);
  // rotation is a Killing field
  auto r = P.apply(std::vector<Poly>{Poly::var(X, 1), -Poly::var(X, 0)});
  for (const auto& v : r) CHECK(v.is_zero());
  // dilatation gives twice the metric
  auto d = P.apply(std::vector<Poly>{Poly::var(X, 0), Poly::var(X, 1)});
  CHECK(d[0] == RatFunc(X, 2));
  CHECK(d[1].is_zero());
  CHECK(d[2] == RatFunc(X, 2));
}

TEST_CASE("compose with the identity and associativity") {
  auto X = make_x_vars(2);
  std::mt19937 rng(61);
  auto P = random_op(X, 2, 3, 2, rng);
  CHECK(compose(LinDiffOp::identity(2, 3, X), P) == P);
  CHECK(compose(P, LinDiffOp::identity(2, 2, X)) == P);
  auto Qo = random_op(X, 3, 2, 1, rng);
  auto Ro = random_op(X, 2, 2, 1, rng);
  CHECK(compose(Ro, compose(Qo, P)) == compose(compose(Ro, Qo), P));
}

TEST_CASE("composition agrees with successive application") {
  auto X = make_x_vars(2);
  std::mt19937 rng(67);
  auto P = random_op(X, 2, 2, 2, rng);
  auto Qo = random_op(X, 2, 2, 2, rng);
  std::vector<Poly> u{random_poly(X, rng, 3, 4), random_poly(X, rng, 3, 4)};
  auto via_composite = compose(Qo, P).apply(u);
  auto via_stages = Qo.apply(P.apply(u));
  for (std::size_t i = 0; i < 2; ++i) CHECK(via_composite[i] == via_stages[i]);
}

TEST_CASE("formal adjoint of d/dx is -d/dx") {
  auto X = make_x_vars(1);
  LinDiffOp P(1, 1, 1, X);
  P.set_const(0, 0, MultiIndex{1}, 1);
  auto ad = formal_adjoint(P);
  CHECK(ad.op.coeff(0, 0, MultiIndex{1}) == RatFunc(X, -1));
  CHECK(ad.op.coeff(0, 0, MultiIndex{0}).is_zero());
  CHECK(adjoint_certificate_residual(P, ad).is_zero());
}

TEST_CASE("adjoint coefficients match the closed integration-by-parts formula") {
  auto X = make_x_vars(2);
  std::mt19937 rng(71);
  auto P = random_op(X, 2, 3, 2, rng);
  auto ad = formal_adjoint(P);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t a = 0; a < 3; ++a)
      for (const auto& mu : multi_indices_up_to(2, P.order())) {
        RatFunc expect;
        for (const auto& nu : multi_indices_up_to(2, P.order())) {
          if (!mu.divides(nu)) continue;
          RatFunc c = P.coeff(a, k, nu);
          if (c.is_zero()) continue;
          for (std::size_t i = 0; i < 2; ++i)
            for (int t = 0; t < nu[i] - mu[i]; ++t) c = c.diff(i);
          Q s = Q(mi_binomial(nu, mu));
          if (nu.total() % 2 == 1) s = -s;
          expect += RatFunc(X, s) * c;
        }
        CHECK(ad.op.coeff(k, a, mu) == expect);
      }
}

TEST_CASE("adjoint duality certificate holds formally and on random arguments") {
  auto X = make_x_vars(2);
  std::mt19937 rng(73);
  for (int t = 0; t < 4; ++t) {
    auto P = random_op(X, 2, 2, 2, rng);
    auto ad = formal_adjoint(P);
    CHECK(adjoint_certificate_residual(P, ad).is_zero());
    // numeric cross-check: v.(Pu) - (ad v).u = sum_r d_r(flux_r)
    std::vector<Poly> u{random_poly(X, rng, 2, 3), random_poly(X, rng, 2, 3)};
    std::vector<Poly> v{random_poly(X, rng, 2, 3), random_poly(X, rng, 2, 3)};
    auto Pu = P.apply(u);
    auto adv = ad.op.apply(v);
    RatFunc lhs;
    for (std::size_t a = 0; a < 2; ++a) lhs += RatFunc(v[a]) * Pu[a];
    for (std::size_t k = 0; k < 2; ++k) lhs -= adv[k] * RatFunc(u[k]);
    RatFunc rhs;
    for (std::size_t r = 0; r < 2; ++r) rhs += ad.flux[r].eval(v, u).diff(r);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("adjoint is an involution") {
  auto X = make_x_vars(2);
  std::mt19937 rng(79);
  for (int t = 0; t < 3; ++t) {
    auto P = random_op(X, 2, 3, 3, rng);
    CHECK(formal_adjoint(formal_adjoint(P).op).op == P);
  }
}

TEST_CASE("compatibility conditions: gradient has the curl") {
  auto X = make_x_vars(2);
  LinDiffOp grad(2, 1, 2, X);
  grad.set_const(0, 0, MultiIndex{1, 0}, 1);
  grad.set_const(1, 0, MultiIndex{0, 1}, 1);
  auto cc = compatibility_conditions(grad, 1);
  REQUIRE(cc.m_out() == 1);
  CHECK(compose(cc, grad).is_zero());
  // d2 u_1 - d1 u_2 up to overall sign normalization
  Q c1 = cc.coeff(0, 0, MultiIndex{0, 1}).num().constant_term();
  Q c2 = cc.coeff(0, 1, MultiIndex{1, 0}).num().constant_term();
  CHECK(c1 == -c2);
  CHECK(abs(c1) == 1);
}

TEST_CASE("compatibility conditions: Killing n=2 yields the Riemann relation") {
  auto X = make_x_vars(2);
  auto P = killing2(X);
  auto cc = compatibility_conditions(P, 2);
  REQUIRE(cc.m_out() == 1);
  CHECK(compose(cc, P).is_zero());
  // d22 O_11 + d11 O_22 - 2 d12 O_12 = 0
  CHECK(cc.coeff(0, 0, MultiIndex{0, 2}) == RatFunc(X, 1));
  CHECK(cc.coeff(0, 1, MultiIndex{1, 1}) == RatFunc(X, -2));
  CHECK(cc.coeff(0, 2, MultiIndex{2, 0}) == RatFunc(X, 1));
  CHECK(cc.order() == 2);
}

TEST_CASE("compatibility conditions always compose to zero on random systems") {
  auto X = make_x_vars(2);
  std::mt19937 rng(83);
  for (int t = 0; t < 5; ++t) {
    auto P = random_op(X, 1, 2, 1, rng, /*constant=*/true);
    if (P.is_zero()) continue;
    auto cc = compatibility_conditions(P, 2);
    if (cc.m_out() == 0) continue;
    CHECK(compose(cc, P).is_zero());
  }
}

TEST_CASE("serialization round-trips bit-exactly") {
  auto X = make_x_vars(2);
  std::mt19937 rng(89);
  auto P = random_op(X, 2, 3, 2, rng);
  // include a genuine fraction coefficient
  P.set(0, 0, MultiIndex{0, 0},
        RatFunc(random_poly(X, rng, 2, 2) + Poly::constant(X, 1),
                Poly::var(X, 0, 2) + Poly::constant(X, 1)));
  std::string s = P.serialize();
  auto P2 = LinDiffOp::deserialize(s);
  CHECK(P2 == P);
  CHECK(P2.serialize() == s);
}
