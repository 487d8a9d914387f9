#include "doctest.h"
#include "jetcalc/matrix.hpp"
#include "jetcalc/poly.hpp"
#include "jetcalc/ratfunc.hpp"
#include "test_util.hpp"

using namespace jetcalc;
using testutil::random_poly;

TEST_CASE("rational helpers") {
  CHECK(make_q(2, 4) == make_q(1, 2));
  CHECK(parse_rational("-3/6") == make_q(-1, 2));
  CHECK(binomial(5, 2) == 10);
  CHECK(factorial(5) == 120);
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("multi-index ordering and combinatorics") {
  MultiIndex a{2, 0}, b{1, 1}, c{0, 1};
  CHECK(grlex_cmp(c, a) < 0);   // lower degree first
  CHECK(grlex_cmp(a, b) > 0);   // wait: a=(2,0) has higher first slot -> earlier
  CHECK(mi_binomial(MultiIndex{3, 2}, MultiIndex{1, 1}) == 6);
  CHECK(mi_factorial(MultiIndex{3, 2}) == 12);
  CHECK(multi_indices_of_degree(3, 2).size() == 6);
  CHECK(multi_indices_up_to(3, 2).size() == 10);
  CHECK((a + b) == MultiIndex{3, 1});
  CHECK(b.divides(MultiIndex{2, 1}));
  CHECK(!a.divides(b));
}

TEST_CASE("basic polynomial arithmetic and printing") {
  auto X = make_x_vars(2);
  Poly x1 = Poly::var(X, 0), x2 = Poly::var(X, 1);
  // d1(x1*x2) = x2
  CHECK((x1 * x2).diff(0) == x2);
  // d2( (x1^2 - x2^2)/2 ) = -x2  (derivative of an elation component)
  Poly half_diff = (x1 * x1 - x2 * x2) / Q(2);
  CHECK(half_diff.diff(1) == -x2);
  CHECK(Poly::constant(X, 5).diff(0).is_zero());
  Poly p = x1 * x1 * make_q(3, 2) - x2 + Poly::constant(X, 1);
  CHECK(Poly::parse(X, p.str()) == p);
  CHECK(Poly::parse(X, "3/2*x1^2 - x2 + 1") == p);
}

TEST_CASE("Leibniz rule and commuting partials on random polynomials") {
  auto X = make_x_vars(3);
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    Poly p = random_poly(X, rng), q = random_poly(X, rng);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK((p * q).diff(i) == p.diff(i) * q + p * q.diff(i));
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(p.diff(i).diff(j) == p.diff(j).diff(i));
    }
  }
}

TEST_CASE("substitution and evaluation agree") {
  auto X = make_x_vars(2);
  std::mt19937 rng(11);
  Poly p = random_poly(X, rng);
  Poly im0 = random_poly(X, rng, 2), im1 = random_poly(X, rng, 2);
  auto pt = testutil::random_point(2, rng);
  Q lhs = p.subst({im0, im1}).eval(pt);
  Q rhs = p.eval({im0.eval(pt), im1.eval(pt)});
  CHECK(lhs == rhs);
}

TEST_CASE("exact polynomial division") {
  auto X = make_x_vars(2);
  std::mt19937 rng(3);
  Poly a = random_poly(X, rng) + Poly::constant(X, 1);
  Poly b = random_poly(X, rng) + Poly::var(X, 0, 2);
  CHECK(exact_div(a * b, b) == a);
  CHECK(!try_exact_div(a * b + Poly::constant(X, 1), b).has_value());
}

TEST_CASE("rational function field axioms") {
  auto X = make_x_vars(2);
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    Poly pn = random_poly(X, rng), pd = random_poly(X, rng) + Poly::var(X, 0, 3);
    if (pn.is_zero()) continue;
    RatFunc f(pn, pd);
    CHECK(f * f.inverse() == RatFunc(Poly::constant(X, 1)));
    CHECK(f - f == RatFunc());
    // quotient rule consistency: (f*g)' = f'g + fg'
    RatFunc g(pd, pn);
    RatFunc prod = f * g;
    CHECK(prod.diff(0) == f.diff(0) * g + f * g.diff(0));
  }
}

TEST_CASE("exact rank and kernel") {
  QMatrix id = QMatrix::identity(4);
  CHECK(exact_rank(id) == 4);
  CHECK(exact_kernel(id).empty());
  QMatrix z(3, 5);
  CHECK(exact_rank(z) == 0);
  CHECK(exact_kernel(z).size() == 5);

  QMatrix m(1, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 1;
  auto ker = exact_kernel(m);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0][0] == -ker[0][1]);
}

TEST_CASE("rank-nullity on random matrices") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> dim(1, 7), val(-4, 4);
  for (int t = 0; t < 25; ++t) {
    std::size_t r = dim(rng), c = dim(rng);
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = val(rng);
    auto rank = exact_rank(m);
    auto ker = exact_kernel(m);
    CHECK(rank + ker.size() == c);
    CHECK(rank == bareiss_rank(m));
    // every kernel vector annihilates m
    for (const auto& v : ker)
      for (std::size_t i = 0; i < r; ++i) {
        Q s = 0;
        for (std::size_t j = 0; j < c; ++j) s += m.at(i, j) * v[j];
        CHECK(is_zero(s));
      }
  }
}

TEST_CASE("bareiss determinant matches cofactor expansion on small matrices") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> val(-5, 5);
  QMatrix m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = val(rng);
  Q det = m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
          m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
          m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
  CHECK(bareiss_det(m) == det);
}

TEST_CASE("polynomial-entry determinant and symbolic matrix inverse") {
  auto X = make_x_vars(1);
  Poly x = Poly::var(X, 0), one = Poly::constant(X, 1);
  Matrix<Poly> m(2, 2);
  m.at(0, 0) = one;
  m.at(0, 1) = x;
  m.at(1, 1) = one;
  CHECK(bareiss_det(m) == one);
  Matrix<RatFunc> mf(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) mf.at(i, j) = RatFunc(m.at(i, j));
  auto inv = inverse(mf);
  CHECK(inv.at(0, 1) == RatFunc(-x));
  CHECK((mf * inv).at(0, 0) == RatFunc(one));
  CHECK((mf * inv).at(0, 1) == RatFunc());
}

TEST_CASE("linear solve") {
  QMatrix m(2, 3);
  m.at(0, 0) = 1;
  m.at(0, 2) = 2;
  m.at(1, 1) = 1;
  auto x = solve(m, {Q(4), Q(5)});
  REQUIRE(x.has_value());
  CHECK(m.at(0, 0) * (*x)[0] + m.at(0, 2) * (*x)[2] == 4);
  QMatrix bad(2, 1);
  bad.at(0, 0) = 1;
  bad.at(1, 0) = 1;
  CHECK(!solve(bad, {Q(0), Q(1)}).has_value());
}
