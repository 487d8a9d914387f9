#include <random>

#include "doctest.h"
#include "jetcalc/curvature.hpp"
#include "jetcalc/jets.hpp"

using namespace jetcalc;

namespace {

QMatrix euclid(std::size_t n) { return QMatrix::identity(n); }

QMatrix random_symmetric(std::size_t n, std::mt19937& gen) {
  std::uniform_int_distribution<int> d(-5, 5);
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.at(i, j) = m.at(j, i) = Q(d(gen));
  return m;
}

RiemannTensor random_curvature(std::size_t n, const QMatrix& om, std::mt19937& gen) {
  auto a = kulkarni_nomizu(random_symmetric(n, gen), random_symmetric(n, gen), om);
  auto b = kulkarni_nomizu(random_symmetric(n, gen), random_symmetric(n, gen), om);
  std::vector<Q> c(a.components());
  for (std::size_t t = 0; t < c.size(); ++t) c[t] += b.components()[t];
  return RiemannTensor(n, om, std::move(c));
}

}  // namespace

TEST_CASE("Ricci from the trace adjustment of A") {
  auto om = euclid(4);
  auto R = ricci_from_A(om, om, 4);  // A = omega
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(R.at(i, j) == (i == j ? Q(6) : Q(0)));
  CHECK(R.trace(om) == 24);  // 2(n-1) tr(A)
  auto Z = ricci_from_A(QMatrix(4, 4), om, 4);
  CHECK(Z.trace(om) == 0);
}

TEST_CASE("trace identity tr(R) = 2(n-1) tr(A) and the inverse substitution") {
  std::mt19937 gen(0);
  for (std::size_t n : {3, 4, 5}) {
    auto om = euclid(n);
    for (int rep = 0; rep < 5; ++rep) {
      QMatrix A = random_symmetric(n, gen);
      auto R = ricci_from_A(A, om, n);
      Q trA;
      for (std::size_t i = 0; i < n; ++i) trA += A.at(i, i);
      CHECK(R.trace(om) == Q(2 * (long(n) - 1)) * trA);
      CHECK(a_from_ricci(R, om, n) == A);
    }
  }
}

TEST_CASE("contraction recovers the Ricci input of the lift") {
  std::mt19937 gen(1);
  for (std::size_t n : {3, 4}) {
    auto om = euclid(n);
    for (int rep = 0; rep < 5; ++rep) {
      RicciTensor R(n, random_symmetric(n, gen));
      auto lift = riemann_from_ricci(R, om, n);
      auto back = contract(lift);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) CHECK(back.at(i, j) == R.at(i, j));
    }
  }
}

TEST_CASE("pure-Ricci tensors have no Weyl part") {
  std::mt19937 gen(2);
  auto om = euclid(4);
  for (int rep = 0; rep < 5; ++rep) {
    RicciTensor R(4, random_symmetric(4, gen));
    auto lift = riemann_from_ricci(R, om, 4);
    CHECK(weyl_projection(lift, om, 4).is_zero());
  }
  // zero Ricci lifts to zero
  auto zero = riemann_from_ricci(RicciTensor(4, QMatrix(4, 4)), om, 4);
  for (const Q& v : zero.components()) CHECK(is_zero(v));
}

TEST_CASE("splitting Riemann = lift(Ricci) + Weyl is exact") {
  std::mt19937 gen(3);
  for (std::size_t n : {3, 4}) {
    auto om = euclid(n);
    for (int rep = 0; rep < 5; ++rep) {
      auto T = random_curvature(n, om, gen);
      auto lift = riemann_from_ricci(contract(T), om, n);
      auto W = weyl_projection(T, om, n);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              CHECK(T.at(k, l, i, j) == lift.at(k, l, i, j) + W.at(k, l, i, j));
    }
  }
}

TEST_CASE("Weyl output is trace-free and vanishes identically at n=3") {
  std::mt19937 gen(4);
  auto om3 = euclid(3);
  for (int rep = 0; rep < 8; ++rep)
    CHECK(weyl_projection(random_curvature(3, om3, gen), om3, 3).is_zero());
  // n=4 with an indefinite metric: trace-free but generically nonzero
  QMatrix mink(4, 4);
  for (std::size_t i = 0; i < 4; ++i) mink.at(i, i) = i == 3 ? Q(-1) : Q(1);
  bool saw_nonzero = false;
  for (int rep = 0; rep < 5; ++rep) {
    auto W = weyl_projection(random_curvature(4, mink, gen), mink, 4);
    saw_nonzero = saw_nonzero || !W.is_zero();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        Q tr;
        for (std::size_t r = 0; r < 4; ++r) tr += W.at(r, i, r, j);
        CHECK(is_zero(tr));
      }
  }
  CHECK(saw_nonzero);
}

TEST_CASE("bundle dimension formulas") {
  auto d3 = bundle_dims(3);
  CHECK(d3.F1 == 6);
  CHECK(d3.F1_hat == 0);
  CHECK(d3.diff == 6);
  auto d4 = bundle_dims(4);
  CHECK(d4.F1 == 20);
  CHECK(d4.F1_hat == 10);
  CHECK(d4.diff == 10);
  for (std::size_t n : {4, 5, 6}) {
    auto d = bundle_dims(n);
    CHECK(d.F1 - d.F1_hat == d.diff);
  }
}

TEST_CASE("low dimensions are rejected") {
  auto om = euclid(2);
  CHECK_THROWS(ricci_from_A(om, om, 2));
  CHECK_THROWS(bundle_dims(2));
}

TEST_CASE("constructors verify rather than symmetrize") {
  auto om = euclid(3);
  std::vector<Q> c(81);
  c[0 * 27 + 1 * 9 + 0 * 3 + 1] = 1;  // R^1_{2,12} alone: skew partner missing
  CHECK_THROWS(RiemannTensor(3, om, c));
  QMatrix notsym(3, 3);
  notsym.at(0, 1) = 1;
  CHECK_THROWS(RicciTensor(3, notsym));
  std::vector<Q> w(81);
  w[0 * 27 + 0 * 9 + 0 * 3 + 1] = 1;  // trace survives
  w[0 * 27 + 0 * 9 + 1 * 3 + 0] = -1;
  CHECK_THROWS(WeylTensor(3, w));
}

TEST_CASE("sampled curvature tensors sit in the delta kernel") {
  // cross-check against the Spencer delta map: the cyclic (Bianchi) sum is the
  // image in /\^3 T* (x) T, which must vanish.
  std::mt19937 gen(5);
  for (std::size_t n : {3, 4}) {
    auto om = euclid(n);
    auto T = random_curvature(n, om, gen);
    auto tuples = form_tuples(n, 2);
    auto dom = sym_coords(n, n, 1);
    QMatrix v(tuples.size() * dom.size(), 1);
    for (std::size_t t = 0; t < tuples.size(); ++t)
      for (std::size_t cj = 0; cj < dom.size(); ++cj) {
        std::size_t l = 0;
        while (dom[cj].first[l] == 0) ++l;
        v.at(t * dom.size() + cj, 0) =
            T.at(dom[cj].second, l, tuples[t][0], tuples[t][1]);
      }
    CHECK((delta_map(n, n, 0, 2) * v).is_zero_matrix());
  }
}
