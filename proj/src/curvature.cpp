#include "jetcalc/curvature.hpp"

namespace jetcalc {

namespace {

std::size_t flat(std::size_t n, std::size_t k, std::size_t l, std::size_t i, std::size_t j) {
  return ((k * n + l) * n + i) * n + j;
}

void require_n3(std::size_t n, const char* what) {
  if (n < 3) throw std::invalid_argument(std::string(what) + ": requires n >= 3");
}

}  // namespace

RiemannTensor::RiemannTensor(std::size_t n, const QMatrix& omega, std::vector<Q> comp)
    : n_(n), c_(std::move(comp)) {
  if (c_.size() != n * n * n * n) throw std::invalid_argument("RiemannTensor: wrong size");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (c_[flat(n, k, l, i, j)] != -c_[flat(n, k, l, j, i)])
            throw std::invalid_argument("RiemannTensor: not skew in the form indices");
          // lowered skew-symmetry: omega_{kr} R^r_{l,ij} + omega_{lr} R^r_{k,ij} = 0
          Q low;
          for (std::size_t r = 0; r < n; ++r)
            low += omega.at(k, r) * c_[flat(n, r, l, i, j)] +
                   omega.at(l, r) * c_[flat(n, r, k, i, j)];
          if (!is_zero(low))
            throw std::invalid_argument("RiemannTensor: not valued in the isometry symbol");
        }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Q cyc = c_[flat(n, k, l, i, j)] + c_[flat(n, k, i, j, l)] + c_[flat(n, k, j, l, i)];
          if (!is_zero(cyc)) throw std::invalid_argument("RiemannTensor: first Bianchi fails");
        }
}

RicciTensor::RicciTensor(std::size_t n, QMatrix r) : n_(n), r_(std::move(r)) {
  if (r_.rows() != n || r_.cols() != n) throw std::invalid_argument("RicciTensor: wrong size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (r_.at(i, j) != r_.at(j, i))
        throw std::invalid_argument("RicciTensor: not symmetric");
}

Q RicciTensor::trace(const QMatrix& omega_inv) const {
  Q t;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t += omega_inv.at(i, j) * r_.at(i, j);
  return t;
}

WeylTensor::WeylTensor(std::size_t n, std::vector<Q> comp) : n_(n), c_(std::move(comp)) {
  if (c_.size() != n * n * n * n) throw std::invalid_argument("WeylTensor: wrong size");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (c_[flat(n, k, l, i, j)] != -c_[flat(n, k, l, j, i)])
            throw std::invalid_argument("WeylTensor: not skew in the form indices");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Q tr;
      for (std::size_t r = 0; r < n; ++r) tr += c_[flat(n, r, i, r, j)];
      if (!jetcalc::is_zero(tr))
        throw std::invalid_argument("WeylTensor: contraction is nonzero");
    }
}

bool WeylTensor::is_zero() const {
  for (const Q& v : c_)
    if (!jetcalc::is_zero(v)) return false;
  return true;
}

RicciTensor ricci_from_A(const QMatrix& A, const QMatrix& omega, std::size_t n) {
  require_n3(n, "ricci_from_A");
  QMatrix omi = inverse(omega);
  Q trA;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) trA += omi.at(i, j) * A.at(i, j);
  QMatrix R(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      R.at(i, j) = Q(long(n) - 2) * A.at(i, j) + omega.at(i, j) * trA;
  return RicciTensor(n, std::move(R));
}

QMatrix a_from_ricci(const RicciTensor& R, const QMatrix& omega, std::size_t n) {
  require_n3(n, "a_from_ricci");
  Q trR = R.trace(inverse(omega));
  QMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      A.at(i, j) = R.at(i, j) / Q(long(n) - 2) -
                   omega.at(i, j) * trR / Q(2 * (long(n) - 1) * (long(n) - 2));
  return A;
}

RicciTensor contract(const RiemannTensor& Riem) {
  const std::size_t n = Riem.n();
  QMatrix R(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r) R.at(i, j) += Riem.at(r, i, r, j);
  return RicciTensor(n, std::move(R));
}

RiemannTensor riemann_from_ricci(const RicciTensor& R, const QMatrix& omega, std::size_t n) {
  require_n3(n, "riemann_from_ricci");
  QMatrix omi = inverse(omega);
  Q trR = R.trace(omi);
  Q c1 = Q(1) / Q(long(n) - 2);
  Q c2 = Q(1) / Q((long(n) - 1) * (long(n) - 2));
  std::vector<Q> c(n * n * n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Q v;
          if (k == i) v += R.at(l, j);
          if (k == j) v -= R.at(l, i);
          for (std::size_t s = 0; s < n; ++s)
            v -= omi.at(k, s) * (omega.at(l, i) * R.at(s, j) - omega.at(l, j) * R.at(s, i));
          v *= c1;
          Q w;
          if (k == i) w += omega.at(l, j);
          if (k == j) w -= omega.at(l, i);
          v -= c2 * trR * w;
          c[flat(n, k, l, i, j)] = v;
        }
  return RiemannTensor(n, omega, std::move(c));
}

WeylTensor weyl_projection(const RiemannTensor& Riem, const QMatrix& omega, std::size_t n) {
  require_n3(n, "weyl_projection");
  RiemannTensor lift = riemann_from_ricci(contract(Riem), omega, n);
  std::vector<Q> c(n * n * n * n);
  for (std::size_t t = 0; t < c.size(); ++t)
    c[t] = Riem.components()[t] - lift.components()[t];
  return WeylTensor(n, std::move(c));
}

BundleDims bundle_dims(std::size_t n) {
  require_n3(n, "bundle_dims");
  long m = long(n);
  BundleDims d;
  d.F1 = m * m * (m * m - 1) / 12;
  d.F1_hat = m * (m + 1) * (m + 2) * (m - 3) / 12;
  d.diff = m * (m + 1) / 2;
  return d;
}

RiemannTensor kulkarni_nomizu(const QMatrix& h, const QMatrix& k, const QMatrix& omega) {
  const std::size_t n = h.rows();
  QMatrix omi = inverse(omega);
  std::vector<Q> c(n * n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Q low;  // (h o k)_{al,ij} with all indices down
          low = h.at(a, i) * k.at(l, j) + h.at(l, j) * k.at(a, i) -
                h.at(a, j) * k.at(l, i) - h.at(l, i) * k.at(a, j);
          c[flat(n, a, l, i, j)] = low;
        }
  std::vector<Q> up(n * n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t s = 0; s < n; ++s)
            up[flat(n, a, l, i, j)] += omi.at(a, s) * c[flat(n, s, l, i, j)];
  return RiemannTensor(n, omega, std::move(up));
}

}  // namespace jetcalc
