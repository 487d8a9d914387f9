#ifndef JETCALC_CURVATURE_HPP
#define JETCALC_CURVATURE_HPP

#include "jetcalc/matrix.hpp"

namespace jetcalc {

/// Algebraic curvature tensor R^k_{l,ij} over a constant metric: skew in
/// (i,j), skew in (k,l) once the first index is lowered, first Bianchi
/// identity. Constructors verify the symmetries, they never symmetrize.
class RiemannTensor {
 public:
  RiemannTensor(std::size_t n, const QMatrix& omega, std::vector<Q> comp);
  std::size_t n() const { return n_; }
  const Q& at(std::size_t k, std::size_t l, std::size_t i, std::size_t j) const {
    return c_[((k * n_ + l) * n_ + i) * n_ + j];
  }
  const std::vector<Q>& components() const { return c_; }
  bool operator==(const RiemannTensor& o) const { return c_ == o.c_; }

 private:
  std::size_t n_;
  std::vector<Q> c_;
};

class RicciTensor {
 public:
  RicciTensor(std::size_t n, QMatrix r);  // verifies symmetry
  std::size_t n() const { return n_; }
  const QMatrix& matrix() const { return r_; }
  const Q& at(std::size_t i, std::size_t j) const { return r_.at(i, j); }
  Q trace(const QMatrix& omega_inv) const;

 private:
  std::size_t n_;
  QMatrix r_;
};

/// Trace-free part: skew in (i,j) with W^r_{i,rj} = 0 (verified).
class WeylTensor {
 public:
  WeylTensor(std::size_t n, std::vector<Q> comp);
  std::size_t n() const { return n_; }
  const Q& at(std::size_t k, std::size_t l, std::size_t i, std::size_t j) const {
    return c_[((k * n_ + l) * n_ + i) * n_ + j];
  }
  bool is_zero() const;

 private:
  std::size_t n_;
  std::vector<Q> c_;
};

/// R_ij = (n-2) A_ij + omega_ij tr(A); requires n >= 3.
RicciTensor ricci_from_A(const QMatrix& A, const QMatrix& omega, std::size_t n);
/// Inverse of the above: A = R/(n-2) - omega tr(R)/(2(n-1)(n-2)).
QMatrix a_from_ricci(const RicciTensor& R, const QMatrix& omega, std::size_t n);

/// Ricci contraction R_ij = R^r_{i,rj}.
RicciTensor contract(const RiemannTensor& Riem);

/// The canonical lift with contract(lift(R)) = R; requires n >= 3.
RiemannTensor riemann_from_ricci(const RicciTensor& R, const QMatrix& omega, std::size_t n);

/// W = Riem - lift(contract(Riem)); requires n >= 3.
WeylTensor weyl_projection(const RiemannTensor& Riem, const QMatrix& omega, std::size_t n);

struct BundleDims {
  long F1;      // n^2(n^2-1)/12
  long F1_hat;  // n(n+1)(n+2)(n-3)/12
  long diff;    // n(n+1)/2
};
BundleDims bundle_dims(std::size_t n);  // n >= 3

/// Kulkarni-Nomizu product of symmetric h, k, index raised with omega^{-1}:
/// a curvature tensor for any symmetric inputs; such products span.
RiemannTensor kulkarni_nomizu(const QMatrix& h, const QMatrix& k, const QMatrix& omega);

}  // namespace jetcalc

#endif
