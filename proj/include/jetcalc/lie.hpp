#ifndef JETCALC_LIE_HPP
#define JETCALC_LIE_HPP

#include <array>
#include <map>
#include <optional>

#include "jetcalc/matrix.hpp"
#include "jetcalc/poly.hpp"

namespace jetcalc {

/// Polynomial vector field theta = theta^k(x) d_k on n-dimensional x-space.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<Poly> components) : c_(std::move(components)) {}
  std::size_t dim() const { return c_.size(); }
  const Poly& operator[](std::size_t k) const { return c_[k]; }
  Poly& operator[](std::size_t k) { return c_[k]; }
  const std::vector<Poly>& components() const { return c_; }
  bool is_zero() const {
    for (const auto& p : c_)
      if (!p.is_zero()) return false;
    return true;
  }
  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator*(const Q& s) const;
  bool operator==(const VectorField& o) const { return c_ == o.c_; }

 private:
  std::vector<Poly> c_;
};

/// [v,w]^k = v^r d_r w^k - w^r d_r v^k
VectorField bracket(const VectorField& v, const VectorField& w);

/// c^tau_{rho,sigma}, all three axes of size p.
class StructureConstants {
 public:
  explicit StructureConstants(std::size_t p) : p_(p), c_(p * p * p) {}
  std::size_t dim() const { return p_; }
  Q& at(std::size_t tau, std::size_t rho, std::size_t sigma) {
    return c_[(tau * p_ + rho) * p_ + sigma];
  }
  const Q& at(std::size_t tau, std::size_t rho, std::size_t sigma) const {
    return c_[(tau * p_ + rho) * p_ + sigma];
  }

 private:
  std::size_t p_;
  std::vector<Q> c_;
};

struct NotClosed : std::runtime_error {
  NotClosed(std::size_t rho, std::size_t sigma)
      : std::runtime_error("bracket [theta_" + std::to_string(rho + 1) + ", theta_" +
                           std::to_string(sigma + 1) + "] is outside the span"),
        rho(rho),
        sigma(sigma) {}
  std::size_t rho, sigma;
};

/// Solves [theta_rho, theta_sigma] = c^tau theta_tau exactly; throws NotClosed.
/// Requires the generators to be linearly independent.
StructureConstants structure_constants(const std::vector<VectorField>& gens);

struct JacobiWitness {
  std::size_t lambda, rho, sigma, tau;  // indices of the violated sum (or skew pair)
  Q value;
};

/// Verifies skew-symmetry and the Jacobi condition; nullopt = pass.
std::optional<JacobiWitness> jacobi_check(const StructureConstants& c);

/// Maurer-Cartan data on group coordinates a^1..a^p: omega (left-invariant
/// 1-forms, omega^tau = omega^tau_sigma da^sigma) and alpha (right-invariant
/// fields, alpha_rho = alpha^sigma_rho d_sigma).
struct MCForms {
  Matrix<RatFunc> omega;  // (tau, sigma)
  Matrix<RatFunc> alpha;  // (sigma, rho) — entries of the inverse diagram matrix
};

/// Checks d omega^tau + (1/2)c^tau_{rho sigma} omega^rho wedge omega^sigma = 0
/// componentwise and alpha o omega = id; nullopt = pass, else a description.
std::optional<std::string> mc_verify(const MCForms& forms, const StructureConstants& c);

/// Lie-algebra-valued r-form on x-space: components lambda^tau_J for strictly
/// increasing index tuples J with |J| = r.
class LieForm {
 public:
  LieForm(std::size_t n, std::size_t p, std::size_t degree);
  std::size_t n() const { return n_; }
  std::size_t p() const { return p_; }
  std::size_t degree() const { return r_; }
  /// Component for an increasing tuple J (|J| = degree) and algebra index tau.
  RatFunc& at(const std::vector<std::size_t>& J, std::size_t tau);
  const RatFunc& at(const std::vector<std::size_t>& J, std::size_t tau) const;
  /// Antisymmetric access for arbitrary tuples (0 on repeated indices).
  RatFunc component(const std::vector<std::size_t>& J, std::size_t tau) const;
  const std::vector<std::vector<std::size_t>>& tuples() const { return tuples_; }
  bool operator==(const LieForm& o) const;
  bool is_zero() const;

 private:
  std::size_t n_, p_, r_;
  std::vector<std::vector<std::size_t>> tuples_;
  std::map<std::vector<std::size_t>, std::vector<RatFunc>> comp_;
};

/// Gauge potential A^tau_i(x): a LieForm of degree 1.
using GaugePotential = LieForm;

/// Curvature F^tau_ij = d_i A^tau_j - d_j A^tau_i - c^tau_{rho sigma} A^rho_i A^sigma_j.
LieForm curvature(const GaugePotential& A, const StructureConstants& c);

/// Covariant derivative: on 0-forms (nabla lambda)^tau_i = d_i lambda^tau -
/// c^tau_{rho sigma} A^rho_i lambda^sigma, extended to r-forms by
/// nabla(alpha (x) lambda) = d alpha (x) lambda + (-1)^r alpha ^ nabla lambda.
LieForm nabla(const GaugePotential& A, const StructureConstants& c, const LieForm& lambda);

/// Left-hand side of the Poincare Euler-Lagrange equations:
/// d_i script_a^i_tau + c^sigma_{rho tau} A^rho_i script_a^i_sigma, where
/// script_a is indexed (i, tau).
std::vector<RatFunc> poincare_el(const GaugePotential& A, const StructureConstants& c,
                                 const Matrix<RatFunc>& script_a);

/// Duality residual sum_{tau,i} (nabla lambda)^tau_i a^i_tau +
/// sum_tau lambda^tau EL(a)_tau - sum_i d_i(lambda^tau a^i_tau); identically 0.
RatFunc poincare_duality_residual(const GaugePotential& A, const StructureConstants& c,
                                  const LieForm& lambda, const Matrix<RatFunc>& script_a);

}  // namespace jetcalc

#endif
