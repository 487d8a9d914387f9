#ifndef JETCALC_NLJETS_HPP
#define JETCALC_NLJETS_HPP

#include "jetcalc/matrix.hpp"

namespace jetcalc {

struct SingularJet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A (possibly non-holonomic) jet section of order q <= 3: components f^k_mu
/// for 0 <= |mu| <= q, as rational functions of the source coordinates.
/// Doubles as a container for jet fields xi_q in J_q(T).
class JetOfMap {
 public:
  JetOfMap(std::size_t n, int q, VarSetPtr ctx);
  /// j_q of the identity map: f^k = x^k, f^k_i = delta.
  static JetOfMap identity(std::size_t n, int q, const VarSetPtr& ctx);
  /// j_q(f) of an actual polynomial map: every component a true derivative.
  static JetOfMap holonomic(const std::vector<Poly>& f, int q);

  std::size_t n() const { return n_; }
  int order() const { return q_; }
  const VarSetPtr& ctx() const { return x_; }
  RatFunc& at(const MultiIndex& mu, std::size_t k);
  const RatFunc& at(const MultiIndex& mu, std::size_t k) const;
  /// First-order block f^k_i (row k, column i).
  Matrix<RatFunc> jacobian() const;
  JetOfMap truncate(int q) const;
  bool operator==(const JetOfMap& o) const;
  JetOfMap operator+(const JetOfMap& o) const;
  JetOfMap operator-(const JetOfMap& o) const;

 private:
  std::size_t n_;
  int q_;
  VarSetPtr x_;
  std::vector<RatFunc> c_;
};

/// Groupoid composition g_q o f_q by the chain rule in jet coordinates;
/// zero-order components of g are substituted at y = f^0(x).
JetOfMap jet_compose(const JetOfMap& g, const JetOfMap& f);

/// Two-sided inverse in the groupoid, solved triangularly order by order.
/// The zero-order part must be affine with an invertible linear part.
JetOfMap jet_invert(const JetOfMap& f);

/// chi^k_{mu,i} for 0 <= |mu| <= q, valued in rational functions.
class ChiForm {
 public:
  ChiForm(std::size_t n, int q, VarSetPtr ctx);
  std::size_t n() const { return n_; }
  int order() const { return q_; }
  const VarSetPtr& ctx() const { return x_; }
  RatFunc& at(const MultiIndex& mu, std::size_t k, std::size_t i);
  const RatFunc& at(const MultiIndex& mu, std::size_t k, std::size_t i) const;
  /// Column i as a jet field (chi contracted with d/dx^i).
  JetOfMap column(std::size_t i) const;
  /// Contraction chi(xi): jet field with components chi^k_{mu,r} xi^r.
  JetOfMap contract(const std::vector<RatFunc>& xi) const;
  bool is_zero() const;
  bool operator==(const ChiForm& o) const;

 private:
  std::size_t n_;
  int q_;
  VarSetPtr x_;
  std::vector<RatFunc> c_;
};

/// Nonlinear Spencer operator: f of order q+1 -> chi of order q, solved from
/// f^k_r chi^r_{mu,i} + ... + f^k_{mu+1_r} chi^r_{,i} = d_i f^k_mu - f^k_{mu+1_i}.
ChiForm nonlinear_spencer(const JetOfMap& f);

/// Finite gauge transformation chi -> f^{-1} o chi o j_1(f) + Dbar f.
/// chi lives over the target of f; its components are substituted at f^0.
ChiForm gauge_transform_chi(const ChiForm& chi, const JetOfMap& f);

/// Exact directional derivative of nonlinear_spencer at f in direction df
/// (both of order q+1); the nilpotent-t evaluation of chi(f + t df).
ChiForm chi_variation(const JetOfMap& f, const JetOfMap& df);

/// Vertical action f_{q+1}(xi_q): (V xi)^k_mu = sum binom(mu,nu) f^k_{mu-nu+1_r} xi^r_nu.
JetOfMap vertical_action(const JetOfMap& f, const JetOfMap& xi);

/// delta f for the source motion f o (id + t xi):
/// xi^r (d_r f^k_mu - f^k_{mu+1_r}) + V(f)(xi).
JetOfMap source_variation(const JetOfMap& f, const JetOfMap& xi);
/// delta f for the target motion (id + t eta) o f with eta_q = f_{q+1}(xi_q + chi_q(xi)).
JetOfMap target_variation(const JetOfMap& f, const JetOfMap& xi);

struct VariationReport {
  ChiForm source;   // from chi_variation along the source motion
  ChiForm target;   // from chi_variation along the target motion
  ChiForm formula;  // the closed component formulas (q = 0 or 1)
  bool all_equal;
};
struct UnsupportedOrder : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Certifies the three computations of delta chi_q against each other;
/// f must have order q+2, xi order q+1, q in {0, 1}.
VariationReport variation_check(const JetOfMap& f, const JetOfMap& xi);

}  // namespace jetcalc

#endif
