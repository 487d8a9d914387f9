#ifndef JETCALC_GROUPS_HPP
#define JETCALC_GROUPS_HPP

#include "jetcalc/jets.hpp"
#include "jetcalc/lie.hpp"

namespace jetcalc {

enum class GroupKind { killing, weyl, conformal, projective_line };

/// A coordinate of the stabilized Lie-equation fiber R_q, named by its role.
struct ParamCoord {
  enum Type { translation, rotation, dilatation, elation } type;
  std::size_t i = 0, j = 0;  // i<j for rotations; i for translations/elations
};

/// The Lie equations of a classical group over a constant metric, together
/// with its generators and the parametric coordinates of the isotropy fiber.
class GroupSystem {
 public:
  GroupSystem(GroupKind kind, std::size_t n, QMatrix omega, QMatrix omega_inv,
              VarSetPtr x, std::vector<VectorField> gens,
              std::vector<ParamCoord> params, LinearSystem lie)
      : kind_(kind), n_(n), omega_(std::move(omega)), omega_inv_(std::move(omega_inv)),
        x_(std::move(x)), gens_(std::move(gens)), params_(std::move(params)),
        lie_(std::move(lie)) {}

  GroupKind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  const QMatrix& omega() const { return omega_; }
  const QMatrix& omega_inv() const { return omega_inv_; }
  const VarSetPtr& xvars() const { return x_; }
  const std::vector<VectorField>& generators() const { return gens_; }
  const std::vector<ParamCoord>& params() const { return params_; }
  const LinearSystem& lie_equations() const { return lie_; }
  std::size_t param_count() const { return params_.size(); }

 private:
  GroupKind kind_;
  std::size_t n_;
  QMatrix omega_, omega_inv_;
  VarSetPtr x_;
  std::vector<VectorField> gens_;
  std::vector<ParamCoord> params_;
  LinearSystem lie_;
};

/// Generators, Lie equations and parametric coordinates for the given kind;
/// omega must be a non-degenerate symmetric n x n matrix (ignored for the
/// projective line).
GroupSystem build_group_system(GroupKind kind, const QMatrix& omega, std::size_t n);

struct RankDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Square matrix M(x) with (parametric jets of xi) = M(x) lambda, whose
/// columns are the q-jets of the generators.
Matrix<Poly> jet_matrix(const GroupSystem& gs);

/// First Spencer operator on the parametric coordinates: rows d_r p_a minus
/// the next-order jet re-expressed through the fiber isomorphism; row index
/// a*n + r.
LinDiffOp spencer_d1(const GroupSystem& gs);

/// Compatibility conditions of spencer_d1 at order one.
LinDiffOp spencer_d2(const GroupSystem& gs);

/// The adjoint of D_1 written with the paper's orientation (signs flipped
/// after integration by parts): one equation per parametric coordinate, on
/// the dual unknowns indexed like the rows of D_1.
struct EquilibriumSystem {
  LinDiffOp rows;                        // equation a: sum over duals
  AdjointResult adjoint;                 // raw adjoint of D_1 with its flux
  std::vector<std::string> row_labels;   // f^i, m^{ij}, u, v^i
  std::vector<std::string> dual_labels;  // sigma^{k,r}, mu^{ij,r}, nu^r, pi^{i,r}
};
EquilibriumSystem equilibrium(const GroupSystem& gs);

struct CertificateFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pure-divergence form of the equilibrium equations: for every group
/// parameter tau, flux[tau][r][dual] with
///   sum_r d_r(sum_d flux c_d w_d) = sum_a M(a,tau) * (equation a),
/// verified exactly; rhs is M(x) itself (column tau weights the row labels).
struct DivergenceForm {
  std::vector<std::vector<std::vector<Poly>>> flux;
  Matrix<Poly> rhs;
};
DivergenceForm divergence_certificate(const EquilibriumSystem& eq, const GroupSystem& gs);

/// ad(D_2): first-order parametrization of the equilibrium unknowns through
/// dim /\^2 T* (x) R_q potentials; composition with the equilibrium rows is
/// checked to vanish.
LinDiffOp parametrize(const EquilibriumSystem& eq, const GroupSystem& gs);

/// Second-order parametrization of the planar symmetric stress (sigma^{11},
/// sigma^{12}, sigma^{22}) by one potential.
LinDiffOp airy_parametrization();
/// Divergence rows d_1 sigma^{i1} + d_2 sigma^{i2} on symmetric planar stress.
LinDiffOp planar_cauchy();

struct MaxwellReport {
  bool charge_conservation;  // d_i d_r FF^{ir} = 0 for skew FF
  bool stress_traceless;     // trace of the Maxwell stress vanishes
  Poly trace;                // the computed trace (zero polynomial)
};
/// Induction equations and Maxwell stress over the constant metric omega
/// (n = omega.rows()), with a generic skew field strength.
MaxwellReport maxwell_block(const QMatrix& omega);

struct ProjectionChain {
  std::vector<Poly> B;  // B_i = n (d_i A - A_i)
  Matrix<Poly> F;       // F = dB
};
/// The projection of the conformal Spencer chain onto the Poincare sequence.
ProjectionChain theorem33_projection(const Poly& A, const std::vector<Poly>& Ai);

}  // namespace jetcalc

#endif
