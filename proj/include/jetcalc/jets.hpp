#ifndef JETCALC_JETS_HPP
#define JETCALC_JETS_HPP

#include "jetcalc/diffop.hpp"

namespace jetcalc {

/// dim S_qT* = binom(q+n-1, q)
long dim_sym(std::size_t n, int q);
/// dim J_q for a single unknown = binom(q+n, q)
long dim_jet(std::size_t n, int q);

struct JetDimRow {
  int q;
  long sym;  // dim S_qT*
  long jet;  // dim J_q(E), m unknowns
};
std::vector<JetDimRow> jet_dim_table(std::size_t n, std::size_t m, int q_max);

/// Jet coordinate y^k_mu: (mu, unknown index k).
using JetCoord = std::pair<MultiIndex, std::size_t>;
/// All coordinates |mu| <= q, graded-lex ascending in mu, then by unknown.
std::vector<JetCoord> jet_coords(std::size_t n, std::size_t m, int q);
/// Top-degree coordinates |mu| = q only (coordinates on S_qT* (x) E).
std::vector<JetCoord> sym_coords(std::size_t n, std::size_t m, int q);

/// Constant-coefficient linear system R_q in J_q: rows of an exact matrix
/// over the jet coordinates.
class LinearSystem {
 public:
  LinearSystem(std::size_t n, std::size_t m, int q);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  int q() const { return q_; }
  const QMatrix& rows() const { return rows_; }

  /// Append the equation sum c * y^k_mu = 0 given as (k, mu, c) terms.
  void add_row(const std::vector<std::tuple<std::size_t, MultiIndex, Q>>& terms);
  /// Rows from a constant-coefficient operator, one per equation, at order q
  /// = order of P (or the explicit q if larger).
  static LinearSystem from_operator(const LinDiffOp& P, int q = -1);

  long dim() const;  // dim J_q(E) - rank
  /// Basis of the solution subspace, one row per basis vector.
  QMatrix solution_basis() const;

 private:
  std::size_t n_, m_;
  int q_;
  QMatrix rows_;
};

/// Adjoin all formal derivatives of every row up to order r.
LinearSystem prolong(const LinearSystem& sys, int r);

/// Symbol g_q = R_q with all lower-order coordinates set to zero, presented by
/// the top-degree parts of the defining rows.
class SymbolSpace {
 public:
  SymbolSpace(std::size_t n, std::size_t m, int q, QMatrix eqs);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  int q() const { return q_; }
  const QMatrix& eqs() const { return eqs_; }
  long dim() const;
  QMatrix basis() const;

 private:
  std::size_t n_, m_;
  int q_;
  QMatrix eqs_;  // columns indexed by sym_coords(n, m, q)
};

SymbolSpace symbol(const LinearSystem& sys);
/// g_{q+1}: each defining equation differentiated once in every direction.
SymbolSpace prolong_symbol(const SymbolSpace& g);

/// Strictly increasing r-tuples from {0..n-1}, lexicographic.
std::vector<std::vector<int>> form_tuples(std::size_t n, int r);

/// Matrix of the Spencer map delta: /\^r T* (x) S_{q+1} (x) E  ->
/// /\^{r+1} T* (x) S_q (x) E, (delta w)^k_{mu,J} = sum_l (-1)^l w^k_{mu+1_{J_l}, J\l}.
/// Rows = codomain, columns = domain, both tuple-major over sym_coords.
QMatrix delta_map(std::size_t n, std::size_t m, int q, int r);

/// dim H^r_q(g) = dim ker(delta on /\^r (x) g_q) - dim im(delta from /\^{r-1} (x) g_{q+1}).
long delta_cohomology(const SymbolSpace& g, int r);

struct NotStabilized : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DiagramDims {
  std::vector<long> spencer;  // C_r
  std::vector<long> middle;   // C_r(E)
  std::vector<long> janet;    // F_r
};

/// Fiber dimensions of the Spencer, full-jet and Janet sequences at the order
/// of sys; requires one-step prolongation stability of dim R_q.
DiagramDims spencer_janet_dims(const LinearSystem& sys);

/// a_0 - a_1 + a_2 - ...
long euler_poincare(const std::vector<long>& dims);

}  // namespace jetcalc

#endif
