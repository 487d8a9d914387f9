#ifndef JETCALC_DIFFOP_HPP
#define JETCALC_DIFFOP_HPP

#include <iosfwd>

#include "jetcalc/matrix.hpp"

namespace jetcalc {

/// Linear differential operator (P u)^a = sum coeff(a,k,mu) d_mu u^k with
/// polynomial-fraction coefficients in the base variables.
class LinDiffOp {
 public:
  struct Key {
    std::size_t eq, unknown;
    MultiIndex mu;
    bool operator<(const Key& o) const {
      if (eq != o.eq) return eq < o.eq;
      if (unknown != o.unknown) return unknown < o.unknown;
      return grlex_cmp(mu, o.mu) < 0;
    }
  };

  LinDiffOp() : n_(0), m_in_(0), m_out_(0) {}
  LinDiffOp(std::size_t n, std::size_t m_in, std::size_t m_out, VarSetPtr xvars)
      : n_(n), m_in_(m_in), m_out_(m_out), x_(std::move(xvars)) {}

  std::size_t n() const { return n_; }
  std::size_t m_in() const { return m_in_; }
  std::size_t m_out() const { return m_out_; }
  const VarSetPtr& xvars() const { return x_; }
  int order() const;
  bool is_zero() const;
  const std::map<Key, RatFunc>& coeffs() const { return c_; }

  void set(std::size_t eq, std::size_t k, const MultiIndex& mu, RatFunc v);
  void add(std::size_t eq, std::size_t k, const MultiIndex& mu, const RatFunc& v);
  RatFunc coeff(std::size_t eq, std::size_t k, const MultiIndex& mu) const;
  /// Convenience for rational constant coefficients.
  void set_const(std::size_t eq, std::size_t k, const MultiIndex& mu, const Q& v);
  bool has_constant_coefficients() const;

  std::vector<RatFunc> apply(const std::vector<Poly>& u) const;
  std::vector<RatFunc> apply(const std::vector<RatFunc>& u) const;

  bool operator==(const LinDiffOp& o) const;

  static LinDiffOp identity(std::size_t n, std::size_t m, const VarSetPtr& xvars);

  /// Plain-text serialization: a header line, then one line `eq k mu coeff`
  /// per nonzero coefficient in a fixed deterministic order.
  std::string serialize() const;
  static LinDiffOp deserialize(const std::string& text);

 private:
  std::size_t n_, m_in_, m_out_;
  VarSetPtr x_;
  std::map<Key, RatFunc> c_;
};

/// Leibniz-expanded composite (Q after P).
LinDiffOp compose(const LinDiffOp& Qop, const LinDiffOp& P);

/// Bilinear expression sum c(x) d_muA v_a d_muB u^k; the currency of
/// integration-by-parts certificates.
class BilinearForm {
 public:
  struct Key {
    std::size_t a;
    MultiIndex muA;
    std::size_t k;
    MultiIndex muB;
    bool operator<(const Key& o) const {
      if (a != o.a) return a < o.a;
      if (int c = grlex_cmp(muA, o.muA); c != 0) return c < 0;
      if (k != o.k) return k < o.k;
      return grlex_cmp(muB, o.muB) < 0;
    }
  };

  void add(std::size_t a, const MultiIndex& muA, std::size_t k, const MultiIndex& muB,
           const RatFunc& c);
  bool is_zero() const { return t_.empty(); }
  const std::map<Key, RatFunc>& terms() const { return t_; }
  BilinearForm operator-(const BilinearForm& o) const;
  BilinearForm operator+(const BilinearForm& o) const;
  /// Formal total derivative d_r by the product rule on all three factors.
  BilinearForm d(std::size_t r) const;
  /// Exact evaluation with concrete polynomial arguments.
  RatFunc eval(const std::vector<Poly>& v, const std::vector<Poly>& u) const;

 private:
  std::map<Key, RatFunc> t_;
};

struct AdjointResult {
  LinDiffOp op;                      // ad(P)
  std::vector<BilinearForm> flux;    // D^r with v.(Pu) - (ad(P)v).u = sum_r d_r D^r
};

/// Formal adjoint via integration by parts; the certificate comes along.
AdjointResult formal_adjoint(const LinDiffOp& P);

/// Residual v.(Pu) - (ad v).u - sum d_r D^r as a bilinear expression (must be 0).
BilinearForm adjoint_certificate_residual(const LinDiffOp& P, const AdjointResult& ad);

/// Generators of relations Q with Q o P = 0 and order(Q) <= order_bound, for
/// constant-coefficient P, by exact kernel computation on the prolongation
/// matrix. Returns a minimal generating set among those found; m_out = number
/// of generators (0 if none exist at this bound).
LinDiffOp compatibility_conditions(const LinDiffOp& P, int order_bound);

}  // namespace jetcalc

#endif
