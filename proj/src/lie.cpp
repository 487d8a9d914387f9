#include "jetcalc/lie.hpp"

#include <algorithm>
#include <set>

namespace jetcalc {

VectorField VectorField::operator+(const VectorField& o) const {
  std::vector<Poly> r(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) r[k] = c_[k] + o.c_[k];
  return VectorField(std::move(r));
}

VectorField VectorField::operator-(const VectorField& o) const {
  std::vector<Poly> r(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) r[k] = c_[k] - o.c_[k];
  return VectorField(std::move(r));
}

VectorField VectorField::operator*(const Q& s) const {
  std::vector<Poly> r(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) r[k] = c_[k] * s;
  return VectorField(std::move(r));
}

VectorField bracket(const VectorField& v, const VectorField& w) {
  if (v.dim() != w.dim()) throw std::invalid_argument("bracket: dimension mismatch");
  std::size_t n = v.dim();
  std::vector<Poly> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Poly s;
    for (std::size_t r = 0; r < n; ++r)
      s += v[r] * w[k].diff(r) - w[r] * v[k].diff(r);
    out[k] = s;
  }
  return VectorField(std::move(out));
}

namespace {
// Flatten vector fields to coefficient vectors over the union of monomials.
struct Flattener {
  std::vector<std::pair<std::size_t, MultiIndex>> slots;  // (component k, monomial)
  std::map<std::pair<std::size_t, std::vector<int>>, std::size_t> index;

  void collect(const VectorField& v) {
    for (std::size_t k = 0; k < v.dim(); ++k)
      for (const auto& [mu, c] : v[k].terms()) {
        auto key = std::make_pair(k, mu.exponents());
        if (!index.count(key)) {
          index[key] = slots.size();
          slots.emplace_back(k, mu);
        }
      }
  }
  std::vector<Q> flatten(const VectorField& v) const {
    std::vector<Q> out(slots.size());
    for (std::size_t k = 0; k < v.dim(); ++k)
      for (const auto& [mu, c] : v[k].terms()) {
        auto it = index.find(std::make_pair(k, mu.exponents()));
        if (it == index.end()) return {};  // monomial outside span
        out[it->second] = c;
      }
    return out;
  }
};
}  // namespace

StructureConstants structure_constants(const std::vector<VectorField>& gens) {
  std::size_t p = gens.size();
  Flattener fl;
  for (const auto& g : gens) fl.collect(g);
  QMatrix G(fl.slots.size(), p);
  for (std::size_t t = 0; t < p; ++t) {
    auto col = fl.flatten(gens[t]);
    for (std::size_t i = 0; i < col.size(); ++i) G.at(i, t) = col[i];
  }
  if (exact_rank(G) != p)
    throw std::invalid_argument("structure_constants: generators linearly dependent");
  StructureConstants c(p);
  for (std::size_t rho = 0; rho < p; ++rho)
    for (std::size_t sigma = rho + 1; sigma < p; ++sigma) {
      VectorField b = bracket(gens[rho], gens[sigma]);
      auto rhs = fl.flatten(b);
      if (rhs.empty() && !b.is_zero()) throw NotClosed(rho, sigma);
      if (rhs.empty()) rhs.assign(fl.slots.size(), Q(0));
      auto x = solve(G, rhs);
      if (!x) throw NotClosed(rho, sigma);
      for (std::size_t tau = 0; tau < p; ++tau) {
        c.at(tau, rho, sigma) = (*x)[tau];
        c.at(tau, sigma, rho) = -(*x)[tau];
      }
    }
  return c;
}

std::optional<JacobiWitness> jacobi_check(const StructureConstants& c) {
  std::size_t p = c.dim();
  for (std::size_t t = 0; t < p; ++t)
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t s = 0; s < p; ++s) {
        Q skew = c.at(t, r, s) + c.at(t, s, r);
        if (!is_zero(skew)) return JacobiWitness{t, r, s, t, skew};
      }
  for (std::size_t l = 0; l < p; ++l)
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t s = 0; s < p; ++s)
        for (std::size_t t = 0; t < p; ++t) {
          Q sum = 0;
          for (std::size_t m = 0; m < p; ++m)
            sum += c.at(l, m, r) * c.at(m, s, t) + c.at(l, m, s) * c.at(m, t, r) +
                   c.at(l, m, t) * c.at(m, r, s);
          if (!is_zero(sum)) return JacobiWitness{l, r, s, t, sum};
        }
  return std::nullopt;
}

std::optional<std::string> mc_verify(const MCForms& forms, const StructureConstants& c) {
  std::size_t p = c.dim();
  if (forms.omega.rows() != p || forms.omega.cols() != p)
    throw std::invalid_argument("mc_verify: omega shape mismatch");
  // d omega^tau_{rs} + c^tau_{rho sigma} omega^rho_r omega^sigma_s = 0
  for (std::size_t t = 0; t < p; ++t)
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t s = 0; s < p; ++s) {
        RatFunc res = forms.omega.at(t, s).diff(r) - forms.omega.at(t, r).diff(s);
        for (std::size_t rho = 0; rho < p; ++rho)
          for (std::size_t sigma = 0; sigma < p; ++sigma) {
            if (is_zero(c.at(t, rho, sigma))) continue;
            RatFunc term = forms.omega.at(rho, r) * forms.omega.at(sigma, s);
            if (term.is_zero()) continue;
            res += RatFunc(term.num().ctx(), c.at(t, rho, sigma)) * term;
          }
        if (!res.is_zero())
          return "MC equation fails at tau=" + std::to_string(t + 1) + ", (r,s)=(" +
                 std::to_string(r + 1) + "," + std::to_string(s + 1) + "): " + res.str();
      }
  Matrix<RatFunc> prod = forms.omega * forms.alpha;
  VarSetPtr ctx;
  for (std::size_t i = 0; i < p && !ctx; ++i)
    for (std::size_t j = 0; j < p && !ctx; ++j)
      if (!forms.omega.at(i, j).is_zero()) ctx = forms.omega.at(i, j).num().ctx();
  RatFunc one(ctx, 1);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      bool ok = (i == j) ? (prod.at(i, j) == one) : prod.at(i, j).is_zero();
      if (!ok)
        return "alpha o omega != id at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  return std::nullopt;
}

LieForm::LieForm(std::size_t n, std::size_t p, std::size_t degree)
    : n_(n), p_(p), r_(degree) {
  // enumerate increasing tuples of length r from {0..n-1}
  std::vector<std::size_t> J(r_);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == r_) {
      tuples_.push_back(J);
      comp_[J] = std::vector<RatFunc>(p_);
      return;
    }
    for (std::size_t i = start; i < n_; ++i) {
      J[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

RatFunc& LieForm::at(const std::vector<std::size_t>& J, std::size_t tau) {
  auto it = comp_.find(J);
  if (it == comp_.end()) throw std::invalid_argument("LieForm::at: tuple not increasing");
  return it->second.at(tau);
}

const RatFunc& LieForm::at(const std::vector<std::size_t>& J, std::size_t tau) const {
  auto it = comp_.find(J);
  if (it == comp_.end()) throw std::invalid_argument("LieForm::at: tuple not increasing");
  return it->second.at(tau);
}

RatFunc LieForm::component(const std::vector<std::size_t>& J, std::size_t tau) const {
  std::vector<std::size_t> s = J;
  int sign = 1;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    for (std::size_t j = 0; j + 1 < s.size() - i; ++j)
      if (s[j] > s[j + 1]) {
        std::swap(s[j], s[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] == s[i + 1]) return RatFunc();
  const RatFunc& v = at(s, tau);
  return sign > 0 ? v : -v;
}

bool LieForm::operator==(const LieForm& o) const {
  if (n_ != o.n_ || p_ != o.p_ || r_ != o.r_) return false;
  for (const auto& J : tuples_)
    for (std::size_t t = 0; t < p_; ++t)
      if (!(at(J, t) == o.at(J, t))) return false;
  return true;
}

bool LieForm::is_zero() const {
  for (const auto& [J, v] : comp_)
    for (const auto& f : v)
      if (!f.is_zero()) return false;
  return true;
}

LieForm curvature(const GaugePotential& A, const StructureConstants& c) {
  std::size_t n = A.n(), p = A.p();
  LieForm F(n, p, 2);
  for (const auto& K : F.tuples()) {
    std::size_t i = K[0], j = K[1];
    for (std::size_t t = 0; t < p; ++t) {
      RatFunc v = A.at({j}, t).diff(i) - A.at({i}, t).diff(j);
      for (std::size_t rho = 0; rho < p; ++rho)
        for (std::size_t sigma = 0; sigma < p; ++sigma) {
          const Q& cc = c.at(t, rho, sigma);
          if (is_zero(cc)) continue;
          RatFunc term = A.at({i}, rho) * A.at({j}, sigma);
          if (term.is_zero()) continue;
          v += RatFunc(term.num().ctx(), cc) * term;
        }
      F.at(K, t) = v;
    }
  }
  return F;
}

LieForm nabla(const GaugePotential& A, const StructureConstants& c, const LieForm& lambda) {
  std::size_t n = A.n(), p = A.p();
  if (lambda.degree() + 1 > n) throw std::invalid_argument("nabla: form degree overflow");
  LieForm out(n, p, lambda.degree() + 1);
  for (const auto& K : out.tuples()) {
    for (std::size_t t = 0; t < p; ++t) {
      RatFunc v;
      for (std::size_t l = 0; l < K.size(); ++l) {
        std::vector<std::size_t> rest;
        for (std::size_t m = 0; m < K.size(); ++m)
          if (m != l) rest.push_back(K[m]);
        int sign = (l % 2 == 0) ? 1 : -1;
        RatFunc term = lambda.at(rest, t).diff(K[l]);
        for (std::size_t rho = 0; rho < p; ++rho)
          for (std::size_t sigma = 0; sigma < p; ++sigma) {
            const Q& cc = c.at(t, rho, sigma);
            if (is_zero(cc)) continue;
            RatFunc b = A.at({K[l]}, rho) * lambda.at(rest, sigma);
            if (b.is_zero()) continue;
            term += RatFunc(b.num().ctx(), cc) * b;
          }
        v += (sign > 0) ? term : -term;
      }
      out.at(K, t) = v;
    }
  }
  return out;
}

std::vector<RatFunc> poincare_el(const GaugePotential& A, const StructureConstants& c,
                                 const Matrix<RatFunc>& script_a) {
  std::size_t n = A.n(), p = A.p();
  if (script_a.rows() != n || script_a.cols() != p)
    throw std::invalid_argument("poincare_el: script_a shape mismatch");
  std::vector<RatFunc> out(p);
  for (std::size_t tau = 0; tau < p; ++tau) {
    RatFunc v;
    for (std::size_t i = 0; i < n; ++i) v += script_a.at(i, tau).diff(i);
    for (std::size_t sigma = 0; sigma < p; ++sigma)
      for (std::size_t rho = 0; rho < p; ++rho) {
        const Q& cc = c.at(sigma, rho, tau);
        if (is_zero(cc)) continue;
        for (std::size_t i = 0; i < n; ++i) {
          RatFunc b = A.at({i}, rho) * script_a.at(i, sigma);
          if (b.is_zero()) continue;
          v -= RatFunc(b.num().ctx(), cc) * b;
        }
      }
    out[tau] = v;
  }
  return out;
}

RatFunc poincare_duality_residual(const GaugePotential& A, const StructureConstants& c,
                                  const LieForm& lambda, const Matrix<RatFunc>& script_a) {
  std::size_t n = A.n(), p = A.p();
  LieForm nl = nabla(A, c, lambda);
  RatFunc acc;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < p; ++t) acc += nl.at({i}, t) * script_a.at(i, t);
  auto el = poincare_el(A, c, script_a);
  for (std::size_t t = 0; t < p; ++t) acc += lambda.at({}, t) * el[t];
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc flux;
    for (std::size_t t = 0; t < p; ++t) flux += lambda.at({}, t) * script_a.at(i, t);
    acc -= flux.diff(i);
  }
  return acc;
}

}  // namespace jetcalc
