#include "cnplab/drury.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace cnplab {

namespace {

void check_degree(unsigned degree, const char* what) {
  if (degree > kDegreeCap) {
    std::ostringstream os;
    os << what << ": degree " << degree << " exceeds the cap " << kDegreeCap;
    throw Error(ErrorCode::DegreeCap, os.str());
  }
}

void check_dim(const MonomialPoly& p, const MonomialPoly& q, const char* what) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::InvalidArgument, std::string(what) + ": dimension mismatch");
}

}  // namespace

unsigned total_degree(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0u); }

MonomialPoly MonomialPoly::monomial(const MultiIndex& alpha, Complex c) {
  MonomialPoly p(alpha.size());
  p.add(alpha, c);
  return p;
}

MonomialPoly MonomialPoly::constant(std::size_t dim, Complex c) {
  MonomialPoly p(dim);
  p.add(MultiIndex(dim, 0u), c);
  return p;
}

unsigned MonomialPoly::degree() const {
  unsigned d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, total_degree(alpha));
  return d;
}

void MonomialPoly::add(const MultiIndex& alpha, Complex c) {
  if (alpha.size() != dim_) throw Error(ErrorCode::InvalidArgument, "MonomialPoly: multi-index has wrong dimension");
  if (c == Complex(0.0, 0.0)) return;
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
}

Complex MonomialPoly::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

MonomialPoly MonomialPoly::operator+(const MonomialPoly& other) const {
  check_dim(*this, other, "MonomialPoly::operator+");
  MonomialPoly out = *this;
  for (const auto& [alpha, c] : other.terms_) out.add(alpha, c);
  return out;
}

MonomialPoly MonomialPoly::operator*(Complex s) const {
  MonomialPoly out(dim_);
  for (const auto& [alpha, c] : terms_) out.add(alpha, c * s);
  return out;
}

double monomial_weight(const MultiIndex& alpha) {
  check_degree(total_degree(alpha), "monomial_weight");
  // |alpha|! / alpha! = prod_i C(s_i, alpha_i), s_i the running total.
  // Every factor is exact and the product is at most 30! < 2^108.
  unsigned __int128 multinomial = 1;
  unsigned running = 0;
  for (unsigned a : alpha) {
    running += a;
    unsigned __int128 binom = 1;
    for (unsigned j = 1; j <= a; ++j) binom = binom * (running - a + j) / j;
    multinomial *= binom;
  }
  return 1.0 / static_cast<double>(multinomial);
}

Complex da_inner(const MonomialPoly& p, const MonomialPoly& q) {
  check_dim(p, q, "da_inner");
  Complex acc(0.0, 0.0);
  for (const auto& [alpha, c] : p.terms()) {
    const Complex d = q.coeff(alpha);
    if (d != Complex(0.0, 0.0)) acc += c * std::conj(d) * monomial_weight(alpha);
  }
  return acc;
}

double da_norm_sq(const MonomialPoly& p) {
  double acc = 0.0;
  for (const auto& [alpha, c] : p.terms()) acc += std::norm(c) * monomial_weight(alpha);
  return acc;
}

MonomialPoly coord_mult(const MonomialPoly& p, std::size_t i) {
  if (i >= p.dim()) throw Error(ErrorCode::InvalidArgument, "coord_mult: coordinate out of range");
  MonomialPoly out(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    MultiIndex beta = alpha;
    ++beta[i];
    check_degree(total_degree(beta), "coord_mult");
    out.add(beta, c);
  }
  return out;
}

MonomialPoly coord_adjoint(const MonomialPoly& p, std::size_t i) {
  if (i >= p.dim()) throw Error(ErrorCode::InvalidArgument, "coord_adjoint: coordinate out of range");
  MonomialPoly out(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    const unsigned n = total_degree(alpha);
    check_degree(n, "coord_adjoint");
    if (alpha[i] == 0) continue;
    MultiIndex beta = alpha;
    --beta[i];
    out.add(beta, c * (static_cast<double>(alpha[i]) / static_cast<double>(n)));
  }
  return out;
}

MonomialPoly multiply(const MonomialPoly& p, const MonomialPoly& q) {
  check_dim(p, q, "multiply");
  MonomialPoly out(p.dim());
  for (const auto& [alpha, c] : p.terms())
    for (const auto& [beta, d] : q.terms()) {
      MultiIndex gamma(alpha.size());
      for (std::size_t k = 0; k < alpha.size(); ++k) gamma[k] = alpha[k] + beta[k];
      check_degree(total_degree(gamma), "multiply");
      out.add(gamma, c * d);
    }
  return out;
}

MonomialPoly mult_adjoint(const MonomialPoly& phi, const MonomialPoly& p) {
  check_dim(phi, p, "mult_adjoint");
  MonomialPoly out(p.dim());
  for (const auto& [gamma, c] : phi.terms()) {
    MonomialPoly term = p;
    for (std::size_t k = 0; k < gamma.size(); ++k)
      for (unsigned j = 0; j < gamma[k]; ++j) term = coord_adjoint(term, k);
    out = out + term * std::conj(c);
  }
  return out;
}

CounterexampleSums counterexample_growth(const std::vector<Complex>& c, std::size_t n) {
  if (c.size() < n + 1) throw Error(ErrorCode::InvalidArgument, "counterexample_growth: need N + 1 coefficients");
  CounterexampleSums s;
  for (std::size_t k = 0; k <= n; ++k) {
    const double m = std::norm(c[k]);
    s.weighted += m / static_cast<double>(k + 1);
    s.unweighted += m;
  }
  return s;
}

std::vector<Complex> bergman_witness_coeffs(std::size_t n) {
  std::vector<Complex> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) c[k] = 1.0 / std::sqrt(static_cast<double>(k + 1));
  return c;
}

std::vector<MultiIndex> multi_indices(std::size_t dim, unsigned cap) {
  std::vector<MultiIndex> out;
  if (dim == 0) return out;
  for (unsigned total = 0; total <= cap; ++total) {
    // Compositions of `total` into dim parts, lexicographically descending.
    MultiIndex alpha(dim, 0u);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t k, unsigned left) {
      if (k + 1 == dim) {
        alpha[k] = left;
        out.push_back(alpha);
        return;
      }
      for (unsigned a = left + 1; a-- > 0;) {
        alpha[k] = a;
        rec(k + 1, left - a);
      }
    };
    rec(0, total);
  }
  return out;
}

double hyponormality_gap(const MonomialPoly& phi, unsigned degree_cap) {
  check_degree(degree_cap + phi.degree(), "hyponormality_gap");
  const std::vector<MultiIndex> basis = multi_indices(phi.dim(), degree_cap);
  const auto n = static_cast<Eigen::Index>(basis.size());

  // Orthonormal basis e_alpha = z^alpha / ||z^alpha||.
  std::vector<MonomialPoly> up, down;
  up.reserve(basis.size());
  down.reserve(basis.size());
  for (const MultiIndex& alpha : basis) {
    const MonomialPoly e = MonomialPoly::monomial(alpha, 1.0 / std::sqrt(monomial_weight(alpha)));
    up.push_back(multiply(phi, e));
    down.push_back(mult_adjoint(phi, e));
  }
  Matrix gap(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      gap(i, j) = da_inner(up[static_cast<std::size_t>(j)], up[static_cast<std::size_t>(i)]) -
                  da_inner(down[static_cast<std::size_t>(j)], down[static_cast<std::size_t>(i)]);
      gap(j, i) = std::conj(gap(i, j));
    }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gap, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace cnplab
