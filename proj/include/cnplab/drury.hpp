#ifndef CNPLAB_DRURY_HPP
#define CNPLAB_DRURY_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "cnplab/types.hpp"

namespace cnplab {

using MultiIndex = std::vector<unsigned>;

/// Largest total degree for which monomial norms are computed.
inline constexpr unsigned kDegreeCap = 30;

/// Polynomial in d variables as a sparse map alpha -> c_alpha. Coordinates
/// are numbered from 0, so z_1 of the usual notation is coordinate 0.
class MonomialPoly {
public:
  explicit MonomialPoly(std::size_t dim) : dim_(dim) {}

  static MonomialPoly monomial(const MultiIndex& alpha, Complex c = 1.0);
  static MonomialPoly constant(std::size_t dim, Complex c);

  std::size_t dim() const { return dim_; }
  /// Largest |alpha| with a nonzero coefficient (0 for the zero polynomial).
  unsigned degree() const;
  const std::map<MultiIndex, Complex>& terms() const { return terms_; }

  /// Adds c z^alpha; exact zeros are dropped.
  void add(const MultiIndex& alpha, Complex c);
  Complex coeff(const MultiIndex& alpha) const;

  MonomialPoly operator+(const MonomialPoly& other) const;
  MonomialPoly operator*(Complex s) const;

private:
  std::size_t dim_;
  std::map<MultiIndex, Complex> terms_;
};

unsigned total_degree(const MultiIndex& alpha);

/// ||z^alpha||^2 = alpha! / |alpha|!, the reciprocal of the multinomial
/// coefficient, which is formed exactly in integers.
double monomial_weight(const MultiIndex& alpha);

Complex da_inner(const MonomialPoly& p, const MonomialPoly& q);
double da_norm_sq(const MonomialPoly& p);

/// z_i p.
MonomialPoly coord_mult(const MonomialPoly& p, std::size_t i);
/// M_{z_i}^* p: z^alpha -> (alpha_i / |alpha|) z^(alpha - e_i).
MonomialPoly coord_adjoint(const MonomialPoly& p, std::size_t i);
/// M_phi^* p, built from coordinate adjoints.
MonomialPoly mult_adjoint(const MonomialPoly& phi, const MonomialPoly& p);
MonomialPoly multiply(const MonomialPoly& p, const MonomialPoly& q);

struct CounterexampleSums {
  double weighted = 0.0;    // sum |c_k|^2 / (k + 1) = ||z_2 g(z_1)||^2 partial
  double unweighted = 0.0;  // sum |c_k|^2 = ||P_N g(z_1)||^2 partial
};

/// Partial sums up to N of the two norms behind the two-variable
/// counterexample; c must hold at least N + 1 coefficients.
CounterexampleSums counterexample_growth(const std::vector<Complex>& c, std::size_t n);

/// c_k = 1 / sqrt(k + 1) for k = 0..n: in the Bergman space but not in H^2.
std::vector<Complex> bergman_witness_coeffs(std::size_t n);

/// All multi-indices of dimension d with |alpha| <= cap, graded then lexicographic.
std::vector<MultiIndex> multi_indices(std::size_t dim, unsigned cap);

/// Smallest eigenvalue of M_phi^* M_phi - M_phi M_phi^* compressed to
/// polynomials of degree <= degree_cap. Needs degree_cap + deg(phi) <= 30.
double hyponormality_gap(const MonomialPoly& phi, unsigned degree_cap);

}  // namespace cnplab

#endif  // CNPLAB_DRURY_HPP
