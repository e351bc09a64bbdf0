#ifndef CNPLAB_FINSAMPLE_HPP
#define CNPLAB_FINSAMPLE_HPP

#include <string>
#include <vector>

#include "cnplab/kernels.hpp"

namespace cnplab {

/// The reproducing kernel space restricted to a finite sample.
///
/// Functions on the sample are value vectors f with <f, g> = g^H K^{-1} f;
/// the kernel function k_x is the column K e_x. K is factored once with a
/// pivoted LDL^H decomposition, F = P^T L D^{1/2}, so that F F^H = K. Every
/// solve and every whitening (F^{-1} M F^{-H}) goes through that factor.
class FinSampleSpace {
public:
  FinSampleSpace(const CnpKernel& kernel, PointSet pts, const Tolerances& tol = {});

  /// From an already assembled Hermitian positive definite matrix.
  FinSampleSpace(Matrix k, PointSet pts, const Tolerances& tol = {});

  std::size_t size() const { return pts_.size(); }
  const PointSet& points() const { return pts_; }
  const Matrix& k() const { return k_; }
  const Matrix& factor() const { return factor_; }
  double cond_estimate() const { return cond_; }
  const Tolerances& tolerances() const { return tol_; }
  double lambda_max() const { return lambda_max_; }

  Vector kernel_column(std::size_t i) const { return k_.col(static_cast<Eigen::Index>(i)); }

  /// K^{-1} B
  Matrix solve(const Matrix& b) const;
  /// F^{-1} B
  Matrix inv_factor_apply(const Matrix& b) const;
  /// F^{-1} M F^{-H}, Hermitian part.
  Matrix whiten(const Matrix& m) const;
  /// F W F^H, Hermitian part.
  Matrix unwhiten(const Matrix& w) const;

  /// Restriction to a sub-sample (principal sub-block of K, refactored).
  FinSampleSpace restrict_to(const std::vector<std::size_t>& indices) const;

private:
  void factorize();

  PointSet pts_;
  Matrix k_;
  Tolerances tol_;
  Eigen::LDLT<Matrix> ldlt_;
  Matrix factor_;
  double cond_ = 0.0;
  double lambda_max_ = 0.0;
};

/// Values of a symbol on the sample points.
struct SampledMultiplier {
  Vector values;
  std::string name;

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  auto diag() const { return values.asDiagonal(); }
};

/// (a, b) with b = a h on the sample.
struct RepresentingPair {
  SampledMultiplier a;
  SampledMultiplier b;
  bool contractive = false;  // set when the column (a; b) passed the PSD test
};

/// Validates b[i] = a[i] h[i] (relative 1e-12) where a[i] != 0 and b[i] = 0
/// where a[i] = 0. With check_contractive the column test is run and its
/// outcome stored in the flag.
RepresentingPair make_representing_pair(const FinSampleSpace& space, SampledMultiplier a,
                                        SampledMultiplier b, const SampledMultiplier& h,
                                        bool check_contractive = false);

/// <f, g>_H = g^H K^{-1} f.
Complex h_inner(const FinSampleSpace& space, const Vector& f, const Vector& g);

/// Matrix of T* = (M_h)^* in function coordinates: K D_h^H K^{-1}.
Matrix adjoint_matrix(const FinSampleSpace& space, const SampledMultiplier& h);

/// Reproducing kernel of Dom T under the graph norm, (K^{-1} + D^H K^{-1} D)^{-1}.
Matrix domT_kernel(const FinSampleSpace& space, const SampledMultiplier& h);

struct DomTStarKernel {
  Matrix kernel;  // K G_B^{-1} K
  Matrix gram;    // G_B = K + D K D^H, Gram of the k_x inside Dom T*
};

DomTStarKernel domTstar_kernel(const FinSampleSpace& space, const SampledMultiplier& h);

/// Both domain kernels computed the long way round: orthogonal projection
/// in the doubled space H + H onto the graph G(T) and onto J G(T)^perp.
/// The whitened forms F^{-1} K F^{-H} are returned alongside since they are
/// the well conditioned handle on these matrices.
struct GraphKernels {
  Matrix dom_t;
  Matrix dom_tstar;
  Matrix dom_t_whitened;
  Matrix dom_tstar_whitened;
};

GraphKernels graph_projection_kernels(const FinSampleSpace& space, const SampledMultiplier& h);

/// K (K^{T*})^{-1} K, formed from the whitened Dom T* kernel W as F W^{-1} F^H.
Matrix gram_from_domtstar(const FinSampleSpace& space, const Matrix& dom_tstar_whitened);

struct PickResult {
  bool feasible = false;
  double min_eigenvalue = 0.0;
  Vector witness;
  Matrix pick;
};

/// PSD test of [(1 - w_i conj(w_j)) K_ij] relative to lambda_max(K).
PickResult pick_feasible(const FinSampleSpace& space, const Vector& targets);

/// sqrt of the top eigenvalue of the pencil (D K D^H, K).
double multiplier_norm(const FinSampleSpace& space, const SampledMultiplier& phi);

/// PSD test of K - D_a K D_a^H - D_b K D_b^H relative to lambda_max(K).
PsdVerdict column_contractive(const FinSampleSpace& space, const RepresentingPair& pair);

/// sqrt of the bottom eigenvalue of the pencil (D_a K D_a^H + D_b K D_b^H, K),
/// computed as 1 minus the top of (K - D_a K D_a^H - D_b K D_b^H, K).
double corona_constant(const FinSampleSpace& space, const RepresentingPair& pair);

struct CoronaCertificate {
  double identity_residual = 0.0;  // max_i |a u + b v - 1|
  double row_norm = 0.0;
};

/// Checks a u + b v = 1 on the sample (throws IdentityViolated) and reports
/// the multiplier norm of the row (u v).
CoronaCertificate corona_certify(const FinSampleSpace& space, const RepresentingPair& pair,
                                 const SampledMultiplier& u, const SampledMultiplier& v);

/// Contractive containment of the space with kernel M1 in the one with M2:
/// PSD test of M2 - M1.
PsdVerdict containment_test(const Matrix& m1, const Matrix& m2, double tau = 1e-10);

struct BestApprox {
  Vector coefficients;
  double error_sq = 0.0;
};

/// Best approximation of f in H(B) = Dom T* from span{k_x : x in subset},
/// using only point data: <f, k_x>_B = f(x) + h(x) (T*f)(x) and the Gram
/// <k_y, k_x>_B = (1 + h(x) conj(h(y))) k(x, y).
BestApprox hb_best_approx(const FinSampleSpace& space, const SampledMultiplier& h,
                          const Vector& f_values, const Vector& tstarf_values,
                          double norm_sq_f_b, const std::vector<std::size_t>& subset);

struct GrowthCertificate {
  RealVector required;  // C(x) = (1 - |x|) log+ |h(x)|
  double max_required = 0.0;
  bool nondecreasing = false;
};

/// Takes log|h| rather than h, since the interesting symbols overflow.
GrowthCertificate growth_certificate(const PointSet& pts, const RealVector& log_abs_h);
GrowthCertificate growth_certificate(const PointSet& pts, const Vector& h_values);

}  // namespace cnplab

#endif  // CNPLAB_FINSAMPLE_HPP
