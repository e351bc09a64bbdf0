#include "cnplab/finsample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cnplab {

namespace {

void require_size(const FinSampleSpace& space, Eigen::Index n, const char* what) {
  if (n != static_cast<Eigen::Index>(space.size())) {
    std::ostringstream os;
    os << what << ": expected " << space.size() << " values, got " << n;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

// D K D^H for diagonal D = diag(d): entries d_i conj(d_j) K_ij.
Matrix sandwich(const Vector& d, const Matrix& k) {
  Matrix out = d.asDiagonal() * k * d.conjugate().asDiagonal();
  hermitize(out);
  return out;
}

double top_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

}  // namespace

FinSampleSpace::FinSampleSpace(const CnpKernel& kernel, PointSet pts, const Tolerances& tol)
    : pts_(std::move(pts)), tol_(tol) {
  KernelMatrix km = kernel_matrix_checked(kernel, pts_, tol_);
  k_ = std::move(km.k);
  cond_ = km.cond;
  lambda_max_ = km.lambda_max;
  factorize();
}

FinSampleSpace::FinSampleSpace(Matrix k, PointSet pts, const Tolerances& tol)
    : pts_(std::move(pts)), k_(std::move(k)), tol_(tol) {
  if (k_.rows() != k_.cols() || k_.rows() != static_cast<Eigen::Index>(pts_.size()))
    throw Error(ErrorCode::InvalidArgument, "FinSampleSpace: matrix does not match point set");
  hermitize(k_);
  if (k_.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(k_, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    lambda_max_ = es.eigenvalues()(k_.rows() - 1);
    if (lo < -tol_.psd * lambda_max_)
      throw Error(ErrorCode::NonPositive, "FinSampleSpace: matrix is not positive semidefinite");
    cond_ = lo > 0.0 ? lambda_max_ / lo : std::numeric_limits<double>::infinity();
    if (cond_ > tol_.cond_cap)
      throw Error(ErrorCode::IllConditioned, "FinSampleSpace: condition number exceeds cap");
  }
  factorize();
}

void FinSampleSpace::factorize() {
  const Eigen::Index n = k_.rows();
  ldlt_.compute(k_);
  if (ldlt_.info() != Eigen::Success)
    throw Error(ErrorCode::IllConditioned, "FinSampleSpace: LDL^H factorization failed");
  const RealVector d = ldlt_.vectorD().real();
  if (n > 0 && d.minCoeff() <= 0.0)
    throw Error(ErrorCode::IllConditioned, "FinSampleSpace: non-positive pivot");
  Matrix l = ldlt_.matrixL();
  l = l * d.cwiseSqrt().asDiagonal();
  factor_ = ldlt_.transpositionsP().transpose() * l;
}

Matrix FinSampleSpace::solve(const Matrix& b) const { return ldlt_.solve(b); }

Matrix FinSampleSpace::inv_factor_apply(const Matrix& b) const {
  Matrix x = ldlt_.transpositionsP() * b;
  ldlt_.matrixL().solveInPlace(x);
  const RealVector inv_sqrt_d = ldlt_.vectorD().real().cwiseSqrt().cwiseInverse();
  return inv_sqrt_d.asDiagonal() * x;
}

Matrix FinSampleSpace::whiten(const Matrix& m) const {
  const Matrix y = inv_factor_apply(m.adjoint());
  Matrix w = inv_factor_apply(y.adjoint());
  hermitize(w);
  return w;
}

Matrix FinSampleSpace::unwhiten(const Matrix& w) const {
  Matrix m = factor_ * w * factor_.adjoint();
  hermitize(m);
  return m;
}

FinSampleSpace FinSampleSpace::restrict_to(const std::vector<std::size_t>& indices) const {
  const auto m = static_cast<Eigen::Index>(indices.size());
  Matrix sub(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      sub(i, j) = k_(static_cast<Eigen::Index>(indices[i]), static_cast<Eigen::Index>(indices[j]));
  return FinSampleSpace(std::move(sub), pts_.subset(indices), tol_);
}

RepresentingPair make_representing_pair(const FinSampleSpace& space, SampledMultiplier a,
                                        SampledMultiplier b, const SampledMultiplier& h,
                                        bool check_contractive) {
  const auto n = static_cast<Eigen::Index>(space.size());
  require_size(space, a.values.size(), "representing pair (a)");
  require_size(space, b.values.size(), "representing pair (b)");
  require_size(space, h.values.size(), "representing pair (h)");
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex ai = a.values(i);
    const Complex bi = b.values(i);
    if (ai == Complex(0.0, 0.0)) {
      // A zero of the denominator forces a zero of the numerator.
      if (bi != Complex(0.0, 0.0)) {
        std::ostringstream os;
        os << "representing pair: a vanishes at point " << i << " but b does not";
        throw Error(ErrorCode::IdentityViolated, os.str());
      }
      continue;
    }
    const Complex ah = ai * h.values(i);
    const double scale = std::max({std::abs(bi), std::abs(ah), 1e-300});
    if (std::abs(bi - ah) > 1e-12 * scale) {
      std::ostringstream os;
      os << "representing pair: b != a h at point " << i;
      throw Error(ErrorCode::IdentityViolated, os.str());
    }
  }
  RepresentingPair pair{std::move(a), std::move(b), false};
  if (check_contractive) pair.contractive = column_contractive(space, pair).psd;
  return pair;
}

Complex h_inner(const FinSampleSpace& space, const Vector& f, const Vector& g) {
  require_size(space, f.size(), "h_inner (f)");
  require_size(space, g.size(), "h_inner (g)");
  // g^H K^{-1} f = (F^{-1} g)^H (F^{-1} f)
  const Vector wf = space.inv_factor_apply(f);
  const Vector wg = space.inv_factor_apply(g);
  return wg.dot(wf);
}

Matrix adjoint_matrix(const FinSampleSpace& space, const SampledMultiplier& h) {
  require_size(space, h.values.size(), "adjoint_matrix");
  // K D^H K^{-1} = (K^{-1} D K)^H since K is Hermitian.
  const Matrix dk = h.diag() * space.k();
  return space.solve(dk).adjoint();
}

Matrix domT_kernel(const FinSampleSpace& space, const SampledMultiplier& h) {
  require_size(space, h.values.size(), "domT_kernel");
  // (K^{-1} + D^H K^{-1} D)^{-1} = K - K D^H G_B^{-1} D K,  G_B = K + D K D^H.
  const Matrix gb = space.k() + sandwich(h.values, space.k());
  Eigen::LDLT<Matrix> ldlt(gb);
  if (ldlt.info() != Eigen::Success)
    throw Error(ErrorCode::IllConditioned, "domT_kernel: G_B factorization failed");
  const Matrix dk = h.diag() * space.k();
  Matrix kt = space.k() - dk.adjoint() * ldlt.solve(dk);
  hermitize(kt);
  return kt;
}

DomTStarKernel domTstar_kernel(const FinSampleSpace& space, const SampledMultiplier& h) {
  require_size(space, h.values.size(), "domTstar_kernel");
  DomTStarKernel out;
  out.gram = space.k() + sandwich(h.values, space.k());
  Eigen::LDLT<Matrix> ldlt(out.gram);
  if (ldlt.info() != Eigen::Success)
    throw Error(ErrorCode::IllConditioned, "domTstar_kernel: G_B factorization failed");
  out.kernel = space.k() * ldlt.solve(space.k());
  hermitize(out.kernel);
  return out;
}

GraphKernels graph_projection_kernels(const FinSampleSpace& space, const SampledMultiplier& h) {
  require_size(space, h.values.size(), "graph_projection_kernels");
  const auto n = static_cast<Eigen::Index>(space.size());
  const Matrix& f = space.factor();

  // Whitened coordinates: xi = F^{-1} u turns K^{-1} + K^{-1} into the
  // Euclidean inner product. In them the graph {(u, D u)} is spanned by
  // the columns of [I; C] with C = F^{-1} D F.
  const Matrix c = space.inv_factor_apply(h.diag() * f);
  Matrix graph_basis(2 * n, n);
  graph_basis.topRows(n) = Matrix::Identity(n, n);
  graph_basis.bottomRows(n) = c;

  Eigen::HouseholderQR<Matrix> qr(graph_basis);
  const Matrix q = qr.householderQ() * Matrix::Identity(2 * n, 2 * n);
  const Matrix q_graph = q.leftCols(n);
  const Matrix q_perp = q.rightCols(n);

  // J (u, v) = (-v, u) maps G(T)^perp onto G(T*).
  Matrix q_adj(2 * n, n);
  q_adj.topRows(n) = -q_perp.bottomRows(n);
  q_adj.bottomRows(n) = q_perp.topRows(n);

  // (k_y, 0) for every y; F^{-1} K = F^H.
  Matrix targets = Matrix::Zero(2 * n, n);
  targets.topRows(n) = f.adjoint();

  const Matrix on_graph = q_graph * (q_graph.adjoint() * targets);
  const Matrix on_adj = q_adj * (q_adj.adjoint() * targets);

  GraphKernels out;
  out.dom_t = f * on_graph.topRows(n);
  out.dom_tstar = f * on_adj.topRows(n);
  hermitize(out.dom_t);
  hermitize(out.dom_tstar);
  out.dom_t_whitened = q_graph.topRows(n) * q_graph.topRows(n).adjoint();
  out.dom_tstar_whitened = q_adj.topRows(n) * q_adj.topRows(n).adjoint();
  hermitize(out.dom_t_whitened);
  hermitize(out.dom_tstar_whitened);
  return out;
}

Matrix gram_from_domtstar(const FinSampleSpace& space, const Matrix& dom_tstar_whitened) {
  require_size(space, dom_tstar_whitened.rows(), "gram_from_domtstar");
  Eigen::LLT<Matrix> llt(dom_tstar_whitened);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::NonPositive, "gram_from_domtstar: kernel is not positive definite");
  const Matrix y = llt.matrixL().solve(space.factor().adjoint());
  Matrix g = y.adjoint() * y;
  hermitize(g);
  return g;
}

PickResult pick_feasible(const FinSampleSpace& space, const Vector& targets) {
  require_size(space, targets.size(), "pick_feasible");
  PickResult out;
  out.pick = space.k() - sandwich(targets, space.k());
  const PsdVerdict v = psd_test(out.pick, space.tolerances().psd, space.lambda_max());
  out.feasible = v.psd;
  out.min_eigenvalue = v.min_eigenvalue;
  out.witness = v.witness;
  return out;
}

double multiplier_norm(const FinSampleSpace& space, const SampledMultiplier& phi) {
  require_size(space, phi.values.size(), "multiplier_norm");
  if (space.size() == 0) return 0.0;
  const Matrix w = space.whiten(sandwich(phi.values, space.k()));
  return std::sqrt(std::max(0.0, top_eigenvalue(w)));
}

PsdVerdict column_contractive(const FinSampleSpace& space, const RepresentingPair& pair) {
  require_size(space, pair.a.values.size(), "column_contractive");
  require_size(space, pair.b.values.size(), "column_contractive");
  const Matrix m = space.k() - sandwich(pair.a.values, space.k()) - sandwich(pair.b.values, space.k());
  return psd_test(m, space.tolerances().psd, space.lambda_max());
}

double corona_constant(const FinSampleSpace& space, const RepresentingPair& pair) {
  require_size(space, pair.a.values.size(), "corona_constant");
  require_size(space, pair.b.values.size(), "corona_constant");
  if (space.size() == 0) return 0.0;
  // Bottom of the pencil (M, K) as 1 - top of (K - M, K). Whitening then acts
  // on the contractivity defect, which vanishes exactly for inner columns.
  const Matrix defect = space.k() - sandwich(pair.a.values, space.k()) - sandwich(pair.b.values, space.k());
  return std::sqrt(std::max(0.0, 1.0 - top_eigenvalue(space.whiten(defect))));
}

CoronaCertificate corona_certify(const FinSampleSpace& space, const RepresentingPair& pair,
                                 const SampledMultiplier& u, const SampledMultiplier& v) {
  require_size(space, u.values.size(), "corona_certify (u)");
  require_size(space, v.values.size(), "corona_certify (v)");
  CoronaCertificate out;
  const Vector identity = pair.a.values.cwiseProduct(u.values) + pair.b.values.cwiseProduct(v.values);
  for (Eigen::Index i = 0; i < identity.size(); ++i)
    out.identity_residual = std::max(out.identity_residual, std::abs(identity(i) - 1.0));
  if (out.identity_residual > space.tolerances().identity) {
    std::ostringstream os;
    os << "corona_certify: a u + b v deviates from 1 by " << out.identity_residual;
    throw Error(ErrorCode::IdentityViolated, os.str());
  }
  if (space.size() == 0) return out;
  const Matrix m = sandwich(u.values, space.k()) + sandwich(v.values, space.k());
  out.row_norm = std::sqrt(std::max(0.0, top_eigenvalue(space.whiten(m))));
  return out;
}

PsdVerdict containment_test(const Matrix& m1, const Matrix& m2, double tau) {
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols() || m1.rows() != m1.cols())
    throw Error(ErrorCode::InvalidArgument, "containment_test: shape mismatch");
  if (m1.rows() == 0) return psd_test(m1, tau);
  Matrix a = m1;
  Matrix b = m2;
  hermitize(a);
  hermitize(b);
  const double scale = std::max(top_eigenvalue(a), top_eigenvalue(b));
  return psd_test(b - a, tau, scale > 0.0 ? scale : -1.0);
}

BestApprox hb_best_approx(const FinSampleSpace& space, const SampledMultiplier& h,
                          const Vector& f_values, const Vector& tstarf_values,
                          double norm_sq_f_b, const std::vector<std::size_t>& subset) {
  require_size(space, h.values.size(), "hb_best_approx (h)");
  require_size(space, f_values.size(), "hb_best_approx (f)");
  require_size(space, tstarf_values.size(), "hb_best_approx (T*f)");
  const auto m = static_cast<Eigen::Index>(subset.size());
  Matrix gram(m, m);
  Vector rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto si = static_cast<Eigen::Index>(subset.at(static_cast<std::size_t>(i)));
    if (si >= static_cast<Eigen::Index>(space.size()))
      throw Error(ErrorCode::InvalidArgument, "hb_best_approx: subset index out of range");
    rhs(i) = f_values(si) + h.values(si) * tstarf_values(si);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto sj = static_cast<Eigen::Index>(subset[static_cast<std::size_t>(j)]);
      gram(i, j) = (1.0 + h.values(si) * std::conj(h.values(sj))) * space.k()(si, sj);
    }
  }
  hermitize(gram);
  BestApprox out;
  out.error_sq = norm_sq_f_b;
  if (m == 0) return out;
  Eigen::LDLT<Matrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1.0 / space.tolerances().cond_cap)
    throw Error(ErrorCode::IllConditioned, "hb_best_approx: G_B is numerically singular");
  out.coefficients = ldlt.solve(rhs);
  out.error_sq = norm_sq_f_b - rhs.dot(out.coefficients).real();
  return out;
}

GrowthCertificate growth_certificate(const PointSet& pts, const RealVector& log_abs_h) {
  if (static_cast<std::size_t>(log_abs_h.size()) != pts.size())
    throw Error(ErrorCode::InvalidArgument, "growth_certificate: size mismatch");
  const Vector z = pts.disk_values();
  GrowthCertificate out;
  out.required.resize(z.size());
  out.nondecreasing = true;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    out.required(i) = (1.0 - std::abs(z(i))) * std::max(0.0, log_abs_h(i));
    if (i > 0 && out.required(i) < out.required(i - 1)) out.nondecreasing = false;
  }
  out.max_required = z.size() > 0 ? out.required.maxCoeff() : 0.0;
  return out;
}

GrowthCertificate growth_certificate(const PointSet& pts, const Vector& h_values) {
  RealVector logs(h_values.size());
  for (Eigen::Index i = 0; i < h_values.size(); ++i) logs(i) = std::log(std::abs(h_values(i)));
  return growth_certificate(pts, logs);
}

}  // namespace cnplab
