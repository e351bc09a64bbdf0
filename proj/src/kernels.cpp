#include "cnplab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace cnplab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::ZeroKernelValue: return "ZeroKernelValue";
    case ErrorCode::IdentityViolated: return "IdentityViolated";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotAchieved: return "NotAchieved";
    case ErrorCode::DegreeCap: return "DegreeCap";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

PsdVerdict psd_test(const Matrix& m, double tau, double scale) {
  PsdVerdict v;
  if (m.rows() == 0) {
    v.psd = true;
    return v;
  }
  Matrix h = m;
  hermitize(h);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& ev = es.eigenvalues();
  if (scale <= 0.0) scale = ev.cwiseAbs().maxCoeff();
  v.min_eigenvalue = ev(0);
  v.threshold = -tau * scale;
  v.psd = v.min_eigenvalue >= v.threshold;
  v.witness = es.eigenvectors().col(0);
  return v;
}

double relative_frobenius(const Matrix& a, const Matrix& b) {
  const double denom = std::max(a.norm(), b.norm());
  if (denom == 0.0) return 0.0;
  return (a - b).norm() / denom;
}

Point Point::disk(Complex z) {
  Vector c(1);
  c(0) = z;
  return Point(std::move(c));
}

PointSet::PointSet(std::vector<Point> points, std::string label)
    : points_(std::move(points)), label_(std::move(label)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim() == 0 || points_[i].dim() != points_.front().dim())
      throw Error(ErrorCode::InvalidArgument, "PointSet: inconsistent point dimensions");
    for (std::size_t j = 0; j < i; ++j) {
      if (points_[i].coords == points_[j].coords) {
        std::ostringstream os;
        os << "PointSet: points " << j << " and " << i << " coincide";
        throw Error(ErrorCode::InvalidArgument, os.str());
      }
    }
  }
}

PointSet PointSet::disk(const std::vector<Complex>& zs, std::string label) {
  std::vector<Point> pts;
  pts.reserve(zs.size());
  for (Complex z : zs) pts.push_back(Point::disk(z));
  return PointSet(std::move(pts), std::move(label));
}

PointSet PointSet::prefix(std::size_t n) const {
  n = std::min(n, points_.size());
  return PointSet(std::vector<Point>(points_.begin(), points_.begin() + n), label_);
}

PointSet PointSet::subset(const std::vector<std::size_t>& indices) const {
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= points_.size()) throw Error(ErrorCode::InvalidArgument, "PointSet::subset: index out of range");
    pts.push_back(points_[i]);
  }
  return PointSet(std::move(pts), label_);
}

Vector PointSet::disk_values() const {
  if (dim() != 1 && !points_.empty())
    throw Error(ErrorCode::InvalidArgument, "PointSet: disk values requested from a ball sample");
  Vector z(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) z(i) = points_[i].coords(0);
  return z;
}

CnpKernel CnpKernel::szego() { return CnpKernel(KernelKind::Szego, 1); }

CnpKernel CnpKernel::drury_arveson(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "drury_arveson: dimension must be positive");
  return CnpKernel(KernelKind::DruryArveson, d);
}

CnpKernel CnpKernel::bergman_probe(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "bergman_probe: dimension must be positive");
  return CnpKernel(KernelKind::BergmanProbe, d);
}

CnpKernel CnpKernel::embedding(Embedding u, std::string name) {
  if (!u) throw Error(ErrorCode::InvalidArgument, "embedding kernel needs a map");
  CnpKernel k(KernelKind::Embedding, 0);
  k.embedding_ = std::make_shared<const Embedding>(std::move(u));
  k.name_ = std::move(name);
  return k;
}

std::string CnpKernel::name() const {
  switch (kind_) {
    case KernelKind::Szego: return "szego";
    case KernelKind::DruryArveson: return "drury_arveson(" + std::to_string(dim_) + ")";
    case KernelKind::BergmanProbe: return "bergman_probe";
    case KernelKind::Embedding: return name_;
  }
  return "unknown";
}

Vector CnpKernel::embed(const Point& x) const {
  if (kind_ == KernelKind::Embedding) return (*embedding_)(x);
  return x.coords;
}

bool CnpKernel::admissible(const Point& x) const {
  if (dim_ != 0 && x.dim() != dim_) return false;
  if (!(x.norm_sq() < 1.0) && kind_ != KernelKind::Embedding) return false;
  if (kind_ == KernelKind::Embedding) return embed(x).squaredNorm() < 1.0;
  return true;
}

Complex CnpKernel::operator()(const Point& x, const Point& y) const {
  const Vector ux = embed(x);
  const Vector uy = embed(y);
  if (ux.size() != uy.size())
    throw Error(ErrorCode::InvalidArgument, "kernel: embedding dimensions differ");
  // <u(x), u(y)>, conjugate-linear in the second argument.
  const Complex ip = uy.dot(ux);
  const Complex base = 1.0 / (1.0 - ip);
  return kind_ == KernelKind::BergmanProbe ? base * base : base;
}

CnpKernel kernel_from_name(const std::string& name, std::size_t dim) {
  if (name == "szego") {
    if (dim > 1) throw Error(ErrorCode::InvalidArgument, "szego kernel lives on the disk (dim 1)");
    return CnpKernel::szego();
  }
  if (name == "drury_arveson" || name == "da") return CnpKernel::drury_arveson(dim == 0 ? 1 : dim);
  if (name == "bergman_probe" || name == "bergman") return CnpKernel::bergman_probe(dim == 0 ? 1 : dim);
  if (name == "embedding") {
    // Identity embedding u(x) = x; dimension is taken from the points.
    return CnpKernel::embedding([](const Point& p) { return p.coords; }, "embedding");
  }
  throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + name + "'");
}

KernelMatrix kernel_matrix_checked(const CnpKernel& kernel, const PointSet& pts,
                                   const Tolerances& tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!kernel.admissible(pts[i])) {
      std::ostringstream os;
      os << "kernel_matrix: point " << i << " is not admissible for " << kernel.name();
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
  }
  KernelMatrix out;
  out.k.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.k(i, i) = Complex(kernel(pts[i], pts[i]).real(), 0.0);
    for (Eigen::Index j = 0; j < i; ++j) {
      const Complex v = kernel(pts[i], pts[j]);
      out.k(i, j) = v;
      out.k(j, i) = std::conj(v);
    }
  }
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<Matrix> es(out.k, Eigen::EigenvaluesOnly);
  out.lambda_min = es.eigenvalues()(0);
  out.lambda_max = es.eigenvalues()(n - 1);
  if (out.lambda_min < -tol.psd * out.lambda_max) {
    std::ostringstream os;
    os << "kernel_matrix: min eigenvalue " << out.lambda_min << " below -tau*lambda_max";
    throw Error(ErrorCode::NonPositive, os.str());
  }
  out.cond = out.lambda_min > 0.0 ? out.lambda_max / out.lambda_min
                                  : std::numeric_limits<double>::infinity();
  if (out.cond > tol.cond_cap) {
    std::ostringstream os;
    os << "kernel_matrix: condition number " << out.cond << " exceeds cap " << tol.cond_cap;
    throw Error(ErrorCode::IllConditioned, os.str());
  }
  return out;
}

Matrix kernel_matrix(const CnpKernel& kernel, const PointSet& pts, const Tolerances& tol) {
  return kernel_matrix_checked(kernel, pts, tol).k;
}

CnpCertificate cnp_certificate(const CnpKernel& kernel, const PointSet& pts,
                               std::size_t base_index, double tau) {
  if (base_index >= pts.size())
    throw Error(ErrorCode::InvalidArgument, "cnp_certificate: base index out of range");
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  const Point& base = pts[base_index];
  const Complex k00 = kernel(base, base);

  Vector k_to_base(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k_to_base(i) = kernel(pts[i], base);
    if (std::abs(k_to_base(i)) < 1e-300 || !std::isfinite(std::abs(k_to_base(i))))
      throw Error(ErrorCode::ZeroKernelValue, "cnp_certificate: k(x_i, x_0) vanishes");
  }

  CnpCertificate cert;
  cert.base_index = base_index;
  cert.e.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      // k_hat(x, y) = k(x, y) k(x0, x0) / (k(x, x0) k(x0, y)),  k(x0, y) = conj(k(y, x0)).
      const Complex khat = kernel(pts[i], pts[j]) * k00 / (k_to_base(i) * std::conj(k_to_base(j)));
      if (std::abs(khat) < 1e-300)
        throw Error(ErrorCode::ZeroKernelValue, "cnp_certificate: normalised kernel vanishes");
      const Complex e = 1.0 - 1.0 / khat;
      cert.e(i, j) = e;
      cert.e(j, i) = std::conj(e);
    }
    cert.e(i, i) = Complex(cert.e(i, i).real(), 0.0);
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(cert.e);
  const RealVector& ev = es.eigenvalues();
  cert.min_eigenvalue = ev(0);
  cert.witness = es.eigenvectors().col(0);
  cert.max_diagonal = cert.e.diagonal().real().maxCoeff();
  const double scale = std::max(ev(n - 1), 0.0);
  cert.accepted = cert.min_eigenvalue >= -tau * scale && cert.max_diagonal < 1.0;
  if (cert.accepted) {
    const RealVector clipped = ev.cwiseMax(0.0).cwiseSqrt();
    cert.gram_factor = es.eigenvectors() * clipped.asDiagonal();
  }
  return cert;
}

double pseudo_hyperbolic(const Point& x, const Point& y) {
  const double nx = x.norm_sq();
  const double ny = y.norm_sq();
  const double ip = std::norm(1.0 - y.coords.dot(x.coords));
  const double one_minus = (1.0 - nx) * (1.0 - ny) / ip;
  return std::sqrt(std::max(0.0, 1.0 - one_minus));
}

namespace {

double van_der_corput(std::size_t j) {
  double r = 0.0;
  double d = 0.5;
  while (j != 0) {
    if (j & 1u) r += d;
    j >>= 1u;
    d *= 0.5;
  }
  return r;
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
  double u1 = unit_uniform(rng);
  while (u1 <= 0.0) u1 = unit_uniform(rng);
  const double u2 = unit_uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

PointSet fejer_points(std::size_t n, std::size_t first_ring, double growth) {
  if (first_ring == 0 || growth < 1.0)
    throw Error(ErrorCode::InvalidArgument, "fejer_points: need first_ring >= 1 and growth >= 1");
  std::vector<Complex> zs;
  zs.reserve(n);
  if (n > 0) zs.emplace_back(0.0, 0.0);
  for (int ring = 0; zs.size() < n; ++ring) {
    const auto m = static_cast<std::size_t>(std::llround(static_cast<double>(first_ring) * std::pow(growth, ring)));
    const double radius = 1.0 - std::ldexp(1.0, -(ring + 1));
    std::vector<std::size_t> order(m);
    for (std::size_t p = 0; p < m; ++p) order[p] = p;
    std::stable_sort(order.begin(), order.end(), [](std::size_t a, std::size_t b) {
      return van_der_corput(a) < van_der_corput(b);
    });
    const double offset = (ring % 2 == 1) ? 0.5 : 0.0;
    for (std::size_t p : order) {
      if (zs.size() == n) break;
      const double theta = 2.0 * std::numbers::pi * (static_cast<double>(p) + offset) / static_cast<double>(m);
      zs.push_back(std::polar(radius, theta));
    }
  }
  return PointSet::disk(zs, "fejer(" + std::to_string(n) + ")");
}

PointSet random_ball(std::size_t n, std::size_t dim, std::uint64_t seed, double radius,
                     double min_separation) {
  if (dim == 0 || !(radius > 0.0 && radius < 1.0))
    throw Error(ErrorCode::InvalidArgument, "random_ball: need dim >= 1 and 0 < radius < 1");
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  std::size_t attempts = 0;
  while (pts.size() < n) {
    if (++attempts > 1000 * (n + 1))
      throw Error(ErrorCode::InvalidArgument, "random_ball: separation too large for the requested size");
    Vector g(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      g(static_cast<Eigen::Index>(i)) = Complex(re, im);
    }
    const double gn = g.norm();
    if (gn == 0.0) continue;
    const double r = radius * std::pow(unit_uniform(rng), 1.0 / (2.0 * static_cast<double>(dim)));
    Point cand(g * (r / gn));
    bool ok = true;
    for (const Point& p : pts) {
      if (p.coords == cand.coords || pseudo_hyperbolic(p, cand) < min_separation) {
        ok = false;
        break;
      }
    }
    if (ok) pts.push_back(std::move(cand));
  }
  std::ostringstream label;
  label << "random_ball(n=" << n << ",dim=" << dim << ",seed=" << seed << ")";
  return PointSet(std::move(pts), label.str());
}

}  // namespace cnplab
