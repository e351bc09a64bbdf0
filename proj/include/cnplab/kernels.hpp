#ifndef CNPLAB_KERNELS_HPP
#define CNPLAB_KERNELS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cnplab/types.hpp"

namespace cnplab {

/// A point of the open unit ball of C^m (m = 1 for the disk).
struct Point {
  Vector coords;

  Point() = default;
  explicit Point(Vector c) : coords(std::move(c)) {}
  static Point disk(Complex z);

  std::size_t dim() const { return static_cast<std::size_t>(coords.size()); }
  double norm_sq() const { return coords.squaredNorm(); }
};

/// Ordered set of pairwise distinct points, all of the same dimension.
class PointSet {
public:
  PointSet() = default;
  PointSet(std::vector<Point> points, std::string label = {});

  static PointSet disk(const std::vector<Complex>& zs, std::string label = {});

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.empty() ? 0 : points_.front().dim(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  const std::string& label() const { return label_; }

  /// First n points, keeping the label.
  PointSet prefix(std::size_t n) const;
  PointSet subset(const std::vector<std::size_t>& indices) const;

  /// Values z_i of a disk point set; throws unless dim() == 1.
  Vector disk_values() const;

private:
  std::vector<Point> points_;
  std::string label_;
};

enum class KernelKind { Szego, DruryArveson, Embedding, BergmanProbe };

/// A complete Pick kernel k(x, y) = 1 / (1 - <u(x), u(y)>), or the Bergman
/// kernel 1 / (1 - <x, y>)^2 which is only here as a non-CNP control.
/// Inner products are conjugate-linear in the second slot.
class CnpKernel {
public:
  using Embedding = std::function<Vector(const Point&)>;

  static CnpKernel szego();
  static CnpKernel drury_arveson(std::size_t d);
  static CnpKernel bergman_probe(std::size_t d = 1);
  /// u(x) is user-supplied; it must map admissible points into the open ball.
  static CnpKernel embedding(Embedding u, std::string name = "embedding");

  KernelKind kind() const { return kind_; }
  /// Point dimension the kernel expects; 0 means "any" (embedding kernels).
  std::size_t dim() const { return dim_; }
  std::string name() const;

  /// u(x) for CNP kernels; identity for Szego/Drury-Arveson/Bergman.
  Vector embed(const Point& x) const;
  bool admissible(const Point& x) const;
  Complex operator()(const Point& x, const Point& y) const;

private:
  CnpKernel(KernelKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  KernelKind kind_;
  std::size_t dim_;
  std::shared_ptr<const Embedding> embedding_;
  std::string name_;
};

CnpKernel kernel_from_name(const std::string& name, std::size_t dim);

/// Kernel matrix with its spectral metadata.
struct KernelMatrix {
  Matrix k;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double cond = 0.0;
};

/// K[i, j] = k(x_i, x_j), exactly Hermitian. Throws NonPositive when the
/// smallest eigenvalue is below -tau * lambda_max and IllConditioned when
/// the condition number exceeds the cap.
KernelMatrix kernel_matrix_checked(const CnpKernel& kernel, const PointSet& pts,
                                   const Tolerances& tol = {});

Matrix kernel_matrix(const CnpKernel& kernel, const PointSet& pts,
                     const Tolerances& tol = {});

struct CnpCertificate {
  bool accepted = false;
  std::size_t base_index = 0;
  Matrix e;             // E[i, j] = 1 - 1 / k_hat(x_i, x_j)
  Matrix gram_factor;   // accepted: E = F F^H, row i is u(x_i)
  double min_eigenvalue = 0.0;
  double max_diagonal = 0.0;
  Vector witness;       // eigenvector of min_eigenvalue
};

/// Finite-sample check of the complete Pick normal form: normalise the
/// kernel at the base point and test E = 1 - 1/k_hat for positivity and
/// diag(E) < 1.
CnpCertificate cnp_certificate(const CnpKernel& kernel, const PointSet& pts,
                               std::size_t base_index, double tau = 1e-10);

/// Pseudo-hyperbolic distance in the ball.
double pseudo_hyperbolic(const Point& x, const Point& y);

/// Nested disk sample: the origin, then rings of equally spaced points.
/// Ring k has round(first_ring * growth^k) points at radius 1 - 2^-(k+1);
/// each ring is visited in bit-reversed order so every prefix is spread,
/// and odd rings are rotated by half a step.
PointSet fejer_points(std::size_t n, std::size_t first_ring = 4, double growth = 1.7);

/// Seeded sample of the ball of radius `radius` in C^dim, uniform in
/// volume, with candidates closer than `min_separation` (pseudo-hyperbolic)
/// to an accepted point rejected. Deterministic across platforms.
PointSet random_ball(std::size_t n, std::size_t dim, std::uint64_t seed,
                     double radius = 0.9, double min_separation = 0.0);

}  // namespace cnplab

#endif  // CNPLAB_KERNELS_HPP
