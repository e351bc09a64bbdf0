#ifndef CNPLAB_HARDY_HPP
#define CNPLAB_HARDY_HPP

#include <string>
#include <vector>

#include "cnplab/finsample.hpp"

namespace cnplab {

/// Spectral bridge between Taylor coefficients and values on the M-th roots
/// of unity: grid_j = sum_k c_k exp(2 pi i j k / M).
Vector grid_from_coeffs(const Vector& coeffs, std::size_t grid_size);
/// All M discrete Fourier coefficients of a grid vector (index k holds the
/// frequency k mod M).
Vector coeffs_from_grid(const Vector& grid);

bool is_power_of_two(std::size_t m);

/// A function on the disk carried both as Taylor coefficients c_0..c_N and as
/// boundary values on an M-point grid. The two are always consistent: the
/// grid is the M-point synthesis of the coefficients.
///
/// Built from coefficients, M is the smallest power of two with M >= 4N
/// (or the requested size). Built from a grid, all M discrete coefficients
/// are kept so the boundary values round-trip exactly; frequencies above
/// M/2 then hold the aliasing residue and are reported by
/// analytic_residual().
class DiskFunction {
public:
  DiskFunction() = default;

  static DiskFunction from_coeffs(const Vector& coeffs, std::size_t grid_size = 0);
  static DiskFunction from_grid(const Vector& values);
  static DiskFunction constant(Complex c, std::size_t grid_size = 4);
  static DiskFunction monomial(std::size_t k, std::size_t grid_size = 0);

  const Vector& coeffs() const { return coeffs_; }
  const Vector& grid() const { return grid_; }
  std::size_t grid_size() const { return static_cast<std::size_t>(grid_.size()); }
  std::size_t degree() const { return coeffs_.size() == 0 ? 0 : static_cast<std::size_t>(coeffs_.size() - 1); }

  /// Value at an interior point from the Taylor series.
  Complex operator()(Complex z) const;
  Vector evaluate(const Vector& zs) const;

  /// First n coefficients, zero padded.
  Vector coeffs_padded(std::size_t n) const;

  double h2_norm_sq() const { return coeffs_.squaredNorm(); }
  double sup_grid() const;
  /// ||c_{M/2+1..M-1}|| / ||c||; zero for anything built from coefficients.
  double analytic_residual() const;

private:
  Vector coeffs_;
  Vector grid_;
};

/// h = b / a with a outer.
struct SmirnovSymbol {
  DiskFunction a;
  DiskFunction b;

  Complex h(Complex z) const { return b(z) / a(z); }
};

/// Grid nodes exp(2 pi i j / M).
Vector unit_grid(std::size_t grid_size);

/// Log-modulus floor applied before transforming.
inline constexpr double kLogModulusFloor = -40.0;

/// Outer function with |a| = exp(log_mod) on the grid and a(0) > 0.
///
/// Samples at or below the floor are boundary zeros. When the neighbouring
/// samples show an integer order m, the zero is divided out as
/// (1 - conj(zeta_0) z)^m and the remaining smooth log-modulus is filled in
/// at zeta_0 by four-point interpolation; otherwise the sample just stays at
/// the floor. Throws GridTooCoarse when |a| misses exp(log_mod) on the grid
/// by more than 1e-6 (relative to the largest modulus), or when more than
/// 1e-3 of the coefficient mass sits above frequency M/2.
DiskFunction outer_from_modulus(const RealVector& log_mod);

/// Pythagorean mate of h given by its boundary values (non-finite entries are
/// poles): a outer with |a|^2 = 1 / (1 + |h|^2), b = a h.
SmirnovSymbol pythagorean_mate(const Vector& h_grid);
SmirnovSymbol pythagorean_mate(const DiskFunction& h);

struct TStarSolution {
  DiskFunction g;
  double residual = 0.0;  // || T_a^* g - T_b^* f ||
  std::size_t rank = 0;
};

/// Solves M_a^* g = M_b^* f on coefficients 0..N by least squares; then
/// g = T^* f up to truncation.
TStarSolution tstar_solve(const SmirnovSymbol& symbol, const DiskFunction& f, std::size_t degree);

/// H^2 distance from f to span{k_x : x in pts}: sqrt(||f||^2 - w^H K^{-1} w)
/// with w_i = f(x_i).
double kernel_span_error(const DiskFunction& f, const PointSet& pts);

/// Truncated coanalytic Toeplitz matrix (M_a^*)_{kj} = conj(a_{j-k}), 0 <= k, j <= N.
Matrix coanalytic_toeplitz(const DiskFunction& a, std::size_t degree);

/// Dom T* kernel value at (x, y) for a polynomial symbol h, by graph
/// projection in coefficient space truncated at degree N.
Complex global_domTstar_kernel_check(const Vector& h_coeffs, Complex x, Complex y, std::size_t degree);

/// Closed form (1 - x conj(y) / 2) / (1 - x conj(y)) for h = z.
Complex domTstar_kernel_h_equals_z(Complex x, Complex y);

/// a_n = a u_n with u_n outer, |u_n| = min(n, 1/|a|) on the grid.
DiskFunction approximate_unit(const DiskFunction& a, double n);

/// One stage of the constructive kernel approximation.
struct ApproxStage {
  std::string name;
  double target = 0.0;
  double achieved = 0.0;
  std::size_t points_used = 0;
};

struct ConstructiveResult {
  std::vector<ApproxStage> stages;
  double unit_index = 0.0;        // n of the chosen a_n
  double column_norm = 0.0;       // M = ||(b_n; a_n)||_inf
  Vector coefficients;            // M_{a_n}^* g = sum d_j k_{x_j}
  std::size_t points_used = 0;
  double hb_error = 0.0;          // exact ||f - M_{a_n}^* g||_{H(B)}
  double bound = 0.0;             // 6 eps
};

/// Runs the constructive approximation recipe: g1 ~ f and g2 ~ T*f in H,
/// a contractive a_n with M_{a_n}^* g_i ~ g_i, g ~ f to eps / M, output
/// M_{a_n}^* g. The H(B) error is computed exactly from point data.
/// Throws NotAchieved naming the stage that could not reach its tolerance,
/// or if the final error exceeds 6 eps.
ConstructiveResult constructive_hb_approx(const SmirnovSymbol& symbol, const DiskFunction& f,
                                          const DiskFunction& tstarf, double eps,
                                          const PointSet& kernel_points,
                                          double max_unit_index = 1073741824.0);

/// Best graph-norm approximation error of f by polynomials of degree <= d,
/// for each d, with T* applied through the truncated Toeplitz system.
std::vector<double> polynomial_density_decay(const SmirnovSymbol& symbol, const DiskFunction& f,
                                             const DiskFunction& tstarf,
                                             const std::vector<std::size_t>& degrees,
                                             std::size_t working_degree = 0);

}  // namespace cnplab

#endif  // CNPLAB_HARDY_HPP
