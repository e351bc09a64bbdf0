#include "cnplab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

namespace cnplab {

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

Vector grid_from_coeffs(const Vector& coeffs, std::size_t grid_size) {
  if (!is_power_of_two(grid_size))
    throw Error(ErrorCode::InvalidArgument, "grid size must be a power of two");
  // Fold high degrees onto k mod M; on the grid zeta^k = zeta^(k mod M).
  std::vector<Complex> folded(grid_size, Complex(0.0, 0.0));
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    folded[static_cast<std::size_t>(k) % grid_size] += coeffs(k);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Complex> out;
  fft.inv(out, folded);
  return Eigen::Map<const Vector>(out.data(), static_cast<Eigen::Index>(out.size()));
}

Vector coeffs_from_grid(const Vector& grid) {
  const auto m = static_cast<std::size_t>(grid.size());
  if (!is_power_of_two(m))
    throw Error(ErrorCode::InvalidArgument, "grid size must be a power of two");
  std::vector<Complex> in(grid.data(), grid.data() + grid.size());
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.fwd(out, in);
  Vector c = Eigen::Map<const Vector>(out.data(), static_cast<Eigen::Index>(out.size()));
  return c / static_cast<double>(m);
}

Vector unit_grid(std::size_t grid_size) {
  Vector z(static_cast<Eigen::Index>(grid_size));
  for (std::size_t j = 0; j < grid_size; ++j)
    z(static_cast<Eigen::Index>(j)) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_size));
  return z;
}

DiskFunction DiskFunction::from_coeffs(const Vector& coeffs, std::size_t grid_size) {
  if (coeffs.size() == 0) throw Error(ErrorCode::InvalidArgument, "DiskFunction: no coefficients");
  const std::size_t n = static_cast<std::size_t>(coeffs.size() - 1);
  const std::size_t need = std::max<std::size_t>(4, 4 * n);
  if (grid_size == 0) {
    grid_size = 4;
    while (grid_size < need) grid_size *= 2;
  }
  if (!is_power_of_two(grid_size))
    throw Error(ErrorCode::InvalidArgument, "DiskFunction: grid size must be a power of two");
  if (grid_size < need)
    throw Error(ErrorCode::GridTooCoarse, "DiskFunction: grid size must be at least 4 * degree");
  DiskFunction f;
  f.coeffs_ = coeffs;
  f.grid_ = grid_from_coeffs(coeffs, grid_size);
  return f;
}

DiskFunction DiskFunction::from_grid(const Vector& values) {
  if (!is_power_of_two(static_cast<std::size_t>(values.size())) || values.size() < 4)
    throw Error(ErrorCode::InvalidArgument, "DiskFunction: grid size must be a power of two >= 4");
  for (Eigen::Index j = 0; j < values.size(); ++j)
    if (!std::isfinite(values(j).real()) || !std::isfinite(values(j).imag()))
      throw Error(ErrorCode::InvalidArgument, "DiskFunction: non-finite grid value");
  DiskFunction f;
  f.coeffs_ = coeffs_from_grid(values);
  f.grid_ = values;
  return f;
}

DiskFunction DiskFunction::constant(Complex c, std::size_t grid_size) {
  Vector v(1);
  v(0) = c;
  return from_coeffs(v, grid_size);
}

DiskFunction DiskFunction::monomial(std::size_t k, std::size_t grid_size) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(k + 1));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return from_coeffs(v, grid_size);
}

Complex DiskFunction::operator()(Complex z) const {
  Complex acc(0.0, 0.0);
  for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) acc = acc * z + coeffs_(k);
  return acc;
}

Vector DiskFunction::evaluate(const Vector& zs) const {
  Vector out(zs.size());
  for (Eigen::Index i = 0; i < zs.size(); ++i) out(i) = (*this)(zs(i));
  return out;
}

Vector DiskFunction::coeffs_padded(std::size_t n) const {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(n));
  const Eigen::Index m = std::min<Eigen::Index>(static_cast<Eigen::Index>(n), coeffs_.size());
  out.head(m) = coeffs_.head(m);
  return out;
}

double DiskFunction::sup_grid() const { return grid_.size() == 0 ? 0.0 : grid_.cwiseAbs().maxCoeff(); }

double DiskFunction::analytic_residual() const {
  const Eigen::Index m = grid_.size();
  if (coeffs_.size() != m || m < 4) return 0.0;
  const double total = coeffs_.norm();
  if (total == 0.0) return 0.0;
  return coeffs_.segment(m / 2 + 1, m / 2 - 1).norm() / total;
}

namespace {

// log |1 - conj(zeta_a) zeta_b| for grid nodes a != b.
double log_chord(std::size_t a, std::size_t b, std::size_t m) {
  const double d = static_cast<double>(static_cast<long long>(b) - static_cast<long long>(a));
  return std::log(2.0 * std::abs(std::sin(std::numbers::pi * d / static_cast<double>(m))));
}

// Cubic interpolation at j from samples at j-2, j-1, j+1, j+2.
template <typename T>
T fill_from_neighbours(const T& left2, const T& left1, const T& right1, const T& right2) {
  return (4.0 * (left1 + right1) - (left2 + right2)) / 6.0;
}

struct BoundaryZero {
  std::size_t index;
  int order;
};

}  // namespace

DiskFunction outer_from_modulus(const RealVector& log_mod_in) {
  const auto m = static_cast<std::size_t>(log_mod_in.size());
  if (!is_power_of_two(m) || m < 8)
    throw Error(ErrorCode::InvalidArgument, "outer_from_modulus: grid size must be a power of two >= 8");

  RealVector log_mod(log_mod_in.size());
  std::vector<bool> at_floor(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    const double v = log_mod_in(static_cast<Eigen::Index>(j));
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      throw Error(ErrorCode::InvalidArgument, "outer_from_modulus: log-modulus must be finite or -inf");
    at_floor[j] = v <= kLogModulusFloor;
    log_mod(static_cast<Eigen::Index>(j)) = std::max(v, kLogModulusFloor);
  }

  auto at = [&](std::size_t j, long long off) {
    return (j + m + static_cast<std::size_t>(off + static_cast<long long>(m))) % m;
  };

  // Boundary zeros whose order can be read off the neighbouring samples.
  std::vector<BoundaryZero> zeros;
  for (std::size_t j = 0; j < m; ++j) {
    if (!at_floor[j]) continue;
    bool isolated = true;
    for (long long off : {-2LL, -1LL, 1LL, 2LL}) isolated = isolated && !at_floor[at(j, off)];
    if (!isolated) continue;
    const double right = (log_mod(static_cast<Eigen::Index>(at(j, 2))) - log_mod(static_cast<Eigen::Index>(at(j, 1)))) / std::numbers::ln2;
    const double left = (log_mod(static_cast<Eigen::Index>(at(j, -2))) - log_mod(static_cast<Eigen::Index>(at(j, -1)))) / std::numbers::ln2;
    const double order = 0.5 * (left + right);
    const double rounded = std::round(order);
    if (rounded >= 1.0 && std::abs(order - rounded) < 0.25)
      zeros.push_back({j, static_cast<int>(rounded)});
  }

  // Smooth remainder R = log|a| - sum m log|1 - conj(zeta_0) z|.
  RealVector rest = log_mod;
  for (const BoundaryZero& z : zeros) {
    for (std::size_t j = 0; j < m; ++j)
      if (j != z.index) rest(static_cast<Eigen::Index>(j)) -= z.order * log_chord(z.index, j, m);
  }
  for (const BoundaryZero& z : zeros) {
    rest(static_cast<Eigen::Index>(z.index)) = fill_from_neighbours(
        rest(static_cast<Eigen::Index>(at(z.index, -2))), rest(static_cast<Eigen::Index>(at(z.index, -1))),
        rest(static_cast<Eigen::Index>(at(z.index, 1))), rest(static_cast<Eigen::Index>(at(z.index, 2))));
  }

  // Analytic completion: keep frequency 0, double 1..M/2-1, halve Nyquist.
  const Vector c = coeffs_from_grid(rest.cast<Complex>());
  Vector completed = Vector::Zero(static_cast<Eigen::Index>(m));
  completed(0) = c(0).real();
  for (std::size_t k = 1; k < m / 2; ++k) completed(static_cast<Eigen::Index>(k)) = 2.0 * c(static_cast<Eigen::Index>(k));
  completed(static_cast<Eigen::Index>(m / 2)) = c(static_cast<Eigen::Index>(m / 2)).real();
  const Vector log_outer = grid_from_coeffs(completed, m);

  const Vector nodes = unit_grid(m);
  Vector values(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    Complex v = std::exp(log_outer(static_cast<Eigen::Index>(j)));
    for (const BoundaryZero& z : zeros)
      v *= std::pow(1.0 - std::conj(nodes(static_cast<Eigen::Index>(z.index))) * nodes(static_cast<Eigen::Index>(j)), z.order);
    values(static_cast<Eigen::Index>(j)) = v;
  }
  for (const BoundaryZero& z : zeros) values(static_cast<Eigen::Index>(z.index)) = 0.0;

  DiskFunction a = DiskFunction::from_grid(values);

  double scale = 0.0;
  double residual = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double target = std::exp(log_mod_in(static_cast<Eigen::Index>(j)));
    scale = std::max(scale, target);
    residual = std::max(residual, std::abs(std::abs(values(static_cast<Eigen::Index>(j))) - target));
  }
  if (residual > 1e-6 * std::max(scale, 1e-300) || a.analytic_residual() > 1e-3) {
    std::ostringstream os;
    os << "outer_from_modulus: modulus residual " << residual << ", aliasing residue "
       << a.analytic_residual() << " on a " << m << "-point grid";
    throw Error(ErrorCode::GridTooCoarse, os.str());
  }
  return a;
}

SmirnovSymbol pythagorean_mate(const Vector& h_grid) {
  const auto m = static_cast<std::size_t>(h_grid.size());
  RealVector log_mod(h_grid.size());
  std::vector<bool> pole(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    const Complex hj = h_grid(static_cast<Eigen::Index>(j));
    const double r = std::abs(hj);
    if (!std::isfinite(r)) {
      if (std::isnan(hj.real()) && std::isnan(hj.imag()) && !std::isinf(r))
        throw Error(ErrorCode::InvalidArgument, "pythagorean_mate: NaN boundary value");
      pole[j] = true;
      log_mod(static_cast<Eigen::Index>(j)) = -std::numeric_limits<double>::infinity();
    } else if (r > 1.0) {
      log_mod(static_cast<Eigen::Index>(j)) = -std::log(r) - 0.5 * std::log1p(1.0 / (r * r));
    } else {
      log_mod(static_cast<Eigen::Index>(j)) = -0.5 * std::log1p(r * r);
    }
  }

  SmirnovSymbol s;
  s.a = outer_from_modulus(log_mod);

  Vector b(h_grid.size());
  for (std::size_t j = 0; j < m; ++j)
    if (!pole[j]) b(static_cast<Eigen::Index>(j)) = s.a.grid()(static_cast<Eigen::Index>(j)) * h_grid(static_cast<Eigen::Index>(j));
  // b is bounded; at poles of h take its value by continuity.
  for (std::size_t j = 0; j < m; ++j) {
    if (!pole[j]) continue;
    const std::size_t l2 = (j + m - 2) % m, l1 = (j + m - 1) % m, r1 = (j + 1) % m, r2 = (j + 2) % m;
    if (pole[l2] || pole[l1] || pole[r1] || pole[r2])
      throw Error(ErrorCode::GridTooCoarse, "pythagorean_mate: poles of h are not separated on the grid");
    b(static_cast<Eigen::Index>(j)) = fill_from_neighbours(b(static_cast<Eigen::Index>(l2)), b(static_cast<Eigen::Index>(l1)),
                                                           b(static_cast<Eigen::Index>(r1)), b(static_cast<Eigen::Index>(r2)));
  }
  s.b = DiskFunction::from_grid(b);

  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    worst = std::max(worst, std::abs(std::norm(s.a.grid()(static_cast<Eigen::Index>(j))) +
                                     std::norm(s.b.grid()(static_cast<Eigen::Index>(j))) - 1.0));
  if (worst > 1e-8) {
    std::ostringstream os;
    os << "pythagorean_mate: |a|^2 + |b|^2 deviates from 1 by " << worst;
    throw Error(ErrorCode::GridTooCoarse, os.str());
  }
  return s;
}

SmirnovSymbol pythagorean_mate(const DiskFunction& h) { return pythagorean_mate(h.grid()); }

double kernel_span_error(const DiskFunction& f, const PointSet& pts) {
  const FinSampleSpace space(CnpKernel::szego(), pts);
  const Vector w = f.evaluate(pts.disk_values());
  const double err_sq = f.h2_norm_sq() - w.dot(space.solve(w).col(0)).real();
  return std::sqrt(std::max(0.0, err_sq));
}

Matrix coanalytic_toeplitz(const DiskFunction& a, std::size_t degree) {
  const auto n = static_cast<Eigen::Index>(degree + 1);
  const Vector c = a.coeffs_padded(degree + 1);
  Matrix t = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = k; j < n; ++j) t(k, j) = std::conj(c(j - k));
  return t;
}

namespace {

Eigen::ColPivHouseholderQR<Matrix> checked_qr(const Matrix& t, const char* what) {
  Eigen::ColPivHouseholderQR<Matrix> qr(t);
  qr.setThreshold(1e-10);
  if (qr.rank() < t.cols()) {
    std::ostringstream os;
    os << what << ": truncated system has rank " << qr.rank() << " < " << t.cols();
    throw Error(ErrorCode::RankDeficient, os.str());
  }
  return qr;
}

}  // namespace

TStarSolution tstar_solve(const SmirnovSymbol& symbol, const DiskFunction& f, std::size_t degree) {
  const Matrix ta = coanalytic_toeplitz(symbol.a, degree);
  const Matrix tb = coanalytic_toeplitz(symbol.b, degree);
  const Vector rhs = tb * f.coeffs_padded(degree + 1);
  const auto qr = checked_qr(ta, "tstar_solve");
  TStarSolution out;
  const Vector g = qr.solve(rhs);
  out.residual = (ta * g - rhs).norm();
  out.rank = static_cast<std::size_t>(qr.rank());
  out.g = DiskFunction::from_coeffs(g);
  return out;
}

Complex global_domTstar_kernel_check(const Vector& h_coeffs, Complex x, Complex y, std::size_t degree) {
  if (h_coeffs.size() == 0) throw Error(ErrorCode::InvalidArgument, "global_domTstar_kernel_check: empty symbol");
  const Eigen::Index d = h_coeffs.size() - 1;
  const auto n = static_cast<Eigen::Index>(degree + 1);  // domain P_N
  const Eigen::Index p = n + d;                          // range P_{N+d}

  // Graph {(f, h f) : f in P_N} inside P_{N+d} + P_{N+d}; monomials are orthonormal.
  Matrix graph = Matrix::Zero(2 * p, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    graph(k, k) = 1.0;
    for (Eigen::Index i = 0; i <= d; ++i) graph(p + k + i, k) = h_coeffs(i);
  }
  Eigen::HouseholderQR<Matrix> qr(graph);
  const Matrix q = qr.householderQ() * Matrix::Identity(2 * p, 2 * p);
  const Matrix q_perp = q.rightCols(2 * p - n);
  Matrix q_adj(2 * p, 2 * p - n);
  q_adj.topRows(p) = -q_perp.bottomRows(p);
  q_adj.bottomRows(p) = q_perp.topRows(p);

  Vector target = Vector::Zero(2 * p);
  Complex power(1.0, 0.0);
  for (Eigen::Index k = 0; k < p; ++k) {
    target(k) = power;
    power *= std::conj(y);
  }
  const Vector proj = q_adj * (q_adj.adjoint() * target);
  Complex acc(0.0, 0.0);
  for (Eigen::Index k = p - 1; k >= 0; --k) acc = acc * x + proj(k);
  return acc;
}

Complex domTstar_kernel_h_equals_z(Complex x, Complex y) {
  const Complex w = x * std::conj(y);
  return (1.0 - 0.5 * w) / (1.0 - w);
}

DiskFunction approximate_unit(const DiskFunction& a, double n) {
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "approximate_unit: n must be positive");
  const auto m = static_cast<Eigen::Index>(a.grid_size());
  RealVector log_u(m);
  const double log_n = std::log(n);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double r = std::abs(a.grid()(j));
    log_u(j) = r > 0.0 ? std::min(log_n, -std::log(r)) : log_n;
  }
  const DiskFunction u = outer_from_modulus(log_u);
  return DiskFunction::from_grid(a.grid().cwiseProduct(u.grid()));
}

namespace {

struct KernelFit {
  std::size_t count = 0;
  Vector coeffs;
  double error = 0.0;
};

// Smallest prefix of the kernel points whose H-norm best approximation of a
// function with point values w and norm^2 norm_sq is within tol.
KernelFit fit_prefix(const Matrix& k, const Vector& w, double norm_sq, double tol) {
  KernelFit best;
  best.error = std::sqrt(std::max(0.0, norm_sq));
  for (Eigen::Index m = 1; m <= k.rows(); ++m) {
    Eigen::LDLT<Matrix> ldlt(k.topLeftCorner(m, m));
    const Vector c = ldlt.solve(w.head(m));
    const double err = std::sqrt(std::max(0.0, norm_sq - w.head(m).dot(c).real()));
    if (err < best.error || best.count == 0) {
      best.count = static_cast<std::size_t>(m);
      best.coeffs = c;
      best.error = err;
    }
    if (err < tol) {
      best.count = static_cast<std::size_t>(m);
      best.coeffs = c;
      best.error = err;
      return best;
    }
  }
  return best;
}

[[noreturn]] void not_achieved(const std::string& stage, double target, double achieved) {
  std::ostringstream os;
  os << "constructive_hb_approx: stage '" << stage << "' reached " << achieved << ", needed < " << target;
  throw Error(ErrorCode::NotAchieved, os.str());
}

}  // namespace

ConstructiveResult constructive_hb_approx(const SmirnovSymbol& symbol, const DiskFunction& f,
                                          const DiskFunction& tstarf, double eps,
                                          const PointSet& kernel_points, double max_unit_index) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "constructive_hb_approx: eps must be positive");
  const FinSampleSpace space(CnpKernel::szego(), kernel_points);
  const Vector z = kernel_points.disk_values();
  const Matrix& k = space.k();

  const Vector f_vals = f.evaluate(z);
  const Vector tf_vals = tstarf.evaluate(z);
  Vector h_vals(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) h_vals(i) = symbol.h(z(i));

  ConstructiveResult out;
  out.bound = 6.0 * eps;

  const KernelFit g1 = fit_prefix(k, f_vals, f.h2_norm_sq(), eps);
  out.stages.push_back({"g1 ~ f", eps, g1.error, g1.count});
  if (!(g1.error < eps)) not_achieved("g1 ~ f", eps, g1.error);

  const KernelFit g2 = fit_prefix(k, tf_vals, tstarf.h2_norm_sq(), eps);
  out.stages.push_back({"g2 ~ T*f", eps, g2.error, g2.count});
  if (!(g2.error < eps)) not_achieved("g2 ~ T*f", eps, g2.error);

  // ||g - M_a^* g||^2 for g = sum c_j k_{x_j}: M_a^* k_x = conj(a(x)) k_x.
  auto unit_defect = [&](const DiskFunction& an, const KernelFit& g) {
    const auto m = static_cast<Eigen::Index>(g.count);
    Vector e(m);
    for (Eigen::Index j = 0; j < m; ++j) e(j) = g.coeffs(j) * (1.0 - std::conj(an(z(j))));
    return std::sqrt(std::max(0.0, e.dot(k.topLeftCorner(m, m) * e).real()));
  };

  DiskFunction unit;
  double defect = std::numeric_limits<double>::infinity();
  for (double n = 1.0; n <= max_unit_index; n *= 2.0) {
    DiskFunction an = approximate_unit(symbol.a, n);
    defect = std::max(unit_defect(an, g1), unit_defect(an, g2));
    if (defect < eps) {
      out.unit_index = n;
      unit = std::move(an);
      break;
    }
  }
  out.stages.push_back({"a_n unit", eps, defect, std::max(g1.count, g2.count)});
  if (!(defect < eps)) not_achieved("a_n unit", eps, defect);

  // Column norm of (b_n; a_n) with b_n = a_n h = b u_n; sup over the boundary.
  const Vector un = unit.grid().cwiseQuotient(symbol.a.grid().unaryExpr([](Complex v) {
    return std::abs(v) > 0.0 ? v : Complex(1.0, 0.0);
  }));
  double col = 0.0;
  for (Eigen::Index j = 0; j < unit.grid().size(); ++j) {
    const Complex aj = unit.grid()(j);
    const Complex bj = symbol.a.grid()(j) == Complex(0.0, 0.0) ? symbol.b.grid()(j) * std::abs(aj)
                                                               : symbol.b.grid()(j) * un(j);
    col = std::max(col, std::sqrt(std::norm(aj) + std::norm(bj)));
  }
  out.column_norm = col;

  const double g_target = eps / std::max(col, 1e-300);
  const KernelFit g = fit_prefix(k, f_vals, f.h2_norm_sq(), g_target);
  out.stages.push_back({"g ~ f", g_target, g.error, g.count});
  if (!(g.error < g_target)) not_achieved("g ~ f", g_target, g.error);

  const auto m = static_cast<Eigen::Index>(g.count);
  out.points_used = g.count;
  out.coefficients.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) out.coefficients(j) = std::conj(unit(z(j))) * g.coeffs(j);

  // ||f - sum d_j k_j||_B^2 = ||f||_B^2 - 2 Re sum conj(d_j) v_j + d^H G_B d,
  // v_j = f(x_j) + h(x_j) (T*f)(x_j).
  Matrix gb(m, m);
  Vector v(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    v(i) = f_vals(i) + h_vals(i) * tf_vals(i);
    for (Eigen::Index j = 0; j < m; ++j) gb(i, j) = (1.0 + h_vals(i) * std::conj(h_vals(j))) * k(i, j);
  }
  const double norm_b = f.h2_norm_sq() + tstarf.h2_norm_sq();
  const Vector& d = out.coefficients;
  const double err_sq = norm_b - 2.0 * d.dot(v).real() + d.dot(gb * d).real();
  out.hb_error = std::sqrt(std::max(0.0, err_sq));
  out.stages.push_back({"H(B) error", out.bound, out.hb_error, g.count});
  if (out.hb_error > out.bound) not_achieved("H(B) error", out.bound, out.hb_error);
  return out;
}

std::vector<double> polynomial_density_decay(const SmirnovSymbol& symbol, const DiskFunction& f,
                                             const DiskFunction& tstarf,
                                             const std::vector<std::size_t>& degrees,
                                             std::size_t working_degree) {
  std::size_t top = 0;
  for (std::size_t d : degrees) top = std::max(top, d);
  if (working_degree == 0)
    working_degree = std::max(top, std::min<std::size_t>(std::max(f.degree(), tstarf.degree()), 512));
  if (working_degree < top)
    throw Error(ErrorCode::InvalidArgument, "polynomial_density_decay: working degree below requested degree");

  const auto n = static_cast<Eigen::Index>(working_degree + 1);
  const Matrix ta = coanalytic_toeplitz(symbol.a, working_degree);
  const Matrix tb = coanalytic_toeplitz(symbol.b, working_degree);
  const Matrix tstar = checked_qr(ta, "polynomial_density_decay").solve(tb);

  Vector rhs(2 * n);
  rhs.head(n) = f.coeffs_padded(working_degree + 1);
  rhs.tail(n) = tstarf.coeffs_padded(working_degree + 1);

  std::vector<double> errors;
  errors.reserve(degrees.size());
  for (std::size_t d : degrees) {
    const auto cols = static_cast<Eigen::Index>(d + 1);
    Matrix a(2 * n, cols);
    a.topRows(n) = Matrix::Identity(n, cols);
    a.bottomRows(n) = tstar.leftCols(cols);
    const Vector p = a.householderQr().solve(rhs);
    errors.push_back((a * p - rhs).norm());
  }
  return errors;
}

}  // namespace cnplab
