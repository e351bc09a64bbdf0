// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Expected values are computed here from closed forms, not by the library.

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cnplab/experiments.hpp"

using namespace cnplab;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

SampledMultiplier values_of(const PointSet& pts, const std::function<Complex(Complex)>& fn, const char* name) {
  SampledMultiplier m;
  m.values = pts.disk_values().unaryExpr(fn);
  m.name = name;
  return m;
}

std::vector<std::size_t> first(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

// The sweep is shared by criteria 1, 2 and 10.
const SweepResult& sweep() {
  static const SweepResult r = [] {
    SweepConfig c;
    c.seed = 20240601;
    return identity_sweep(c);
  }();
  return r;
}

Outcome criterion1() {
  Outcome o;
  const SweepResult& r = sweep();
  std::set<std::string> kernels;
  std::size_t n_lo = 1000, n_hi = 0;
  double cond_hi = 0.0;
  for (const SweepSample& s : r.samples) {
    kernels.insert(s.kernel);
    n_lo = std::min(n_lo, s.n);
    n_hi = std::max(n_hi, s.n);
    cond_hi = std::max(cond_hi, s.cond);
  }
  o.require(r.samples.size() == 50, "sample count " + std::to_string(r.samples.size()));
  o.require(kernels.size() == 3, "kernels covered " + std::to_string(kernels.size()));
  o.require(n_lo >= 5 && n_hi <= 40, "n outside 5..40");
  o.require(cond_hi <= 1e8, fmt("cond %.3g above 1e8", cond_hi));
  o.require(r.max_err_dom_t <= 1e-8, fmt("Dom T error %.3g", r.max_err_dom_t));
  o.require(r.max_err_dom_tstar <= 1e-8, fmt("Dom T* error %.3g", r.max_err_dom_tstar));
  o.require(r.seconds < 30.0, fmt("took %.3g s", r.seconds));
  o.note(fmt("max err Dom T %.2e, Dom T* %.2e", r.max_err_dom_t, r.max_err_dom_tstar));
  o.note(fmt("n %.0f..%.0f", double(n_lo), double(n_hi)) + fmt(", max cond %.2e, %.2f s", cond_hi, r.seconds));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const SweepResult& r = sweep();
  o.require(r.max_err_gram <= 1e-8, fmt("Gram error %.3g", r.max_err_gram));
  o.require(r.max_err_eigenvector <= 1e-10, fmt("eigenvector error %.3g", r.max_err_eigenvector));
  o.note(fmt("max err Gram %.2e, eigenvector %.2e", r.max_err_gram, r.max_err_eigenvector));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const PointSet pts = PointSet::disk({0.0, 0.5});
  const FinSampleSpace space(CnpKernel::szego(), pts);
  const SampledMultiplier h = values_of(pts, [](Complex z) { return z; }, "z");

  // Hand values: K = [[1,1],[1,4/3]], D = diag(0, 1/2), G_B = K + D K D^H.
  Matrix want_kts(2, 2), want_gb(2, 2);
  want_kts << 1.0, 1.0, 1.0, 7.0 / 6.0;
  want_gb << 1.0, 1.0, 1.0, 5.0 / 3.0;

  const DomTStarKernel kts = domTstar_kernel(space, h);
  const GraphKernels gp = graph_projection_kernels(space, h);
  const double e1 = (kts.kernel - want_kts).cwiseAbs().maxCoeff();
  const double e2 = (gp.dom_tstar - want_kts).cwiseAbs().maxCoeff();
  const double e3 = (kts.gram - want_gb).cwiseAbs().maxCoeff();
  const double e4 = (gram_from_domtstar(space, gp.dom_tstar_whitened) - want_gb).cwiseAbs().maxCoeff();
  o.require(e1 <= 1e-12, fmt("K^{T*} closed form off by %.3g", e1));
  o.require(e2 <= 1e-12, fmt("K^{T*} projection off by %.3g", e2));
  o.require(e3 <= 1e-12, fmt("G_B off by %.3g", e3));
  o.require(e4 <= 1e-12, fmt("G_B projection off by %.3g", e4));

  // f = z, T*f = 1, ||f||_B^2 = 2. With w = (0, 1/2 + 1/2) and G = G_B the
  // projection onto span{k_0, k_1/2} has squared norm w^H G^{-1} w = 3/2.
  const Vector f = pts.disk_values();
  const Vector tf = Vector::Ones(2);
  const BestApprox best = hb_best_approx(space, h, f, tf, 2.0, {0, 1});
  const Complex w1 = f(1) + h.values(1) * tf(1);
  const double det = std::real(want_gb(0, 0) * want_gb(1, 1) - want_gb(0, 1) * want_gb(1, 0));
  const double want_err = 2.0 - std::norm(w1) * std::real(want_gb(0, 0)) / det;
  o.require(std::abs(want_err - 0.5) <= 1e-15, "oracle inconsistent");
  o.require(std::abs(best.error_sq - 0.5) <= 1e-12, fmt("error^2 %.17g", best.error_sq));
  o.note(fmt("max desk error %.2e, error^2 = %.15f", std::max({e1, e2, e3, e4}), best.error_sq));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const Complex x(0.5, 0.0);
  // (1 - x conj(y) / 2) / (1 - x conj(y)) at x = y = 1/2: (7/8) / (3/4).
  const double want = 7.0 / 6.0;
  Vector hz(2);
  hz << 0.0, 1.0;
  double prev_err = std::numeric_limits<double>::infinity();
  std::string trail;
  for (std::size_t n : {16, 32, 64}) {
    const double err = std::abs(global_domTstar_kernel_check(hz, x, x, n) - want);
    // Past the rounding floor a smaller truncation error cannot show up.
    const double floor = 8.0 * kEps * want;
    o.require(err < prev_err || (err <= floor && prev_err <= floor),
              fmt("error did not decrease at N = %.0f (%.3g)", double(n), err));
    if (n == 64) o.require(err <= 1e-6, fmt("N = 64 error %.3g", err));
    trail += (trail.empty() ? "" : " -> ") + fmt("%.2e", err);
    prev_err = err;
  }
  o.note("errors N=16,32,64: " + trail);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const std::size_t m = 4096;
  struct Case {
    const char* label;
    Json spec;
    std::function<double(double)> abs_h_sq;  // |h(e^{i theta})|^2
  };
  const std::vector<Case> cases{
      {"h = 0", Json("zero"), [](double) { return 0.0; }},
      {"h = 1/2", Json{{"name", "constant"}, {"value", 0.5}}, [](double) { return 0.25; }},
      {"h = 3+4i", Json{{"name", "constant"}, {"value", {3.0, 4.0}}}, [](double) { return 25.0; }},
      // |1 - e^{i theta}|^2 = 4 sin^2(theta / 2)
      {"h = 1/(1-z)", Json("one_over_1mz"),
       [](double t) {
         const double s = 4.0 * std::sin(t / 2) * std::sin(t / 2);
         return s == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / s;
       }},
  };
  double worst_sum = 0.0, worst_mod = 0.0;
  for (const Case& c : cases) {
    const SmirnovSymbol s = symbol_smirnov(c.spec, m);
    if (s.a.grid_size() != m || s.b.grid_size() != m) {
      o.require(false, std::string(c.label) + ": wrong grid size");
      continue;
    }
    double sum_err = 0.0, mod_err = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
      const double hh = c.abs_h_sq(theta);
      const double want_a = std::isinf(hh) ? 0.0 : 1.0 / (1.0 + hh);
      const auto jj = static_cast<Eigen::Index>(j);
      const double a2 = std::norm(s.a.grid()(jj)), b2 = std::norm(s.b.grid()(jj));
      sum_err = std::max(sum_err, std::abs(a2 + b2 - 1.0));
      mod_err = std::max(mod_err, std::abs(a2 - want_a));
    }
    o.require(sum_err <= 1e-8, std::string(c.label) + fmt(": |a|^2+|b|^2 off by %.3g", sum_err));
    o.require(mod_err <= 1e-8, std::string(c.label) + fmt(": |a|^2 off by %.3g", mod_err));
    worst_sum = std::max(worst_sum, sum_err);
    worst_mod = std::max(worst_mod, mod_err);
  }
  o.note(fmt("4096-point grid, max ||a|^2+|b|^2-1| %.2e, max |a|^2 error %.2e", worst_sum, worst_mod));
  return o;
}

Outcome criterion6() {
  Outcome o;
  {
    const PointSet pts = PointSet::disk({0.0, 0.5});
    const FinSampleSpace space(CnpKernel::szego(), pts);
    const double v = multiplier_norm(space, values_of(pts, [](Complex z) { return z; }, "z"));
    o.require(std::abs(v - 1.0) <= 1e-10, fmt("desk norm %.17g", v));
  }
  const PointSet pts = fejer_points(200);
  const FinSampleSpace full(CnpKernel::szego(), pts);
  const SampledMultiplier z = values_of(pts, [](Complex w) { return w; }, "z");
  double prev = 0.0, last = 0.0;
  for (std::size_t n = 10; n <= 200; n += 10) {
    const FinSampleSpace sp = full.restrict_to(first(n));
    last = multiplier_norm(sp, {z.values.head(static_cast<Eigen::Index>(n)), "z"});
    // The pencil eigenvalue carries a backward error of order eps * cond(K).
    const double noise = kEps * sp.cond_estimate() * last;
    o.require(last >= prev - noise, fmt("decrease at n = %.0f: %.17g", double(n), last));
    prev = last;
  }
  o.require(std::abs(last - 1.0) <= 0.01, fmt("n = 200 value %.6g", last));
  o.note(fmt("n = 200: %.12f", last));
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (const PointSet& pts : {PointSet::disk({0.0, 0.5}), fejer_points(30)}) {
    const FinSampleSpace space(CnpKernel::szego(), pts);
    const std::size_t n = pts.size();
    const RepresentingPair unit{{Vector::Ones(static_cast<Eigen::Index>(n)), "1"},
                                {Vector::Zero(static_cast<Eigen::Index>(n)), "0"}, false};
    const double c = corona_constant(space, unit);
    o.require(c == 1.0, fmt("corona((1, 0)) = %.17g on %.0f points", c, double(n)));
  }

  const PointSet pts = fejer_points(100);
  const FinSampleSpace full(CnpKernel::szego(), pts);
  const Vector zs = pts.disk_values();
  const Vector a = zs.unaryExpr([](Complex z) { return (1.0 - z) / 2.0; });
  const Vector b = Vector::Constant(zs.size(), 0.5);
  double prev = std::numeric_limits<double>::infinity(), last = 0.0;
  for (std::size_t n : {10, 20, 40, 70, 100}) {
    const auto m = static_cast<Eigen::Index>(n);
    const FinSampleSpace sp = full.restrict_to(first(n));
    last = corona_constant(sp, {{a.head(m), "a"}, {b.head(m), "b"}, false});
    double bound = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) bound = std::min(bound, std::sqrt(std::norm(a(i)) + std::norm(b(i))));
    const double noise = kEps * sp.cond_estimate() * last;
    o.require(last <= prev + noise, fmt("increase at n = %.0f: %.17g", double(n), last));
    o.require(last <= bound + noise, fmt("above pointwise bound at n = %.0f: %.17g", double(n), last));
    prev = last;
  }
  const Vector den = a.cwiseAbs2() + b.cwiseAbs2();
  const SampledMultiplier u{a.conjugate().cwiseQuotient(den), "u"}, v{b.conjugate().cwiseQuotient(den), "v"};
  double residual = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    residual = std::max(residual, std::abs(a(i) * u.values(i) + b(i) * v.values(i) - 1.0));
  const CoronaCertificate cert = corona_certify(full, {{a, "a"}, {b, "b"}, false}, u, v);
  o.require(cert.identity_residual <= 1e-10, fmt("identity residual %.3g", cert.identity_residual));
  o.require(std::abs(cert.identity_residual - residual) <= 1e-15, "certificate residual disagrees");
  o.note(fmt("corona at n=100: %.6f, identity residual %.2e", last, cert.identity_residual));
  return o;
}

Outcome criterion8() {
  Outcome o;
  const SmirnovSymbol sym = symbol_smirnov(Json("z"), 4096);
  const DiskFunction f = DiskFunction::monomial(1);
  const TStarSolution ts = tstar_solve(sym, f, 64);
  // T* z = 1 for h = z.
  const double ts_err = (ts.g.coeffs_padded(65) - Vector::Unit(65, 0)).norm();
  o.require(ts_err <= 1e-8, fmt("T*z differs from 1 by %.3g", ts_err));

  const PointSet pts = fejer_points(50);
  try {
    const ConstructiveResult r = constructive_hb_approx(sym, f, ts.g, 0.1, pts);
    o.require(r.hb_error <= 0.6, fmt("H(B) error %.3g", r.hb_error));
    o.note(fmt("H(B) error %.3g with unit index %.0f", r.hb_error, r.unit_index));
  } catch (const Error& e) {
    o.require(false, std::string("recipe did not terminate: ") + e.what());
  }

  // Independent H^2 distance from z to span{k_x}: ||z||^2 - w^H K^{-1} w.
  const Vector zs = pts.disk_values();
  const auto n = zs.size();
  Matrix k(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) k(i, j) = 1.0 / (1.0 - zs(i) * std::conj(zs(j)));
  const Vector w = zs;
  const double proj = std::real(w.dot(k.ldlt().solve(w)));
  const double want_span = std::sqrt(std::max(0.0, 1.0 - proj));
  const double span = kernel_span_error(f, pts);
  o.require(span < 1e-3, fmt("kernel span error %.3g", span));
  o.require(std::abs(span - want_span) <= 1e-6, fmt("span error disagrees with direct solve (%.3g)", want_span));
  o.note(fmt("kernel span error %.2e", span));
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (unsigned n = 0; n <= 29; ++n) {
    const double v = da_norm_sq(MonomialPoly::monomial({n, 1}));
    o.require(v == 1.0 / static_cast<double>(n + 1), fmt("n = %.0f gives %.17g", double(n), v));
  }
  const std::size_t top = 10000;
  std::vector<Complex> c(top + 1);
  for (std::size_t k = 0; k <= top; ++k) c[k] = 1.0 / std::sqrt(static_cast<double>(k + 1));
  const double basel = std::numbers::pi * std::numbers::pi / 6.0;
  for (std::size_t n : {100, 1000, 10000}) {
    const CounterexampleSums s = counterexample_growth(c, n);
    double harmonic = 0.0, squares = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      harmonic += 1.0 / static_cast<double>(k + 1);
      squares += 1.0 / (static_cast<double>(k + 1) * static_cast<double>(k + 1));
    }
    const double lower = std::log(static_cast<double>(n + 1)) - 1.0;
    o.require(s.unweighted > lower, fmt("N = %.0f: %.6g not above log(N+1)-1", double(n), s.unweighted));
    o.require(s.weighted <= basel + 1e-9, fmt("N = %.0f: weighted %.12g", double(n), s.weighted));
    o.require(std::abs(s.unweighted - harmonic) <= 1e-12 * harmonic, "unweighted sum is not the harmonic sum");
    o.require(std::abs(s.weighted - squares) <= 1e-12, "weighted sum is not sum 1/(k+1)^2");
    if (n == top) o.note(fmt("N=1e4: %.4f > %.4f", s.unweighted, lower) + fmt(", weighted %.6f", s.weighted));
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  const SweepResult& r = sweep();
  std::size_t accepted = 0;
  for (const SweepSample& s : r.samples) accepted += s.cnp_accepted;
  o.require(accepted == r.samples.size(), fmt("accepted %.0f of %.0f sweep samples", double(accepted),
                                              double(r.samples.size())));
  // Normalised at 0 the probe gives E = 1 - (1 - x conj(y))^2 on {1/2, -1/2}:
  // [[7/16, -9/16], [-9/16, 7/16]] with eigenvalues 1 and -1/8.
  const PointSet pts = PointSet::disk({0.0, 0.5, -0.5});
  const CnpCertificate cert = cnp_certificate(CnpKernel::bergman_probe(), pts, 0);
  o.require(!cert.accepted, "Bergman probe accepted");
  o.require(std::abs(cert.min_eigenvalue + 0.125) <= 1e-12, fmt("witness eigenvalue %.17g", cert.min_eigenvalue));
  o.note(fmt("%.0f/50 sweep samples accepted", double(accepted)) +
         fmt(", Bergman probe witness eigenvalue %.15f", cert.min_eigenvalue));
  return o;
}

Outcome criterion11() {
  Outcome o;
  const PointSet pts = PointSet::disk({0.5, 0.9, 0.99});
  RealVector logs(3);
  for (Eigen::Index i = 0; i < 3; ++i) {
    const double d = 1.0 - std::abs(pts[static_cast<std::size_t>(i)].coords(0));
    logs(i) = 1.0 / (d * d);  // log|exp((1-|y|)^-2)|
  }
  const GrowthCertificate g = growth_certificate(pts, logs);
  const double want[3] = {2.0, 10.0, 100.0};
  for (Eigen::Index i = 0; i < 3; ++i)
    o.require(std::abs(g.required(i) - want[i]) <= 1e-12,
              fmt("|y| point %.0f: C = %.17g", double(i), g.required(i)));
  // The same through the symbol table, which avoids overflowing |h|.
  const RealVector via = symbol_log_abs(Json("exp_inv_sq"), pts);
  o.require((via - logs).cwiseAbs().maxCoeff() <= 1e-9 * logs.maxCoeff(), "symbol table log|h| disagrees");
  o.note(fmt("C = %.12g, ", g.required(0)) + fmt("%.12g, ", g.required(1)) + fmt("%.12g", g.required(2)));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"cross-method domain kernels on the random sweep", criterion1},
      {"Gram identity and eigenvector property on the sweep", criterion2},
      {"desk values on Szego {0, 1/2} with h = z", criterion3},
      {"global Dom T* kernel cross-check for h = z", criterion4},
      {"Pythagorean mate on a 4096-point grid", criterion5},
      {"multiplier norm of z", criterion6},
      {"corona constants and certification", criterion7},
      {"constructive H(B) approximation", criterion8},
      {"Drury-Arveson counterexample growth", criterion9},
      {"CNP certificate", criterion10},
      {"growth certificate C = 2, 10, 100", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
