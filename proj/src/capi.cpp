#include "cnplab/cnplab.h"

#include <cstring>
#include <string>

#include "cnplab/experiments.hpp"

using namespace cnplab;

struct cnplab_space {
  FinSampleSpace space;
};

namespace {

thread_local std::string last_error;

cnplab_status fail(cnplab_status s, const std::string& what) {
  last_error = what;
  return s;
}

// Runs fn, mapping exceptions onto status codes.
template <typename Fn>
cnplab_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return CNPLAB_OK;
  } catch (const Error& e) {
    return fail(static_cast<cnplab_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::exception& e) {
    return fail(CNPLAB_INTERNAL, e.what());
  } catch (...) {
    return fail(CNPLAB_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

Vector read_vector(const double* data, std::size_t n) {
  Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = Complex(data[2 * i], data[2 * i + 1]);
  return v;
}

void write_matrix(const Matrix& m, double* out) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const std::size_t k = static_cast<std::size_t>(i * m.cols() + j);
      out[2 * k] = m(i, j).real();
      out[2 * k + 1] = m(i, j).imag();
    }
}

PointSet read_points(std::size_t dim, const double* points, std::size_t n) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "point dimension must be positive");
  if (n) need(points, "points");
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(read_vector(points + 2 * i * dim, dim));
  return PointSet(std::move(pts));
}

SampledMultiplier read_mult(const cnplab_space* s, const double* v, const char* what) {
  need(s, "space");
  need(v, what);
  return {read_vector(v, s->space.size()), what};
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* cnplab_version(void) { return "0.1.0"; }

const char* cnplab_last_error(void) { return last_error.c_str(); }

const char* cnplab_status_name(cnplab_status status) {
  if (status == CNPLAB_OK) return "ok";
  if (status == CNPLAB_INTERNAL) return "internal";
  if (status >= CNPLAB_INVALID_ARGUMENT && status <= CNPLAB_IO) return to_string(static_cast<ErrorCode>(status));
  return "unknown";
}

void cnplab_string_free(char* s) { std::free(s); }

cnplab_status cnplab_space_create(const char* kernel, size_t dim, const double* points, size_t n,
                                  cnplab_space** out) {
  return guarded([&] {
    need(kernel, "kernel");
    need(out, "out");
    *out = nullptr;
    PointSet pts = read_points(dim, points, n);
    const CnpKernel k = kernel_from_name(kernel, dim);
    *out = new cnplab_space{FinSampleSpace(k, std::move(pts))};
  });
}

void cnplab_space_destroy(cnplab_space* space) { delete space; }

size_t cnplab_space_size(const cnplab_space* space) { return space ? space->space.size() : 0; }

double cnplab_space_cond(const cnplab_space* space) { return space ? space->space.cond_estimate() : 0.0; }

cnplab_status cnplab_kernel_matrix(const cnplab_space* space, double* out) {
  return guarded([&] {
    need(space, "space");
    need(out, "out");
    write_matrix(space->space.k(), out);
  });
}

cnplab_status cnplab_domT_kernel(const cnplab_space* space, const double* h, double* out) {
  return guarded([&] {
    need(out, "out");
    write_matrix(domT_kernel(space->space, read_mult(space, h, "h")), out);
  });
}

cnplab_status cnplab_domTstar_kernel(const cnplab_space* space, const double* h, double* out, double* gram_out) {
  return guarded([&] {
    need(out, "out");
    const DomTStarKernel r = domTstar_kernel(space->space, read_mult(space, h, "h"));
    write_matrix(r.kernel, out);
    if (gram_out) write_matrix(r.gram, gram_out);
  });
}

cnplab_status cnplab_graph_projection(const cnplab_space* space, const double* h, double* dom_t_out,
                                      double* dom_tstar_out) {
  return guarded([&] {
    need(dom_t_out, "dom_t_out");
    need(dom_tstar_out, "dom_tstar_out");
    const GraphKernels g = graph_projection_kernels(space->space, read_mult(space, h, "h"));
    write_matrix(g.dom_t, dom_t_out);
    write_matrix(g.dom_tstar, dom_tstar_out);
  });
}

cnplab_status cnplab_adjoint_matrix(const cnplab_space* space, const double* h, double* out) {
  return guarded([&] {
    need(out, "out");
    write_matrix(adjoint_matrix(space->space, read_mult(space, h, "h")), out);
  });
}

cnplab_status cnplab_multiplier_norm(const cnplab_space* space, const double* phi, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = multiplier_norm(space->space, read_mult(space, phi, "phi"));
  });
}

cnplab_status cnplab_pick_feasible(const cnplab_space* space, const double* targets, int* feasible,
                                   double* min_eigenvalue) {
  return guarded([&] {
    need(feasible, "feasible");
    const PickResult r = pick_feasible(space->space, read_mult(space, targets, "targets").values);
    *feasible = r.feasible ? 1 : 0;
    if (min_eigenvalue) *min_eigenvalue = r.min_eigenvalue;
  });
}

cnplab_status cnplab_corona_constant(const cnplab_space* space, const double* a, const double* b, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = corona_constant(space->space, {read_mult(space, a, "a"), read_mult(space, b, "b"), false});
  });
}

cnplab_status cnplab_hb_best_approx(const cnplab_space* space, const double* h, const double* f,
                                    const double* tstarf, double norm_sq, const size_t* subset,
                                    size_t subset_size, double* error_sq) {
  return guarded([&] {
    need(error_sq, "error_sq");
    if (subset_size) need(subset, "subset");
    const SampledMultiplier hh = read_mult(space, h, "h");
    const Vector fv = read_mult(space, f, "f").values;
    const Vector tv = read_mult(space, tstarf, "tstarf").values;
    std::vector<std::size_t> idx(subset, subset + subset_size);
    *error_sq = hb_best_approx(space->space, hh, fv, tv, norm_sq, idx).error_sq;
  });
}

cnplab_status cnplab_cnp_certificate(const char* kernel, size_t dim, const double* points, size_t n,
                                     size_t base_index, int* accepted, double* min_eigenvalue) {
  return guarded([&] {
    need(kernel, "kernel");
    need(accepted, "accepted");
    const PointSet pts = read_points(dim, points, n);
    const CnpCertificate c = cnp_certificate(kernel_from_name(kernel, dim), pts, base_index);
    *accepted = c.accepted ? 1 : 0;
    if (min_eigenvalue) *min_eigenvalue = c.min_eigenvalue;
  });
}

cnplab_status cnplab_da_norm_sq(size_t dim, const unsigned* alphas, const double* coeffs, size_t terms,
                                double* out) {
  return guarded([&] {
    need(out, "out");
    if (terms) {
      need(alphas, "alphas");
      need(coeffs, "coeffs");
    }
    MonomialPoly p(dim);
    for (std::size_t t = 0; t < terms; ++t)
      p.add(MultiIndex(alphas + t * dim, alphas + (t + 1) * dim), Complex(coeffs[2 * t], coeffs[2 * t + 1]));
    *out = da_norm_sq(p);
  });
}

cnplab_status cnplab_list_experiments(char** out) {
  return guarded([&] {
    need(out, "out");
    std::string s;
    for (const std::string& name : experiment_names()) s += name + "\n";
    *out = copy_string(s);
  });
}

cnplab_status cnplab_run_config(const char* config_json, const char* out_dir, const uint64_t* seed,
                                char** report_json, char** report_dir, int* passed) {
  return guarded([&] {
    need(config_json, "config_json");
    need(report_json, "report_json");
    need(passed, "passed");
    *report_json = nullptr;
    if (report_dir) *report_dir = nullptr;
    Json j;
    try {
      j = Json::parse(config_json);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::Config, e.what());
    }
    std::optional<std::uint64_t> s;
    if (seed) s = *seed;
    const ExperimentConfig cfg = parse_config(j, s);
    const Report r = run(cfg);
    std::filesystem::path dir = out_dir ? std::filesystem::path(out_dir)
                                : cfg.output ? std::filesystem::path(*cfg.output)
                                             : default_output_dir();
    const std::filesystem::path written = write_report(r, dir);
    *passed = r.passed() ? 1 : 0;
    *report_json = copy_string(r.to_json());
    if (report_dir) *report_dir = copy_string(written.string());
  });
}

}  // extern "C"
