#include "cnplab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

namespace cnplab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Config, what); }

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad("expected a complex number as [re, im], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of complex numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("expected a matrix as an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Vector r = vector_from_json(j[static_cast<std::size_t>(i)]);
    if (r.size() != cols) bad("ragged matrix rows");
    m.row(i) = r.transpose();
  }
  return m;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += '"' + format_double(m(i, j).real()) + ',' + format_double(m(i, j).imag()) + '"';
    }
    out += '\n';
  }
  return out;
}

Point point_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2 && j[0].is_number()) return Point::disk(complex_from_json(j));
  if (j.is_array() && !j.empty()) return Point(vector_from_json(j));
  bad("expected a point as [re, im] or [[re, im], ...], got " + j.dump());
}

Json point_to_json(const Point& p) {
  if (p.dim() == 1) return complex_to_json(p.coords(0));
  return vector_to_json(p.coords);
}

PointSetFile point_set_from_json(const Json& j) {
  if (!j.is_object()) bad("point set must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "kernel" && it.key() != "points" && it.key() != "label")
      bad("unknown field '" + it.key() + "' in point set");
  if (!j.contains("points") || !j["points"].is_array()) bad("point set needs a 'points' array");
  PointSetFile out;
  out.kernel = j.value("kernel", std::string("szego"));
  std::vector<Point> pts;
  for (const Json& p : j["points"]) pts.push_back(point_from_json(p));
  try {
    out.points = PointSet(std::move(pts), j.value("label", std::string()));
  } catch (const Error& e) {
    bad(std::string("invalid point set: ") + e.what());
  }
  return out;
}

PointSetFile load_point_set(const std::filesystem::path& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
  return point_set_from_json(j);
}

Json point_set_to_json(const std::string& kernel, const PointSet& pts) {
  Json out;
  out["kernel"] = kernel;
  Json arr = Json::array();
  for (const Point& p : pts.points()) arr.push_back(point_to_json(p));
  out["points"] = arr;
  if (!pts.label().empty()) out["label"] = pts.label();
  return out;
}

Json disk_function_to_json(const DiskFunction& f) {
  Json out;
  out["coeffs"] = vector_to_json(f.coeffs());
  out["grid_size"] = f.grid_size();
  return out;
}

DiskFunction disk_function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs")) bad("disk function needs 'coeffs'");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "coeffs" && it.key() != "grid_size") bad("unknown field '" + it.key() + "' in disk function");
  const std::size_t m = j.value("grid_size", std::size_t{0});
  return DiskFunction::from_coeffs(vector_from_json(j["coeffs"]), m);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "rename to " + path.string() + " failed: " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace cnplab
