#ifndef CNPLAB_IO_HPP
#define CNPLAB_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cnplab/hardy.hpp"
#include "cnplab/kernels.hpp"

namespace cnplab {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// Rows of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Row-major CSV, one quoted "re,im" cell per entry.
std::string matrix_to_csv(const Matrix& m);

/// A point given as [re, im] (disk) or as a list of [re, im] pairs (ball).
Point point_from_json(const Json& j);
Json point_to_json(const Point& p);

struct PointSetFile {
  std::string kernel;
  PointSet points;
};

/// {"kernel": "szego", "points": [[re, im], ...]}; an optional "label".
PointSetFile point_set_from_json(const Json& j);
PointSetFile load_point_set(const std::filesystem::path& path);
Json point_set_to_json(const std::string& kernel, const PointSet& pts);

/// {"coeffs": [[re, im], ...], "grid_size": M}
Json disk_function_to_json(const DiskFunction& f);
DiskFunction disk_function_from_json(const Json& j);

/// Writes to a temporary file in the same directory and renames it over
/// the target, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace cnplab

#endif  // CNPLAB_IO_HPP
