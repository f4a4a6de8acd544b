#include "unigeo/io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "unigeo/error.hpp"

namespace unigeo::io {

namespace {

Json real_rows(const Eigen::MatrixXd& a) {
  Json rows = Json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd parse_rows(const Json& j, const char* field) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, std::string(field) + " must be a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) throw Error(ErrorCode::ParseError, std::string(field) + " rows must be non-empty arrays");
  Eigen::MatrixXd a(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != cols) throw Error(ErrorCode::ParseError, std::string(field) + " is ragged");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!row[k].is_number()) throw Error(ErrorCode::ParseError, std::string(field) + " has a non-numeric entry");
      a(static_cast<Index>(i), static_cast<Index>(k)) = row[k].get<double>();
    }
  }
  return a;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorCode::ParseError, std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& a) {
  return Json{{"re", real_rows(a.real())}, {"im", real_rows(a.imag())}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const Eigen::MatrixXd re = parse_rows(field(j, "re"), "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
  if (j.contains("im")) {
    im = parse_rows(j.at("im"), "im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) {
      throw Error(ErrorCode::ParseError, "re and im have different shapes");
    }
  }
  ComplexMatrix a(re.rows(), re.cols());
  a.real() = re;
  a.imag() = im;
  return a;
}

UnitaryMatrix unitary_from_json(const Json& j) { return UnitaryMatrix(matrix_from_json(j)); }

HermitianMatrix hermitian_from_json(const Json& j) { return HermitianMatrix(matrix_from_json(j)); }

Json path_to_json(const PolygonalPath& p) {
  Json exps = Json::array();
  for (const HermitianMatrix& x : p.exponents()) exps.push_back(matrix_to_json(x.matrix()));
  return Json{{"n", p.dim()},
              {"b", p.horizon()},
              {"start", matrix_to_json(p.start().matrix())},
              {"breakpoints", p.breakpoints()},
              {"exponents", std::move(exps)}};
}

PolygonalPath path_from_json(const Json& j) {
  const Json& n = field(j, "n");
  const Json& b = field(j, "b");
  if (!n.is_number_integer() || !b.is_number()) throw Error(ErrorCode::ParseError, "'n' must be an integer and 'b' a real");
  UnitaryMatrix start = unitary_from_json(field(j, "start"));
  if (start.dim() != n.get<Index>()) throw Error(ErrorCode::DimensionMismatch, "'start' does not match 'n'");

  const Json& bp = field(j, "breakpoints");
  const Json& ex = field(j, "exponents");
  if (!bp.is_array() || !ex.is_array()) throw Error(ErrorCode::ParseError, "'breakpoints' and 'exponents' must be arrays");
  std::vector<double> breakpoints;
  for (const Json& t : bp) {
    if (!t.is_number()) throw Error(ErrorCode::ParseError, "non-numeric breakpoint");
    breakpoints.push_back(t.get<double>());
  }
  std::vector<HermitianMatrix> exponents;
  for (const Json& x : ex) exponents.push_back(hermitian_from_json(x));

  PolygonalPath path(std::move(start), std::move(breakpoints), std::move(exponents));
  if (std::abs(path.horizon() - b.get<double>()) > 1e-12 * (1.0 + std::abs(b.get<double>()))) {
    throw Error(ErrorCode::InvalidPath, "'b' differs from the last breakpoint");
  }
  return path;
}

Json projection_to_json(const Projection& p) { return matrix_to_json(p.matrix()); }

Projection projection_from_json(const Json& j) {
  if (j.is_object() && j.contains("basis")) return projection_from_basis(matrix_from_json(j.at("basis")));
  return Projection(matrix_from_json(j));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::IoError, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace unigeo::io
