#pragma once

// JSON encodings shared by the CLI and the verification reports.
//
//   Matrix      {"re": [[real]], "im": [[real]]}    ("im" may be omitted)
//   Path        {"n": int, "b": real, "start": Matrix,
//                "breakpoints": [real], "exponents": [Matrix]}
//   Projection  Matrix, or {"basis": Matrix} with n x m orthonormal columns

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "unigeo/grassmann.hpp"
#include "unigeo/matcore.hpp"
#include "unigeo/unitary_paths.hpp"

namespace unigeo::io {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& a);
/// Any rectangular shape; throws ParseError on ragged or non-numeric input.
ComplexMatrix matrix_from_json(const Json& j);

UnitaryMatrix unitary_from_json(const Json& j);
HermitianMatrix hermitian_from_json(const Json& j);

Json path_to_json(const PolygonalPath& p);
PolygonalPath path_from_json(const Json& j);

Json projection_to_json(const Projection& p);
Projection projection_from_json(const Json& j);

/// Parses a UTF-8 JSON file; throws ParseError with the file name on failure.
Json read_json_file(const std::filesystem::path& path);

/// Writes to a temporary file in the same directory and renames it over
/// `path`, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace unigeo::io
