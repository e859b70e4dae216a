#pragma once

#include <iosfwd>
#include <string>

#include "precondaor/matrix.hpp"

namespace precondaor {

struct MatrixMarketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads a Matrix Market file holding a square real matrix in coordinate or
/// array format, general symmetry only.
Matrix read_matrix_market(std::istream& in);
Matrix read_matrix_market_file(const std::string& path);

/// Writes in array format: "%%MatrixMarket matrix array real general".
void write_matrix_market(std::ostream& out, const Matrix& m);
void write_matrix_market_file(const std::string& path, const Matrix& m);

}  // namespace precondaor
