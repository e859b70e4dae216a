#include "precondaor/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace precondaor {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string next_data_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) continue;
    if (line[pos] == '%') continue;
    return line;
  }
  throw MatrixMarketError("unexpected end of Matrix Market stream");
}

}  // namespace

Matrix read_matrix_market(std::istream& in) {
  std::string banner;
  if (!std::getline(in, banner)) throw MatrixMarketError("empty stream");
  std::istringstream bs(banner);
  std::string magic, object, format, field, symmetry;
  bs >> magic >> object >> format >> field >> symmetry;
  if (lower(magic) != "%%matrixmarket" || lower(object) != "matrix")
    throw MatrixMarketError("not a Matrix Market matrix stream");
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "coordinate" && format != "array")
    throw MatrixMarketError("unsupported format: " + format);
  if (field != "real" && field != "integer")
    throw MatrixMarketError("unsupported field: " + field);
  if (symmetry != "general")
    throw MatrixMarketError("unsupported symmetry: " + symmetry);

  std::istringstream size_line(next_data_line(in));
  long rows = 0, cols = 0, nnz = 0;
  if (format == "coordinate") {
    if (!(size_line >> rows >> cols >> nnz))
      throw MatrixMarketError("bad coordinate size line");
  } else {
    if (!(size_line >> rows >> cols)) throw MatrixMarketError("bad array size line");
  }
  if (rows != cols) throw MatrixMarketError("matrix must be square");
  if (rows < 1) throw MatrixMarketError("matrix order must be >= 1");
  const int n = static_cast<int>(rows);

  std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
  if (format == "coordinate") {
    for (long k = 0; k < nnz; ++k) {
      std::istringstream ls(next_data_line(in));
      long i = 0, j = 0;
      double v = 0.0;
      if (!(ls >> i >> j >> v)) throw MatrixMarketError("bad coordinate entry line");
      if (i < 1 || i > n || j < 1 || j > n)
        throw MatrixMarketError("coordinate index out of range");
      entries[static_cast<std::size_t>(i - 1) * n + (j - 1)] = v;
    }
  } else {
    // Array format is column-major.
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        std::istringstream ls(next_data_line(in));
        double v = 0.0;
        if (!(ls >> v)) throw MatrixMarketError("bad array entry line");
        entries[static_cast<std::size_t>(i) * n + j] = v;
      }
    }
  }
  return Matrix(n, std::move(entries));
}

Matrix read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MatrixMarketError("cannot open " + path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const Matrix& m) {
  const int n = m.order();
  out << "%%MatrixMarket matrix array real general\n";
  out << n << " " << n << "\n";
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) os << m(i, j) << "\n";
  out << os.str();
}

void write_matrix_market_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw MatrixMarketError("cannot open " + path + " for writing");
  write_matrix_market(out, m);
}

}  // namespace precondaor
