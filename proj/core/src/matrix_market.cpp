#include "somor/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "somor/error.hpp"

namespace somor {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

}  // namespace

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  SparseMatrix c = a;
  c.makeCompressed();
  c.prune(0.0);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << c.rows() << ' ' << c.cols() << ' ' << c.nonZeros() << '\n';
  out << std::setprecision(17);
  for (int k = 0; k < c.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(c, k); it; ++it)
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  write_matrix_market(out, a);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(ErrorCode::kIo, "empty Matrix Market stream");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix" ||
      lower(format) != "coordinate")
    throw Error(ErrorCode::kIo, "unsupported Matrix Market header: " + line);
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "integer" && field != "double")
    throw Error(ErrorCode::kIo, "unsupported Matrix Market field: " + field);
  if (symmetry != "general" && symmetry != "symmetric")
    throw Error(ErrorCode::kIo, "unsupported Matrix Market symmetry: " + symmetry);

  do {
    if (!std::getline(in, line))
      throw Error(ErrorCode::kIo, "missing Matrix Market size line");
  } while (line.empty() || line[0] == '%');

  long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream size(line);
    if (!(size >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0)
      throw Error(ErrorCode::kIo, "bad Matrix Market size line: " + line);
  }

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(nnz) * (symmetry == "symmetric" ? 2 : 1));
  for (long k = 0; k < nnz; ++k) {
    long i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v))
      throw Error(ErrorCode::kIo, "truncated Matrix Market data at entry " +
                                      std::to_string(k + 1));
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw Error(ErrorCode::kIo, "Matrix Market index out of range at entry " +
                                      std::to_string(k + 1));
    entries.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
    if (symmetry == "symmetric" && i != j)
      entries.emplace_back(static_cast<int>(j - 1), static_cast<int>(i - 1), v);
  }
  SparseMatrix a(rows, cols);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  return a;
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_matrix_market(in);
}

}  // namespace somor
