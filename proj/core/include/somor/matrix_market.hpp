#pragma once

#include <filesystem>
#include <iosfwd>

#include "somor/types.hpp"

namespace somor {

/// Writes `a` as a "coordinate real general" Matrix Market file with 17
/// significant digits, entries in column-major order.
void write_matrix_market(std::ostream& out, const SparseMatrix& a);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a);

/// Reads "coordinate real|integer general|symmetric" Matrix Market data.
/// Duplicate entries are summed. Throws Error(kIo) on malformed input.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

}  // namespace somor
