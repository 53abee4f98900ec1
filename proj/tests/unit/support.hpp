#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Dense>

#include "somor/system.hpp"

namespace somor::test {

inline SparseMatrix sparse(const Matrix& a) { return to_sparse(a); }

/// Two coordinates, one constraint, identity mass; the hand-solved saddle case.
inline SecondOrderIndex3System two_mass(const Matrix& K, const Matrix& G) {
  SecondOrderIndex3System s;
  s.M = sparse(Matrix::Identity(2, 2));
  s.D = sparse(Matrix::Zero(2, 2));
  s.K = sparse(K);
  s.G = sparse(G);
  s.F = sparse((Matrix(2, 1) << 1, 0).finished());
  s.L = sparse((Matrix(1, 2) << 1, 0).finished());
  return s;
}

inline double rel(const auto& a, const auto& b) {
  const double scale = b.norm();
  return scale > 0.0 ? (a - b).norm() / scale : (a - b).norm();
}

/// Fresh directory under the system temp path, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(std::filesystem::temp_directory_path() /
              ("somor-test-" + tag + "-" + std::to_string(counter()++))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& child = {}) const {
    return child.empty() ? path_.string() : (path_ / child).string();
  }

 private:
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::filesystem::path path_;
};

}  // namespace somor::test
