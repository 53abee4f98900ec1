#pragma once

#include <complex>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace somor {

using Index = Eigen::Index;
using Complex = std::complex<double>;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Real sparse matrix in compressed-column storage. Carrier for M, D, K, G, F, L.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using ComplexSparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;
using Triplet = Eigen::Triplet<double, int>;

}  // namespace somor
