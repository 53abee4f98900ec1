#include "somor/benchmark_models.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SparseCholesky>

#include "somor/error.hpp"

namespace somor {

namespace {

SparseMatrix from_triplets(Index rows, Index cols, const std::vector<Triplet>& t) {
  SparseMatrix a(rows, cols);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();
  return a;
}

void require_spd(const SparseMatrix& a, const char* name) {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(a);
  if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any())
    throw Error(ErrorCode::kParameter, std::string(name) + " is not positive definite");
}

// Evenly spread, strictly increasing picks of `count` indices out of [0, n).
std::vector<Index> spread(Index count, Index n) {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index j = 0; j < count; ++j) out.push_back(j * n / count);
  return out;
}

}  // namespace

SecondOrderIndex3System gen_dsms(const DsmsParams& p) {
  if (p.n1 < 4) throw Error(ErrorCode::kParameter, "DSMS needs n1 >= 4");
  if (p.n2 < 1 || p.n2 >= p.n1)
    throw Error(ErrorCode::kParameter, "DSMS needs 1 <= n2 < n1");
  if (!(p.mass > 0.0) || !(p.stiffness > 0.0) || !(p.damping > 0.0))
    throw Error(ErrorCode::kParameter, "DSMS mass, stiffness and damping must be positive");
  const Index n1 = p.n1;
  const Index stride = n1 / p.n2;
  const Index offset = stride / 2;
  if (offset < 1)
    throw Error(ErrorCode::kParameter, "n2 too large: constraint pairs would collide");

  std::vector<Triplet> m, k, d, g;
  const double c = p.damping / p.stiffness;
  for (Index i = 0; i < n1; ++i) {
    const int ii = static_cast<int>(i);
    m.emplace_back(ii, ii, p.mass);
    k.emplace_back(ii, ii, 2.0 * p.stiffness);
    d.emplace_back(ii, ii, c * 2.0 * p.stiffness + 1e-2 * p.mass);
    if (i + 1 < n1) {
      for (auto [a, b] : {std::pair{ii, ii + 1}, std::pair{ii + 1, ii}}) {
        k.emplace_back(a, b, -p.stiffness);
        d.emplace_back(a, b, -c * p.stiffness);
      }
    }
  }
  for (Index j = 0; j < p.n2; ++j) {
    const int row = static_cast<int>(j);
    g.emplace_back(row, static_cast<int>(j * stride), 1.0);
    g.emplace_back(row, static_cast<int>(j * stride + offset), -1.0);
  }

  SecondOrderIndex3System sys;
  sys.M = from_triplets(n1, n1, m);
  sys.K = from_triplets(n1, n1, k);
  sys.D = from_triplets(n1, n1, d);
  sys.G = from_triplets(p.n2, n1, g);
  sys.F = from_triplets(n1, 1, {Triplet(static_cast<int>(n1 / 2), 0, 1.0)});
  sys.L = from_triplets(3, n1, {Triplet(0, static_cast<int>(n1 / 4), 1.0),
                                Triplet(1, static_cast<int>(n1 / 2), 1.0),
                                Triplet(2, static_cast<int>(3 * n1 / 4), 1.0)});
  require_spd(sys.K, "DSMS stiffness");
  return sys;
}

SecondOrderIndex3System gen_tcom(const TcomParams& p) {
  if (p.g < 1) throw Error(ErrorCode::kParameter, "TCOM needs g >= 1");
  const Index g = p.g;
  const Index n1 = 3 * g + 1;
  if (p.n2 < 1 || p.n2 >= n1)
    throw Error(ErrorCode::kParameter, "TCOM needs 1 <= n2 < n1 = 3g + 1");
  for (int c = 0; c < 3; ++c)
    if (!(p.masses[c] > 0.0) || !(p.stiffness[c] > 0.0))
      throw Error(ErrorCode::kParameter, "TCOM masses and stiffnesses must be positive");
  if (!(p.common_mass > 0.0) || !(p.common_stiffness > 0.0) || p.alpha < 0.0 ||
      p.beta < 0.0 || (p.alpha == 0.0 && p.beta == 0.0))
    throw Error(ErrorCode::kParameter, "TCOM common mass/stiffness or damping invalid");

  auto idx = [g](int chain, Index i) { return static_cast<int>(chain * g + i); };
  const int common = static_cast<int>(3 * g);

  std::vector<Triplet> m, k, gt;
  for (int c = 0; c < 3; ++c) {
    const double kc = p.stiffness[c];
    for (Index i = 0; i < g; ++i) {
      m.emplace_back(idx(c, i), idx(c, i), p.masses[c]);
      // wall (or previous mass) on the left, next mass (or common mass) on the right
      k.emplace_back(idx(c, i), idx(c, i), 2.0 * kc);
      const int right = i + 1 < g ? idx(c, i + 1) : common;
      k.emplace_back(idx(c, i), right, -kc);
      k.emplace_back(right, idx(c, i), -kc);
    }
    k.emplace_back(common, common, kc);
  }
  m.emplace_back(common, common, p.common_mass);
  k.emplace_back(common, common, p.common_stiffness);

  // Constraint rows, in order: chain 1 = chain 2, chain 2 = chain 3, then
  // neighbours along chain 1 (the last one tied to the common mass). Each
  // stage is an edge set of a forest over the coordinates, so G has full
  // row rank.
  Index row = 0;
  auto add_row = [&](int a, int b) {
    gt.emplace_back(static_cast<int>(row), a, 1.0);
    gt.emplace_back(static_cast<int>(row), b, -1.0);
    ++row;
  };
  const Index stage1 = std::min(p.n2, g);
  for (Index i : spread(stage1, g)) add_row(idx(0, i), idx(1, i));
  const Index stage2 = std::min(p.n2 - stage1, g);
  if (stage2 > 0)
    for (Index i : spread(stage2, g)) add_row(idx(1, i), idx(2, i));
  const Index stage3 = p.n2 - stage1 - stage2;
  if (stage3 > 0)
    for (Index i : spread(stage3, g))
      add_row(idx(0, i), i + 1 < g ? idx(0, i + 1) : common);

  SecondOrderIndex3System sys;
  sys.M = from_triplets(n1, n1, m);
  sys.K = from_triplets(n1, n1, k);
  sys.D = SparseMatrix(p.alpha * sys.M + p.beta * sys.K);
  sys.D.makeCompressed();
  sys.G = from_triplets(p.n2, n1, gt);
  sys.F = from_triplets(n1, 1, {Triplet(idx(0, 0), 0, 1.0)});
  sys.L = from_triplets(1, n1, {Triplet(0, common, 1.0)});
  require_spd(sys.K, "TCOM stiffness");
  return sys;
}

SecondOrderIndex3System gen_random(const RandomSystemParams& p) {
  if (p.n1 < 2 || p.n2 < 1 || p.n2 >= p.n1 || p.m < 1 || p.q < 1)
    throw Error(ErrorCode::kParameter, "random system needs 1 <= n2 < n1, m, q >= 1");
  const Index n1 = p.n1;
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Tridiagonal, strictly diagonally dominant with positive diagonal => SPD.
  auto spd_tridiag = [&](double diag_lo, double diag_span, double off_scale) {
    std::vector<Triplet> t;
    std::vector<double> off(static_cast<std::size_t>(n1), 0.0);
    for (Index i = 0; i + 1 < n1; ++i) off[static_cast<std::size_t>(i)] = off_scale * (2.0 * u(rng) - 1.0);
    for (Index i = 0; i < n1; ++i) {
      const int ii = static_cast<int>(i);
      const double left = i > 0 ? std::abs(off[static_cast<std::size_t>(i - 1)]) : 0.0;
      const double right = std::abs(off[static_cast<std::size_t>(i)]);
      t.emplace_back(ii, ii, left + right + diag_lo + diag_span * u(rng));
      if (i + 1 < n1) {
        t.emplace_back(ii, ii + 1, off[static_cast<std::size_t>(i)]);
        t.emplace_back(ii + 1, ii, off[static_cast<std::size_t>(i)]);
      }
    }
    return from_triplets(n1, n1, t);
  };

  SecondOrderIndex3System sys;
  sys.M = spd_tridiag(1.0, 1.0, 0.3);
  sys.K = spd_tridiag(0.5, 2.0, 1.0);
  const SparseMatrix extra = spd_tridiag(0.05, 0.1, 0.05);
  sys.D = SparseMatrix(0.05 * sys.M + 0.1 * sys.K + extra);
  sys.D.makeCompressed();

  // Distinct pivot columns carry a 1; other entries avoid pivot columns, so
  // the pivot submatrix of G is the identity.
  std::vector<Index> cols(static_cast<std::size_t>(n1));
  std::iota(cols.begin(), cols.end(), Index{0});
  std::shuffle(cols.begin(), cols.end(), rng);
  const std::vector<Index> pivots(cols.begin(), cols.begin() + p.n2);
  const std::vector<Index> others(cols.begin() + p.n2, cols.end());
  std::vector<Triplet> g;
  for (Index j = 0; j < p.n2; ++j) {
    g.emplace_back(static_cast<int>(j), static_cast<int>(pivots[static_cast<std::size_t>(j)]), 1.0);
    std::set<Index> used;
    for (int e = 0; e < 2 && !others.empty(); ++e) {
      const Index c = others[static_cast<std::size_t>(u(rng) * static_cast<double>(others.size())) % others.size()];
      if (used.insert(c).second) g.emplace_back(static_cast<int>(j), static_cast<int>(c), normal(rng));
    }
  }
  sys.G = from_triplets(p.n2, n1, g);

  std::vector<Triplet> f, l;
  for (Index i = 0; i < n1; ++i)
    for (Index j = 0; j < p.m; ++j) f.emplace_back(static_cast<int>(i), static_cast<int>(j), normal(rng));
  for (Index i = 0; i < p.q; ++i)
    for (Index j = 0; j < n1; ++j) l.emplace_back(static_cast<int>(i), static_cast<int>(j), normal(rng));
  sys.F = from_triplets(n1, p.m, f);
  sys.L = from_triplets(p.q, n1, l);
  return sys;
}

FirstOrderRealization gen_random_first_order(const RandomFirstOrderParams& p) {
  if (p.n < 1 || p.m < 1 || p.q < 1)
    throw Error(ErrorCode::kParameter, "random first-order system needs n, m, q >= 1");
  const Index n = p.n;
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto gaussian = [&](Index rows, Index cols) {
    Matrix x(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) x(i, j) = normal(rng);
    return x;
  };

  Matrix core = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    core(i, i) = -(0.1 + 2.0 * u(rng));
    for (Index j = i + 1; j < n; ++j) core(i, j) = 0.3 * normal(rng);
  }
  const Matrix Q = Eigen::HouseholderQR<Matrix>(gaussian(n, n)).householderQ();
  FirstOrderRealization sys;
  sys.E = Matrix::Identity(n, n);
  sys.A = Q * core * Q.transpose();
  sys.B = gaussian(n, p.m);
  sys.C = gaussian(p.q, n);
  return sys;
}

nlohmann::json to_json(const DsmsParams& p) {
  return {{"model", "dsms"}, {"n1", p.n1}, {"n2", p.n2}, {"mass", p.mass},
          {"stiffness", p.stiffness}, {"damping", p.damping}, {"seed", p.seed}};
}

nlohmann::json to_json(const TcomParams& p) {
  return {{"model", "tcom"},
          {"g", p.g},
          {"n2", p.n2},
          {"masses", {p.masses[0], p.masses[1], p.masses[2]}},
          {"common_mass", p.common_mass},
          {"stiffness", {p.stiffness[0], p.stiffness[1], p.stiffness[2]}},
          {"common_stiffness", p.common_stiffness},
          {"alpha", p.alpha},
          {"beta", p.beta},
          {"seed", p.seed}};
}

nlohmann::json to_json(const RandomSystemParams& p) {
  return {{"model", "random"}, {"n1", p.n1}, {"n2", p.n2},
          {"m", p.m},          {"q", p.q},   {"seed", p.seed}};
}

}  // namespace somor
