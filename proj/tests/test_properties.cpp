// Randomized invariants. Each property runs on kInstances generated chains.
#include "nhmc/algebra.hpp"
#include "nhmc/builtins.hpp"
#include "nhmc/entrance.hpp"
#include "nhmc/hull.hpp"
#include "nhmc/montecarlo.hpp"
#include "nhmc/tail.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace nhmc;

namespace {

constexpr int kInstances = 250;

// Stochastic matrix with roughly a third of the entries zeroed.
Matrix sparse_stochastic(Eigen::Index rows, Eigen::Index cols, oracle::Gen& g) {
  Matrix m = random_stochastic(rows, cols, g);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index keep = g.integer(0, static_cast<int>(cols) - 1);
    for (Eigen::Index j = 0; j < cols; ++j)
      if (j != keep && g.uniform() < 0.33) m(i, j) = 0.0;
    m.row(i) /= m.row(i).sum();
  }
  return m;
}

// Window of 2..12 steps somewhere in [-30, 10], state spaces of 1..5 states.
ChainModel random_chain(oracle::Gen& g, bool square = false, int max_dim = 5) {
  const TimeIndex start = g.integer(-30, 0);
  const TimeIndex len = g.integer(2, 12);
  std::vector<Eigen::Index> dims;
  const Eigen::Index fixed = g.integer(2, max_dim);
  for (TimeIndex k = 0; k <= len; ++k) dims.push_back(square ? fixed : g.integer(1, max_dim));
  std::vector<Matrix> steps;
  for (TimeIndex k = 0; k < len; ++k) steps.push_back(sparse_stochastic(dims[k], dims[k + 1], g));
  return ChainModel({start, start + len}, steps);
}

RowVector random_distribution(Eigen::Index n, oracle::Gen& g) {
  RowVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = g.uniform() + 1e-3;
  return v / v.sum();
}

}  // namespace

TEST_CASE("product associativity") {
  oracle::Gen g(1001);
  double worst = 0.0;
  for (int k = 0; k < kInstances; ++k) {
    const ChainModel m = random_chain(g);
    const Window w = m.window();
    const TimeIndex s = w.start + g.integer(0, static_cast<int>(w.length() - 2));
    const TimeIndex t = s + g.integer(2, static_cast<int>(w.end - s));
    const TimeIndex u = s + g.integer(1, static_cast<int>(t - s - 1));
    const Matrix lhs = product(m, s, u).matrix * product(m, u, t).matrix;
    worst = std::max(worst, (lhs - product(m, s, t).matrix).cwiseAbs().maxCoeff());
    // and against the loop oracle
    auto acc = oracle::to_dense(m.step(s).entries());
    for (TimeIndex n = s + 1; n < t; ++n) acc = oracle::multiply(acc, oracle::to_dense(m.step(n).entries()));
    worst = std::max(worst, oracle::max_abs_diff(acc, product(m, s, t).matrix));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("simplex closure") {
  oracle::Gen g(1002);
  for (int k = 0; k < kInstances; ++k) {
    const ChainModel m = random_chain(g);
    const Window w = m.window();
    const Matrix p = product(m, w.start, w.end).matrix;
    CHECK(p.minCoeff() >= 0.0);
    for (Eigen::Index i = 0; i < p.rows(); ++i) CHECK(std::abs(p.row(i).sum() - 1.0) <= 1e-12);
    const auto ms = marginals(m, Distribution(w.start, random_distribution(m.dim(w.start), g)));
    for (const auto& d : ms) {
      CHECK(d.probs().minCoeff() >= 0.0);
      CHECK(std::abs(d.probs().sum() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("Dobrushin submultiplicativity and the diameter bound") {
  oracle::Gen g(1003);
  for (int k = 0; k < kInstances; ++k) {
    const ChainModel m = random_chain(g);
    const Window w = m.window();
    const TimeIndex u = w.start + g.integer(1, static_cast<int>(w.length() - 1));
    const Matrix a = product(m, w.start, u).matrix;
    const Matrix b = product(m, u, w.end).matrix;
    CHECK(dobrushin(a * b) <= dobrushin(a) * dobrushin(b) + 1e-12);
    const DeltaApprox d = delta_vertices(m, w.start, w.end, 0.0);
    CHECK(std::abs(d.diameter - dobrushin(a * b)) <= 1e-12);
  }
}

TEST_CASE("delta nesting") {
  oracle::Gen g(1004);
  double worst = 0.0;
  for (int k = 0; k < kInstances; ++k) {
    const ChainModel m = random_chain(g);
    const Window w = m.window();
    std::vector<TimeIndex> schedule;
    for (TimeIndex s = w.end - 1; s >= w.start; --s)
      if (s == w.end - 1 || g.uniform() < 0.6) schedule.push_back(s);
    const NestingReport r = delta_nesting_check(m, w.end, schedule);
    worst = std::max(worst, r.max_residual);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("martingale conservation and the harmonic recursion") {
  oracle::Gen g(1005);
  double worst = 0.0, recursion = 0.0;
  for (int k = 0; k < kInstances; ++k) {
    const ChainModel m = random_chain(g);
    const Window w = m.window();
    RowVector seed(m.dim(w.end));
    for (Eigen::Index i = 0; i < seed.size(); ++i) seed(i) = g.uniform();
    const HarmonicSequence h = harmonic_backward(m, TerminalSeed{w.end, seed});
    for (TimeIndex n = w.start; n < w.end; ++n) {
      const RowVector next = (m.step(n).entries() * h.at(n + 1).transpose()).transpose();
      recursion = std::max(recursion, (next - h.at(n)).cwiseAbs().maxCoeff());
    }
    const Distribution init(w.start, random_distribution(m.dim(w.start), g));
    const BandProbabilities bp = band_probabilities(m, init, h, band_sets(h, 0.2, 0.8));
    for (const BandRow& r : bp.rows) worst = std::max(worst, r.conservation_residual);
  }
  CHECK(worst <= 1e-12);
  CHECK(recursion <= 1e-12);
}

TEST_CASE("band partition completeness") {
  oracle::Gen g(1006);
  for (int k = 0; k < kInstances; ++k) {
    const ChainModel m = random_chain(g);
    const Window w = m.window();
    RowVector seed(m.dim(w.end));
    for (Eigen::Index i = 0; i < seed.size(); ++i) seed(i) = g.uniform() < 0.5 ? 0.0 : 1.0;
    const HarmonicSequence h = harmonic_backward(m, TerminalSeed{w.end, seed});
    const double p = 0.05 + 0.4 * g.uniform();
    const double q = p + 0.05 + (0.9 - p) * g.uniform();
    const BandPartition bands = band_sets(h, p, q);
    for (TimeIndex n = w.start; n <= w.end; ++n) {
      const auto idx = static_cast<std::size_t>(n - w.start);
      std::vector<int> seen(static_cast<std::size_t>(m.dim(n)), 0);
      for (const auto* set : {&bands.low[idx], &bands.mid[idx], &bands.high[idx]})
        for (Eigen::Index s : *set) ++seen[static_cast<std::size_t>(s - 1)];
      CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    }
    const Distribution init(w.start, random_distribution(m.dim(w.start), g));
    for (const BandRow& r : band_probabilities(m, init, h, bands).rows) {
      CHECK(r.low + (r.mid + r.high) == 1.0);
      CHECK(r.low >= -1e-15);
    }
  }
}

TEST_CASE("harmonic values agree with path enumeration") {
  oracle::Gen g(1007);
  for (int k = 0; k < kInstances; ++k) {
    const TimeIndex len = g.integer(1, 5);
    std::vector<Matrix> steps;
    for (TimeIndex j = 0; j < len; ++j) steps.push_back(sparse_stochastic(3, 3, g));
    const ChainModel m({0, len}, steps);
    RowVector seed(3);
    for (int i = 0; i < 3; ++i) seed(i) = g.uniform();
    const HarmonicSequence h = harmonic_backward(m, TerminalSeed{len, seed});
    for (int i = 0; i < 3; ++i) {
      oracle::Vec start(3, 0.0);
      start[static_cast<std::size_t>(i)] = 1.0;
      double expect = 0.0;
      oracle::enumerate_paths(start, 0, len, [&](std::int64_t n) { return oracle::to_dense(steps[static_cast<std::size_t>(n)]); },
                              [&](const std::vector<int>& path, double w) { expect += w * seed(path.back()); });
      CHECK(std::abs(h.at(0)(i) - expect) <= 1e-12);
    }
  }
}

TEST_CASE("reverse kernels reproduce the earlier marginal") {
  oracle::Gen g(1008);
  for (int k = 0; k < kInstances; ++k) {
    const ChainModel m = random_chain(g);
    const Window w = m.window();
    const auto ms = marginals(m, Distribution(w.start, random_distribution(m.dim(w.start), g)));
    const TimeIndex n = w.start + g.integer(0, static_cast<int>(w.length() - 1));
    const auto idx = static_cast<std::size_t>(n - w.start);
    const ReverseKernel r = reverse_kernel(m, ms, n);
    const RowVector back = ms[idx + 1].probs() * r.matrix;
    CHECK((back - ms[idx].probs()).cwiseAbs().maxCoeff() <= 1e-12);
    for (Eigen::Index j = 0; j < r.matrix.rows(); ++j) {
      if (r.supported[static_cast<std::size_t>(j)]) CHECK(std::abs(r.matrix.row(j).sum() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("convex combinations of vertices lie in the hull") {
  oracle::Gen g(1009);
  for (int k = 0; k < kInstances; ++k) {
    const int dim = g.integer(2, 6);
    const int nv = g.integer(1, 7);
    std::vector<RowVector> verts;
    for (int v = 0; v < nv; ++v) verts.push_back(random_distribution(dim, g));
    const RowVector w = random_distribution(nv, g);
    RowVector x = RowVector::Zero(dim);
    for (int v = 0; v < nv; ++v) x += w(v) * verts[static_cast<std::size_t>(v)];
    CHECK(project_onto_hull(verts, x).tv <= 1e-9);
  }
}

TEST_CASE("simulation is reproducible across worker counts") {
  oracle::Gen g(1010);
  for (int k = 0; k < kInstances; ++k) {
    const ChainModel m = random_chain(g);
    const Window w = m.window();
    const Distribution init(w.start, random_distribution(m.dim(w.start), g));
    SimConfig c{50, w.end, g(), {}, 1};
    const auto one = simulate(m, init, c).raw();
    c.workers = static_cast<unsigned>(g.integer(2, 6));
    CHECK(simulate(m, init, c).raw() == one);
  }
}
