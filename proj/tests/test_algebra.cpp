#include "nhmc/algebra.hpp"
#include "nhmc/builtins.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace nhmc;

namespace {

Matrix mat(Eigen::Index r, Eigen::Index c, std::initializer_list<double> xs) {
  Matrix m(r, c);
  auto it = xs.begin();
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

RowVector rv(std::initializer_list<double> xs) {
  RowVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("cube of a 2x2 matrix and its Dobrushin coefficient") {
  const Matrix p = mat(2, 2, {0.9, 0.1, 0.2, 0.8});
  const ChainModel m = ChainModel::homogeneous(p, {0, 3});
  const Matrix p3 = product(m, 0, 3).matrix;
  // P^2 = [[.83,.17],[.34,.66]], P^3 = [[.781,.219],[.438,.562]]
  CHECK(oracle::max_abs_diff({{0.781, 0.219}, {0.438, 0.562}}, p3) <= 1e-15);
  CHECK(dobrushin(p3) == doctest::Approx(0.343).epsilon(1e-14));
  CHECK(dobrushin(p) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("inhomogeneous rectangular product matches the loop oracle") {
  oracle::Gen g(7);
  const Matrix a = random_stochastic(2, 3, g);
  const Matrix b = random_stochastic(3, 4, g);
  const Matrix c = random_stochastic(4, 2, g);
  const ChainModel m({-3, 0}, {a, b, c});
  const auto expect = oracle::multiply(oracle::multiply(oracle::to_dense(a), oracle::to_dense(b)),
                                       oracle::to_dense(c));
  const ProductMatrix pm = product(m, -3, 0);
  CHECK(pm.s == -3);
  CHECK(pm.t == 0);
  CHECK(pm.matrix.rows() == 2);
  CHECK(pm.matrix.cols() == 2);
  CHECK(oracle::max_abs_diff(expect, pm.matrix) <= 1e-15);
  CHECK(oracle::max_abs_diff(oracle::to_dense(b), product(m, -2, -1).matrix) == 0.0);
}

TEST_CASE("product argument errors") {
  const ChainModel m = ChainModel::homogeneous(mat(2, 2, {1, 0, 0, 1}), {0, 4});
  CHECK_THROWS_AS(product(m, 2, 2), Error);
  CHECK_THROWS_AS(product(m, 3, 1), Error);
  try {
    (void)product(m, -1, 2);
    FAIL("expected OutOfWindow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfWindow);
  }
}

TEST_CASE("backward products agree with forward products") {
  oracle::Gen g(11);
  std::vector<Matrix> steps;
  for (int k = 0; k < 8; ++k) steps.push_back(random_stochastic(3, 3, g));
  const ChainModel m({-8, 0}, steps);
  int visits = 0;
  backward_products(m, 0, 8, [&](TimeIndex d, const Matrix& acc) {
    ++visits;
    CHECK((acc - product(m, -d, 0).matrix).cwiseAbs().maxCoeff() <= 1e-14);
  });
  CHECK(visits == 8);
  CHECK_THROWS_AS(backward_products(m, 0, 9, [](TimeIndex, const Matrix&) {}), Error);
}

TEST_CASE("Dobrushin coefficient extremes") {
  CHECK(dobrushin(mat(2, 2, {1, 0, 0, 1})) == 1.0);
  CHECK(dobrushin(mat(3, 2, {0.3, 0.7, 0.3, 0.7, 0.3, 0.7})) == 0.0);
  CHECK(dobrushin(mat(1, 3, {0.2, 0.3, 0.5})) == 0.0);
}

TEST_CASE("marginals follow the chain") {
  const Matrix p = mat(2, 2, {0.9, 0.1, 0.2, 0.8});
  const ChainModel m = ChainModel::homogeneous(p, {0, 50});
  const auto ms = marginals(m, Distribution(0, rv({1, 0})));
  REQUIRE(ms.size() == 51);
  CHECK(ms[1][0] == doctest::Approx(0.9));
  CHECK(ms[3][0] == doctest::Approx(0.781).epsilon(1e-14));
  const auto pi = oracle::power_stationary(oracle::to_dense(p));
  CHECK(std::abs(ms[50][0] - pi[0]) <= std::pow(0.7, 50));
  CHECK(marginals(m, Distribution(10, rv({1, 0})), 12).size() == 3);
}

TEST_CASE("Bayes reversal") {
  SUBCASE("stationary birth-death chain is reversible") {
    const Matrix p = mat(3, 3, {0.5, 0.5, 0, 0.25, 0.5, 0.25, 0, 0.5, 0.5});
    const RowVector pi = rv({0.25, 0.5, 0.25});
    const ReverseKernel r = bayes_reverse(0, p, pi, pi);
    CHECK((r.matrix - p).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(std::all_of(r.supported.begin(), r.supported.end(), [](bool b) { return b; }));
  }
  SUBCASE("unreached states are masked") {
    const Matrix p = mat(2, 3, {0.5, 0.5, 0, 0.5, 0.5, 0});
    const ReverseKernel r = bayes_reverse(2, p, rv({0.5, 0.5}), rv({0.5, 0.5, 0}));
    CHECK(r.supported[0]);
    CHECK_FALSE(r.supported[2]);
    CHECK(r.matrix.row(2).cwiseAbs().sum() == 0.0);
    CHECK(r.matrix.rows() == 3);
    CHECK(r.matrix.cols() == 2);
  }
  SUBCASE("inconsistent marginals are rejected") {
    const Matrix p = mat(2, 2, {0.9, 0.1, 0.2, 0.8});
    const ChainModel m = ChainModel::homogeneous(p, {0, 2});
    const std::vector<Distribution> bad{Distribution(0, rv({1, 0})), Distribution(1, rv({0.5, 0.5})),
                                        Distribution(2, rv({0.5, 0.5}))};
    CHECK_THROWS_AS(reverse_kernel(m, bad, 0), Error);
  }
}

TEST_CASE("reversal diagnostics separate stationary from transient chains") {
  const Matrix p = mat(2, 2, {0.9, 0.1, 0.2, 0.8});
  const ChainModel m = ChainModel::homogeneous(p, {0, 6});
  const auto stationary = reversal_diagnostics(m, Distribution(0, rv({2.0 / 3.0, 1.0 / 3.0})));
  CHECK(stationary.is_homogeneous);
  CHECK(stationary.is_stationary);
  CHECK(stationary.reverse_is_homogeneous);
  CHECK(stationary.is_reversible);
  const auto transient = reversal_diagnostics(m, Distribution(0, rv({1, 0})));
  CHECK(transient.is_homogeneous);
  CHECK_FALSE(transient.is_stationary);
  CHECK_FALSE(transient.reverse_is_homogeneous);
  CHECK(transient.reverse_spread > 1e-3);
}
