#include "nhmc/core.hpp"

#include <doctest.h>

using namespace nhmc;

namespace {

RowVector rv(std::initializer_list<double> xs) {
  RowVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Matrix two_by_two(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

bool has_kind(const ValidationReport& r, ViolationKind k) {
  for (const auto& v : r)
    if (v.kind == k) return true;
  return false;
}

}  // namespace

TEST_CASE("distribution checks its entries") {
  CHECK_NOTHROW(Distribution(0, rv({0.25, 0.75})));
  CHECK_THROWS_AS(Distribution(0, rv({-0.1, 1.1})), Error);
  CHECK_THROWS_AS(Distribution(0, rv({0.5, 0.4})), Error);
  CHECK_THROWS_AS(Distribution(0, RowVector()), Error);
  // within the stochastic tolerance
  CHECK_NOTHROW(Distribution(0, rv({0.5, 0.5 + 1e-13})));
  const auto u = Distribution::unchecked(3, rv({2.0, -1.0}));
  CHECK(u.time() == 3);
  CHECK(u[1] == -1.0);
}

TEST_CASE("delta distribution and total variation") {
  const Distribution d = delta_distribution(2, 3, -4);
  CHECK(d.time() == -4);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 1.0);
  CHECK_THROWS_AS(delta_distribution(4, 3, 0), Error);
  CHECK_THROWS_AS(delta_distribution(0, 3, 0), Error);
  CHECK(total_variation(rv({1, 0}), rv({0, 1})) == 1.0);
  CHECK(total_variation(rv({0.5, 0.5}), rv({0.25, 0.75})) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(total_variation(rv({1}), rv({0.5, 0.5})), Error);
}

TEST_CASE("chain model indexing") {
  const ChainModel m = ChainModel::homogeneous(two_by_two(0.9, 0.1, 0.2, 0.8), {-3, 2});
  CHECK(m.window().length() == 5);
  CHECK(m.step(-3).from_time() == -3);
  CHECK(m.step(1).entries()(0, 1) == 0.1);
  CHECK(m.dim(2) == 2);
  try {
    (void)m.step(2);
    FAIL("expected OutOfWindow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfWindow);
  }
  CHECK_THROWS_AS(ChainModel({0, 3}, {two_by_two(1, 0, 0, 1)}), Error);
  CHECK_THROWS_AS(ChainModel({3, 0}, {}), Error);
}

TEST_CASE("rectangular steps give time-dependent dimensions") {
  Matrix a(2, 3);
  a << 0.2, 0.3, 0.5, 1, 0, 0;
  Matrix b(3, 1);
  b << 1, 1, 1;
  const ChainModel m({0, 2}, {a, b});
  CHECK(m.dim(0) == 2);
  CHECK(m.dim(1) == 3);
  CHECK(m.dim(2) == 1);
  CHECK(validate_chain(m).empty());
}

TEST_CASE("validate_chain reports each kind of defect") {
  SUBCASE("row sum") {
    const ChainModel m({0, 2}, {two_by_two(0.5, 0.5, 0.3, 0.7), two_by_two(0.5, 0.4, 0.3, 0.7)});
    const auto r = validate_chain(m);
    REQUIRE(r.size() == 1);
    CHECK(r[0].kind == ViolationKind::RowSum);
    CHECK(r[0].time == 1);
    CHECK(r[0].row == 1);
    CHECK(r[0].magnitude == doctest::Approx(0.1));
    CHECK_THROWS_AS(require_valid(m), Error);
  }
  SUBCASE("negative entry") {
    const ChainModel m({0, 1}, {two_by_two(1.2, -0.2, 0.3, 0.7)});
    CHECK(has_kind(validate_chain(m), ViolationKind::NegativeEntry));
  }
  SUBCASE("non-finite entry") {
    const ChainModel m({0, 1}, {two_by_two(std::nan(""), 1.0, 0.3, 0.7)});
    CHECK(has_kind(validate_chain(m), ViolationKind::NegativeEntry));
  }
  SUBCASE("dimension chaining") {
    Matrix a(2, 3);
    a << 0.2, 0.3, 0.5, 1, 0, 0;
    const ChainModel m({0, 2}, {a, two_by_two(1, 0, 0, 1)});
    CHECK(has_kind(validate_chain(m), ViolationKind::DimensionChain));
  }
  SUBCASE("initial distribution") {
    const Matrix p = two_by_two(0.5, 0.5, 0.5, 0.5);
    CHECK(has_kind(validate_chain(ChainModel::homogeneous(p, {0, 2}, Distribution::unchecked(5, rv({1, 0})))),
                   ViolationKind::InitialTime));
    CHECK(has_kind(validate_chain(ChainModel::homogeneous(p, {0, 2}, Distribution::unchecked(0, rv({1, 0, 0})))),
                   ViolationKind::InitialLength));
    CHECK(has_kind(validate_chain(ChainModel::homogeneous(p, {0, 2}, Distribution::unchecked(0, rv({0.7, 0.7})))),
                   ViolationKind::InitialNotDistribution));
    CHECK(validate_chain(ChainModel::homogeneous(p, {0, 2}, Distribution(1, rv({0.3, 0.7})))).empty());
  }
}

TEST_CASE("push_forward multiplies on the left and advances time") {
  const StochasticMatrix p(4, two_by_two(0.9, 0.1, 0.2, 0.8));
  const Distribution m(4, rv({0.5, 0.5}));
  const Distribution next = push_forward(m, p);
  CHECK(next.time() == 5);
  CHECK(next[0] == doctest::Approx(0.55).epsilon(1e-15));
  CHECK(next[1] == doctest::Approx(0.45).epsilon(1e-15));
  CHECK_THROWS_AS(push_forward(Distribution(3, rv({0.5, 0.5})), p), Error);
  CHECK_THROWS_AS(push_forward(Distribution(4, rv({1.0})), p), Error);
}

TEST_CASE("renormalized rows sum to one") {
  const StochasticMatrix p(0, two_by_two(2, 2, 1, 3));
  const Matrix r = p.renormalized().entries();
  CHECK(r(0, 0) == 0.5);
  CHECK(r(1, 1) == 0.75);
  CHECK_THROWS_AS(StochasticMatrix(0, two_by_two(0, 0, 1, 0)).renormalized(), Error);
}
