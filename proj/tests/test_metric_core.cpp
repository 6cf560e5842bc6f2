#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hypermet/conformal.hpp"
#include "hypermet/metric_space.hpp"

#include "helpers.hpp"

using namespace hypermet;

TEST_CASE("validate_metric accepts a degenerate triangle equality") {
  SquareMatrix m = SquareMatrix::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  auto v = validate_metric(m, {"a", "b", "c"});
  REQUIRE(std::holds_alternative<FiniteMetricSpace>(v));
}

TEST_CASE("validate_metric reports the worst triple and K") {
  SquareMatrix m = SquareMatrix::from_rows({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  auto v = validate_metric(m, {"a", "b", "c"});
  auto* rep = std::get_if<MetricViolationReport>(&v);
  REQUIRE(rep != nullptr);
  CHECK_FALSE(rep->triangle_ok);
  CHECK(rep->quasi_constant == 3.0);
  // Worst triple is (a,b,c): d(a,c)=3 > d(a,b)+d(b,c)=2.
  CHECK(rep->worst_triple[0] == 0);
  CHECK(rep->worst_triple[1] == 1);
  CHECK(rep->worst_triple[2] == 2);
}

TEST_CASE("validate_metric accepts a singleton") {
  auto v = validate_metric(SquareMatrix(1), {"a"});
  REQUIRE(std::holds_alternative<FiniteMetricSpace>(v));
}

TEST_CASE("validate_metric rejects malformed input with exceptions") {
  SquareMatrix neg = SquareMatrix::from_rows({{0, -1}, {-1, 0}});
  CHECK_THROWS_AS(validate_metric(neg, {"a", "b"}), Error);
  CHECK_THROWS_AS(validate_metric(SquareMatrix(2), {"a"}), Error);
}

TEST_CASE("validate_metric flags zero distance between distinct labels") {
  SquareMatrix m = SquareMatrix::from_rows({{0, 0}, {0, 0}});
  auto v = validate_metric(m, {"a", "b"});
  auto* rep = std::get_if<MetricViolationReport>(&v);
  REQUIRE(rep != nullptr);
  CHECK_FALSE(rep->positive_off_diagonal_ok);
}

TEST_CASE("accepted spaces never stretch a triangle beyond the tolerance") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 25; ++it) {
    auto space = testutil::random_metric_space(8, rng);
    CHECK(triangle_stretch(space.dist_matrix()) <= 1.0 + kRelTol);
  }
}

TEST_CASE("cross_ratio on collinear reals") {
  std::vector<std::vector<double>> pts = {{0}, {1}, {2}, {3}};
  auto space = testutil::euclidean_space(pts);
  CHECK(cross_ratio(space, "p0", "p1", "p2", "p3") == 4.0);
}

TEST_CASE("cross_ratio with one point at infinity reduces") {
  std::vector<std::vector<double>> pts = {{0}, {1}, {2}};
  auto space = testutil::euclidean_space(pts);
  CHECK(cross_ratio(space, "p0", "p1", "p2", kInfinityLabel) == 2.0);
}

TEST_CASE("cross_ratio relabeling symmetries hold exactly") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 100; ++it) {
    auto space = testutil::random_metric_space(6, rng);
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    std::size_t i[4];
    do {
      for (auto& v : i) v = pick(rng);
    } while (i[0] == i[1] || i[0] == i[2] || i[0] == i[3] || i[1] == i[2] ||
             i[1] == i[3] || i[2] == i[3]);
    const auto& L = space.labels();
    const double r = cross_ratio(space, L[i[0]], L[i[1]], L[i[2]], L[i[3]]);
    // Same arithmetic, so exact equality.
    CHECK(r == cross_ratio(space, L[i[2]], L[i[3]], L[i[0]], L[i[1]]));
    CHECK(r == cross_ratio(space, L[i[1]], L[i[0]], L[i[3]], L[i[2]]));
    // Swapping the middle pair inverts the ratio.
    CHECK(r * cross_ratio(space, L[i[0]], L[i[2]], L[i[1]], L[i[3]]) ==
          Catch::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("cross_ratio errors on repeated points") {
  auto space = testutil::euclidean_space({{0}, {1}, {2}, {3}});
  CHECK_THROWS_AS(cross_ratio(space, "p0", "p0", "p1", "p2"), Error);
}

TEST_CASE("invert_cloud maps (2,0) to (0.5,0) and fixes the unit sphere") {
  auto out = invert_cloud({{2.0, 0.0}, {0.0, 1.0}});
  CHECK(out[0][0] == 0.5);
  CHECK(out[0][1] == 0.0);
  CHECK(out[1][0] == 0.0);
  CHECK(out[1][1] == 1.0);
}

TEST_CASE("invert_cloud is an involution") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> p = {u(rng), u(rng), u(rng)};
    if (norm(p) < 1e-3) p[0] += 1.0;
    pts.push_back(p);
  }
  auto twice = invert_cloud(invert_cloud(pts));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(twice[i][k] - pts[i][k]) <=
            1e-12 * std::max(1.0, std::abs(pts[i][k])));
}

TEST_CASE("invert_cloud rejects the origin") {
  CHECK_THROWS_AS(invert_cloud({{0.0, 0.0}}), Error);
}

TEST_CASE("chordal distance matches hand values and has limit 2") {
  CHECK(chordal_distance({0.0}, {1.0}) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // x = 0, y far along a ray: distance approaches 2 from below.
  CHECK(chordal_distance({0.0, 0.0}, {1e3, 0.0}) == Catch::Approx(2.0).epsilon(1e-5));
  CHECK(chordal_distance({0.0, 0.0}, {1e3, 0.0}) < 2.0);
  CHECK(chordal_distance({0.0, 0.0}, {1e8, 0.0}) <= 2.0);
}

TEST_CASE("chordal_space satisfies the metric axioms on random clouds") {
  std::mt19937_64 rng(23);
  auto pts = testutil::random_planar_cloud(200, rng);
  auto space = chordal_space(pts);  // construction validates
  CHECK(space.size() == 200);
  CHECK(triangle_stretch(space.dist_matrix()) <= 1.0 + kRelTol);
}

TEST_CASE("spaces reject duplicate labels") {
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "a"}, SquareMatrix(2)), Error);
}
