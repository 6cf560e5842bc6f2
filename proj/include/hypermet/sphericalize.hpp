#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "hypermet/errors.hpp"
#include "hypermet/geometry.hpp"
#include "hypermet/matrix.hpp"
#include "hypermet/metric_space.hpp"

namespace hypermet {

/// Sphericalization quasimetric on X united with a point at infinity,
/// associated to a base point a:
///
///   d_a(x,y) = d(x,y) / [(1+d(x,a)) (1+d(y,a))]      x, y finite
///   d_a(x,inf) = 1 / (1+d(x,a))
///   d_a(inf,inf) = 0
///
/// The infinity point is always appended last so report witnesses index
/// stably. The result is a 2-quasimetric, not a metric in general.
inline QuasiMetricSpace sphericalize_quasimetric(const FiniteMetricSpace& space,
                                                 const std::string& a) {
  if (space.find(kInfinityLabel))
    fail(ErrorKind::Label, "space already contains the reserved infinity label");
  const std::size_t ai = space.index_of(a);
  const std::size_t n = space.size();

  std::vector<double> shrink(n);  // 1 + d(x,a)
  for (std::size_t i = 0; i < n; ++i) shrink[i] = 1.0 + space.dist(i, ai);

  SquareMatrix m(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j)
      m(i, j) = m(j, i) = space.dist(i, j) / (shrink[i] * shrink[j]);
    m(i, n) = m(n, i) = 1.0 / shrink[i];
  }

  std::vector<std::string> labels = space.labels();
  labels.push_back(kInfinityLabel);
  return QuasiMetricSpace(std::move(labels), std::move(m));
}

/// Chain metrization found a pair whose every connecting chain collapses
/// below the absolute tolerance; the quasimetric is too degenerate to
/// metrize meaningfully.
struct DegenerateMetrizationReport {
  std::size_t collapsing_pair[2] = {0, 0};
  std::string labels[2];
  double value = 0.0;
  std::string message;
};

using ChainMetrization = std::variant<FiniteMetricSpace, DegenerateMetrizationReport>;

namespace detail {

/// Single-source shortest chain values over the complete graph with edge
/// weights w. Accumulates every chain sum left to right (prefix sums), so
/// the result is bitwise the minimum over all simple chains of their
/// left-to-right sums; rounding is monotone, which keeps the greedy
/// selection exact.
inline void shortest_chains_from(const SquareMatrix& w, std::size_t src,
                                 std::vector<double>& dist,
                                 std::vector<char>& done) {
  const std::size_t n = w.size();
  dist.assign(n, std::numeric_limits<double>::infinity());
  done.assign(n, 0);
  dist[src] = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t u = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && dist[i] < best) {
        best = dist[i];
        u = i;
      }
    if (u == n) break;
    done[u] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      const double alt = dist[u] + w(u, v);
      if (alt < dist[v]) dist[v] = alt;
    }
  }
}

}  // namespace detail

/// Metrizes a quasimetric by the chain construction: the infimum over finite
/// chains x = x_0, ..., x_{k+1} = y of the summed quasidistances, which is
/// exactly the all-pairs shortest chain over the complete graph. The output
/// matrix is symmetrized by computing each pair once in the orientation from
/// the smaller index.
inline ChainMetrization chain_metrize(const QuasiMetricSpace& quasi) {
  const std::size_t n = quasi.size();
  const SquareMatrix& w = quasi.dist_matrix();
  SquareMatrix out(n);

  std::vector<double> dist;
  std::vector<char> done;
  for (std::size_t s = 0; s < n; ++s) {
    detail::shortest_chains_from(w, s, dist, done);
    for (std::size_t t = s + 1; t < n; ++t) out(s, t) = out(t, s) = dist[t];
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (out(i, j) <= kAbsTol) {
        DegenerateMetrizationReport rep;
        rep.collapsing_pair[0] = i;
        rep.collapsing_pair[1] = j;
        rep.labels[0] = quasi.labels()[i];
        rep.labels[1] = quasi.labels()[j];
        rep.value = out(i, j);
        rep.message = "chain metrization collapses pair (" + rep.labels[0] + "," +
                      rep.labels[1] + ")";
        return rep;
      }

  return FiniteMetricSpace(quasi.labels(), std::move(out));
}

/// The sphericalization of a space at base a: the quasimetric d_a, its chain
/// metrization, and the largest observed ratio d_a / d_a-hat (at most 4).
struct SphericalizedSpace {
  QuasiMetricSpace quasi;        // d_a on labels + INF
  FiniteMetricSpace metrized;    // chain metrization of d_a
  std::string base_label;
  double comparison_ratio = 1.0;  // max over pairs of d_a / metrized
};

inline SphericalizedSpace sphericalize(const FiniteMetricSpace& space,
                                       const std::string& a) {
  SphericalizedSpace out;
  out.base_label = a;
  out.quasi = sphericalize_quasimetric(space, a);
  auto metrized = chain_metrize(out.quasi);
  if (auto* rep = std::get_if<DegenerateMetrizationReport>(&metrized))
    fail(ErrorKind::Input, "sphericalization degenerate: " + rep->message);
  out.metrized = std::get<FiniteMetricSpace>(std::move(metrized));

  const std::size_t n = out.quasi.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.comparison_ratio =
          std::max(out.comparison_ratio, out.quasi.dist(i, j) / out.metrized.dist(i, j));
  return out;
}

/// Conformal density of the sphericalization: rho_a(x) = 1/(1+d(a,x))^2.
inline double spherical_density(double dist_to_a) {
  const double s = 1.0 + dist_to_a;
  return 1.0 / (s * s);
}

/// Length of a polyline in the sphericalized metric, as the line integral of
/// rho_a over the curve. Composite midpoint rule with a fixed subdivision
/// count per segment; rho_a is smooth, so second order is plenty.
inline double spherical_curve_length(const std::vector<Point>& polyline,
                                     const Point& a,
                                     std::size_t segments_per_edge = 64) {
  if (polyline.size() < 2)
    fail(ErrorKind::Input, "polyline needs at least two vertices");
  if (segments_per_edge == 0)
    fail(ErrorKind::Parameter, "segments_per_edge must be positive");
  double total = 0.0;
  for (std::size_t e = 0; e + 1 < polyline.size(); ++e) {
    const Point& p = polyline[e];
    const Point& q = polyline[e + 1];
    const double len = distance(p, q);
    if (len == 0.0) continue;
    const double step = len / static_cast<double>(segments_per_edge);
    for (std::size_t k = 0; k < segments_per_edge; ++k) {
      const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(segments_per_edge);
      Point mid(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) mid[i] = p[i] + t * (q[i] - p[i]);
      total += step * spherical_density(distance(mid, a));
    }
  }
  return total;
}

struct SphericalMeasureResult {
  double value = 0.0;
  std::size_t boundary_ties = 0;  // points with d(a,u) exactly 1 + d(a,z) for some z
};

/// Discrete spherical measure of a subset A:
///   mu_a(A) = sum_{z in A} w(z) / M(z)^2,
///   M(z) = sum of w(u) over u with d(a,u) < 1 + d(a,z).
/// Balls are open (strict inequality); distance ties with the ball radius are
/// counted so reports can flag them. M(z) > 0 always since a itself
/// qualifies.
inline SphericalMeasureResult spherical_measure(const FiniteMetricSpace& space,
                                                const std::string& a,
                                                const std::vector<std::string>& subset) {
  if (!space.has_weights())
    fail(ErrorKind::Configuration, "spherical measure needs point weights");
  const std::size_t ai = space.index_of(a);
  const auto& w = space.weights();

  SphericalMeasureResult out;
  for (const auto& label : subset) {
    const std::size_t z = space.index_of(label);
    const double radius = 1.0 + space.dist(ai, z);
    double mass = 0.0;
    for (std::size_t u = 0; u < space.size(); ++u) {
      const double du = space.dist(ai, u);
      if (du < radius) mass += w[u];
      else if (du == radius) ++out.boundary_ties;
    }
    out.value += w[z] / (mass * mass);
  }
  return out;
}

}  // namespace hypermet
