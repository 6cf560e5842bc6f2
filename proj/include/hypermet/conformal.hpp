#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hypermet/errors.hpp"
#include "hypermet/geometry.hpp"
#include "hypermet/metric_space.hpp"

namespace hypermet {

/// Reflection about the unit sphere: each row x maps to x/|x|^2.
/// An involution; a point at the origin has no image.
inline std::vector<std::vector<double>> invert_cloud(
    const std::vector<std::vector<double>>& coords) {
  std::vector<std::vector<double>> out;
  out.reserve(coords.size());
  for (const auto& x : coords) {
    const double n2 = dot(x, x);
    if (n2 == 0.0) fail(ErrorKind::Domain, "cannot invert a point at the origin");
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / n2;
    out.push_back(std::move(y));
  }
  return out;
}

/// Chordal distance d(x,y) = 2|x-y| / sqrt((1+|x|^2)(1+|y|^2)), the finite
/// form of the spherical metric with length element 2|dz|/(1+|z|^2).
inline double chordal_distance(const std::vector<double>& x,
                               const std::vector<double>& y) {
  return 2.0 * distance(x, y) / std::sqrt((1.0 + dot(x, x)) * (1.0 + dot(y, y)));
}

/// Builds the finite metric space of pairwise chordal distances of a cloud.
/// Labels default to p0, p1, ...; the output passes metric validation.
inline FiniteMetricSpace chordal_space(const std::vector<std::vector<double>>& coords,
                                       std::vector<std::string> labels = {}) {
  const std::size_t n = coords.size();
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  }
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m(i, j) = m(j, i) = chordal_distance(coords[i], coords[j]);
  auto v = validate_metric(m, std::move(labels), coords);
  if (auto* rep = std::get_if<MetricViolationReport>(&v))
    fail(ErrorKind::Input, "chordal space failed validation: " + rep->message);
  return std::get<FiniteMetricSpace>(std::move(v));
}

}  // namespace hypermet
