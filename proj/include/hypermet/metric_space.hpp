#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hypermet/errors.hpp"
#include "hypermet/matrix.hpp"

namespace hypermet {

/// Reserved label for the point at infinity. It is never a coordinate;
/// only cross_ratio and the sphericalization interpret it specially, and
/// the sphericalization appends it to the label set it produces.
inline constexpr const char* kInfinityLabel = "INF";

/// Relative tolerance for all metric-axiom checks. Double-precision matrix
/// arithmetic accumulates O(n) rounding.
inline constexpr double kRelTol = 1e-9;

/// Absolute tolerance for degeneracy detection in chain metrization.
inline constexpr double kAbsTol = 1e-12;

/// A labeled finite point set with a symmetric distance matrix. Optionally
/// carries a Euclidean embedding (coords) and point masses (weights).
/// Immutable after construction; all operations on it are pure functions.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  FiniteMetricSpace(std::vector<std::string> labels, SquareMatrix dist,
                    std::vector<std::vector<double>> coords = {},
                    std::vector<double> weights = {})
      : labels_(std::move(labels)),
        dist_(std::move(dist)),
        coords_(std::move(coords)),
        weights_(std::move(weights)) {
    if (labels_.size() != dist_.size())
      fail(ErrorKind::Input, "label count does not match matrix size");
    if (!coords_.empty() && coords_.size() != labels_.size())
      fail(ErrorKind::Input, "coords row count does not match label count");
    if (!weights_.empty() && weights_.size() != labels_.size())
      fail(ErrorKind::Input, "weights count does not match label count");
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          fail(ErrorKind::Label, "duplicate label '" + labels_[i] + "'");
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const SquareMatrix& dist_matrix() const noexcept { return dist_; }
  double dist(std::size_t i, std::size_t j) const { return dist_(i, j); }

  bool has_coords() const noexcept { return !coords_.empty(); }
  const std::vector<std::vector<double>>& coords() const noexcept { return coords_; }

  bool has_weights() const noexcept { return !weights_.empty(); }
  const std::vector<double>& weights() const noexcept { return weights_; }

  std::optional<std::size_t> find(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  std::size_t index_of(const std::string& label) const {
    auto i = find(label);
    if (!i) fail(ErrorKind::Label, "unknown label '" + label + "'");
    return *i;
  }

  double diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) d = std::max(d, dist_(i, j));
    return d;
  }

  double min_positive_distance() const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (dist_(i, j) > 0.0) d = std::min(d, dist_(i, j));
    return d;
  }

 private:
  std::vector<std::string> labels_;
  SquareMatrix dist_;
  std::vector<std::vector<double>> coords_;  // n x m, optional
  std::vector<double> weights_;              // n, optional
};

/// Largest triangle stretch max d(x,z) / (d(x,y) + d(y,z)) over distinct
/// triples; a valid metric keeps this at most 1.
inline double triangle_stretch(const SquareMatrix& d) {
  const std::size_t n = d.size();
  double k = 0.0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z) {
      if (x == z) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        const double den = d(x, y) + d(y, z);
        if (den > 0.0) k = std::max(k, d(x, z) / den);
      }
    }
  return k;
}

/// Least K with dist(x,z) <= K * max(dist(x,y), dist(y,z)) over all ordered
/// triples of distinct indices. Returns 1 for n < 3 (nothing to witness).
inline double quasi_constant_of(const SquareMatrix& d) {
  const std::size_t n = d.size();
  double k = 1.0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z) {
      if (x == z) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        const double den = std::max(d(x, y), d(y, z));
        if (den > 0.0) k = std::max(k, d(x, z) / den);
      }
    }
  return k;
}

/// Validation outcome when the input fails a metric axiom. Carries the worst
/// triangle-violating triple and the computed quasimetric constant K.
struct MetricViolationReport {
  bool symmetric_ok = true;
  bool diagonal_ok = true;
  bool positive_off_diagonal_ok = true;
  bool triangle_ok = true;
  std::size_t worst_triple[3] = {0, 0, 0};  // d(x,z) vs d(x,y)+d(y,z)
  double worst_excess = 0.0;                // relative excess of the worst triple
  double quasi_constant = 1.0;
  std::string message;
};

using MetricValidation = std::variant<FiniteMetricSpace, MetricViolationReport>;

/// Checks symmetry, the zero diagonal, positivity off the diagonal and the
/// triangle inequality (all within the relative tolerance), and returns
/// either the constructed space or a violation report. Non-square, negative
/// or non-finite inputs are input errors, not violations.
inline MetricValidation validate_metric(const SquareMatrix& m,
                                        std::vector<std::string> labels,
                                        std::vector<std::vector<double>> coords = {},
                                        std::vector<double> weights = {},
                                        double tol_rel = kRelTol) {
  const std::size_t n = m.size();
  if (labels.size() != n) fail(ErrorKind::Input, "label count does not match matrix size");
  if (!m.all_finite()) fail(ErrorKind::Input, "matrix entries must be finite");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) < 0.0) fail(ErrorKind::Input, "matrix entries must be nonnegative");

  MetricViolationReport rep;
  std::ostringstream msg;

  for (std::size_t i = 0; i < n && rep.symmetric_ok; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, m(i, j), m(j, i)});
      if (std::abs(m(i, j) - m(j, i)) > tol_rel * scale) {
        rep.symmetric_ok = false;
        msg << "asymmetric at (" << labels[i] << "," << labels[j] << "); ";
        break;
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    if (m(i, i) != 0.0) {
      rep.diagonal_ok = false;
      msg << "nonzero diagonal at " << labels[i] << "; ";
      break;
    }
  for (std::size_t i = 0; i < n && rep.positive_off_diagonal_ok; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) <= 0.0) {
        // Duplicate points are rejected rather than merged: label identity
        // must stay stable for witnesses in reports.
        rep.positive_off_diagonal_ok = false;
        msg << "zero distance between distinct labels " << labels[i] << "," << labels[j] << "; ";
        break;
      }

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z) {
      if (x == z) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        const double lhs = m(x, z);
        const double rhs = m(x, y) + m(y, z);
        const double scale = std::max(1.0, std::max(lhs, rhs));
        const double excess = (lhs - rhs) / scale;
        if (excess > rep.worst_excess) {
          rep.worst_excess = excess;
          rep.worst_triple[0] = x;
          rep.worst_triple[1] = y;
          rep.worst_triple[2] = z;
        }
      }
    }
  if (rep.worst_excess > tol_rel) {
    rep.triangle_ok = false;
    msg << "triangle violated at (" << labels[rep.worst_triple[0]] << ","
        << labels[rep.worst_triple[1]] << "," << labels[rep.worst_triple[2]] << "); ";
  }

  if (!rep.symmetric_ok || !rep.diagonal_ok || !rep.positive_off_diagonal_ok ||
      !rep.triangle_ok) {
    rep.quasi_constant = quasi_constant_of(m);
    msg << "K=" << rep.quasi_constant;
    rep.message = msg.str();
    return rep;
  }
  return FiniteMetricSpace(std::move(labels), m, std::move(coords), std::move(weights));
}

/// A symmetric nonnegative distance matrix satisfying only the K-relaxed
/// triangle inequality dist(x,z) <= K max(dist(x,y), dist(y,z)).
/// K is computed from the data at construction, never asserted.
class QuasiMetricSpace {
 public:
  QuasiMetricSpace() = default;

  QuasiMetricSpace(std::vector<std::string> labels, SquareMatrix dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {
    const std::size_t n = labels_.size();
    if (n != dist_.size()) fail(ErrorKind::Input, "label count does not match matrix size");
    if (!dist_.all_finite()) fail(ErrorKind::Input, "matrix entries must be finite");
    for (std::size_t i = 0; i < n; ++i) {
      if (dist_(i, i) != 0.0) fail(ErrorKind::Input, "quasimetric diagonal must be zero");
      for (std::size_t j = 0; j < n; ++j) {
        if (dist_(i, j) < 0.0) fail(ErrorKind::Input, "quasimetric entries must be nonnegative");
        if (dist_(i, j) != dist_(j, i)) fail(ErrorKind::Input, "quasimetric must be symmetric");
      }
    }
    quasi_constant_ = quasi_constant_of(dist_);
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const SquareMatrix& dist_matrix() const noexcept { return dist_; }
  double dist(std::size_t i, std::size_t j) const { return dist_(i, j); }
  double quasi_constant() const noexcept { return quasi_constant_; }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    fail(ErrorKind::Label, "unknown label '" + label + "'");
  }

 private:
  std::vector<std::string> labels_;
  SquareMatrix dist_;
  double quasi_constant_ = 1.0;
};

/// A space together with a distinguished base point.
struct PointedSpace {
  FiniteMetricSpace space;
  std::size_t base = 0;

  PointedSpace(FiniteMetricSpace s, const std::string& base_label)
      : space(std::move(s)), base(space.index_of(base_label)) {}

  PointedSpace(FiniteMetricSpace s, std::size_t base_index)
      : space(std::move(s)), base(base_index) {
    if (base >= space.size()) fail(ErrorKind::Label, "base index out of range");
  }

  const std::string& base_label() const { return space.labels()[base]; }
};

/// Cross ratio r(x,y,z,w) = d(x,z) d(y,w) / (d(x,y) d(z,w)) of four distinct
/// labeled points. At most one argument may be the reserved infinity label,
/// in which case the factors containing it cancel pairwise:
///   r(x,y,z,INF) = d(x,z)/d(x,y),   r(x,y,INF,w) = d(y,w)/d(x,y),
///   r(x,INF,z,w) = d(x,z)/d(z,w),   r(INF,y,z,w) = d(y,w)/d(z,w).
/// If the space itself contains the infinity label (sphericalized spaces do),
/// it is treated as an ordinary point of the matrix.
inline double cross_ratio(const FiniteMetricSpace& s, const std::string& x,
                          const std::string& y, const std::string& z,
                          const std::string& w) {
  const std::string* pts[4] = {&x, &y, &z, &w};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (*pts[i] == *pts[j])
        fail(ErrorKind::UndefinedCrossRatio, "repeated point '" + *pts[i] + "'");

  int inf_pos = -1;
  std::size_t idx[4] = {0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    auto found = s.find(*pts[i]);
    if (found) {
      idx[i] = *found;
    } else if (*pts[i] == kInfinityLabel) {
      inf_pos = i;
    } else {
      fail(ErrorKind::Label, "unknown label '" + *pts[i] + "'");
    }
  }

  const auto& d = s.dist_matrix();
  double num = 1.0, den = 1.0;
  switch (inf_pos) {
    case -1:
      num = d(idx[0], idx[2]) * d(idx[1], idx[3]);
      den = d(idx[0], idx[1]) * d(idx[2], idx[3]);
      break;
    case 0:  // r(INF,y,z,w) = d(y,w)/d(z,w)
      num = d(idx[1], idx[3]);
      den = d(idx[2], idx[3]);
      break;
    case 1:  // r(x,INF,z,w) = d(x,z)/d(z,w)
      num = d(idx[0], idx[2]);
      den = d(idx[2], idx[3]);
      break;
    case 2:  // r(x,y,INF,w) = d(y,w)/d(x,y)
      num = d(idx[1], idx[3]);
      den = d(idx[0], idx[1]);
      break;
    case 3:  // r(x,y,z,INF) = d(x,z)/d(x,y)
      num = d(idx[0], idx[2]);
      den = d(idx[0], idx[1]);
      break;
  }
  if (den == 0.0) fail(ErrorKind::UndefinedCrossRatio, "vanishing denominator");
  return num / den;
}

}  // namespace hypermet
