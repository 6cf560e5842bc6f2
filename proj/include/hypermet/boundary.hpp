#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hypermet/errors.hpp"
#include "hypermet/hyperbolicity.hpp"
#include "hypermet/matrix.hpp"
#include "hypermet/metric_space.hpp"
#include "hypermet/sphericalize.hpp"

namespace hypermet {

/// A finite boundary-proxy chart: proxy labels, the Gromov-product matrix
/// restricted to them, the hyperbolicity constant of the ambient space, and
/// the base point the products were taken at.
struct BoundaryChart {
  std::vector<std::string> points;
  SquareMatrix gp;
  double delta = 0.0;
  std::string base;

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i] == label) return i;
    fail(ErrorKind::Label, "unknown proxy label '" + label + "'");
  }
};

/// Builds a chart from a space: products at w restricted to the proxy set,
/// delta from the fixed-base four-point scan of the whole space.
inline BoundaryChart make_boundary_chart(const FiniteMetricSpace& space,
                                         const std::string& w,
                                         const std::vector<std::string>& proxies) {
  const auto products = gromov_products(space, w);
  BoundaryChart chart;
  chart.base = w;
  chart.points = proxies;
  chart.delta = delta_four_point(space, w).delta;
  chart.gp = SquareMatrix(proxies.size());
  for (std::size_t i = 0; i < proxies.size(); ++i) {
    const std::size_t pi = products.index_of(proxies[i]);
    for (std::size_t j = 0; j < proxies.size(); ++j)
      chart.gp(i, j) = products.products(pi, products.index_of(proxies[j]));
  }
  return chart;
}

enum class VisualKind { Bourdon, Hamenstadt };

/// A visual metric on a chart: the exponential pre-metric rho and its chain
/// metrization, which stays within [rho/2, rho] entrywise. For delta = 0
/// charts rho is an ultrametric and the metrization is the identity.
struct VisualMetric {
  VisualKind kind = VisualKind::Bourdon;
  double epsilon = 0.0;
  std::vector<std::string> points;
  SquareMatrix pre_metric;  // rho
  SquareMatrix metric;      // chain metrization of rho
  std::optional<std::string> excluded;  // Hamenstadt anchor
  double quasi_constant = 1.0;          // computed K of rho
  double min_metric_over_rho = 1.0;     // observed lower ratio (>= 1/2)
  double max_metric_over_rho = 1.0;     // observed upper ratio (<= 1)

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i] == label) return i;
    fail(ErrorKind::Label, "unknown proxy label '" + label + "'");
  }
};

namespace detail {

inline VisualMetric metrize_pre_metric(VisualKind kind, double epsilon,
                                       std::vector<std::string> points,
                                       SquareMatrix rho,
                                       std::optional<std::string> excluded) {
  VisualMetric out;
  out.kind = kind;
  out.epsilon = epsilon;
  out.points = std::move(points);
  out.excluded = std::move(excluded);
  QuasiMetricSpace quasi(out.points, rho);
  out.quasi_constant = quasi.quasi_constant();
  auto metrized = chain_metrize(quasi);
  if (auto* rep = std::get_if<DegenerateMetrizationReport>(&metrized))
    fail(ErrorKind::Input, "visual pre-metric degenerate: " + rep->message);
  out.metric = std::get<FiniteMetricSpace>(metrized).dist_matrix();
  out.pre_metric = std::move(rho);
  for (std::size_t i = 0; i < out.points.size(); ++i)
    for (std::size_t j = i + 1; j < out.points.size(); ++j) {
      const double ratio = out.metric(i, j) / out.pre_metric(i, j);
      out.min_metric_over_rho = std::min(out.min_metric_over_rho, ratio);
      out.max_metric_over_rho = std::max(out.max_metric_over_rho, ratio);
    }
  return out;
}

}  // namespace detail

/// Largest admissible epsilon for a Bourdon metric at the given delta.
/// For delta = 0 the endpoint 1 is admissible: the pre-metric is then an
/// ultrametric for every epsilon, so nothing degenerates at the boundary.
inline double bourdon_epsilon_limit(double delta) {
  return delta > 0.0 ? std::min(1.0, 1.0 / (5.0 * delta)) : 1.0;
}

/// Bourdon visual metric rho_{w,eps}(xi,zeta) = exp(-eps (xi|zeta)_w),
/// chain-metrized. Coincident proxies (infinite product) get distance 0 by
/// the convention exp(-inf) = 0.
inline VisualMetric bourdon_metric(const BoundaryChart& chart, double epsilon) {
  const double limit = bourdon_epsilon_limit(chart.delta);
  const bool ok = epsilon > 0.0 && (chart.delta > 0.0 ? epsilon < limit : epsilon <= limit);
  if (!ok) {
    std::ostringstream msg;
    msg << "epsilon " << epsilon << " outside admissible interval (0, " << limit
        << (chart.delta > 0.0 ? ")" : "]") << " for delta " << chart.delta;
    fail(ErrorKind::Parameter, msg.str());
  }
  const std::size_t n = chart.points.size();
  SquareMatrix rho(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rho(i, j) = i == j ? 0.0 : std::exp(-epsilon * chart.gp(i, j));
  return detail::metrize_pre_metric(VisualKind::Bourdon, epsilon, chart.points,
                                    std::move(rho), std::nullopt);
}

/// Hamenstadt visual metric on the punctured chart: products are rebased at
/// the anchor proxy, rho_{b,eps}(x,y) = exp(-eps (x|y)_b), and the metric is
/// the chain metrization sigma. Requires exp(22 eps delta) <= 2.
inline VisualMetric hamenstadt_metric(const BoundaryChart& chart,
                                      const std::string& anchor, double epsilon) {
  if (epsilon <= 0.0) fail(ErrorKind::Parameter, "epsilon must be positive");
  if (std::exp(22.0 * epsilon * chart.delta) > 2.0) {
    std::ostringstream msg;
    msg << "epsilon " << epsilon << " violates exp(22 eps delta) <= 2; admissible max "
        << std::log(2.0) / (22.0 * chart.delta);
    fail(ErrorKind::Parameter, msg.str());
  }
  const std::size_t a = chart.index_of(anchor);
  const std::size_t n = chart.points.size();

  std::vector<std::string> punctured;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (i != a) {
      punctured.push_back(chart.points[i]);
      keep.push_back(i);
    }

  SquareMatrix rho(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      const double pb = chart.gp(keep[i], keep[j]) - chart.gp(a, keep[i]) -
                        chart.gp(a, keep[j]);
      rho(i, j) = rho(j, i) = std::exp(-epsilon * pb);
    }
  return detail::metrize_pre_metric(VisualKind::Hamenstadt, epsilon,
                                    std::move(punctured), std::move(rho), anchor);
}

/// Options for quadruple/triple scans. Beyond the exhaustive threshold the
/// scan switches to seeded uniform sampling so the cost stays bounded and
/// the result reproducible.
struct ScanOptions {
  std::size_t exhaustive_threshold = 40;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
  bool force_exhaustive = false;

  bool exhaustive_for(std::size_t n) const {
    return force_exhaustive || n <= exhaustive_threshold;
  }
};

/// Empirical distortion of a correspondence: cross-ratio pairs (t, t') over
/// quadruples with their least nondecreasing dominating envelope, and the
/// analogous quasisymmetric ratio profile over triples.
struct DistortionProfile {
  std::vector<std::pair<double, double>> theta_envelope;  // quasimobius (t -> t')
  std::vector<std::pair<double, double>> eta_envelope;    // quasisymmetric
  std::size_t quadruples = 0;
  std::size_t triples = 0;
  std::size_t skipped_degenerate = 0;
};

namespace detail {

inline std::vector<std::pair<double, double>> monotone_envelope(
    std::vector<std::pair<double, double>>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::pair<double, double>> env;
  double running = -std::numeric_limits<double>::infinity();
  for (const auto& [t, tp] : pairs) {
    if (tp > running) {
      running = tp;
      if (!env.empty() && env.back().first == t)
        env.back().second = running;
      else
        env.emplace_back(t, running);
    }
  }
  return env;
}

template <typename Visit>
inline void scan_quadruples(std::size_t n, const ScanOptions& opts, Visit&& visit) {
  if (n < 4) return;
  if (opts.exhaustive_for(n)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
            visit(i, j, k, l);
          }
    return;
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    const std::size_t i = pick(rng), j = pick(rng), k = pick(rng), l = pick(rng);
    if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
    visit(i, j, k, l);
  }
}

template <typename Visit>
inline void scan_triples(std::size_t n, const ScanOptions& opts, Visit&& visit) {
  if (n < 3) return;
  if (opts.exhaustive_for(n)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (i == j || i == k || j == k) continue;
          visit(i, j, k);
        }
    return;
  }
  std::mt19937_64 rng(opts.seed + 1);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
    if (i == j || i == k || j == k) continue;
    visit(i, j, k);
  }
}

}  // namespace detail

/// Core distortion scan over two aligned distance matrices. Quadruples with
/// a vanishing denominator on either side are skipped and counted.
inline DistortionProfile quasimobius_distortion(const SquareMatrix& src,
                                                const SquareMatrix& dst,
                                                const ScanOptions& opts = {}) {
  if (src.size() != dst.size())
    fail(ErrorKind::Input, "correspondence must align equally many points");
  const std::size_t n = src.size();
  if (n < 4) fail(ErrorKind::Input, "distortion scan needs at least four points");

  DistortionProfile out;
  std::vector<std::pair<double, double>> qm, qs;
  detail::scan_quadruples(n, opts, [&](std::size_t x, std::size_t y, std::size_t z,
                                       std::size_t w) {
    const double den_s = src(x, y) * src(z, w);
    const double den_d = dst(x, y) * dst(z, w);
    if (den_s == 0.0 || den_d == 0.0) {
      ++out.skipped_degenerate;
      return;
    }
    qm.emplace_back(src(x, z) * src(y, w) / den_s, dst(x, z) * dst(y, w) / den_d);
    ++out.quadruples;
  });
  detail::scan_triples(n, opts, [&](std::size_t x, std::size_t y, std::size_t z) {
    if (src(x, z) == 0.0 || dst(x, z) == 0.0) {
      ++out.skipped_degenerate;
      return;
    }
    qs.emplace_back(src(x, y) / src(x, z), dst(x, y) / dst(x, z));
    ++out.triples;
  });
  out.theta_envelope = detail::monotone_envelope(qm);
  out.eta_envelope = detail::monotone_envelope(qs);
  return out;
}

/// Convenience overload for two spaces under an explicit label
/// correspondence (src label -> dst label), which must be a bijection.
inline DistortionProfile quasimobius_distortion(
    const FiniteMetricSpace& src, const FiniteMetricSpace& dst,
    const std::vector<std::pair<std::string, std::string>>& correspondence,
    const ScanOptions& opts = {}) {
  if (correspondence.size() != src.size() || src.size() != dst.size())
    fail(ErrorKind::Input, "correspondence must be a bijection of the two label sets");
  const std::size_t n = correspondence.size();
  SquareMatrix a(n), b(n);
  std::vector<std::size_t> si(n), di(n);
  for (std::size_t i = 0; i < n; ++i) {
    si[i] = src.index_of(correspondence[i].first);
    di[i] = dst.index_of(correspondence[i].second);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = src.dist(si[i], si[j]);
      b(i, j) = dst.dist(di[i], di[j]);
    }
  return quasimobius_distortion(a, b, opts);
}

/// Certificate that the identity between the Bourdon metric and the
/// Hamenstadt metric on the punctured chart distorts cross-ratios by at most
///   t' <= 4 exp(40 eps' delta) 4^(eps'/eps) t^(eps'/eps).
/// The exponential factor is taken with the conservative positive sign; the
/// as-written constant 4 exp(-40 eps' delta) 4^(eps'/eps) is also checked
/// and its failures reported separately. The two coincide when delta = 0.
struct ComparabilityCertificate {
  bool pass = false;
  double epsilon = 0.0;        // Bourdon
  double epsilon_prime = 0.0;  // Hamenstadt
  double delta = 0.0;
  double exponent = 0.0;                // eps'/eps
  double constant_conservative = 0.0;   // 4 e^{+40 eps' delta} 4^{eps'/eps}
  double constant_literal = 0.0;        // 4 e^{-40 eps' delta} 4^{eps'/eps}
  std::size_t quadruples = 0;
  std::size_t violations_conservative = 0;
  std::size_t violations_literal = 0;
  std::size_t skipped_degenerate = 0;
  double max_slack_ratio = 0.0;  // max t' / (C_conservative * t^exponent)
  std::array<std::string, 4> witness;
};

inline ComparabilityCertificate quasimobius_certificate(const BoundaryChart& chart,
                                                        const std::string& anchor,
                                                        double epsilon,
                                                        double epsilon_prime,
                                                        const ScanOptions& opts = {}) {
  const VisualMetric bourdon = bourdon_metric(chart, epsilon);
  const VisualMetric hamenstadt = hamenstadt_metric(chart, anchor, epsilon_prime);

  ComparabilityCertificate cert;
  cert.epsilon = epsilon;
  cert.epsilon_prime = epsilon_prime;
  cert.delta = chart.delta;
  cert.exponent = epsilon_prime / epsilon;
  cert.constant_conservative =
      4.0 * std::exp(40.0 * epsilon_prime * chart.delta) * std::pow(4.0, cert.exponent);
  cert.constant_literal =
      4.0 * std::exp(-40.0 * epsilon_prime * chart.delta) * std::pow(4.0, cert.exponent);

  // Bourdon metric restricted to the punctured proxy set, aligned with sigma.
  const std::size_t m = hamenstadt.points.size();
  SquareMatrix d(m), sigma(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bi = bourdon.index_of(hamenstadt.points[i]);
    for (std::size_t j = 0; j < m; ++j) {
      d(i, j) = bourdon.metric(bi, bourdon.index_of(hamenstadt.points[j]));
      sigma(i, j) = hamenstadt.metric(i, j);
    }
  }

  detail::scan_quadruples(m, opts, [&](std::size_t x, std::size_t y, std::size_t z,
                                       std::size_t w) {
    const double den_t = d(x, y) * d(z, w);
    const double den_s = sigma(x, y) * sigma(z, w);
    if (den_t == 0.0 || den_s == 0.0) {
      ++cert.skipped_degenerate;
      return;
    }
    const double t = d(x, z) * d(y, w) / den_t;
    const double tp = sigma(x, z) * sigma(y, w) / den_s;
    ++cert.quadruples;
    const double body = std::pow(t, cert.exponent);
    const double slack = tp / (cert.constant_conservative * body);
    if (slack > cert.max_slack_ratio) {
      cert.max_slack_ratio = slack;
      cert.witness = {hamenstadt.points[x], hamenstadt.points[y],
                      hamenstadt.points[z], hamenstadt.points[w]};
    }
    if (tp > cert.constant_conservative * body) ++cert.violations_conservative;
    if (tp > cert.constant_literal * body) ++cert.violations_literal;
  });
  cert.pass = cert.violations_conservative == 0;
  return cert;
}

}  // namespace hypermet
