#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "hypermet/errors.hpp"
#include "hypermet/matrix.hpp"
#include "hypermet/metric_space.hpp"

namespace hypermet {

/// Gromov products (x|y)_w = [d(x,w) + d(y,w) - d(x,y)] / 2 of every pair
/// with respect to a base point w. Symmetric; (x|x)_w = d(x,w); every entry
/// lies in [0, min(d(x,w), d(y,w))].
struct GromovProductMatrix {
  std::vector<std::string> labels;
  std::size_t base = 0;
  SquareMatrix products;

  const std::string& base_label() const { return labels[base]; }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return i;
    fail(ErrorKind::Label, "unknown label '" + label + "'");
  }
};

inline GromovProductMatrix gromov_products(const FiniteMetricSpace& space,
                                           const std::string& w) {
  const std::size_t wi = space.index_of(w);
  const std::size_t n = space.size();
  GromovProductMatrix out;
  out.labels = space.labels();
  out.base = wi;
  out.products = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      out.products(i, j) = out.products(j, i) =
          0.5 * (space.dist(i, wi) + space.dist(j, wi) - space.dist(i, j));
  return out;
}

/// The four-point hyperbolicity constant together with the quadruple
/// (x, y, z, w) attaining it; re-evaluating the witness reproduces delta
/// exactly.
struct HyperbolicityCertificate {
  double delta = 0.0;
  std::array<std::string, 4> witness;  // x, y, z, base w
  bool sup_over_base = false;

  /// Recomputes min{(x|z)_w, (z|y)_w} - (x|y)_w at the stored witness.
  double evaluate(const FiniteMetricSpace& s) const {
    const std::size_t x = s.index_of(witness[0]);
    const std::size_t y = s.index_of(witness[1]);
    const std::size_t z = s.index_of(witness[2]);
    const std::size_t w = s.index_of(witness[3]);
    const auto gp = [&](std::size_t i, std::size_t j) {
      return 0.5 * (s.dist(i, w) + s.dist(j, w) - s.dist(i, j));
    };
    return std::min(gp(x, z), gp(z, y)) - gp(x, y);
  }
};

namespace detail {

/// Index order sorted by label; witness ties break lexicographically.
inline std::vector<std::size_t> label_order(const std::vector<std::string>& labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  return order;
}

}  // namespace detail

/// Least delta such that (x|y)_w >= min{(x|z)_w, (z|y)_w} - delta over all
/// triples, for a fixed base w (O(n^3)), or maximized over every base when
/// none is given (O(n^4)). Degenerate triples make delta >= 0 automatically;
/// trees give exactly 0.
inline HyperbolicityCertificate delta_four_point(
    const FiniteMetricSpace& space, std::optional<std::string> base = std::nullopt) {
  const std::size_t n = space.size();
  const auto order = detail::label_order(space.labels());

  std::vector<std::size_t> bases;
  if (base) {
    bases.push_back(space.index_of(*base));
  } else {
    bases.assign(order.begin(), order.end());
  }

  HyperbolicityCertificate cert;
  cert.sup_over_base = !base;
  cert.delta = -std::numeric_limits<double>::infinity();
  for (std::size_t w : bases) {
    SquareMatrix gp(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        gp(i, j) = gp(j, i) =
            0.5 * (space.dist(i, w) + space.dist(j, w) - space.dist(i, j));
    for (std::size_t x : order)
      for (std::size_t y : order)
        for (std::size_t z : order) {
          const double v = std::min(gp(x, z), gp(z, y)) - gp(x, y);
          if (v > cert.delta) {
            cert.delta = v;
            cert.witness = {space.labels()[x], space.labels()[y], space.labels()[z],
                            space.labels()[w]};
          }
        }
  }
  if (n == 0) {
    cert.delta = 0.0;
    cert.witness = {"", "", "", ""};
  }
  return cert;
}

/// Gromov products rebased at a boundary proxy: the chart stores
///   (x|y)_{w,xi} = (x|y)_w - (xi|x)_w - (xi|y)_w
/// entrywise, an identity, not an estimate. The chart only approximates the
/// Busemann-based product (x|y)_b up to 10*delta, and triples of its values
/// are 22*delta-triples; that slack is the documented proxy error.
struct BusemannChart {
  std::vector<std::string> labels;
  std::size_t base = 0;    // w
  std::size_t anchor = 0;  // finite proxy for the boundary point
  SquareMatrix products_b;

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return i;
    fail(ErrorKind::Label, "unknown label '" + label + "'");
  }
};

inline BusemannChart busemann_products(const GromovProductMatrix& products,
                                       const std::string& anchor) {
  const std::size_t a = products.index_of(anchor);
  if (a == products.base)
    fail(ErrorKind::Configuration, "anchor must differ from the base point");
  const std::size_t n = products.labels.size();
  BusemannChart out;
  out.labels = products.labels;
  out.base = products.base;
  out.anchor = a;
  out.products_b = SquareMatrix(n);
  // One evaluation per unordered pair keeps the matrix bitwise symmetric.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      out.products_b(i, j) = out.products_b(j, i) =
          products.products(i, j) - products.products(a, i) - products.products(a, j);
  return out;
}

struct RoughStarlikeResult {
  double k = 0.0;
  std::string witness;          // point farthest from every ray
  std::size_t ray_node_count = 0;
};

/// Empirical rough-starlikeness constant: reconstructs the graph whose edges
/// are the pairs not shortcut by any intermediate point (within the relative
/// tolerance), takes as rays the union of all shortest paths from w to each
/// target, and reports the largest distance from any point to that union.
inline RoughStarlikeResult rough_starlike_constant(
    const FiniteMetricSpace& space, const std::string& w,
    const std::vector<std::string>& ray_targets, double tol_rel = kRelTol) {
  const std::size_t n = space.size();
  const std::size_t wi = space.index_of(w);

  // Edges: pairs realizing their distance with no chain through a third point.
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      bool direct = true;
      for (std::size_t z = 0; z < n && direct; ++z) {
        if (z == u || z == v) continue;
        if (space.dist(u, z) + space.dist(z, v) <=
            space.dist(u, v) * (1.0 + tol_rel))
          direct = false;
      }
      if (direct) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
    }

  auto graph_dist = [&](std::size_t src) {
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<char> done(n, 0);
    dist[src] = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
      std::size_t u = n;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && dist[i] < best) { best = dist[i]; u = i; }
      if (u == n) break;
      done[u] = 1;
      for (std::size_t v : adj[u]) {
        const double alt = dist[u] + space.dist(u, v);
        if (alt < dist[v]) dist[v] = alt;
      }
    }
    return dist;
  };

  const auto from_w = graph_dist(wi);

  std::vector<char> on_ray(n, 0);
  for (const auto& t : ray_targets) {
    const std::size_t ti = space.index_of(t);
    if (!std::isfinite(from_w[ti]))
      fail(ErrorKind::Connectivity, "ray target '" + t + "' unreachable from base");
    const auto from_t = graph_dist(ti);
    // v lies on some shortest path from w to t iff the two legs add up.
    for (std::size_t v = 0; v < n; ++v)
      if (std::isfinite(from_t[v]) &&
          from_w[v] + from_t[v] <= from_w[ti] * (1.0 + tol_rel) + kAbsTol)
        on_ray[v] = 1;
  }

  RoughStarlikeResult out;
  const auto order = detail::label_order(space.labels());
  for (std::size_t v = 0; v < n; ++v) out.ray_node_count += on_ray[v];
  for (std::size_t x : order) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n; ++r)
      if (on_ray[r]) d = std::min(d, space.dist(x, r));
    if (d > out.k) {
      out.k = d;
      out.witness = space.labels()[x];
    }
  }
  if (out.witness.empty() && n > 0) out.witness = space.labels()[order[0]];
  return out;
}

}  // namespace hypermet
