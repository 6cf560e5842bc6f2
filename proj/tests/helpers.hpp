// Shared fixtures and independent oracles for the test suites. Everything in
// here recomputes results from first principles (enumeration, closed forms)
// and must stay independent of the library code paths it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "hypermet/matrix.hpp"
#include "hypermet/metric_space.hpp"

namespace testutil {

using hypermet::FiniteMetricSpace;
using hypermet::SquareMatrix;

inline std::vector<std::string> make_labels(std::size_t n, const std::string& prefix = "p") {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return labels;
}

inline std::vector<std::vector<double>> random_planar_cloud(std::size_t n,
                                                            std::mt19937_64& rng,
                                                            double box = 10.0) {
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<std::vector<double>> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

inline FiniteMetricSpace euclidean_space(const std::vector<std::vector<double>>& pts,
                                         const std::string& prefix = "p") {
  const std::size_t n = pts.size();
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        const double d = pts[i][k] - pts[j][k];
        s += d * d;
      }
      m(i, j) = m(j, i) = std::sqrt(s);
    }
  return FiniteMetricSpace(make_labels(n, prefix), m, pts);
}

/// Random metric space: Euclidean distances of a random planar cloud.
inline FiniteMetricSpace random_metric_space(std::size_t n, std::mt19937_64& rng) {
  return euclidean_space(random_planar_cloud(n, rng));
}

/// A tree on n vertices: each vertex i >= 1 hangs off a uniformly random
/// earlier vertex. Edge weights are dyadic (k/4 with k in 1..8) so distance
/// arithmetic in doubles is exact.
struct TreeFixture {
  std::vector<std::size_t> parent;      // parent[i] for i >= 1
  std::vector<double> parent_edge;      // weight of edge (i, parent[i])
  SquareMatrix dist;

  std::size_t size() const { return parent.size(); }

  /// Vertex path from a to b through the tree.
  std::vector<std::size_t> path(std::size_t a, std::size_t b) const {
    auto chain_to_root = [&](std::size_t v) {
      std::vector<std::size_t> c{v};
      while (v != 0) {
        v = parent[v];
        c.push_back(v);
      }
      return c;
    };
    auto ca = chain_to_root(a), cb = chain_to_root(b);
    // Strip the common root segment.
    while (ca.size() > 1 && cb.size() > 1 && ca[ca.size() - 2] == cb[cb.size() - 2]) {
      ca.pop_back();
      cb.pop_back();
    }
    std::vector<std::size_t> out(ca.begin(), ca.end());
    for (auto it = cb.rbegin() + 1; it != cb.rend(); ++it) out.push_back(*it);
    return out;
  }
};

inline TreeFixture random_tree(std::size_t n, std::mt19937_64& rng, bool unit_weights = false) {
  TreeFixture t;
  t.parent.assign(n, 0);
  t.parent_edge.assign(n, 0.0);
  std::uniform_int_distribution<int> w(1, 8);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> p(0, i - 1);
    t.parent[i] = p(rng);
    t.parent_edge[i] = unit_weights ? 1.0 : w(rng) / 4.0;
  }
  t.dist = SquareMatrix(n);
  // Distances via each vertex's chain to the root; dyadic sums are exact.
  std::vector<double> depth(n, 0.0);
  std::vector<std::size_t> hops(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    depth[i] = depth[t.parent[i]] + t.parent_edge[i];
    hops[i] = hops[t.parent[i]] + 1;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t a = i, b = j;
      while (a != b) {
        if (hops[a] > hops[b]) a = t.parent[a];
        else if (hops[b] > hops[a]) b = t.parent[b];
        else { a = t.parent[a]; b = t.parent[b]; }
      }
      t.dist(i, j) = t.dist(j, i) = depth[i] + depth[j] - 2.0 * depth[a];
    }
  return t;
}

inline FiniteMetricSpace tree_space(const TreeFixture& t, const std::string& prefix = "v") {
  return FiniteMetricSpace(make_labels(t.size(), prefix), t.dist);
}

/// Complete binary tree of the given depth with unit edges. Vertex 0 is the
/// root; leaves are the last 2^depth vertices.
struct BinaryTree {
  std::size_t depth = 0;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> leaves;
  SquareMatrix dist;
  std::vector<std::string> labels;
};

inline BinaryTree binary_tree(std::size_t depth) {
  BinaryTree t;
  t.depth = depth;
  const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
  t.parent.assign(n, 0);
  for (std::size_t i = 1; i < n; ++i) t.parent[i] = (i - 1) / 2;
  for (std::size_t i = (std::size_t{1} << depth) - 1; i < n; ++i) t.leaves.push_back(i);
  std::vector<std::size_t> level(n, 0);
  for (std::size_t i = 1; i < n; ++i) level[i] = level[t.parent[i]] + 1;
  t.dist = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t a = i, b = j;
      while (a != b) {
        if (level[a] > level[b]) a = t.parent[a];
        else if (level[b] > level[a]) b = t.parent[b];
        else { a = t.parent[a]; b = t.parent[b]; }
      }
      t.dist(i, j) = t.dist(j, i) =
          static_cast<double>(level[i] + level[j] - 2 * level[a]);
    }
  t.labels = make_labels(n, "v");
  return t;
}

/// Brute-force chain metrization oracle: minimum over all simple chains from
/// min(i,j) to max(i,j) of the left-to-right sum of quasidistances.
inline double chain_oracle(const SquareMatrix& w, std::size_t from, std::size_t to) {
  if (from == to) return 0.0;
  if (from > to) std::swap(from, to);
  const std::size_t n = w.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> used(n, 0);
  used[from] = used[to] = 1;
  auto dfs = [&](auto&& self, std::size_t v, double sum) -> void {
    const double direct = sum + w(v, to);
    if (direct < best) best = direct;
    for (std::size_t u = 0; u < n; ++u) {
      if (used[u]) continue;
      used[u] = 1;
      self(self, u, sum + w(v, u));
      used[u] = 0;
    }
  };
  dfs(dfs, from, 0.0);
  return best;
}

/// Exhaustive four-point oracle: max over all bases (or one fixed base) and
/// all ordered triples of min{(x|z)_w, (z|y)_w} - (x|y)_w, straight from the
/// distance matrix.
inline double delta_oracle(const FiniteMetricSpace& s, long fixed_base = -1) {
  const std::size_t n = s.size();
  double delta = -std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < n; ++w) {
    if (fixed_base >= 0 && w != static_cast<std::size_t>(fixed_base)) continue;
    auto gp = [&](std::size_t i, std::size_t j) {
      return 0.5 * (s.dist(i, w) + s.dist(j, w) - s.dist(i, j));
    };
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          const double v = std::min(gp(x, z), gp(z, y)) - gp(x, y);
          if (v > delta) delta = v;
        }
  }
  return delta;
}

}  // namespace testutil
