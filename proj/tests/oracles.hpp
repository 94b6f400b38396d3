#pragma once

// Deliberately naive reference implementations the tests cross-check the
// library against: a BFS flood fill for component counts, long-double
// accumulation for grid means, and a plain midpoint layer-cake sum.

#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "qprob/field.hpp"
#include "qprob/grid.hpp"
#include "qprob/measure.hpp"

namespace oracle {

// Flood-fill labeling. Returns one label per cell, -1 outside the mask.
inline std::vector<int32_t> bfs_labels(const qprob::RegionMask& mask,
                                       qprob::Adjacency adjacency) {
  const int32_t n = mask.domain().resolution();
  std::vector<int32_t> labels(size_t(n) * size_t(n), -1);
  int32_t next = 0;
  for (int32_t sy = 0; sy < n; ++sy) {
    for (int32_t sx = 0; sx < n; ++sx) {
      if (!mask.test(sx, sy) || labels[size_t(sy) * n + sx] != -1) continue;
      std::queue<std::pair<int32_t, int32_t>> frontier;
      frontier.push({sx, sy});
      labels[size_t(sy) * n + sx] = next;
      while (!frontier.empty()) {
        const auto [cx, cy] = frontier.front();
        frontier.pop();
        for (int32_t dy = -1; dy <= 1; ++dy) {
          for (int32_t dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (adjacency == qprob::Adjacency::Four && dx != 0 && dy != 0) {
              continue;
            }
            const int32_t x = cx + dx;
            const int32_t y = cy + dy;
            if (x < 0 || y < 0 || x >= n || y >= n) continue;
            if (!mask.test(x, y) || labels[size_t(y) * n + x] != -1) continue;
            labels[size_t(y) * n + x] = next;
            frontier.push({x, y});
          }
        }
      }
      ++next;
    }
  }
  return labels;
}

inline int32_t bfs_component_count(const qprob::RegionMask& mask,
                                   qprob::Adjacency adjacency) {
  const std::vector<int32_t> labels = bfs_labels(mask, adjacency);
  int32_t count = 0;
  for (const int32_t label : labels) count = std::max(count, label + 1);
  return count;
}

// True when the two labelings induce the same partition of the mask cells.
inline bool same_partition(const std::vector<int32_t>& a,
                           const std::vector<int32_t>& b) {
  if (a.size() != b.size()) return false;
  std::vector<int32_t> a_to_b;
  std::vector<int32_t> b_to_a;
  for (size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == -1) != (b[i] == -1)) return false;
    if (a[i] == -1) continue;
    if (size_t(a[i]) >= a_to_b.size()) a_to_b.resize(size_t(a[i]) + 1, -1);
    if (size_t(b[i]) >= b_to_a.size()) b_to_a.resize(size_t(b[i]) + 1, -1);
    if (a_to_b[size_t(a[i])] == -1) a_to_b[size_t(a[i])] = b[i];
    if (b_to_a[size_t(b[i])] == -1) b_to_a[size_t(b[i])] = a[i];
    if (a_to_b[size_t(a[i])] != b[i] || b_to_a[size_t(b[i])] != a[i]) {
      return false;
    }
  }
  return true;
}

// Mean of the samples, accumulated in long double.
inline double midpoint_mean(const qprob::ScalarField& field) {
  long double total = 0.0L;
  for (const double v : field.values()) total += v;
  return double(total / (long double)(field.values().size()));
}

// Midpoint layer-cake sum with a fixed slice count.
inline double layer_cake(const qprob::QuasiMeasure& measure,
                         const qprob::ScalarField& field, int slices) {
  const double lo = field.min();
  const double hi = field.max();
  if (lo == hi) return lo;
  const double dt = (hi - lo) / slices;
  long double total = lo;
  for (int k = 0; k < slices; ++k) {
    const double t = lo + (double(k) + 0.5) * dt;
    total += (long double)(measure.measure_of_superlevel(field, t)) * dt;
  }
  return double(total);
}

}  // namespace oracle
