#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qprob/error.hpp"

namespace qprob {

/// Discretization of the square [-1,1]^2 into n x n cells, n odd.
///
/// Cell (ix, iy) is sampled at its center ((2*ix+1-n)/n, (2*iy+1-n)/n), so
/// the middle cell ((n-1)/2, (n-1)/2) samples the origin exactly. The cells
/// with ix or iy in {0, n-1} form the boundary ring.
class GridDomain {
 public:
  static constexpr int32_t kMinResolution = 3;
  static constexpr int32_t kMaxResolution = 8192;

  explicit GridDomain(int32_t resolution);

  int32_t resolution() const noexcept { return n_; }
  int64_t cell_count() const noexcept { return int64_t(n_) * n_; }
  double cell_size() const noexcept { return 2.0 / n_; }

  double cell_center_x(int32_t ix) const noexcept {
    return (2.0 * ix + 1.0 - n_) / n_;
  }
  double cell_center_y(int32_t iy) const noexcept {
    return (2.0 * iy + 1.0 - n_) / n_;
  }

  /// Index of the cell whose center is the origin, along either axis.
  int32_t center_index() const noexcept { return (n_ - 1) / 2; }

  int64_t cell_index(int32_t ix, int32_t iy) const noexcept {
    return int64_t(iy) * n_ + ix;
  }

  bool is_ring_cell(int32_t ix, int32_t iy) const noexcept {
    return ix == 0 || iy == 0 || ix == n_ - 1 || iy == n_ - 1;
  }
  int64_t ring_cell_count() const noexcept { return 4 * int64_t(n_) - 4; }

  friend bool operator==(const GridDomain&, const GridDomain&) = default;

 private:
  int32_t n_;
};

GridDomain make_domain(int32_t resolution);

/// Subset of the cells of a GridDomain, stored as packed bits in row-major
/// order.
class RegionMask {
 public:
  explicit RegionMask(const GridDomain& domain, bool fill = false);

  const GridDomain& domain() const noexcept { return domain_; }

  bool test(int64_t cell) const noexcept {
    return (words_[size_t(cell >> 6)] >> (cell & 63)) & 1u;
  }
  bool test(int32_t ix, int32_t iy) const noexcept {
    return test(domain_.cell_index(ix, iy));
  }
  void set(int64_t cell, bool value) noexcept;
  void set(int32_t ix, int32_t iy, bool value) noexcept {
    set(domain_.cell_index(ix, iy), value);
  }

  int64_t popcount() const noexcept;
  bool none() const noexcept;
  bool all() const noexcept;
  bool any() const noexcept { return !none(); }

  RegionMask complement() const;
  RegionMask operator&(const RegionMask& other) const;
  RegionMask operator|(const RegionMask& other) const;

  bool operator==(const RegionMask& other) const;
  bool intersects(const RegionMask& other) const;
  bool is_subset_of(const RegionMask& other) const;

 private:
  GridDomain domain_;
  std::vector<uint64_t> words_;

  void clear_tail() noexcept;
  void require_same_domain(const RegionMask& other) const;
};

enum class Adjacency { Four, Eight };

struct ComponentInfo {
  int64_t cell_count = 0;
  bool contains_marker_cell = false;
  bool touches_boundary_ring = false;
  bool contains_full_boundary_ring = false;
};

/// Partition of a mask into connected components. `labels` holds one entry
/// per grid cell: the component id in [0, count) inside the mask, kNoLabel
/// outside.
struct ComponentLabeling {
  static constexpr int32_t kNoLabel = -1;
  int32_t count = 0;
  std::vector<int32_t> labels;
  std::vector<ComponentInfo> components;
};

ComponentLabeling label_components(const RegionMask& mask, Adjacency adjacency);

/// Mask of the cells with ix or iy in {0, n-1}. Its popcount is 4n-4.
RegionMask boundary_ring(const GridDomain& domain);

/// True when the mask is Eight-connected and its complement is
/// Four-connected (an empty complement counts as connected).
bool is_solid(const RegionMask& mask);

/// Run-length text form: one line per row, space-separated `count:bit`
/// pairs whose counts sum to the resolution.
std::string mask_to_rle(const RegionMask& mask);
RegionMask mask_from_rle(const GridDomain& domain, const std::string& text);

/// Binary PGM (P5) image, 255 for cells in the mask, row iy=0 first.
std::string mask_to_pgm(const RegionMask& mask);

}  // namespace qprob
