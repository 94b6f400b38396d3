#include "qprob/grid.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace qprob {

GridDomain::GridDomain(int32_t resolution) : n_(resolution) {
  if (resolution < kMinResolution || resolution > kMaxResolution) {
    fail(ErrorCode::ResolutionOutOfRange,
         "resolution " + std::to_string(resolution) + " outside [" +
             std::to_string(kMinResolution) + ", " +
             std::to_string(kMaxResolution) + "]");
  }
  if (resolution % 2 == 0) {
    fail(ErrorCode::EvenResolution,
         "resolution " + std::to_string(resolution) +
             " is even; the marker cell needs an odd grid");
  }
}

GridDomain make_domain(int32_t resolution) { return GridDomain(resolution); }

RegionMask::RegionMask(const GridDomain& domain, bool fill)
    : domain_(domain),
      words_(size_t((domain.cell_count() + 63) / 64), fill ? ~uint64_t(0) : 0) {
  if (fill) clear_tail();
}

void RegionMask::set(int64_t cell, bool value) noexcept {
  const uint64_t bit = uint64_t(1) << (cell & 63);
  if (value) {
    words_[size_t(cell >> 6)] |= bit;
  } else {
    words_[size_t(cell >> 6)] &= ~bit;
  }
}

void RegionMask::clear_tail() noexcept {
  const int64_t cells = domain_.cell_count();
  const int tail = int(cells & 63);
  if (tail != 0) {
    words_.back() &= (uint64_t(1) << tail) - 1;
  }
}

int64_t RegionMask::popcount() const noexcept {
  int64_t total = 0;
  for (uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool RegionMask::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(),
                     [](uint64_t w) { return w == 0; });
}

bool RegionMask::all() const noexcept {
  return popcount() == domain_.cell_count();
}

RegionMask RegionMask::complement() const {
  RegionMask out(domain_);
  for (size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  out.clear_tail();
  return out;
}

void RegionMask::require_same_domain(const RegionMask& other) const {
  if (!(domain_ == other.domain_)) {
    fail(ErrorCode::InvalidArgument, "masks live on different grids");
  }
}

RegionMask RegionMask::operator&(const RegionMask& other) const {
  require_same_domain(other);
  RegionMask out(domain_);
  for (size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] = words_[i] & other.words_[i];
  }
  return out;
}

RegionMask RegionMask::operator|(const RegionMask& other) const {
  require_same_domain(other);
  RegionMask out(domain_);
  for (size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] = words_[i] | other.words_[i];
  }
  return out;
}

bool RegionMask::operator==(const RegionMask& other) const {
  return domain_ == other.domain_ && words_ == other.words_;
}

bool RegionMask::intersects(const RegionMask& other) const {
  require_same_domain(other);
  for (size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

bool RegionMask::is_subset_of(const RegionMask& other) const {
  require_same_domain(other);
  for (size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

namespace {

struct UnionFind {
  std::vector<int32_t> parent;

  int32_t make() {
    parent.push_back(int32_t(parent.size()));
    return parent.back();
  }
  int32_t find(int32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  int32_t unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return a;
  }
};

}  // namespace

ComponentLabeling label_components(const RegionMask& mask, Adjacency adjacency) {
  const GridDomain& dom = mask.domain();
  const int32_t n = dom.resolution();
  const bool eight = adjacency == Adjacency::Eight;

  ComponentLabeling out;
  out.labels.assign(size_t(dom.cell_count()), ComponentLabeling::kNoLabel);

  UnionFind uf;
  for (int32_t iy = 0; iy < n; ++iy) {
    for (int32_t ix = 0; ix < n; ++ix) {
      if (!mask.test(ix, iy)) continue;
      int32_t label = ComponentLabeling::kNoLabel;
      auto visit = [&](int32_t jx, int32_t jy) {
        if (jx < 0 || jy < 0 || jx >= n || jy >= n) return;
        const int32_t other = out.labels[size_t(dom.cell_index(jx, jy))];
        if (other == ComponentLabeling::kNoLabel) return;
        label = (label == ComponentLabeling::kNoLabel) ? uf.find(other)
                                                       : uf.unite(label, other);
      };
      visit(ix - 1, iy);
      visit(ix, iy - 1);
      if (eight) {
        visit(ix - 1, iy - 1);
        visit(ix + 1, iy - 1);
      }
      if (label == ComponentLabeling::kNoLabel) label = uf.make();
      out.labels[size_t(dom.cell_index(ix, iy))] = label;
    }
  }

  std::vector<int32_t> compact(uf.parent.size(), ComponentLabeling::kNoLabel);
  std::vector<int64_t> ring_cells;
  const int32_t mid = dom.center_index();
  for (int32_t iy = 0; iy < n; ++iy) {
    for (int32_t ix = 0; ix < n; ++ix) {
      int32_t& label = out.labels[size_t(dom.cell_index(ix, iy))];
      if (label == ComponentLabeling::kNoLabel) continue;
      const int32_t root = uf.find(label);
      if (compact[size_t(root)] == ComponentLabeling::kNoLabel) {
        compact[size_t(root)] = out.count++;
        out.components.emplace_back();
        ring_cells.push_back(0);
      }
      label = compact[size_t(root)];
      ComponentInfo& info = out.components[size_t(label)];
      info.cell_count += 1;
      if (ix == mid && iy == mid) info.contains_marker_cell = true;
      if (dom.is_ring_cell(ix, iy)) {
        info.touches_boundary_ring = true;
        ring_cells[size_t(label)] += 1;
      }
    }
  }
  for (int32_t c = 0; c < out.count; ++c) {
    out.components[size_t(c)].contains_full_boundary_ring =
        ring_cells[size_t(c)] == dom.ring_cell_count();
  }
  return out;
}

RegionMask boundary_ring(const GridDomain& domain) {
  RegionMask out(domain);
  const int32_t n = domain.resolution();
  for (int32_t i = 0; i < n; ++i) {
    out.set(i, 0, true);
    out.set(i, n - 1, true);
    out.set(0, i, true);
    out.set(n - 1, i, true);
  }
  return out;
}

bool is_solid(const RegionMask& mask) {
  if (mask.none()) fail(ErrorCode::EmptyMask, "is_solid needs a nonempty mask");
  if (label_components(mask, Adjacency::Eight).count != 1) return false;
  const RegionMask outside = mask.complement();
  if (outside.none()) return true;
  return label_components(outside, Adjacency::Four).count == 1;
}

std::string mask_to_rle(const RegionMask& mask) {
  const int32_t n = mask.domain().resolution();
  std::string out;
  for (int32_t iy = 0; iy < n; ++iy) {
    int32_t run = 1;
    bool bit = mask.test(0, iy);
    for (int32_t ix = 1; ix < n; ++ix) {
      const bool next = mask.test(ix, iy);
      if (next == bit) {
        ++run;
        continue;
      }
      out += std::to_string(run) + (bit ? ":1 " : ":0 ");
      bit = next;
      run = 1;
    }
    out += std::to_string(run) + (bit ? ":1" : ":0");
    out += '\n';
  }
  return out;
}

RegionMask mask_from_rle(const GridDomain& domain, const std::string& text) {
  const int32_t n = domain.resolution();
  RegionMask out(domain);
  std::istringstream lines(text);
  std::string line;
  int32_t iy = 0;
  while (std::getline(lines, line)) {
    if (line.empty() && lines.eof()) break;
    if (iy >= n) fail(ErrorCode::BadFormat, "more rows than the grid has");
    std::istringstream tokens(line);
    std::string token;
    int32_t ix = 0;
    while (tokens >> token) {
      const size_t colon = token.find(':');
      if (colon == std::string::npos) {
        fail(ErrorCode::BadFormat, "expected count:bit, got '" + token + "'");
      }
      int32_t run = 0;
      try {
        run = std::stoi(token.substr(0, colon));
      } catch (const std::exception&) {
        fail(ErrorCode::BadFormat, "bad run length in '" + token + "'");
      }
      const std::string bit = token.substr(colon + 1);
      if (run <= 0 || (bit != "0" && bit != "1")) {
        fail(ErrorCode::BadFormat, "bad run '" + token + "'");
      }
      if (ix + run > n) {
        fail(ErrorCode::BadFormat,
             "row " + std::to_string(iy) + " longer than the grid");
      }
      if (bit == "1") {
        for (int32_t k = 0; k < run; ++k) out.set(ix + k, iy, true);
      }
      ix += run;
    }
    if (ix != n) {
      fail(ErrorCode::BadFormat,
           "row " + std::to_string(iy) + " sums to " + std::to_string(ix) +
               ", expected " + std::to_string(n));
    }
    ++iy;
  }
  if (iy != n) {
    fail(ErrorCode::BadFormat, "expected " + std::to_string(n) + " rows, got " +
                                   std::to_string(iy));
  }
  return out;
}

std::string mask_to_pgm(const RegionMask& mask) {
  const int32_t n = mask.domain().resolution();
  std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  out.reserve(out.size() + size_t(mask.domain().cell_count()));
  for (int32_t iy = 0; iy < n; ++iy) {
    for (int32_t ix = 0; ix < n; ++ix) {
      out += mask.test(ix, iy) ? char(255) : char(0);
    }
  }
  return out;
}

}  // namespace qprob
