#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "maif/grid_map.hpp"

namespace maif {

// Space-time reservations of committed paths: vertex (cell, t) entries plus
// direction-agnostic edge entries, with the final cell held through the
// horizon.
class Reservation {
 public:
  Reservation(int width, int height, int horizon)
      : width_(width), height_(height), horizon_(horizon) {}

  void reserve_path(const std::vector<Cell>& path);

  bool vertex_reserved(Cell c, int t) const {
    return vertices_.count(vertex_key(c, t)) != 0;
  }
  // Transition between a and b arriving at time t (either direction).
  bool edge_reserved(Cell a, Cell b, int t) const {
    return edges_.count(edge_key(a, b, t)) != 0;
  }
  // Latest time the cell is vertex-reserved; -1 if never.
  int last_vertex_time(Cell c) const {
    auto it = last_time_.find(cell_key(c));
    return it == last_time_.end() ? -1 : it->second;
  }
  int horizon() const { return horizon_; }

 private:
  int64_t cell_key(Cell c) const {
    return static_cast<int64_t>(c.y) * width_ + c.x;
  }
  int64_t vertex_key(Cell c, int t) const {
    return cell_key(c) * (horizon_ + 2) + t;
  }
  // Canonical undirected edge id: smaller endpoint index * 2 + axis bit.
  int64_t edge_key(Cell a, Cell b, int t) const {
    int64_t ka = cell_key(a), kb = cell_key(b);
    if (ka > kb) std::swap(ka, kb);
    const int axis = (a.x == b.x) ? 1 : 0;
    return (ka * 2 + axis) * (horizon_ + 2) + t;
  }

  int width_;
  int height_;
  int horizon_;
  std::unordered_set<int64_t> vertices_;
  std::unordered_set<int64_t> edges_;
  std::unordered_map<int64_t, int> last_time_;
};

}  // namespace maif
