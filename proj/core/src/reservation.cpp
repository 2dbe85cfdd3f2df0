#include "maif/reservation.hpp"

#include <algorithm>

namespace maif {

void Reservation::reserve_path(const std::vector<Cell>& path) {
  if (path.empty()) return;
  for (int t = 0; t <= horizon_; ++t) {
    const Cell c = path[std::min<size_t>(t, path.size() - 1)];
    vertices_.insert(vertex_key(c, t));
    auto [it, inserted] = last_time_.try_emplace(cell_key(c), t);
    if (!inserted) it->second = std::max(it->second, t);
    if (t > 0) {
      const Cell p = path[std::min<size_t>(t - 1, path.size() - 1)];
      if (!(p == c)) edges_.insert(edge_key(p, c, t));
    }
  }
}

}  // namespace maif
