#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace maif {

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Sentinel for unreachable cells in a distance field; large but safe to add
// small time offsets to without overflow.
inline constexpr int kDistUnreachable = 1 << 29;

struct GridMap {
  int width = 0;
  int height = 0;
  int corner_clear = 0;  // generation-time parameter, not serialized
  std::vector<uint8_t> obstacles;  // row-major, y * width + x

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
  }
  bool obstacle(Cell c) const {
    return obstacles[static_cast<size_t>(c.y) * width + c.x] != 0;
  }
  bool blocked(Cell c) const { return !in_bounds(c) || obstacle(c); }
  bool free_cell(Cell c) const { return in_bounds(c) && !obstacle(c); }
  int num_free() const;

  friend bool operator==(const GridMap&, const GridMap&) = default;
};

// Random map with obstacle-free corner_clear x corner_clear regions in the
// top-left and bottom-right corners; retries the obstacle draw until the two
// corners are connected.
GridMap generate_map(int width, int height, double obstacle_density,
                     int corner_clear, uint64_t seed);

// 4-neighbor BFS distances to `goal` over free cells; kDistUnreachable
// elsewhere.
std::vector<int> distance_field(const GridMap& map, Cell goal);

std::string encode_map(const GridMap& map);
GridMap decode_map(const std::string& text);
void save_map(const GridMap& map, const std::string& path);
GridMap load_map(const std::string& path);

}  // namespace maif
