#include "maif/grid_map.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "maif/errors.hpp"
#include "maif/rng.hpp"

namespace maif {

namespace {

constexpr int kGenerationRetries = 100;

bool in_corner(int x, int y, int w, int h, int c) {
  return (x < c && y < c) || (x >= w - c && y >= h - c);
}

bool corners_connected(const GridMap& map) {
  const Cell from{0, 0};
  const Cell to{map.width - 1, map.height - 1};
  if (!map.free_cell(from) || !map.free_cell(to)) return false;
  std::vector<uint8_t> seen(static_cast<size_t>(map.width) * map.height, 0);
  std::deque<Cell> queue{from};
  seen[static_cast<size_t>(from.y) * map.width + from.x] = 1;
  while (!queue.empty()) {
    Cell cur = queue.front();
    queue.pop_front();
    if (cur == to) return true;
    const Cell nbrs[4] = {{cur.x, cur.y - 1}, {cur.x, cur.y + 1},
                          {cur.x - 1, cur.y}, {cur.x + 1, cur.y}};
    for (const Cell& n : nbrs) {
      if (!map.free_cell(n)) continue;
      auto& mark = seen[static_cast<size_t>(n.y) * map.width + n.x];
      if (!mark) {
        mark = 1;
        queue.push_back(n);
      }
    }
  }
  return false;
}

}  // namespace

int GridMap::num_free() const {
  return static_cast<int>(std::count(obstacles.begin(), obstacles.end(), 0));
}

GridMap generate_map(int width, int height, double obstacle_density,
                     int corner_clear, uint64_t seed) {
  if (width < 2 || height < 2)
    throw InvalidInputError("map dimensions must be >= 2");
  if (!(obstacle_density >= 0.0 && obstacle_density < 1.0))
    throw InvalidInputError("obstacle density must lie in [0, 1)");
  if (corner_clear < 0 || corner_clear > std::min(width, height))
    throw InvalidInputError("corner region does not fit inside the map");

  GridMap map;
  map.width = width;
  map.height = height;
  map.corner_clear = corner_clear;
  Rng rng(seed);
  for (int attempt = 0; attempt < kGenerationRetries; ++attempt) {
    map.obstacles.assign(static_cast<size_t>(width) * height, 0);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        if (in_corner(x, y, width, height, corner_clear)) continue;
        if (rng.uniform() < obstacle_density)
          map.obstacles[static_cast<size_t>(y) * width + x] = 1;
      }
    }
    if (corners_connected(map)) return map;
  }
  throw GenerationError("could not generate a connected map after retries");
}

std::vector<int> distance_field(const GridMap& map, Cell goal) {
  if (!map.free_cell(goal))
    throw InvalidInputError("distance field goal must be a free in-bounds cell");
  std::vector<int> dist(static_cast<size_t>(map.width) * map.height,
                        kDistUnreachable);
  std::deque<Cell> queue{goal};
  dist[static_cast<size_t>(goal.y) * map.width + goal.x] = 0;
  while (!queue.empty()) {
    Cell cur = queue.front();
    queue.pop_front();
    const int base = dist[static_cast<size_t>(cur.y) * map.width + cur.x];
    const Cell nbrs[4] = {{cur.x, cur.y - 1}, {cur.x, cur.y + 1},
                          {cur.x - 1, cur.y}, {cur.x + 1, cur.y}};
    for (const Cell& n : nbrs) {
      if (!map.free_cell(n)) continue;
      auto& d = dist[static_cast<size_t>(n.y) * map.width + n.x];
      if (d == kDistUnreachable) {
        d = base + 1;
        queue.push_back(n);
      }
    }
  }
  return dist;
}

std::string encode_map(const GridMap& map) {
  std::ostringstream os;
  os << "maif/1 map\n" << map.width << ' ' << map.height << '\n';
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x)
      os << (map.obstacle({x, y}) ? '@' : '.');
    os << '\n';
  }
  return os.str();
}

GridMap decode_map(const std::string& text) {
  std::istringstream is(text);
  std::string tag, kind;
  is >> tag >> kind;
  if (tag != "maif/1" || kind != "map")
    throw InvalidInputError("not a maif/1 map file");
  GridMap map;
  if (!(is >> map.width >> map.height) || map.width < 2 || map.height < 2)
    throw InvalidInputError("bad map dimensions");
  map.obstacles.assign(static_cast<size_t>(map.width) * map.height, 0);
  std::string row;
  std::getline(is, row);  // consume end of the dimensions line
  for (int y = 0; y < map.height; ++y) {
    if (!std::getline(is, row) || static_cast<int>(row.size()) < map.width)
      throw InvalidInputError("truncated map row");
    for (int x = 0; x < map.width; ++x) {
      if (row[x] == '@')
        map.obstacles[static_cast<size_t>(y) * map.width + x] = 1;
      else if (row[x] != '.')
        throw InvalidInputError("unexpected map character");
    }
  }
  return map;
}

void save_map(const GridMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot open map file for writing: " + path);
  out << encode_map(map);
}

GridMap load_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_map(buf.str());
}

}  // namespace maif
