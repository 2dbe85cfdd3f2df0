#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace maif {

// mt19937_64 wrapper whose derived draws (uniform, uniform_int, shuffle) are
// specified here rather than delegated to std distributions, so sequences are
// identical across standard-library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // [0, n); n >= 1
  int uniform_int(int n) {
    return static_cast<int>((static_cast<__uint128_t>(gen_()) *
                             static_cast<uint64_t>(n)) >> 64);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[uniform_int(i + 1)]);
    }
  }

  std::string save_state() const;
  void load_state(const std::string& state);

 private:
  std::mt19937_64 gen_;
};

}  // namespace maif
