#include "maif/rng.hpp"

#include <sstream>

namespace maif {

std::string Rng::save_state() const {
  std::ostringstream os;
  os << gen_;
  return os.str();
}

void Rng::load_state(const std::string& state) {
  std::istringstream is(state);
  is >> gen_;
}

}  // namespace maif
