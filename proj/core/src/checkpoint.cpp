#include "maif/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "maif/errors.hpp"

namespace maif {

namespace {

constexpr char kMagic[8] = {'M', 'A', 'I', 'F', 'C', 'K', '0', '1'};

template <typename T>
void write_pod(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
  T value;
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw InvalidInputError("truncated checkpoint");
  return value;
}

void write_doubles(std::ostream& os, const std::vector<double>& v) {
  write_pod<uint64_t>(os, v.size());
  os.write(reinterpret_cast<const char*>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::vector<double> read_doubles(std::istream& is) {
  const auto n = read_pod<uint64_t>(is);
  std::vector<double> v(n);
  is.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) throw InvalidInputError("truncated checkpoint");
  return v;
}

void write_string(std::ostream& os, const std::string& s) {
  write_pod<uint32_t>(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& is) {
  const auto n = read_pod<uint32_t>(is);
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (!is) throw InvalidInputError("truncated checkpoint");
  return s;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw InvalidInputError("cannot open checkpoint for writing: " + path);
  os.write(kMagic, sizeof(kMagic));
  write_pod<int32_t>(os, ckpt.fov);
  write_pod<uint32_t>(os, static_cast<uint32_t>(ckpt.spec.layers.size()));
  for (const auto& layer : ckpt.spec.layers) {
    write_pod<int32_t>(os, layer.in);
    write_pod<int32_t>(os, layer.out);
    write_pod<int32_t>(os, static_cast<int32_t>(layer.act));
  }
  write_doubles(os, ckpt.theta);
  write_doubles(os, ckpt.theta_bar);
  write_pod<double>(os, ckpt.opt.config.learning_rate);
  write_pod<double>(os, ckpt.opt.config.beta1);
  write_pod<double>(os, ckpt.opt.config.beta2);
  write_pod<double>(os, ckpt.opt.config.epsilon);
  write_pod<int64_t>(os, ckpt.opt.step);
  write_doubles(os, ckpt.opt.m);
  write_doubles(os, ckpt.opt.v);
  write_string(os, ckpt.rng_state);
  write_pod<int64_t>(os, ckpt.progress.episodes);
  write_pod<int64_t>(os, ckpt.progress.updates);
  write_pod<int64_t>(os, ckpt.progress.env_steps);
  write_pod<int32_t>(os, ckpt.progress.stage);
  if (!os) throw InvalidInputError("failed writing checkpoint: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidInputError("cannot open checkpoint: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw InvalidInputError("not a maif checkpoint: " + path);
  Checkpoint ckpt;
  ckpt.fov = read_pod<int32_t>(is);
  const auto n_layers = read_pod<uint32_t>(is);
  for (uint32_t i = 0; i < n_layers; ++i) {
    LayerSpec layer;
    layer.in = read_pod<int32_t>(is);
    layer.out = read_pod<int32_t>(is);
    layer.act = static_cast<Activation>(read_pod<int32_t>(is));
    ckpt.spec.layers.push_back(layer);
  }
  ckpt.theta = read_doubles(is);
  ckpt.theta_bar = read_doubles(is);
  ckpt.opt.config.learning_rate = read_pod<double>(is);
  ckpt.opt.config.beta1 = read_pod<double>(is);
  ckpt.opt.config.beta2 = read_pod<double>(is);
  ckpt.opt.config.epsilon = read_pod<double>(is);
  ckpt.opt.step = read_pod<int64_t>(is);
  ckpt.opt.m = read_doubles(is);
  ckpt.opt.v = read_doubles(is);
  ckpt.rng_state = read_string(is);
  ckpt.progress.episodes = read_pod<int64_t>(is);
  ckpt.progress.updates = read_pod<int64_t>(is);
  ckpt.progress.env_steps = read_pod<int64_t>(is);
  ckpt.progress.stage = read_pod<int32_t>(is);
  ckpt.spec.validate();
  return ckpt;
}

}  // namespace maif
