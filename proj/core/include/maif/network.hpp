#pragma once

#include <span>
#include <vector>

namespace maif {

class Rng;

enum class Activation : int { Relu = 0, Identity = 1 };

struct LayerSpec {
  int in = 0;
  int out = 0;
  Activation act = Activation::Relu;
  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// Dense feed-forward stack. Parameter layout per layer: weights row-major
// [out][in], then biases [out].
struct NetworkSpec {
  std::vector<LayerSpec> layers;

  int input_size() const { return layers.empty() ? 0 : layers.front().in; }
  int output_size() const { return layers.empty() ? 0 : layers.back().out; }
  int num_params() const;
  void validate() const;  // shape chain, positive sizes
  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

// Per-layer activations kept by forward for the matching backward call.
struct ForwardCache {
  std::vector<double> input;
  std::vector<std::vector<double>> pre;   // pre-activation per layer
  std::vector<std::vector<double>> post;  // post-activation per layer
};

std::vector<double> forward(const NetworkSpec& spec,
                            std::span<const double> params,
                            std::span<const double> input,
                            ForwardCache* cache = nullptr);

// Exact reverse-mode gradient d(upstream . output)/d(params), accumulated
// into grad_out (same length as params).
void backward_accumulate(const NetworkSpec& spec,
                         std::span<const double> params,
                         const ForwardCache& cache,
                         std::span<const double> upstream,
                         std::span<double> grad_out);

std::vector<double> backward(const NetworkSpec& spec,
                             std::span<const double> params,
                             const ForwardCache& cache,
                             std::span<const double> upstream);

// Uniform +-sqrt(6 / (fan_in + fan_out)) weights, zero biases.
std::vector<double> init_params(const NetworkSpec& spec, Rng& rng);

}  // namespace maif
