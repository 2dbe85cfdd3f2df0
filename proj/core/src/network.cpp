#include "maif/network.hpp"

#include <cmath>

#include "maif/errors.hpp"
#include "maif/rng.hpp"

namespace maif {

int NetworkSpec::num_params() const {
  int n = 0;
  for (const auto& layer : layers) n += layer.out * (layer.in + 1);
  return n;
}

void NetworkSpec::validate() const {
  if (layers.empty()) throw InvalidInputError("network needs at least one layer");
  for (size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].in < 1 || layers[i].out < 1)
      throw InvalidInputError("layer sizes must be positive");
    if (i > 0 && layers[i].in != layers[i - 1].out)
      throw InvalidInputError("consecutive layer shapes are incompatible");
  }
}

std::vector<double> forward(const NetworkSpec& spec,
                            std::span<const double> params,
                            std::span<const double> input,
                            ForwardCache* cache) {
  spec.validate();
  if (static_cast<int>(params.size()) != spec.num_params())
    throw InvalidInputError("parameter vector length mismatch");
  if (static_cast<int>(input.size()) != spec.input_size())
    throw InvalidInputError("input length mismatch");

  if (cache) {
    cache->input.assign(input.begin(), input.end());
    cache->pre.clear();
    cache->post.clear();
  }
  std::vector<double> x(input.begin(), input.end());
  size_t offset = 0;
  for (const auto& layer : spec.layers) {
    std::vector<double> pre(layer.out);
    for (int o = 0; o < layer.out; ++o) {
      double acc = params[offset + static_cast<size_t>(layer.out) * layer.in + o];
      const double* w = &params[offset + static_cast<size_t>(o) * layer.in];
      for (int i = 0; i < layer.in; ++i) acc += w[i] * x[i];
      pre[o] = acc;
    }
    std::vector<double> post(layer.out);
    for (int o = 0; o < layer.out; ++o)
      post[o] = layer.act == Activation::Relu ? std::max(0.0, pre[o]) : pre[o];
    if (cache) {
      cache->pre.push_back(pre);
      cache->post.push_back(post);
    }
    x = std::move(post);
    offset += static_cast<size_t>(layer.out) * (layer.in + 1);
  }
  for (double v : x)
    if (!std::isfinite(v)) throw NumericError("non-finite network output");
  return x;
}

void backward_accumulate(const NetworkSpec& spec,
                         std::span<const double> params,
                         const ForwardCache& cache,
                         std::span<const double> upstream,
                         std::span<double> grad_out) {
  spec.validate();
  if (static_cast<int>(params.size()) != spec.num_params() ||
      grad_out.size() != params.size())
    throw InvalidInputError("parameter/gradient length mismatch");
  if (static_cast<int>(upstream.size()) != spec.output_size())
    throw InvalidInputError("upstream gradient length mismatch");
  if (cache.pre.size() != spec.layers.size() ||
      static_cast<int>(cache.input.size()) != spec.input_size())
    throw InvalidInputError("forward cache does not match the network");

  std::vector<double> delta(upstream.begin(), upstream.end());
  size_t offset = static_cast<size_t>(spec.num_params());
  for (int l = static_cast<int>(spec.layers.size()) - 1; l >= 0; --l) {
    const auto& layer = spec.layers[l];
    offset -= static_cast<size_t>(layer.out) * (layer.in + 1);
    const std::vector<double>& x =
        l == 0 ? cache.input : cache.post[static_cast<size_t>(l) - 1];
    std::vector<double> dpre(layer.out);
    for (int o = 0; o < layer.out; ++o) {
      const double gate =
          layer.act == Activation::Relu && cache.pre[l][o] <= 0.0 ? 0.0 : 1.0;
      dpre[o] = delta[o] * gate;
    }
    for (int o = 0; o < layer.out; ++o) {
      double* gw = &grad_out[offset + static_cast<size_t>(o) * layer.in];
      for (int i = 0; i < layer.in; ++i) gw[i] += dpre[o] * x[i];
    }
    for (int o = 0; o < layer.out; ++o)
      grad_out[offset + static_cast<size_t>(layer.out) * layer.in + o] += dpre[o];
    if (l > 0) {
      std::vector<double> prev(layer.in, 0.0);
      for (int o = 0; o < layer.out; ++o) {
        const double* w = &params[offset + static_cast<size_t>(o) * layer.in];
        for (int i = 0; i < layer.in; ++i) prev[i] += w[i] * dpre[o];
      }
      delta = std::move(prev);
    }
  }
}

std::vector<double> backward(const NetworkSpec& spec,
                             std::span<const double> params,
                             const ForwardCache& cache,
                             std::span<const double> upstream) {
  std::vector<double> grad(params.size(), 0.0);
  backward_accumulate(spec, params, cache, upstream, grad);
  return grad;
}

std::vector<double> init_params(const NetworkSpec& spec, Rng& rng) {
  spec.validate();
  std::vector<double> params(static_cast<size_t>(spec.num_params()), 0.0);
  size_t offset = 0;
  for (const auto& layer : spec.layers) {
    const double bound = std::sqrt(6.0 / (layer.in + layer.out));
    for (int o = 0; o < layer.out; ++o)
      for (int i = 0; i < layer.in; ++i)
        params[offset + static_cast<size_t>(o) * layer.in + i] =
            (2.0 * rng.uniform() - 1.0) * bound;
    offset += static_cast<size_t>(layer.out) * (layer.in + 1);
  }
  return params;
}

}  // namespace maif
