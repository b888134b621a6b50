#include "sparsegcn/gcn.hpp"

#include <cmath>
#include <stdexcept>

#include "sparsegcn/rng.hpp"

namespace sparsegcn {

double apply_activation(Activation a, double x) {
  switch (a) {
    case Activation::Relu: return x > 0.0 ? x : 0.0;
    case Activation::Tanh: return std::tanh(x);
  }
  return 0.0;
}

GcnModel::GcnModel(std::size_t layers, std::size_t width, std::size_t taps_per_filter,
                   Activation activation)
    : L_(layers), F_(width), K_(taps_per_filter), activation_(activation) {
  if (L_ < 1 || F_ < 1 || K_ < 1)
    throw std::invalid_argument("GcnModel: layers, width, taps must be >= 1");
  taps_.resize(L_);
  for (std::size_t l = 0; l < L_; ++l)
    taps_[l].assign(fan_in(l) * fan_out(l), FilterTaps{std::vector<double>(K_, 0.0)});
}

FilterTaps& GcnModel::taps(std::size_t layer, std::size_t f_in, std::size_t f_out) {
  if (layer >= L_ || f_in >= fan_in(layer) || f_out >= fan_out(layer))
    throw std::invalid_argument("GcnModel::taps: index out of range");
  return taps_[layer][f_in * fan_out(layer) + f_out];
}

const FilterTaps& GcnModel::taps(std::size_t layer, std::size_t f_in,
                                 std::size_t f_out) const {
  return const_cast<GcnModel&>(*this).taps(layer, f_in, f_out);
}

NormalizedShift make_shift_by_n(const SparseGraph& graph) {
  return {graph, static_cast<double>(graph.num_nodes())};
}

NormalizedShift make_shift_by_eps_n(const SparseGraph& graph, double eps) {
  if (!(eps > 0.0))
    throw std::invalid_argument("make_shift_by_eps_n: eps must be > 0");
  return {graph, eps * static_cast<double>(graph.num_nodes())};
}

namespace {

// v <- (S v) / s. Neighbor lists are sorted, so the summation order is fixed.
void shift_apply(const NormalizedShift& shift, const GraphSignal& v, GraphSignal& out) {
  const std::size_t n = shift.graph.num_nodes();
  const double inv = 1.0 / shift.scale;
  out.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (const std::uint32_t j : shift.graph.neighbors(i)) acc += v[j];
    out[i] = acc * inv;
  }
}

}  // namespace

GraphSignal graph_convolve(const FilterTaps& taps, const NormalizedShift& shift,
                           const GraphSignal& x) {
  if (taps.order() == 0)
    throw std::invalid_argument("graph_convolve: empty filter");
  if (x.size() != shift.graph.num_nodes())
    throw std::invalid_argument("graph_convolve: signal length != node count");

  const std::size_t n = x.size();
  GraphSignal acc(n);
  for (std::size_t i = 0; i < n; ++i) acc[i] = taps.taps[0] * x[i];

  GraphSignal power = x;
  GraphSignal scratch;
  for (std::size_t k = 1; k < taps.order(); ++k) {
    shift_apply(shift, power, scratch);
    power.swap(scratch);
    const double hk = taps.taps[k];
    for (std::size_t i = 0; i < n; ++i) acc[i] += hk * power[i];
  }
  return acc;
}

GraphSignal gcn_forward(const GcnModel& model, const NormalizedShift& shift,
                        const GraphSignal& x) {
  if (x.size() != shift.graph.num_nodes())
    throw std::invalid_argument("gcn_forward: signal length != node count");

  const std::size_t n = x.size();
  std::vector<GraphSignal> features{x};
  for (std::size_t l = 0; l < model.layers(); ++l) {
    std::vector<GraphSignal> next(model.fan_out(l));
    for (std::size_t b = 0; b < model.fan_out(l); ++b) {
      GraphSignal sum(n, 0.0);
      for (std::size_t a = 0; a < model.fan_in(l); ++a) {
        const GraphSignal conv = graph_convolve(model.taps(l, a, b), shift, features[a]);
        for (std::size_t i = 0; i < n; ++i) sum[i] += conv[i];
      }
      for (std::size_t i = 0; i < n; ++i)
        sum[i] = apply_activation(model.activation(), sum[i]);
      next[b] = std::move(sum);
    }
    features = std::move(next);
  }
  return features[0];
}

GcnModel random_init(std::size_t layers, std::size_t width, std::size_t taps_per_filter,
                     std::uint64_t seed, double spectral_radius_est,
                     Activation activation) {
  if (!(spectral_radius_est > 0.0))
    throw std::invalid_argument("random_init: spectral_radius_est must be > 0");
  GcnModel model(layers, width, taps_per_filter, activation);
  Rng rng(seed);
  for (std::size_t l = 0; l < layers; ++l) {
    for (std::size_t a = 0; a < model.fan_in(l); ++a) {
      for (std::size_t b = 0; b < model.fan_out(l); ++b) {
        FilterTaps& f = model.taps(l, a, b);
        for (auto& h : f.taps) h = rng.uniform_symmetric();
        // Non-amplification: bring max |h| over the grid down to 1.
        double peak = 0.0;
        constexpr int grid = 1024;
        for (int g = 0; g < grid; ++g) {
          const double lam = spectral_radius_est *
                             (2.0 * static_cast<double>(g) / (grid - 1) - 1.0);
          peak = std::max(peak, std::abs(filter_response_at(f, lam)));
        }
        if (peak > 1.0) {
          for (auto& h : f.taps) h /= peak;
        }
      }
    }
  }
  return model;
}

double filter_response_at(const FilterTaps& taps, double lambda) {
  double acc = 0.0;
  for (std::size_t k = taps.order(); k-- > 0;) acc = acc * lambda + taps.taps[k];
  return acc;
}

std::vector<double> filter_response(const FilterTaps& taps, std::span<const double> lambdas) {
  std::vector<double> out(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    out[i] = filter_response_at(taps, lambdas[i]);
  return out;
}

double filter_lipschitz(const FilterTaps& taps, double lo, double hi) {
  if (taps.order() == 0)
    throw std::invalid_argument("filter_lipschitz: empty filter");
  if (!(lo <= hi)) throw std::invalid_argument("filter_lipschitz: bad range");
  constexpr int grid = 4096;
  double peak = 0.0;
  for (int g = 0; g < grid; ++g) {
    const double lam = lo + (hi - lo) * static_cast<double>(g) / (grid - 1);
    double deriv = 0.0;
    for (std::size_t k = taps.order(); k-- > 1;)
      deriv = deriv * lam + static_cast<double>(k) * taps.taps[k];
    peak = std::max(peak, std::abs(deriv));
  }
  return peak;
}

}  // namespace sparsegcn
