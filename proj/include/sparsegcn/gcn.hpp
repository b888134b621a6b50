#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparsegcn/sampler.hpp"

namespace sparsegcn {

/// Polynomial filter coefficients h_0 ... h_{K-1}.
struct FilterTaps {
  std::vector<double> taps;

  std::size_t order() const { return taps.size(); }
};

enum class Activation { Relu, Tanh };

double apply_activation(Activation a, double x);

/// L-layer GCN with width pattern F_0 = 1, F_1 = ... = F_{L-1} = F, F_L = 1
/// and one K-tap filter per (layer, input feature, output feature).
class GcnModel {
 public:
  GcnModel(std::size_t layers, std::size_t width, std::size_t taps_per_filter,
           Activation activation);

  std::size_t layers() const { return L_; }
  std::size_t width() const { return F_; }
  std::size_t taps_per_filter() const { return K_; }
  Activation activation() const { return activation_; }

  std::size_t fan_in(std::size_t layer) const { return layer == 0 ? 1 : F_; }
  std::size_t fan_out(std::size_t layer) const { return layer + 1 == L_ ? 1 : F_; }

  FilterTaps& taps(std::size_t layer, std::size_t f_in, std::size_t f_out);
  const FilterTaps& taps(std::size_t layer, std::size_t f_in, std::size_t f_out) const;

  /// Visits every filter in serialization order (layer, f_in, f_out).
  template <typename Fn>
  void for_each_filter(Fn&& fn) const {
    for (std::size_t l = 0; l < L_; ++l)
      for (std::size_t a = 0; a < fan_in(l); ++a)
        for (std::size_t b = 0; b < fan_out(l); ++b) fn(taps(l, a, b));
  }

 private:
  std::size_t L_, F_, K_;
  Activation activation_;
  std::vector<std::vector<FilterTaps>> taps_;  // per layer, f_in-major
};

/// Shift operator view: S / scale over a graph's adjacency.
struct NormalizedShift {
  const SparseGraph& graph;
  double scale;
};

/// S / n, the normalization used by the GCN-vs-WNN equivalence.
NormalizedShift make_shift_by_n(const SparseGraph& graph);

/// S / (eps * n), the normalization used by the transferability experiments.
NormalizedShift make_shift_by_eps_n(const SparseGraph& graph, double eps);

/// y = sum_k h_k (S/s)^k x via repeated sparse matrix-vector products; S^k is
/// never materialized.
GraphSignal graph_convolve(const FilterTaps& taps, const NormalizedShift& shift,
                           const GraphSignal& x);

/// Full forward pass; x is the single F_0 = 1 input feature.
GraphSignal gcn_forward(const GcnModel& model, const NormalizedShift& shift,
                        const GraphSignal& x);

/// Taps iid uniform[-1,1], each filter rescaled (when needed) so that
/// max |h(lambda)| <= 1 on a 1024-point grid over [-spectral_radius_est,
/// spectral_radius_est]. Deterministic given seed.
GcnModel random_init(std::size_t layers, std::size_t width, std::size_t taps_per_filter,
                     std::uint64_t seed, double spectral_radius_est,
                     Activation activation = Activation::Relu);

/// h(lambda) = sum_k h_k lambda^k for each input lambda.
std::vector<double> filter_response(const FilterTaps& taps, std::span<const double> lambdas);

double filter_response_at(const FilterTaps& taps, double lambda);

/// A_h = max |h'(lambda)| over a 4096-point grid on [lo, hi].
double filter_lipschitz(const FilterTaps& taps, double lo, double hi);

}  // namespace sparsegcn
