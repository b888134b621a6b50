#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sparsegcn/kernel.hpp"

namespace sparsegcn {

/// Sorted latent node features in [0,1].
struct LatentFeatures {
  std::vector<double> values;  // nondecreasing

  std::size_t size() const { return values.size(); }
};

using GraphSignal = std::vector<double>;

/// Undirected simple graph in CSR form. Neighbor lists are sorted ascending
/// and both directions of every edge are materialized.
class SparseGraph {
 public:
  SparseGraph() = default;

  /// Builds from an i<j edge list. Rejects self-loops and duplicates.
  static SparseGraph from_edges(std::size_t n,
                                std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return m_; }

  std::span<const std::uint32_t> neighbors(std::size_t i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }

  std::size_t degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }

  bool has_edge(std::size_t i, std::size_t j) const;

  /// All edges as i<j pairs in ascending lexicographic order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list() const;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::size_t> offsets_;  // n_ + 1
  std::vector<std::uint32_t> adj_;    // 2 m_, grouped by node, each group sorted
};

/// A sampled graph together with its signal, latents, and the generating
/// large-scale graphon (downsampled instances keep the parent's graphon).
struct SampledInstance {
  SparseGraph graph;
  GraphSignal signal;
  LatentFeatures latents;
  Graphon graphon;
  SignalFunction signal_fn;
};

/// n iid uniform[0,1] draws, sorted ascending. Deterministic given seed.
LatentFeatures sample_latents(std::size_t n, std::uint64_t seed);

/// Bernoulli edge sampling: one draw per unordered pair i<j with probability
/// W_t(u_i, u_j), mirrored to both directions; signal values X(u_i).
SampledInstance sample_graph(const Graphon& g, const SignalFunction& x,
                             const LatentFeatures& latents, std::uint64_t seed);

enum class DownsampleMode { Induced, Resample };

/// Produces a smaller instance sharing the SAME graphon as inst:
///  - Induced: keep n uniformly chosen nodes with their edges and signal,
///    relabeled in sorted-latent order.
///  - Resample: fresh sorted uniforms and fresh Bernoulli edges from the
///    parent graphon (never a rescaled one).
SampledInstance downsample(const SampledInstance& inst, std::size_t n,
                           DownsampleMode mode, std::uint64_t seed);

/// Observed edge density 2m / (n (n-1)).
double empirical_density(const SparseGraph& graph);

}  // namespace sparsegcn
