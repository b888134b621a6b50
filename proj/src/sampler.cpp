#include "sparsegcn/sampler.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sparsegcn/rng.hpp"

namespace sparsegcn {

SparseGraph SparseGraph::from_edges(
    std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  SparseGraph g;
  g.n_ = n;
  g.m_ = edges.size();
  g.offsets_.assign(n + 1, 0);
  for (const auto& [i, j] : edges) {
    if (i >= j || j >= n)
      throw std::invalid_argument("SparseGraph: edges must satisfy i < j < n");
    ++g.offsets_[i + 1];
    ++g.offsets_[j + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adj_.resize(2 * g.m_);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  std::sort(edges.begin(), edges.end());
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k] == edges[k - 1])
      throw std::invalid_argument("SparseGraph: duplicate edge");
  }
  for (const auto& [i, j] : edges) {
    g.adj_[cursor[i]++] = j;
    g.adj_[cursor[j]++] = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }
  return g;
}

bool SparseGraph::has_edge(std::size_t i, std::size_t j) const {
  const auto nbrs = neighbors(i);
  return std::binary_search(nbrs.begin(), nbrs.end(), static_cast<std::uint32_t>(j));
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> SparseGraph::edge_list() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(m_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (const std::uint32_t j : neighbors(i)) {
      if (j > i) edges.emplace_back(static_cast<std::uint32_t>(i), j);
    }
  }
  return edges;
}

LatentFeatures sample_latents(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_latents: n must be >= 1");
  Rng rng(seed);
  LatentFeatures latents;
  latents.values.resize(n);
  for (auto& u : latents.values) u = rng.uniform();
  std::sort(latents.values.begin(), latents.values.end());
  return latents;
}

namespace {

// One Bernoulli draw per unordered pair, i ascending then j, so the stream
// layout is part of the determinism contract. The separable kernel lets us
// precompute per-node factors; the product below matches Graphon::eval_ae.
SparseGraph bernoulli_edges(const Graphon& g, const LatentFeatures& latents, Rng& rng) {
  const std::size_t n = latents.size();
  const double cd = g.kernel().cd();
  std::vector<double> factor(n);
  for (std::size_t i = 0; i < n; ++i)
    factor[i] = g.kernel().factor(latents.values[i] * g.t());

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double fi = factor[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = std::min(1.0, cd * (fi * factor[j]));
      if (rng.uniform() < p)
        edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  return SparseGraph::from_edges(n, std::move(edges));
}

GraphSignal signal_at(const SignalFunction& x, const LatentFeatures& latents) {
  GraphSignal s(latents.size());
  for (std::size_t i = 0; i < latents.size(); ++i) s[i] = x(latents.values[i]);
  return s;
}

}  // namespace

SampledInstance sample_graph(const Graphon& g, const SignalFunction& x,
                             const LatentFeatures& latents, std::uint64_t seed) {
  Rng rng(seed);
  SampledInstance inst{bernoulli_edges(g, latents, rng), signal_at(x, latents),
                       latents, g, x};
  return inst;
}

SampledInstance downsample(const SampledInstance& inst, std::size_t n,
                           DownsampleMode mode, std::uint64_t seed) {
  const std::size_t N = inst.graph.num_nodes();
  if (n < 1 || n > N)
    throw std::invalid_argument("downsample: need 1 <= n <= N");

  if (mode == DownsampleMode::Resample) {
    const LatentFeatures fresh = sample_latents(n, derive_seed(seed, 0x6c617465));
    return sample_graph(inst.graphon, inst.signal_fn, fresh,
                        derive_seed(seed, 0x65646765));
  }

  // Induced: uniform subset without replacement (partial Fisher-Yates),
  // then sorted so the kept latents stay in nondecreasing order.
  Rng rng(seed);
  std::vector<std::uint32_t> pool(N);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(N - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::uint32_t> keep(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(keep.begin(), keep.end());

  std::vector<std::int64_t> relabel(N, -1);
  for (std::size_t k = 0; k < n; ++k) relabel[keep[k]] = static_cast<std::int64_t>(k);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  SampledInstance out{SparseGraph{}, GraphSignal(n), LatentFeatures{},
                      inst.graphon, inst.signal_fn};
  out.latents.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t old = keep[k];
    out.latents.values[k] = inst.latents.values[old];
    out.signal[k] = inst.signal[old];
    for (const std::uint32_t nbr : inst.graph.neighbors(old)) {
      const std::int64_t nk = relabel[nbr];
      if (nk > static_cast<std::int64_t>(k))
        edges.emplace_back(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(nk));
    }
  }
  out.graph = SparseGraph::from_edges(n, std::move(edges));
  return out;
}

double empirical_density(const SparseGraph& graph) {
  const std::size_t n = graph.num_nodes();
  if (n < 2) throw std::invalid_argument("empirical_density: n must be >= 2");
  return 2.0 * static_cast<double>(graph.num_edges()) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace sparsegcn
