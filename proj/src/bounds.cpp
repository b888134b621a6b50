#include "sparsegcn/bounds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "sparsegcn/rng.hpp"

namespace sparsegcn {

namespace {

constexpr double kSqrt6 = 2.4494897427831780982;

Eigen::MatrixXd discretize(const Graphon& g, std::size_t m) {
  Eigen::MatrixXd mat(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u = (static_cast<double>(i) + 0.5) * inv_m;
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = (static_cast<double>(j) + 0.5) * inv_m;
      const double w = g.eval_ae(u, v) * inv_m;
      mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
      mat(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = w;
    }
  }
  return mat;
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& mat,
                                          const char* context) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error(std::string(context) + ": eigensolver failed");
  std::vector<double> eig(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(eig.begin(), eig.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  return eig;
}

}  // namespace

SpectrumEstimate graphon_spectrum(const Graphon& g, std::size_t m) {
  if (m < 16) throw std::invalid_argument("graphon_spectrum: m must be >= 16");
  return {m, symmetric_eigenvalues(discretize(g, m), "graphon_spectrum")};
}

double delta_h(const FilterTaps& taps, const SpectrumEstimate& spectrum) {
  if (spectrum.eigenvalues.empty())
    throw std::invalid_argument("delta_h: empty spectrum");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const double lam : spectrum.eigenvalues) {
    const double h = filter_response_at(taps, lam);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  return 0.5 * (hi - lo);
}

void BoundInputs::validate() const {
  if (N == 0 || n == 0 || n > N)
    throw std::invalid_argument("BoundInputs: need 1 <= n <= N");
  if (!(d > 0.0)) throw std::invalid_argument("BoundInputs: d must be > 0");
  if (!(t_N > 0.0)) throw std::invalid_argument("BoundInputs: t_N must be > 0");
  if (!(L1 > 0.0)) throw std::invalid_argument("BoundInputs: L1 must be > 0");
  if (L2sq < 0.0 || L2sq > L1)
    throw std::invalid_argument("BoundInputs: need 0 <= L2^2 <= L1");
  if (A_Rplus < 0.0 || A_s < 0.0 || A_h < 0.0 || C_m < 0.0 || dh < 0.0)
    throw std::invalid_argument("BoundInputs: constants must be nonnegative");
}

Theorem1Bound theorem1_bound(const BoundInputs& b) {
  b.validate();
  const double N = static_cast<double>(b.N);
  const double n = static_cast<double>(b.n);
  const double sampling = std::sqrt(1.0 - b.L2sq / b.L1) * std::sqrt(N / b.d);
  const double lipschitz =
      (b.A_Rplus / kSqrt6) * (b.t_N * std::sqrt(N) / b.d) * (1.0 + std::sqrt(N / n));
  Theorem1Bound out{};
  out.filter_term = b.C_m * b.A_h * (sampling + lipschitz);
  out.signal_term = (b.A_s / kSqrt6) * (1.0 / std::sqrt(N) + 1.0 / std::sqrt(n));
  out.response_term = 2.0 * b.C_m * b.dh;
  out.total = out.filter_term + out.signal_term + out.response_term;
  return out;
}

double theorem2_bound(const BoundInputs& b, double norm_x) {
  b.validate();
  if (norm_x < 0.0) throw std::invalid_argument("theorem2_bound: norm_x < 0");
  const double N = static_cast<double>(b.N);
  const double n = static_cast<double>(b.n);
  const double conv = 2.0 * b.A_h * norm_x *
                      (std::sqrt(b.L1 - b.L2sq) / b.t_N +
                       b.A_Rplus * b.t_N / std::sqrt(6.0 * N) +
                       b.A_Rplus * b.t_N / std::sqrt(6.0 * n));
  const double signal = (b.A_s / kSqrt6) * (1.0 / std::sqrt(N) + 1.0 / std::sqrt(n));
  return conv + signal + 4.0 * b.dh * norm_x;
}

CheckReport check_lemma2(const SignalFunction& x, std::span<const std::size_t> sizes,
                         std::size_t trials, std::uint64_t seed, int quad_per_cell) {
  if (trials < 1) throw std::invalid_argument("check_lemma2: trials must be >= 1");
  CheckReport report;
  for (const std::size_t N : sizes) {
    double acc = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto latents = sample_latents(N, derive_seed(seed, N, t));
      GraphSignal values(N);
      for (std::size_t i = 0; i < N; ++i) values[i] = x(latents.values[i]);
      acc += l2_distance_to_signal(induce_signal(values), x, quad_per_cell);
    }
    CheckRow row;
    row.check = "lemma2";
    row.N = N;
    row.trials = trials;
    row.empirical_mean = acc / static_cast<double>(trials);
    row.bound = x.lipschitz() / std::sqrt(6.0 * static_cast<double>(N));
    row.pass = row.empirical_mean <= row.bound;
    report.push_back(row);
  }
  return report;
}

GraphonCellIntegrals::GraphonCellIntegrals(const Graphon& g, std::size_t cells,
                                           int quad_per_cell)
    : cells_(cells), cell_w_(cells * cells, 0.0), total_w2_(0.0) {
  if (cells == 0 || quad_per_cell < 1)
    throw std::invalid_argument("GraphonCellIntegrals: bad resolution");
  const std::size_t q = static_cast<std::size_t>(quad_per_cell);
  const std::size_t total = cells * q;
  const double cd = g.kernel().cd();
  std::vector<double> factor(total);
  for (std::size_t s = 0; s < total; ++s) {
    const double u = (static_cast<double>(s) + 0.5) / static_cast<double>(total);
    factor[s] = g.kernel().factor(u * g.t());
  }
  const double point_weight = 1.0 / (static_cast<double>(total) * static_cast<double>(total));
  double w2 = 0.0;
  for (std::size_t si = 0; si < total; ++si) {
    const std::size_t i = si / q;
    const double fi = factor[si];
    for (std::size_t sj = 0; sj < total; ++sj) {
      const double w = std::min(1.0, cd * (fi * factor[sj]));
      cell_w_[i * cells_ + sj / q] += w * point_weight;
      w2 += w * w * point_weight;
    }
  }
  total_w2_ = w2;
}

double GraphonCellIntegrals::distance_to_induced(const SparseGraph& graph) const {
  if (graph.num_nodes() != cells_)
    throw std::invalid_argument("GraphonCellIntegrals: partition mismatch");
  const double cell_area = 1.0 / (static_cast<double>(cells_) * static_cast<double>(cells_));
  // Edge cells integrate (1 - W)^2, the rest W^2; regrouping gives
  // 2m/N^2 - 2 sum_edges \int W + \int W^2.
  double acc = total_w2_;
  for (std::size_t i = 0; i < cells_; ++i) {
    for (const std::uint32_t j : graph.neighbors(i)) {
      acc += cell_area - 2.0 * cell_w_[i * cells_ + j];
    }
  }
  return std::sqrt(std::max(acc, 0.0));
}

CheckReport check_lemma3(const ScaleFunction& scale, double target_d,
                         std::span<const std::size_t> sizes, std::size_t trials,
                         std::uint64_t seed, int quad_points, int cell_quad) {
  if (trials < 1) throw std::invalid_argument("check_lemma3: trials must be >= 1");
  CheckReport report;
  const SignalFunction x = SignalFunction::constant(0.0);  // signal unused here
  for (const std::size_t N : sizes) {
    const double cd = calibrate_cd(scale, N, target_d, quad_points);
    const Kernel kernel(cd);
    const double t = scale(N);
    const Graphon graphon(kernel, t);
    const GraphonCellIntegrals cache(graphon, N, cell_quad);

    double acc = 0.0;
    for (std::size_t tr = 0; tr < trials; ++tr) {
      const auto latents = sample_latents(N, derive_seed(seed, N, tr, 1));
      const auto inst = sample_graph(graphon, x, latents, derive_seed(seed, N, tr, 2));
      acc += cache.distance_to_induced(inst.graph);
    }

    const double l1 = kernel_l1(kernel, t, quad_points);
    const double l2sq = kernel_l2sq(kernel, t, quad_points);
    CheckRow row;
    row.check = "lemma3";
    row.N = N;
    row.trials = trials;
    row.empirical_mean = acc / static_cast<double>(trials);
    row.bound = std::sqrt(std::max(l1 - l2sq, 0.0)) / t +
                2.0 * kernel.lipschitz() * t / std::sqrt(6.0 * static_cast<double>(N));
    row.pass = row.empirical_mean <= row.bound;
    report.push_back(row);
  }
  return report;
}

CheckReport check_lemma4(const Graphon& g1, const Graphon& g2, std::size_t m) {
  if (m < 16) throw std::invalid_argument("check_lemma4: m must be >= 16");
  const Eigen::MatrixXd m1 = discretize(g1, m);
  const Eigen::MatrixXd m2 = discretize(g2, m);
  // Frobenius norm of M1 - M2 equals the midpoint estimate of ||W1 - W2||_2.
  const double rhs = (m1 - m2).norm();
  const auto e1 = symmetric_eigenvalues(m1, "check_lemma4");
  const auto e2 = symmetric_eigenvalues(m2, "check_lemma4");

  // Sign-ordered sequences: positives then negatives, each by falling |.|;
  // a missing index pairs with 0 (the spectrum accumulates there).
  const auto split = [](const std::vector<double>& eig) {
    std::pair<std::vector<double>, std::vector<double>> out;
    for (const double v : eig) (v >= 0.0 ? out.first : out.second).push_back(v);
    return out;
  };
  const auto [pos1, neg1] = split(e1);
  const auto [pos2, neg2] = split(e2);
  const auto at = [](const std::vector<double>& v, std::size_t i) {
    return i < v.size() ? v[i] : 0.0;
  };

  double worst = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    worst = std::max(worst, std::abs(at(pos1, i) - at(pos2, i)));
    worst = std::max(worst, std::abs(at(neg1, i) - at(neg2, i)));
  }

  CheckRow row;
  row.check = "lemma4";
  row.N = m;
  row.trials = 1;
  row.empirical_mean = worst;
  row.bound = rhs;
  row.pass = worst <= rhs;
  return {row};
}

CheckReport check_order_statistics(std::size_t n, std::size_t trials,
                                   std::span<const std::size_t> ranks,
                                   std::uint64_t seed) {
  if (n == 0 || trials < 2)
    throw std::invalid_argument("check_order_statistics: need n >= 1, trials >= 2");
  std::vector<std::vector<double>> samples(ranks.size());
  for (auto& s : samples) s.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto latents = sample_latents(n, derive_seed(seed, t));
    for (std::size_t k = 0; k < ranks.size(); ++k) {
      const std::size_t rank = ranks[k];
      if (rank < 1 || rank > n)
        throw std::invalid_argument("check_order_statistics: rank out of range");
      samples[k].push_back(latents.values[rank - 1]);
    }
  }

  const auto moment_row = [&](const std::string& name, std::size_t rank,
                              const std::vector<double>& values, double expected) {
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (const double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size() - 1);
    const double se = std::sqrt(var / static_cast<double>(values.size()));
    CheckRow row;
    row.check = name + "_i" + std::to_string(rank);
    row.N = n;
    row.trials = trials;
    row.empirical_mean = mean;
    row.bound = expected;
    row.pass = std::abs(mean - expected) <= 4.0 * se;
    return row;
  };

  CheckReport report;
  const double n1 = static_cast<double>(n) + 1.0;
  const double n2 = static_cast<double>(n) + 2.0;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    const double i = static_cast<double>(ranks[k]);
    report.push_back(moment_row("order_mean", ranks[k], samples[k], i / n1));
    std::vector<double> squared(samples[k].size());
    std::transform(samples[k].begin(), samples[k].end(), squared.begin(),
                   [](double v) { return v * v; });
    report.push_back(
        moment_row("order_sqmean", ranks[k], squared, (i * i + i) / (n1 * n2)));
  }
  return report;
}

}  // namespace sparsegcn
