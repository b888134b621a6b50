#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sparsegcn/gcn.hpp"
#include "sparsegcn/kernel.hpp"
#include "sparsegcn/stepfun.hpp"

namespace sparsegcn {

/// Eigenvalues of the discretized graphon operator, sorted by decreasing
/// magnitude. grid_size is the discretization resolution m.
struct SpectrumEstimate {
  std::size_t grid_size = 0;
  std::vector<double> eigenvalues;
};

/// Eigendecomposition of M(i,j) = W((i-1/2)/m, (j-1/2)/m) / m, the midpoint
/// discretization of the graphon integral operator (diagonal uses the
/// almost-everywhere kernel value).
SpectrumEstimate graphon_spectrum(const Graphon& g, std::size_t m = 512);

/// Delta h = min_k max_i |h(lambda_i) - k|, attained at the midrange:
/// (max h - min h) / 2 over the spectrum.
double delta_h(const FilterTaps& taps, const SpectrumEstimate& spectrum);

/// Every constant entering the transferability bound.
struct BoundInputs {
  std::size_t N = 0;     // large-graph size
  std::size_t n = 0;     // downsampled size
  double d = 0.0;        // average degree expectation
  double t_N = 0.0;      // scale value at N
  double L1 = 0.0;       // \int\int W' over [0,t_N]^2
  double L2sq = 0.0;     // \int\int W'^2 over [0,t_N]^2
  double A_Rplus = 0.0;  // kernel Lipschitz constant
  double A_s = 0.0;      // signal Lipschitz constant
  double A_h = 0.0;      // filter Lipschitz constant
  double C_m = 0.0;      // 2 L F^{L-1} ||X||_2
  double dh = 0.0;       // Delta h over the graphon spectrum

  void validate() const;
};

struct Theorem1Bound {
  double total;
  double filter_term;    // C_m A_h { sqrt(1 - L2^2/L1) sqrt(N/d) + ... }
  double signal_term;    // (A_s / sqrt6) (1/sqrt N + 1/sqrt n)
  double response_term;  // 2 C_m Delta h
};

Theorem1Bound theorem1_bound(const BoundInputs& b);

/// Single-convolution transfer bound (network constants drop out):
/// 2 A_h ||X|| (sqrt(L1 - L2^2)/t_N + A t_N/sqrt(6N) + A t_N/sqrt(6n))
/// + (A_s/sqrt6)(1/sqrt N + 1/sqrt n) + 4 Delta h ||X||.
double theorem2_bound(const BoundInputs& b, double norm_x);

/// One line of a Monte Carlo validation report.
struct CheckRow {
  std::string check;
  std::size_t N = 0;
  std::size_t n = 0;
  std::size_t trials = 0;
  double empirical_mean = 0.0;
  double bound = 0.0;
  bool pass = false;
};

using CheckReport = std::vector<CheckRow>;

/// E ||X_bar_N - X|| <= A_s / sqrt(6N), per N.
CheckReport check_lemma2(const SignalFunction& x, std::span<const std::size_t> sizes,
                         std::size_t trials, std::uint64_t seed, int quad_per_cell = 16);

/// E ||W_bar_N - W_N|| <= sqrt(L1 - L2^2)/t_N + 2 A t_N / sqrt(6N), per N,
/// with c_d calibrated to target_d at each N.
CheckReport check_lemma3(const ScaleFunction& scale, double target_d,
                         std::span<const std::size_t> sizes, std::size_t trials,
                         std::uint64_t seed, int quad_points = 2048,
                         int cell_quad = 8);

/// |lambda_i(W1) - lambda_i(W2)| <= ||W1 - W2|| on the discretized operators,
/// eigenvalues paired sign-ordered by decreasing magnitude, up to 10 per sign.
CheckReport check_lemma4(const Graphon& g1, const Graphon& g2, std::size_t m = 256);

/// Sorted-uniform order statistic moments against Beta(i, n-i+1):
/// E(u_i) = i/(n+1) and E(u_i^2) = (i^2+i)/((n+1)(n+2)), each within
/// 4 standard errors, for the requested 1-based ranks.
CheckReport check_order_statistics(std::size_t n, std::size_t trials,
                                   std::span<const std::size_t> ranks,
                                   std::uint64_t seed);

/// Per-cell integrals of a graphon over the equal N-partition, cached so
/// Monte Carlo trials only pay per-edge work. Equivalent to
/// l2_distance_to_graphon(induce_graphon(S), g, quad) up to summation order.
class GraphonCellIntegrals {
 public:
  GraphonCellIntegrals(const Graphon& g, std::size_t cells, int quad_per_cell);

  /// ||I.S - W||_2 for a graph on the cached partition.
  double distance_to_induced(const SparseGraph& graph) const;

  double cell_integral(std::size_t i, std::size_t j) const {
    return cell_w_[i * cells_ + j];
  }
  double total_sq_integral() const { return total_w2_; }

 private:
  std::size_t cells_;
  std::vector<double> cell_w_;  // \int_cell W
  double total_w2_;             // \int_{[0,1]^2} W^2
};

}  // namespace sparsegcn
