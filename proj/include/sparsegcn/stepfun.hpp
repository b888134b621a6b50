#pragma once

#include <stdexcept>
#include <vector>

#include "sparsegcn/gcn.hpp"
#include "sparsegcn/kernel.hpp"
#include "sparsegcn/sampler.hpp"

namespace sparsegcn {

/// Thrown by relative_error when the reference output has zero norm (the
/// ratio is undefined; callers discard and count such trials).
class degenerate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Piecewise-constant function on the equal n-partition of [0,1]; interval
/// I_i = [(i-1)/n, i/n), the last one closed.
class StepFunction1D {
 public:
  explicit StepFunction1D(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double value(std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  double operator()(double u) const;

  /// ||f||_2 = sqrt(sum v_i^2 / n), exact for the equal partition.
  double l2_norm() const;

 private:
  std::vector<double> values_;
};

/// Piecewise-constant function on the equal n x n grid of [0,1]^2,
/// row-major values.
class StepFunction2D {
 public:
  StepFunction2D(std::size_t n, std::vector<double> values);

  std::size_t size() const { return n_; }
  double value(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  const std::vector<double>& values() const { return values_; }

  double operator()(double u, double v) const;

  double l2_norm() const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

/// I . x : the signal as a step function.
StepFunction1D induce_signal(const GraphSignal& x);

/// I . (S / scale) : the graph as a step function.
StepFunction2D induce_graphon(const SparseGraph& graph, double scale = 1.0);

/// Exact L2 distance between step functions of any partition sizes, by
/// integrating over the merged breakpoint set (every subinterval has a
/// constant integrand).
double l2_distance(const StepFunction1D& f, const StepFunction1D& g);
double l2_distance(const StepFunction2D& f, const StepFunction2D& g);

/// ||f - X||_2 with X analytic, midpoint quadrature with quad_per_cell
/// points inside every partition cell.
double l2_distance_to_signal(const StepFunction1D& f, const SignalFunction& x,
                             int quad_per_cell = 16);

/// ||F - W||_2 against an analytic graphon, quad_per_cell^2 midpoints per
/// grid cell (the step side is exact per cell).
double l2_distance_to_graphon(const StepFunction2D& f, const Graphon& g,
                              int quad_per_cell = 8);

/// (T_W X)(v) = \int_0^1 W(u,v) X(u) du, exact on a shared partition.
StepFunction1D wnn_shift(const StepFunction2D& w, const StepFunction1D& x);

/// h(W) * X = sum_k h_k T_W^k X.
StepFunction1D wnn_convolve(const FilterTaps& taps, const StepFunction2D& w,
                            const StepFunction1D& x);

/// WNN forward pass with the same taps and activation as the GCN.
StepFunction1D wnn_forward(const GcnModel& model, const StepFunction2D& w,
                           const StepFunction1D& x);

/// e_r = ||Y_N - Y_n|| / ||Y_N||. Throws degenerate_error when ||Y_N|| = 0.
double relative_error(const StepFunction1D& y_large, const StepFunction1D& y_small);

}  // namespace sparsegcn
