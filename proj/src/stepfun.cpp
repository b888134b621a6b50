#include "sparsegcn/stepfun.hpp"

#include <algorithm>
#include <cmath>

namespace sparsegcn {

StepFunction1D::StepFunction1D(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty())
    throw std::invalid_argument("StepFunction1D: empty value array");
}

double StepFunction1D::operator()(double u) const {
  if (u < 0.0 || u > 1.0)
    throw std::invalid_argument("StepFunction1D: u must lie in [0,1]");
  const std::size_t n = values_.size();
  const auto i = std::min(static_cast<std::size_t>(u * static_cast<double>(n)), n - 1);
  return values_[i];
}

double StepFunction1D::l2_norm() const {
  double acc = 0.0;
  for (const double v : values_) acc += v * v;
  return std::sqrt(acc / static_cast<double>(values_.size()));
}

StepFunction2D::StepFunction2D(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (n_ == 0 || values_.size() != n_ * n_)
    throw std::invalid_argument("StepFunction2D: values must be an n x n array");
}

double StepFunction2D::operator()(double u, double v) const {
  if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0)
    throw std::invalid_argument("StepFunction2D: u,v must lie in [0,1]");
  const auto i = std::min(static_cast<std::size_t>(u * static_cast<double>(n_)), n_ - 1);
  const auto j = std::min(static_cast<std::size_t>(v * static_cast<double>(n_)), n_ - 1);
  return value(i, j);
}

double StepFunction2D::l2_norm() const {
  double acc = 0.0;
  for (const double v : values_) acc += v * v;
  return std::sqrt(acc / (static_cast<double>(n_) * static_cast<double>(n_)));
}

StepFunction1D induce_signal(const GraphSignal& x) {
  if (x.empty()) throw std::invalid_argument("induce_signal: empty signal");
  return StepFunction1D(x);
}

StepFunction2D induce_graphon(const SparseGraph& graph, double scale) {
  if (graph.num_nodes() == 0)
    throw std::invalid_argument("induce_graphon: empty graph");
  if (scale == 0.0) throw std::invalid_argument("induce_graphon: zero scale");
  const std::size_t n = graph.num_nodes();
  std::vector<double> values(n * n, 0.0);
  const double w = 1.0 / scale;
  for (std::size_t i = 0; i < n; ++i)
    for (const std::uint32_t j : graph.neighbors(i)) values[i * n + j] = w;
  return StepFunction2D(n, std::move(values));
}

namespace {

// One segment of the merged breakpoint set of two equal partitions. The
// breakpoints i/a and j/b are compared exactly via cross-multiplication.
struct MergedSegment {
  double length;
  std::size_t left;   // cell index in the size-a partition
  std::size_t right;  // cell index in the size-b partition
};

std::vector<MergedSegment> merge_partitions(std::size_t a, std::size_t b) {
  std::vector<MergedSegment> segs;
  segs.reserve(a + b);
  std::size_t i = 0, j = 0;
  double pos = 0.0;
  while (i < a && j < b) {
    const std::uint64_t fa = static_cast<std::uint64_t>(i + 1) * b;
    const std::uint64_t fb = static_cast<std::uint64_t>(j + 1) * a;
    const double next = fa <= fb ? static_cast<double>(i + 1) / static_cast<double>(a)
                                 : static_cast<double>(j + 1) / static_cast<double>(b);
    segs.push_back({next - pos, i, j});
    if (fa <= fb) ++i;
    if (fb <= fa) ++j;
    pos = next;
  }
  return segs;
}

}  // namespace

double l2_distance(const StepFunction1D& f, const StepFunction1D& g) {
  double acc = 0.0;
  for (const auto& s : merge_partitions(f.size(), g.size())) {
    const double d = f.value(s.left) - g.value(s.right);
    acc += s.length * d * d;
  }
  return std::sqrt(acc);
}

double l2_distance(const StepFunction2D& f, const StepFunction2D& g) {
  const auto segs = merge_partitions(f.size(), g.size());
  double acc = 0.0;
  for (const auto& su : segs) {
    double row = 0.0;
    for (const auto& sv : segs) {
      const double d = f.value(su.left, sv.left) - g.value(su.right, sv.right);
      row += sv.length * d * d;
    }
    acc += su.length * row;
  }
  return std::sqrt(acc);
}

double l2_distance_to_signal(const StepFunction1D& f, const SignalFunction& x,
                             int quad_per_cell) {
  if (quad_per_cell < 1)
    throw std::invalid_argument("l2_distance_to_signal: quad_per_cell must be >= 1");
  const std::size_t n = f.size();
  const std::size_t q = static_cast<std::size_t>(quad_per_cell);
  const std::size_t total = n * q;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double cell = 0.0;
    for (std::size_t s = 0; s < q; ++s) {
      const double u = (static_cast<double>(i * q + s) + 0.5) / static_cast<double>(total);
      const double d = f.value(i) - x(u);
      cell += d * d;
    }
    acc += cell;
  }
  return std::sqrt(acc / static_cast<double>(total));
}

double l2_distance_to_graphon(const StepFunction2D& f, const Graphon& g,
                              int quad_per_cell) {
  if (quad_per_cell < 1)
    throw std::invalid_argument("l2_distance_to_graphon: quad_per_cell must be >= 1");
  const std::size_t n = f.size();
  const std::size_t q = static_cast<std::size_t>(quad_per_cell);
  const std::size_t total = n * q;

  // Separable kernel factors at all quadrature abscissae.
  const double cd = g.kernel().cd();
  std::vector<double> factor(total);
  for (std::size_t s = 0; s < total; ++s) {
    const double u = (static_cast<double>(s) + 0.5) / static_cast<double>(total);
    factor[s] = g.kernel().factor(u * g.t());
  }

  double acc = 0.0;
  for (std::size_t si = 0; si < total; ++si) {
    const std::size_t i = si / q;
    const double fi = factor[si];
    double row = 0.0;
    for (std::size_t sj = 0; sj < total; ++sj) {
      const double w = std::min(1.0, cd * (fi * factor[sj]));
      const double d = f.value(i, sj / q) - w;
      row += d * d;
    }
    acc += row;
  }
  return std::sqrt(acc / (static_cast<double>(total) * static_cast<double>(total)));
}

StepFunction1D wnn_shift(const StepFunction2D& w, const StepFunction1D& x) {
  const std::size_t n = w.size();
  if (x.size() != n)
    throw std::invalid_argument("wnn_shift: partition sizes differ");
  const double inv = 1.0 / static_cast<double>(n);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w.value(i, j) * x.value(i);
    out[j] = acc * inv;
  }
  return StepFunction1D(std::move(out));
}

StepFunction1D wnn_convolve(const FilterTaps& taps, const StepFunction2D& w,
                            const StepFunction1D& x) {
  if (taps.order() == 0)
    throw std::invalid_argument("wnn_convolve: empty filter");
  const std::size_t n = x.size();
  std::vector<double> acc(n);
  for (std::size_t i = 0; i < n; ++i) acc[i] = taps.taps[0] * x.value(i);
  StepFunction1D power = x;
  for (std::size_t k = 1; k < taps.order(); ++k) {
    power = wnn_shift(w, power);
    const double hk = taps.taps[k];
    for (std::size_t i = 0; i < n; ++i) acc[i] += hk * power.value(i);
  }
  return StepFunction1D(std::move(acc));
}

StepFunction1D wnn_forward(const GcnModel& model, const StepFunction2D& w,
                           const StepFunction1D& x) {
  if (x.size() != w.size())
    throw std::invalid_argument("wnn_forward: partition sizes differ");
  const std::size_t n = x.size();
  std::vector<StepFunction1D> features{x};
  for (std::size_t l = 0; l < model.layers(); ++l) {
    std::vector<StepFunction1D> next;
    next.reserve(model.fan_out(l));
    for (std::size_t b = 0; b < model.fan_out(l); ++b) {
      std::vector<double> sum(n, 0.0);
      for (std::size_t a = 0; a < model.fan_in(l); ++a) {
        const StepFunction1D conv = wnn_convolve(model.taps(l, a, b), w, features[a]);
        for (std::size_t i = 0; i < n; ++i) sum[i] += conv.value(i);
      }
      for (std::size_t i = 0; i < n; ++i)
        sum[i] = apply_activation(model.activation(), sum[i]);
      next.emplace_back(std::move(sum));
    }
    features = std::move(next);
  }
  return features[0];
}

double relative_error(const StepFunction1D& y_large, const StepFunction1D& y_small) {
  const double denom = y_large.l2_norm();
  if (denom == 0.0)
    throw degenerate_error("relative_error: reference output has zero norm");
  return l2_distance(y_large, y_small) / denom;
}

}  // namespace sparsegcn
