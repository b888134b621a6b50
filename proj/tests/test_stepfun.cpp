#include <doctest.h>

#include <cmath>
#include <vector>

#include "sparsegcn/rng.hpp"
#include "sparsegcn/stepfun.hpp"

using namespace sparsegcn;

namespace {

// Riemann oracle: midpoint sample of (f - g)^2 at `points` abscissae. Exact
// (up to rounding) whenever both partition sizes divide `points`.
double riemann_distance(const StepFunction1D& f, const StepFunction1D& g,
                        std::size_t points = 1000000) {
  double acc = 0.0;
  for (std::size_t s = 0; s < points; ++s) {
    const double u = (static_cast<double>(s) + 0.5) / static_cast<double>(points);
    const double d = f(u) - g(u);
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(points));
}

StepFunction1D random_step(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform_symmetric();
  return StepFunction1D(std::move(v));
}

// Sizes dividing 10^6 keep every breakpoint on the oracle grid.
constexpr std::size_t kDivisorSizes[] = {2, 4, 5, 8, 10, 16, 20, 25, 32, 40, 50, 64, 80, 100, 125};

}  // namespace

TEST_CASE("induce_signal basics") {
  const StepFunction1D single = induce_signal({3.25});
  CHECK(single(0.0) == 3.25);
  CHECK(single(0.99) == 3.25);

  const StepFunction1D two = induce_signal({1.0, 3.0});
  CHECK(two(0.25) == 1.0);
  CHECK(two(0.5) == 3.0);
  CHECK(two(1.0) == 3.0);
  CHECK(two.l2_norm() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));

  CHECK_THROWS_AS(induce_signal({}), std::invalid_argument);
}

TEST_CASE("1D norm identity: ||I.x||^2 = mean of squares") {
  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.below(40));
    const StepFunction1D f = random_step(rng, n);
    double mean_sq = 0.0;
    for (const double v : f.values()) mean_sq += v * v;
    mean_sq /= static_cast<double>(n);
    CHECK(f.l2_norm() * f.l2_norm() == doctest::Approx(mean_sq).epsilon(1e-14));
  }
}

TEST_CASE("merged-grid distance: hand-computed values") {
  const StepFunction1D f({1.0, 3.0});
  const StepFunction1D g({2.0});
  CHECK(l2_distance(f, f) == 0.0);
  CHECK(l2_distance(f, g) == doctest::Approx(1.0).epsilon(1e-15));

  const StepFunction1D a({1.0, 2.0, 3.0});
  const StepFunction1D b({1.0, 3.0});
  CHECK(l2_distance(a, b) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("merged-grid distance agrees with a 10^6-point Riemann oracle") {
  Rng rng(29);
  const std::size_t count = sizeof(kDivisorSizes) / sizeof(kDivisorSizes[0]);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t na = kDivisorSizes[rng.below(count)];
    const std::size_t nb = kDivisorSizes[rng.below(count)];
    const StepFunction1D f = random_step(rng, na);
    const StepFunction1D g = random_step(rng, nb);
    CHECK(l2_distance(f, g) == doctest::Approx(riemann_distance(f, g)).epsilon(1e-9));
  }
}

TEST_CASE("merged-grid distance is a metric on random triples") {
  Rng rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    const StepFunction1D f = random_step(rng, 1 + rng.below(30));
    const StepFunction1D g = random_step(rng, 1 + rng.below(30));
    const StepFunction1D h = random_step(rng, 1 + rng.below(30));
    const double fg = l2_distance(f, g);
    CHECK(fg == l2_distance(g, f));
    CHECK(fg >= 0.0);
    CHECK(fg <= l2_distance(f, h) + l2_distance(h, g) + 1e-12);
  }
  const StepFunction1D f({0.5, -0.25, 1.0});
  CHECK(l2_distance(f, f) == 0.0);
  // A.e.-equal refinement has distance zero.
  const StepFunction1D fine({0.5, 0.5, -0.25, -0.25, 1.0, 1.0});
  CHECK(l2_distance(f, fine) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("2D induced graphon and distances") {
  const SparseGraph g2 = SparseGraph::from_edges(2, {{0, 1}});
  const StepFunction2D w = induce_graphon(g2);
  CHECK(w.value(0, 1) == 1.0);
  CHECK(w.value(1, 0) == 1.0);
  CHECK(w.value(0, 0) == 0.0);
  CHECK(w.l2_norm() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  const StepFunction2D zero(2, std::vector<double>(4, 0.0));
  CHECK(l2_distance(w, w) == 0.0);
  CHECK(l2_distance(w, zero) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  const SparseGraph empty = SparseGraph::from_edges(3, {});
  CHECK(induce_graphon(empty).l2_norm() == 0.0);
}

TEST_CASE("2D merged-grid distance handles different partitions") {
  // Refine a 2x2 step function to 4x4; distance must vanish.
  const StepFunction2D coarse(2, {1.0, 2.0, 2.0, -1.0});
  std::vector<double> fine_values(16);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      fine_values[i * 4 + j] = coarse.value(i / 2, j / 2);
  const StepFunction2D fine(4, std::move(fine_values));
  CHECK(l2_distance(coarse, fine) == doctest::Approx(0.0).epsilon(1e-15));

  // 2D Riemann oracle on a small random pair.
  Rng rng(37);
  std::vector<double> va(9), vb(4);
  for (auto& x : va) x = rng.uniform_symmetric();
  for (auto& x : vb) x = rng.uniform_symmetric();
  const StepFunction2D a(3, va);
  const StepFunction2D b(2, vb);
  const std::size_t pts = 1200;  // 3 and 2 both divide 1200
  double acc = 0.0;
  for (std::size_t si = 0; si < pts; ++si) {
    const double u = (si + 0.5) / static_cast<double>(pts);
    for (std::size_t sj = 0; sj < pts; ++sj) {
      const double v = (sj + 0.5) / static_cast<double>(pts);
      const double d = a(u, v) - b(u, v);
      acc += d * d;
    }
  }
  const double oracle = std::sqrt(acc / (static_cast<double>(pts) * pts));
  CHECK(l2_distance(a, b) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("distance to an analytic signal") {
  // Constant step vs matching constant signal: exactly zero.
  const StepFunction1D flat({2.5, 2.5, 2.5});
  CHECK(l2_distance_to_signal(flat, SignalFunction::constant(2.5)) == 0.0);

  // Doubling the quadrature hardly moves the estimate.
  const StepFunction1D steps({1.0, 0.25, -0.5, 0.0});
  const double d16 = l2_distance_to_signal(steps, SignalFunction::cosine(), 16);
  const double d64 = l2_distance_to_signal(steps, SignalFunction::cosine(), 64);
  CHECK(d16 == doctest::Approx(d64).epsilon(1e-4));
}

TEST_CASE("wnn_shift: constant graphon averages the signal") {
  const StepFunction2D ones(2, std::vector<double>(4, 1.0));
  const StepFunction1D x({1.0, 3.0});
  const StepFunction1D out = wnn_shift(ones, x);
  CHECK(out.value(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(out.value(1) == doctest::Approx(2.0).epsilon(1e-15));

  const StepFunction2D zero(2, std::vector<double>(4, 0.0));
  const StepFunction1D z = wnn_shift(zero, x);
  CHECK(z.value(0) == 0.0);
  CHECK(z.value(1) == 0.0);

  const StepFunction1D mismatched({1.0, 2.0, 3.0});
  CHECK_THROWS_AS(wnn_shift(ones, mismatched), std::invalid_argument);
}

TEST_CASE("wnn_shift equals the interpolated normalized adjacency product") {
  Rng rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + rng.below(15);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j)
        if (rng.uniform() < 0.4) edges.emplace_back(i, j);
    const SparseGraph graph = SparseGraph::from_edges(n, std::move(edges));
    GraphSignal x(n);
    for (auto& v : x) v = rng.uniform_symmetric();

    const StepFunction1D lhs = wnn_shift(induce_graphon(graph), induce_signal(x));
    GraphSignal sx(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto j : graph.neighbors(i)) sx[i] += x[j];
      sx[i] *= 1.0 / static_cast<double>(n);
    }
    for (std::size_t i = 0; i < n; ++i)
      CHECK(lhs.value(i) == doctest::Approx(sx[i]).epsilon(1e-14));
  }
}

TEST_CASE("GCN-vs-WNN equivalence on random instances") {
  Rng rng(43);
  for (int rep = 0; rep < 25; ++rep) {
    const std::size_t n = 2 + rng.below(31);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j)
        if (rng.uniform() < 0.3) edges.emplace_back(i, j);
    const SparseGraph graph = SparseGraph::from_edges(n, std::move(edges));
    GraphSignal x(n);
    for (auto& v : x) v = rng.uniform_symmetric();

    const std::size_t L = 1 + rng.below(3);
    const std::size_t F = 1 + rng.below(4);
    const std::size_t K = 1 + rng.below(4);
    const GcnModel model = random_init(L, F, K, rng.next(), 1.0,
                                       rep % 2 ? Activation::Tanh : Activation::Relu);

    const GraphSignal gcn_out = gcn_forward(model, make_shift_by_n(graph), x);
    const StepFunction1D wnn_out =
        wnn_forward(model, induce_graphon(graph), induce_signal(x));

    double max_abs = 0.0, max_diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      max_abs = std::max(max_abs, std::abs(gcn_out[i]));
      max_diff = std::max(max_diff, std::abs(gcn_out[i] - wnn_out.value(i)));
    }
    CHECK(max_diff <= 1e-10 * std::max(max_abs, 1e-30));
  }
}

TEST_CASE("wnn small example: single edge, taps [0,1], relu") {
  const SparseGraph graph = SparseGraph::from_edges(2, {{0, 1}});
  GcnModel model(1, 1, 2, Activation::Relu);
  model.taps(0, 0, 0).taps = {0.0, 1.0};
  const StepFunction1D out =
      wnn_forward(model, induce_graphon(graph), induce_signal({1.0, 2.0}));
  // sigma((1/2) S x) = relu([2/2, 1/2]) = [1, 0.5]
  CHECK(out.value(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(out.value(1) == doctest::Approx(0.5).epsilon(1e-15));

  GcnModel zero(2, 2, 3, Activation::Relu);
  const StepFunction1D z =
      wnn_forward(zero, induce_graphon(graph), induce_signal({1.0, 2.0}));
  CHECK(z.value(0) == 0.0);
  CHECK(z.value(1) == 0.0);
}

TEST_CASE("relative error definition and degenerate handling") {
  const StepFunction1D y({1.0, 3.0});
  CHECK(relative_error(y, y) == 0.0);

  const StepFunction1D doubled({2.0, 6.0});
  CHECK(relative_error(y, doubled) == doctest::Approx(1.0).epsilon(1e-15));

  const StepFunction1D g({2.0});
  CHECK(relative_error(y, g) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));

  const StepFunction1D zero({0.0, 0.0});
  CHECK_THROWS_AS(relative_error(zero, y), degenerate_error);
}
