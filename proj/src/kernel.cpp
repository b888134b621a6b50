#include "sparsegcn/kernel.hpp"

#include <algorithm>
#include <vector>

namespace sparsegcn {

namespace {

// Midpoint abscissae factors of the base kernel on [0, t]: b[i] = e^{-x_i t / q}
// evaluated the same way Kernel::eval_ae does, so quadrature and pointwise
// evaluation agree bit for bit.
std::vector<double> midpoint_factors(const Kernel& k, double t, int q) {
  std::vector<double> b(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(q) * t;
    b[static_cast<std::size_t>(i)] = k.factor(x);
  }
  return b;
}

// Mean over the midpoint grid of min(c_d * b_i * b_j, 1), i.e. the clipped
// kernel averaged over [0,t]^2. Row sums first to keep accumulation error
// at the q*eps level.
double clipped_mean(const std::vector<double>& b, double cd) {
  const std::size_t q = b.size();
  double total = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    double row = 0.0;
    const double bi = b[i];
    for (std::size_t j = 0; j < q; ++j) {
      row += std::min(1.0, cd * (bi * b[j]));
    }
    total += row;
  }
  return total / (static_cast<double>(q) * static_cast<double>(q));
}

double clipped_sq_mean(const std::vector<double>& b, double cd) {
  const std::size_t q = b.size();
  double total = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    double row = 0.0;
    const double bi = b[i];
    for (std::size_t j = 0; j < q; ++j) {
      const double w = std::min(1.0, cd * (bi * b[j]));
      row += w * w;
    }
    total += row;
  }
  return total / (static_cast<double>(q) * static_cast<double>(q));
}

void check_quad(int quad_points) {
  if (quad_points < 16)
    throw std::invalid_argument("quadrature: quad_points must be >= 16");
}

}  // namespace

double SignalFunction::l2_norm(int quad_points) const {
  check_quad(quad_points);
  double acc = 0.0;
  for (int i = 0; i < quad_points; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / quad_points;
    const double x = (*this)(u);
    acc += x * x;
  }
  return std::sqrt(acc / quad_points);
}

double edge_density(const Graphon& g, int quad_points) {
  check_quad(quad_points);
  const auto b = midpoint_factors(g.kernel(), g.t(), quad_points);
  return clipped_mean(b, g.kernel().cd());
}

double avg_degree(const Graphon& g, std::size_t n, int quad_points) {
  if (n < 2) throw std::invalid_argument("avg_degree: n must be >= 2");
  return static_cast<double>(n - 1) * edge_density(g, quad_points);
}

double kernel_l1(const Kernel& k, double t, int quad_points) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_l1: t must be > 0");
  check_quad(quad_points);
  const auto b = midpoint_factors(k, t, quad_points);
  return clipped_mean(b, k.cd()) * t * t;
}

double kernel_l2sq(const Kernel& k, double t, int quad_points) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_l2sq: t must be > 0");
  check_quad(quad_points);
  const auto b = midpoint_factors(k, t, quad_points);
  return clipped_sq_mean(b, k.cd()) * t * t;
}

double calibrate_cd(const ScaleFunction& scale, std::size_t n, double target_d,
                    int quad_points) {
  if (n < 2) throw std::invalid_argument("calibrate_cd: n must be >= 2");
  if (!(target_d > 0.0))
    throw std::invalid_argument("calibrate_cd: target_d must be > 0");
  if (!(target_d < static_cast<double>(n - 1)))
    throw infeasible_error("calibrate_cd: target degree must be below n - 1");
  check_quad(quad_points);

  const double t = scale(n);
  const auto b = midpoint_factors(Kernel(1.0), t, quad_points);
  const double scale_n1 = static_cast<double>(n - 1);
  const auto degree_at = [&](double cd) { return scale_n1 * clipped_mean(b, cd); };
  const double tol = 1e-3 * target_d;

  // Bracket: density is nondecreasing in c_d and saturates at 1, so double
  // until the target is enclosed or the cap proves it unreachable.
  double lo = 0.0;
  double hi = 1.0;
  while (degree_at(hi) < target_d) {
    hi *= 2.0;
    if (hi > 1e18)
      throw infeasible_error("calibrate_cd: target degree not reachable");
  }

  double cd = hi;
  for (int iter = 0; iter < 80; ++iter) {
    cd = 0.5 * (lo + hi);
    const double d = degree_at(cd);
    if (std::abs(d - target_d) <= tol) return cd;
    if (d < target_d) {
      lo = cd;
    } else {
      hi = cd;
    }
  }
  if (std::abs(degree_at(cd) - target_d) > tol)
    throw infeasible_error("calibrate_cd: bisection did not converge");
  return cd;
}

}  // namespace sparsegcn
