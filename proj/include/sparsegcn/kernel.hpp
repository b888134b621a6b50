#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparsegcn {

/// Thrown when a requested calibration target cannot be reached.
class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse-model kernel on R+^2: the exp-product base e^{-u} e^{-v}, scaled by
/// the degree factor c_d and clipped into [0, 1]. The diagonal u = v carries
/// no edge mass.
class Kernel {
 public:
  explicit Kernel(double c_d) : cd_(c_d) {
    if (!(c_d >= 0.0)) throw std::invalid_argument("Kernel: c_d must be >= 0");
  }

  double cd() const { return cd_; }

  /// Lipschitz constant A of the clipped kernel, in the |u1-u2|+|v1-v2|
  /// metric. The base kernel's partial derivatives are bounded by 1 and
  /// clipping is non-expansive, so c_d * 1 is a valid constant.
  double lipschitz() const { return cd_; }

  /// Separable factor of the base kernel: W(u,v) = factor(u) * factor(v).
  double factor(double x) const { return std::exp(-x); }

  /// Value off the diagonal (also the almost-everywhere value used by
  /// integrals and spectra, where the diagonal line has measure zero).
  double eval_ae(double u, double v) const {
    return std::min(1.0, cd_ * (factor(u) * factor(v)));
  }

  /// Pointwise value: zero on the diagonal.
  double eval(double u, double v) const {
    if (u < 0.0 || v < 0.0) throw std::invalid_argument("Kernel: u,v must be >= 0");
    return u == v ? 0.0 : eval_ae(u, v);
  }

 private:
  double cd_;
};

/// t_n = n^exponent with exponent in (0, 1]. The default sqrt scaling keeps
/// the expected average degree constant for an integrable kernel.
class ScaleFunction {
 public:
  explicit ScaleFunction(double exponent = 0.5) : exponent_(exponent) {
    if (!(exponent > 0.0) || exponent > 1.0)
      throw std::invalid_argument("ScaleFunction: exponent must be in (0,1]");
  }

  double operator()(std::size_t n) const {
    if (n == 0) throw std::invalid_argument("ScaleFunction: n must be >= 1");
    return std::pow(static_cast<double>(n), exponent_);
  }

  double exponent() const { return exponent_; }

 private:
  double exponent_;
};

/// Node signal function X: [0,1] -> R with a known Lipschitz constant.
class SignalFunction {
 public:
  enum class Kind { Cosine, Constant };

  static SignalFunction cosine() { return SignalFunction(Kind::Cosine, 0.0); }
  static SignalFunction constant(double value) {
    return SignalFunction(Kind::Constant, value);
  }

  double operator()(double u) const {
    switch (kind_) {
      case Kind::Cosine: return std::cos(pi() * u);
      case Kind::Constant: return param_;
    }
    return 0.0;
  }

  /// A_s such that |X(u1) - X(u2)| <= A_s |u1 - u2|.
  double lipschitz() const {
    return kind_ == Kind::Cosine ? pi() : 0.0;
  }

  /// ||X||_{L2([0,1])} by midpoint quadrature.
  double l2_norm(int quad_points = 4096) const;

  Kind kind() const { return kind_; }
  double param() const { return param_; }

  static constexpr double pi() { return 3.14159265358979323846; }

 private:
  SignalFunction(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

/// Graphon obtained by windowing the kernel: W_t(u,v) = W'(u t, v t) for
/// u, v in [0,1].
class Graphon {
 public:
  Graphon(Kernel kernel, double t) : kernel_(kernel), t_(t) {
    if (!(t > 0.0)) throw std::invalid_argument("Graphon: t must be > 0");
  }

  const Kernel& kernel() const { return kernel_; }
  double t() const { return t_; }

  double eval(double u, double v) const {
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0)
      throw std::invalid_argument("Graphon: u,v must lie in [0,1]");
    return kernel_.eval(u * t_, v * t_);
  }

  /// Almost-everywhere value: ignores the measure-zero diagonal rule.
  double eval_ae(double u, double v) const { return kernel_.eval_ae(u * t_, v * t_); }

 private:
  Kernel kernel_;
  double t_;
};

/// Expected edge density eps = \int\int_{[0,1]^2} W_t du dv, midpoint
/// tensor-grid quadrature with quad_points per axis.
double edge_density(const Graphon& g, int quad_points = 2048);

/// Expected average degree d(n) = (n - 1) * eps for a graph of size n.
double avg_degree(const Graphon& g, std::size_t n, int quad_points = 2048);

/// L1 = \int\int_{[0,t]^2} W' du dv.
double kernel_l1(const Kernel& k, double t, int quad_points = 2048);

/// L2^2 = \int\int_{[0,t]^2} W'^2 du dv. Always <= L1 since 0 <= W' <= 1.
double kernel_l2sq(const Kernel& k, double t, int quad_points = 2048);

/// Finds c_d such that avg_degree(Graphon(Kernel(c_d), scale(n)), n) hits
/// target_d within 0.1% relative, by bisection (density is nondecreasing in
/// c_d under clipping). Throws infeasible_error when the target cannot be
/// bracketed (d(n) < n - 1 always).
double calibrate_cd(const ScaleFunction& scale, std::size_t n, double target_d,
                    int quad_points = 2048);

}  // namespace sparsegcn
