#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsegcn/gcn.hpp"
#include "sparsegcn/kernel.hpp"
#include "sparsegcn/sampler.hpp"

namespace sparsegcn {

/// Invalid or unknown configuration input.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which density normalizes the shift operators S / (eps n).
enum class NormalizerKind {
  EpsLarge,   // eps(N) of the generating graphon, for both graphs (default)
  EpsSmall,   // eps at each graph's own size: eps(n) of the model
  Empirical,  // observed 2m / (n (n-1)) of each graph
};

/// Flat key=value experiment configuration. Unknown keys are errors.
struct ExperimentConfig {
  std::string kernel = "exp-product";
  std::optional<double> c_d;        // fixed degree factor; unset = calibrate
  double target_degree = 40.0;      // calibration target when c_d is unset
  double scale_exponent = 0.5;      // t_n = n^exponent
  std::string signal = "cosine";
  std::size_t gcn_layers = 3;
  std::size_t gcn_width = 16;
  std::size_t gcn_taps = 4;
  std::string activation = "relu";
  std::uint64_t weight_seed = 1;
  std::string normalizer = "eps_N";
  std::vector<std::size_t> N_list{2048, 4096, 8192};
  std::vector<std::size_t> n_list{128, 256, 512, 1024, 2048};
  std::vector<double> degree_list{40.0, 24.0, 12.0};
  std::string downsample_mode = "induced";
  std::size_t trials = 10;
  std::uint64_t master_seed = 7;
  int quad_points = 2048;
  std::size_t spectrum_points = 512;
  bool record_timing = false;  // keeps results.csv bytes seed-deterministic
  std::string out_dir = "out";
  std::size_t threads = 1;

  static ExperimentConfig from_file(const std::filesystem::path& path);
  static ExperimentConfig from_string(const std::string& text);

  void validate() const;

  SignalFunction signal_fn() const;
  Activation activation_kind() const;
  DownsampleMode downsample_kind() const;
  NormalizerKind normalizer_kind() const;
  ScaleFunction scale_fn() const { return ScaleFunction(scale_exponent); }

  /// Canonical key=value dump (the config.echo provenance file).
  std::string echo() const;
};

}  // namespace sparsegcn
