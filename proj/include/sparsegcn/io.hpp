#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "sparsegcn/gcn.hpp"
#include "sparsegcn/sampler.hpp"
#include "sparsegcn/stepfun.hpp"

namespace sparsegcn {

/// Filesystem-level failures (missing file, unwritable path).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file contents.
class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Graph file: line 1 "n m", then m lines "i j" with 0 <= i < j < n in
// ascending lexicographic order.
void write_graph(const std::filesystem::path& path, const SparseGraph& graph);
SparseGraph read_graph(const std::filesystem::path& path);

// Signal / latents file: one real per line, 17 significant digits.
void write_values(const std::filesystem::path& path, const std::vector<double>& values);
std::vector<double> read_values(const std::filesystem::path& path);

// Step functions: header line "n", then the values (2D: n rows of n reals).
void write_step1d(const std::filesystem::path& path, const StepFunction1D& f);
StepFunction1D read_step1d(const std::filesystem::path& path);
void write_step2d(const std::filesystem::path& path, const StepFunction2D& f);
StepFunction2D read_step2d(const std::filesystem::path& path);

// Model file: header "L F K activation", then taps in (layer, f_in, f_out, k)
// order, one real per line.
void write_model(const std::filesystem::path& path, const GcnModel& model);
GcnModel read_model(const std::filesystem::path& path);

/// %.17g rendering used by every writer (round-trips doubles exactly).
std::string format_real(double v);

}  // namespace sparsegcn
