#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sparsegcn/bounds.hpp"
#include "sparsegcn/config.hpp"

namespace sparsegcn {

struct TrialResult {
  std::size_t N = 0;
  std::size_t n = 0;
  double d_target = 0.0;
  double c_d = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double e_r = 0.0;
  double abs_err = 0.0;  // ||Y_N - Y_n||_2, feeds the bound dominance check
  bool degenerate = false;
  std::int64_t wall_ms = 0;
};

struct SweepSummary {
  std::size_t N = 0;
  std::size_t n = 0;
  double d_target = 0.0;
  double c_d = 0.0;
  double mean_er = 0.0;
  double sd_er = 0.0;
  std::size_t count = 0;  // trials minus degenerate
  double bound_rhs = 0.0;  // Theorem 1 RHS for this cell
  double mean_abs = 0.0;   // mean ||Y_N - Y_n||_2
  std::size_t degenerate = 0;
};

enum class SweepKind { Scale, Degree };

/// One monotonicity / dominance verdict evaluated on sweep output.
struct TrendCheck {
  std::string description;
  bool pass = false;
  bool warning = false;  // ordering violated but within one standard error
};

struct SweepOutput {
  std::vector<TrialResult> results;
  std::vector<SweepSummary> summaries;
  std::vector<TrendCheck> trends;
};

/// Deterministic per-trial seed: hash of (master, N, n, d, trial), so a
/// trial's stream does not depend on execution order.
std::uint64_t trial_seed(std::uint64_t master, std::size_t N, std::size_t n,
                         double d, std::size_t trial);

/// Full single-trial pipeline (calibrate, sample, downsample, forward both,
/// compare) for d = degree_list.front(). Deterministic given (cfg, seed).
TrialResult run_trial(const ExperimentConfig& cfg, std::size_t N, std::size_t n,
                      std::uint64_t seed);

/// Scale sweep: one group per N in N_list at degree_list.front().
/// Degree sweep: one group per d in degree_list at N_list.front().
SweepOutput run_sweep(const ExperimentConfig& cfg, SweepKind kind);

/// Re-evaluates the trend and bound-dominance checks on aggregated cells.
std::vector<TrendCheck> evaluate_trends(std::span<const SweepSummary> summaries,
                                        SweepKind kind);

void write_results_csv(const std::filesystem::path& path,
                       std::span<const TrialResult> results);
void write_summary_csv(const std::filesystem::path& path,
                       std::span<const SweepSummary> summaries);
std::vector<SweepSummary> read_summary_csv(const std::filesystem::path& path);

/// out_dir/<sweep>/<label>/ (label defaults to a timestamp; suffixed when the
/// directory already exists).
std::filesystem::path make_run_dir(const std::filesystem::path& out_dir,
                                   const std::string& sweep, std::string label);

/// Writes results.csv, summary.csv, figure.svg, and config.echo; returns the
/// run directory.
std::filesystem::path write_sweep_outputs(const ExperimentConfig& cfg, SweepKind kind,
                                          const SweepOutput& output,
                                          const std::string& label = "");

}  // namespace sparsegcn
