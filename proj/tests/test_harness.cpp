#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sparsegcn/experiment.hpp"
#include "sparsegcn/svg.hpp"

using namespace sparsegcn;
namespace fs = std::filesystem;

namespace {

// Small but non-trivial configuration so harness tests stay fast.
ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.N_list = {64, 128};
  cfg.n_list = {16, 32, 64};
  cfg.degree_list = {8.0};
  cfg.trials = 3;
  cfg.gcn_layers = 2;
  cfg.gcn_width = 2;
  cfg.gcn_taps = 3;
  cfg.quad_points = 256;
  cfg.spectrum_points = 64;
  cfg.master_seed = 5;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sparsegcn_harness" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing: defaults, overrides, comments") {
  const ExperimentConfig def = ExperimentConfig::from_string("");
  CHECK(def.target_degree == 40.0);
  CHECK(def.N_list == std::vector<std::size_t>{2048, 4096, 8192});

  const ExperimentConfig cfg = ExperimentConfig::from_string(
      "# comment line\n"
      "target_degree = 24\n"
      "n_list = 8, 16\n"
      "activation = tanh\n"
      "\n"
      "record_timing = true\n");
  CHECK(cfg.target_degree == 24.0);
  CHECK(cfg.n_list == std::vector<std::size_t>{8, 16});
  CHECK(cfg.activation_kind() == Activation::Tanh);
  CHECK(cfg.record_timing);
}

TEST_CASE("config parsing: errors") {
  CHECK_THROWS_AS(ExperimentConfig::from_string("mystery_key = 1\n"), config_error);
  CHECK_THROWS_AS(ExperimentConfig::from_string("trials = zero\n"), config_error);
  CHECK_THROWS_AS(ExperimentConfig::from_string("just a line\n"), config_error);
  CHECK_THROWS_AS(ExperimentConfig::from_string("normalizer = magic\n"), config_error);
  CHECK_THROWS_AS(ExperimentConfig::from_string("trials = 0\n"), config_error);
  CHECK_THROWS_AS(ExperimentConfig::from_string("signal = square\n"), config_error);
}

TEST_CASE("config echo round-trips") {
  ExperimentConfig cfg = small_config();
  cfg.signal = "constant:1.5";
  const std::string echo = cfg.echo();
  const ExperimentConfig back = ExperimentConfig::from_string(echo);
  CHECK(back.echo() == echo);
}

TEST_CASE("trial seeds differ across cells and repeat across calls") {
  const auto s1 = trial_seed(7, 2048, 128, 40.0, 0);
  CHECK(s1 == trial_seed(7, 2048, 128, 40.0, 0));
  CHECK(s1 != trial_seed(7, 2048, 128, 40.0, 1));
  CHECK(s1 != trial_seed(7, 2048, 256, 40.0, 0));
  CHECK(s1 != trial_seed(7, 4096, 128, 40.0, 0));
  CHECK(s1 != trial_seed(7, 2048, 128, 24.0, 0));
  CHECK(s1 != trial_seed(8, 2048, 128, 40.0, 0));
}

TEST_CASE("run_trial: determinism and the n = N anchor") {
  ExperimentConfig cfg = small_config();
  const TrialResult a = run_trial(cfg, 64, 32, 99);
  const TrialResult b = run_trial(cfg, 64, 32, 99);
  CHECK(a.e_r == b.e_r);
  CHECK(a.abs_err == b.abs_err);
  CHECK(a.seed == b.seed);
  CHECK_FALSE(a.degenerate);
  CHECK(a.e_r > 0.0);

  const TrialResult c = run_trial(cfg, 64, 32, 100);
  CHECK(c.e_r != a.e_r);

  const TrialResult identity = run_trial(cfg, 64, 64, 42);
  CHECK(identity.e_r == 0.0);
  CHECK(identity.abs_err == 0.0);
}

TEST_CASE("run_sweep: shape, ordering, and n=N cells") {
  const ExperimentConfig cfg = small_config();
  const SweepOutput out = run_sweep(cfg, SweepKind::Scale);

  CHECK(out.results.size() == 2 * 3 * 3);
  CHECK(out.summaries.size() == 6);
  // Group-major, then n in config order.
  CHECK(out.summaries[0].N == 64);
  CHECK(out.summaries[0].n == 16);
  CHECK(out.summaries[2].n == 64);
  CHECK(out.summaries[3].N == 128);

  // n = N cell (N=64, n=64) has exactly zero error in induced mode.
  CHECK(out.summaries[2].mean_er == 0.0);
  CHECK(out.summaries[2].count == cfg.trials);

  for (const auto& s : out.summaries) {
    CHECK(s.bound_rhs > 0.0);
    if (s.count > 0) CHECK(s.mean_abs <= s.bound_rhs);
  }
}

TEST_CASE("run_sweep: byte-identical CSVs across runs and thread counts") {
  ExperimentConfig cfg = small_config();
  const auto dir = temp_dir("determinism");

  const SweepOutput a = run_sweep(cfg, SweepKind::Scale);
  write_results_csv(dir / "a.csv", a.results);

  const SweepOutput b = run_sweep(cfg, SweepKind::Scale);
  write_results_csv(dir / "b.csv", b.results);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

  cfg.threads = 3;
  const SweepOutput c = run_sweep(cfg, SweepKind::Scale);
  write_results_csv(dir / "c.csv", c.results);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "c.csv"));
}

TEST_CASE("run_sweep: degree sweep groups by degree") {
  ExperimentConfig cfg = small_config();
  cfg.N_list = {96};
  cfg.n_list = {24, 48};
  cfg.degree_list = {12.0, 6.0};
  cfg.trials = 2;
  const SweepOutput out = run_sweep(cfg, SweepKind::Degree);
  CHECK(out.summaries.size() == 4);
  CHECK(out.summaries[0].d_target == 12.0);
  CHECK(out.summaries[2].d_target == 6.0);
  for (const auto& s : out.summaries) CHECK(s.N == 96);
}

TEST_CASE("sweep validation rejects n > N") {
  ExperimentConfig cfg = small_config();
  cfg.n_list = {256};
  CHECK_THROWS_AS(run_sweep(cfg, SweepKind::Scale), config_error);
}

TEST_CASE("results and summary CSV headers are pinned") {
  const auto dir = temp_dir("csv");
  write_results_csv(dir / "results.csv", {});
  CHECK(slurp(dir / "results.csv") == "N,n,d_target,c_d,trial,seed,e_r,degenerate,wall_ms\n");
  write_summary_csv(dir / "summary.csv", {});
  CHECK(slurp(dir / "summary.csv") == "N,n,d_target,mean_er,sd_er,count,bound_rhs\n");
}

TEST_CASE("summary CSV round-trips through the reader") {
  const auto dir = temp_dir("summary_rt");
  SweepSummary s;
  s.N = 2048;
  s.n = 128;
  s.d_target = 40.0;
  s.mean_er = 0.123456789012345;
  s.sd_er = 0.01;
  s.count = 10;
  s.bound_rhs = 1234.5;
  write_summary_csv(dir / "summary.csv", {{s}});
  const auto back = read_summary_csv(dir / "summary.csv");
  REQUIRE(back.size() == 1);
  CHECK(back[0].N == 2048);
  CHECK(back[0].mean_er == s.mean_er);
  CHECK(back[0].bound_rhs == s.bound_rhs);
}

TEST_CASE("wall_ms is zero unless timing is enabled") {
  ExperimentConfig cfg = small_config();
  cfg.N_list = {32};
  cfg.n_list = {16};
  cfg.trials = 2;
  const SweepOutput out = run_sweep(cfg, SweepKind::Scale);
  for (const auto& r : out.results) CHECK(r.wall_ms == 0);
}

TEST_CASE("make_run_dir appends a suffix on collision") {
  const auto root = temp_dir("rundir");
  const auto a = make_run_dir(root, "scale", "fixed");
  const auto b = make_run_dir(root, "scale", "fixed");
  CHECK(a != b);
  CHECK(fs::exists(a));
  CHECK(fs::exists(b));
}

TEST_CASE("write_sweep_outputs produces the full artifact set") {
  ExperimentConfig cfg = small_config();
  cfg.N_list = {32, 64};
  cfg.n_list = {16, 32};
  cfg.trials = 2;
  const auto root = temp_dir("outputs");
  cfg.out_dir = root.string();
  const SweepOutput out = run_sweep(cfg, SweepKind::Scale);
  const fs::path dir = write_sweep_outputs(cfg, SweepKind::Scale, out, "t");
  CHECK(fs::exists(dir / "results.csv"));
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "figure.svg"));
  CHECK(fs::exists(dir / "config.echo"));
  CHECK(slurp(dir / "config.echo") == cfg.echo());
  const std::string svg = slurp(dir / "figure.svg");
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("N = 32") != std::string::npos);
  CHECK(svg.find("N = 64") != std::string::npos);
}

TEST_CASE("emit_plot handles single points and rejects empty input") {
  const auto dir = temp_dir("plot");
  SweepSummary s;
  s.N = 64;
  s.n = 32;
  s.d_target = 8.0;
  s.mean_er = 0.5;
  s.count = 3;
  emit_plot(std::vector<SweepSummary>{s}, dir / "one.svg");
  const std::string svg = slurp(dir / "one.svg");
  CHECK(svg.find("<circle") != std::string::npos);

  CHECK_THROWS_AS(emit_plot(std::vector<SweepSummary>{}, dir / "none.svg"),
                  std::invalid_argument);
}

TEST_CASE("evaluate_trends classifies orderings") {
  const auto cell = [](std::size_t N, std::size_t n, double mean, double sd,
                       std::size_t count) {
    SweepSummary s;
    s.N = N;
    s.n = n;
    s.d_target = 8.0;
    s.mean_er = mean;
    s.sd_er = sd;
    s.count = count;
    s.bound_rhs = 1e9;
    s.mean_abs = mean;
    return s;
  };

  // Clean decreasing-in-n and increasing-in-N data: everything passes.
  std::vector<SweepSummary> good{
      cell(64, 16, 0.5, 0.01, 5), cell(64, 32, 0.3, 0.01, 5),
      cell(128, 16, 0.7, 0.01, 5), cell(128, 32, 0.4, 0.01, 5)};
  for (const auto& t : evaluate_trends(good, SweepKind::Scale)) {
    CHECK(t.pass);
    CHECK_FALSE(t.warning);
  }

  // Small inversion inside one standard error: warning, still a pass.
  std::vector<SweepSummary> close{
      cell(64, 16, 0.50, 0.05, 5), cell(64, 32, 0.30, 0.05, 5),
      cell(128, 16, 0.49, 0.05, 5), cell(128, 32, 0.31, 0.05, 5)};
  const auto warn_checks = evaluate_trends(close, SweepKind::Scale);
  bool saw_warning = false;
  for (const auto& t : warn_checks) {
    CHECK(t.pass);
    if (t.warning) saw_warning = true;
  }
  CHECK(saw_warning);

  // Large inversion: failure.
  std::vector<SweepSummary> bad{
      cell(64, 16, 0.8, 0.001, 5), cell(64, 32, 0.3, 0.001, 5),
      cell(128, 16, 0.5, 0.001, 5), cell(128, 32, 0.2, 0.001, 5)};
  bool saw_fail = false;
  for (const auto& t : evaluate_trends(bad, SweepKind::Scale))
    if (!t.pass) saw_fail = true;
  CHECK(saw_fail);

  // Non-monotone in n: the within-group check fails.
  std::vector<SweepSummary> flat{cell(64, 16, 0.3, 0.01, 5), cell(64, 32, 0.3, 0.01, 5)};
  bool monotone_fail = false;
  for (const auto& t : evaluate_trends(flat, SweepKind::Scale))
    if (!t.pass) monotone_fail = true;
  CHECK(monotone_fail);
}

TEST_CASE("normalizer variants run and keep the n = N anchor at zero") {
  for (const std::string norm : {"eps_N", "eps_n", "empirical"}) {
    ExperimentConfig cfg = small_config();
    cfg.N_list = {48};
    cfg.n_list = {24, 48};
    cfg.trials = 2;
    cfg.normalizer = norm;
    const SweepOutput out = run_sweep(cfg, SweepKind::Scale);
    REQUIRE(out.summaries.size() == 2);
    CHECK(out.summaries[1].mean_er == 0.0);
    CHECK(out.summaries[0].mean_er > 0.0);
  }
}

TEST_CASE("resample mode produces nonzero error at n = N") {
  ExperimentConfig cfg = small_config();
  cfg.N_list = {48};
  cfg.n_list = {48};
  cfg.trials = 2;
  cfg.downsample_mode = "resample";
  const SweepOutput out = run_sweep(cfg, SweepKind::Scale);
  CHECK(out.summaries[0].mean_er > 0.0);
}
