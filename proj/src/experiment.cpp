#include "sparsegcn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include "sparsegcn/io.hpp"
#include "sparsegcn/rng.hpp"
#include "sparsegcn/svg.hpp"

namespace sparsegcn {

namespace {

// Per-(N, d) state shared by every trial of a sweep group.
struct GroupSetup {
  std::size_t N = 0;
  double d_target = 0.0;
  double c_d = 0.0;
  double eps = 0.0;
  double t_N = 0.0;
  double L1 = 0.0;
  double L2sq = 0.0;
  double dh = 0.0;  // max Delta h over the model's filters, set after init
  Graphon graphon{Kernel(0.0), 1.0};
  SpectrumEstimate spectrum;
  std::vector<double> eps_at_n;  // eps(n) of the model, aligned with cfg.n_list
};

GroupSetup build_group(const ExperimentConfig& cfg, std::size_t N, double d_target) {
  GroupSetup g;
  g.N = N;
  const ScaleFunction scale = cfg.scale_fn();
  g.t_N = scale(N);
  if (cfg.c_d) {
    g.c_d = *cfg.c_d;
  } else {
    g.c_d = calibrate_cd(scale, N, d_target, cfg.quad_points);
  }
  const Kernel kernel(g.c_d);
  g.graphon = Graphon(kernel, g.t_N);
  g.eps = edge_density(g.graphon, cfg.quad_points);
  g.d_target = cfg.c_d ? static_cast<double>(N - 1) * g.eps : d_target;
  g.L1 = kernel_l1(kernel, g.t_N, cfg.quad_points);
  g.L2sq = kernel_l2sq(kernel, g.t_N, cfg.quad_points);
  g.spectrum = graphon_spectrum(g.graphon, cfg.spectrum_points);
  if (cfg.normalizer_kind() == NormalizerKind::EpsSmall) {
    g.eps_at_n.reserve(cfg.n_list.size());
    for (const std::size_t n : cfg.n_list)
      g.eps_at_n.push_back(edge_density(Graphon(kernel, scale(n)), cfg.quad_points));
  }
  return g;
}

double max_abs_eigenvalue(const SpectrumEstimate& s) {
  return s.eigenvalues.empty() ? 0.0 : std::abs(s.eigenvalues.front());
}

double model_max_lipschitz(const GcnModel& model, double rho) {
  double a_h = 0.0;
  model.for_each_filter([&](const FilterTaps& f) {
    a_h = std::max(a_h, filter_lipschitz(f, -rho, rho));
  });
  return a_h;
}

double model_max_delta_h(const GcnModel& model, const SpectrumEstimate& spectrum) {
  double dh = 0.0;
  model.for_each_filter(
      [&](const FilterTaps& f) { dh = std::max(dh, delta_h(f, spectrum)); });
  return dh;
}

BoundInputs cell_bound_inputs(const ExperimentConfig& cfg, const GroupSetup& g,
                              std::size_t n, double a_h, double norm_x) {
  BoundInputs b;
  b.N = g.N;
  b.n = n;
  b.d = g.d_target;
  b.t_N = g.t_N;
  b.L1 = g.L1;
  b.L2sq = g.L2sq;
  b.A_Rplus = Kernel(g.c_d).lipschitz();
  b.A_s = cfg.signal_fn().lipschitz();
  b.A_h = a_h;
  b.C_m = 2.0 * static_cast<double>(cfg.gcn_layers) *
          std::pow(static_cast<double>(cfg.gcn_width),
                   static_cast<double>(cfg.gcn_layers) - 1.0) *
          norm_x;
  b.dh = g.dh;
  return b;
}

TrialResult execute_trial(const ExperimentConfig& cfg, const GcnModel& model,
                          const GroupSetup& g, std::size_t n, double eps_small,
                          std::size_t trial, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialResult r;
  r.N = g.N;
  r.n = n;
  r.d_target = g.d_target;
  r.c_d = g.c_d;
  r.trial = trial;
  r.seed = seed;

  const SignalFunction x = cfg.signal_fn();
  const auto latents = sample_latents(g.N, derive_seed(seed, 1));
  const auto inst = sample_graph(g.graphon, x, latents, derive_seed(seed, 2));
  const auto sub = downsample(inst, n, cfg.downsample_kind(), derive_seed(seed, 3));

  double scale_large = 0.0, scale_small = 0.0;
  bool valid = true;
  switch (cfg.normalizer_kind()) {
    case NormalizerKind::EpsLarge:
      scale_large = g.eps;
      scale_small = g.eps;
      break;
    case NormalizerKind::EpsSmall:
      scale_large = g.eps;
      scale_small = eps_small;
      break;
    case NormalizerKind::Empirical:
      scale_large = empirical_density(inst.graph);
      scale_small = n >= 2 ? empirical_density(sub.graph) : 0.0;
      valid = scale_large > 0.0 && scale_small > 0.0;
      break;
  }

  if (valid) {
    const auto shift_large = make_shift_by_eps_n(inst.graph, scale_large);
    const auto shift_small = make_shift_by_eps_n(sub.graph, scale_small);
    const auto y_large = induce_signal(gcn_forward(model, shift_large, inst.signal));
    const auto y_small = induce_signal(gcn_forward(model, shift_small, sub.signal));
    try {
      r.e_r = relative_error(y_large, y_small);
      r.abs_err = l2_distance(y_large, y_small);
    } catch (const degenerate_error&) {
      r.degenerate = true;
      r.e_r = 0.0;
      r.abs_err = 0.0;
    }
  } else {
    r.degenerate = true;
  }

  if (cfg.record_timing) {
    r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  }
  return r;
}

struct TrialSpec {
  std::size_t group;
  std::size_t n_index;
  std::size_t trial;
  std::uint64_t seed;
};

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::size_t N, std::size_t n,
                         double d, std::size_t trial) {
  return derive_seed(master, static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(n),
                     std::bit_cast<std::uint64_t>(d), static_cast<std::uint64_t>(trial));
}

TrialResult run_trial(const ExperimentConfig& cfg, std::size_t N, std::size_t n,
                      std::uint64_t seed) {
  cfg.validate();
  if (n < 1 || n > N) throw config_error("run_trial: need 1 <= n <= N");
  ExperimentConfig local = cfg;
  local.n_list = {n};
  const GroupSetup g = build_group(local, N, cfg.degree_list.front());
  const double rho =
      std::max(1.5 * max_abs_eigenvalue(g.spectrum) / g.eps, 1e-6);
  GcnModel model = random_init(cfg.gcn_layers, cfg.gcn_width, cfg.gcn_taps,
                               cfg.weight_seed, rho, cfg.activation_kind());
  const double eps_small = g.eps_at_n.empty() ? g.eps : g.eps_at_n.front();
  return execute_trial(local, model, g, n, eps_small, 0, seed);
}

SweepOutput run_sweep(const ExperimentConfig& cfg, SweepKind kind) {
  cfg.validate();

  std::vector<std::pair<std::size_t, double>> group_keys;  // (N, d)
  if (kind == SweepKind::Scale) {
    for (const std::size_t N : cfg.N_list)
      group_keys.emplace_back(N, cfg.degree_list.front());
  } else {
    for (const double d : cfg.degree_list)
      group_keys.emplace_back(cfg.N_list.front(), d);
  }
  for (const auto& [N, d] : group_keys)
    for (const std::size_t n : cfg.n_list)
      if (n > N)
        throw config_error("sweep: n = " + std::to_string(n) +
                           " exceeds N = " + std::to_string(N));

  std::vector<GroupSetup> groups;
  groups.reserve(group_keys.size());
  for (const auto& [N, d] : group_keys) groups.push_back(build_group(cfg, N, d));

  // One model per sweep: AS3 is enforced over the widest normalized spectrum
  // among the groups, so the same weights are valid on every cell.
  double rho = 1e-6;
  for (const auto& g : groups)
    rho = std::max(rho, 1.5 * max_abs_eigenvalue(g.spectrum) / g.eps);
  GcnModel model = random_init(cfg.gcn_layers, cfg.gcn_width, cfg.gcn_taps,
                               cfg.weight_seed, rho, cfg.activation_kind());
  const double a_h = model_max_lipschitz(model, rho);
  const double norm_x = cfg.signal_fn().l2_norm();
  for (auto& g : groups) g.dh = model_max_delta_h(model, g.spectrum);

  std::vector<TrialSpec> specs;
  specs.reserve(groups.size() * cfg.n_list.size() * cfg.trials);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        specs.push_back({gi, ni, t,
                         trial_seed(cfg.master_seed, groups[gi].N, cfg.n_list[ni],
                                    groups[gi].d_target, t)});
      }
    }
  }

  SweepOutput out;
  out.results.resize(specs.size());
  std::atomic<std::size_t> cursor{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= specs.size()) break;
      const TrialSpec& s = specs[k];
      const GroupSetup& g = groups[s.group];
      const double eps_small = g.eps_at_n.empty() ? g.eps : g.eps_at_n[s.n_index];
      out.results[k] = execute_trial(cfg, model, g, cfg.n_list[s.n_index], eps_small,
                                     s.trial, s.seed);
    }
  };
  const std::size_t nthreads = std::min<std::size_t>(cfg.threads, specs.size());
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Aggregate in (group, n) order.
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
      SweepSummary cell;
      cell.N = groups[gi].N;
      cell.n = cfg.n_list[ni];
      cell.d_target = groups[gi].d_target;
      cell.c_d = groups[gi].c_d;
      double sum = 0.0, sum_abs = 0.0;
      std::vector<double> values;
      for (const auto& r : out.results) {
        if (r.N != cell.N || r.n != cell.n || r.d_target != cell.d_target) continue;
        if (r.degenerate) {
          ++cell.degenerate;
          continue;
        }
        values.push_back(r.e_r);
        sum += r.e_r;
        sum_abs += r.abs_err;
      }
      cell.count = values.size();
      if (cell.count > 0) {
        cell.mean_er = sum / static_cast<double>(cell.count);
        cell.mean_abs = sum_abs / static_cast<double>(cell.count);
      }
      if (cell.count > 1) {
        double ss = 0.0;
        for (const double v : values) ss += (v - cell.mean_er) * (v - cell.mean_er);
        cell.sd_er = std::sqrt(ss / static_cast<double>(cell.count - 1));
      }
      cell.bound_rhs =
          theorem1_bound(cell_bound_inputs(cfg, groups[gi], cell.n, a_h, norm_x)).total;
      out.summaries.push_back(cell);
    }
  }

  out.trends = evaluate_trends(out.summaries, kind);
  return out;
}

std::vector<TrendCheck> evaluate_trends(std::span<const SweepSummary> summaries,
                                        SweepKind kind) {
  std::vector<TrendCheck> checks;
  const auto key = [&](const SweepSummary& s) {
    return kind == SweepKind::Scale ? static_cast<double>(s.N) : s.d_target;
  };
  const auto key_name = [&](double k) {
    std::ostringstream os;
    if (kind == SweepKind::Scale) {
      os << "N=" << static_cast<std::size_t>(k);
    } else {
      os << "d=" << k;
    }
    return os.str();
  };

  std::vector<double> group_values;
  for (const auto& s : summaries) {
    if (std::find(group_values.begin(), group_values.end(), key(s)) ==
        group_values.end())
      group_values.push_back(key(s));
  }
  std::sort(group_values.begin(), group_values.end());

  // Within-group: mean e_r strictly decreasing in n.
  for (const double gk : group_values) {
    std::vector<const SweepSummary*> cells;
    for (const auto& s : summaries)
      if (key(s) == gk) cells.push_back(&s);
    std::sort(cells.begin(), cells.end(),
              [](const auto* a, const auto* b) { return a->n < b->n; });
    bool pass = true;
    for (std::size_t i = 0; i + 1 < cells.size(); ++i)
      if (!(cells[i]->mean_er > cells[i + 1]->mean_er)) pass = false;
    checks.push_back({"mean e_r strictly decreasing in n (" + key_name(gk) + ")",
                      pass, false});
  }

  // Cross-group ordering at each shared n. Scale: larger N should have the
  // larger error; degree: larger d the smaller error. A violation within one
  // standard error is a warning, beyond it a failure.
  std::vector<std::size_t> n_values;
  for (const auto& s : summaries)
    if (std::find(n_values.begin(), n_values.end(), s.n) == n_values.end())
      n_values.push_back(s.n);
  std::sort(n_values.begin(), n_values.end());

  for (std::size_t gi = 0; gi + 1 < group_values.size(); ++gi) {
    // lo should have error <= hi's at every shared n.
    const double key_lo = kind == SweepKind::Scale ? group_values[gi] : group_values[gi + 1];
    const double key_hi = kind == SweepKind::Scale ? group_values[gi + 1] : group_values[gi];
    bool pass = true;
    bool warning = false;
    for (const std::size_t n : n_values) {
      const SweepSummary* lo = nullptr;
      const SweepSummary* hi = nullptr;
      for (const auto& s : summaries) {
        if (s.n != n) continue;
        if (key(s) == key_lo) lo = &s;
        if (key(s) == key_hi) hi = &s;
      }
      if (lo == nullptr || hi == nullptr || lo->count == 0 || hi->count == 0) continue;
      const double diff = hi->mean_er - lo->mean_er;
      if (diff >= 0.0) continue;
      const double se_lo =
          lo->count > 0 ? lo->sd_er / std::sqrt(static_cast<double>(lo->count)) : 0.0;
      const double se_hi =
          hi->count > 0 ? hi->sd_er / std::sqrt(static_cast<double>(hi->count)) : 0.0;
      if (-diff <= se_lo + se_hi) {
        warning = true;
      } else {
        pass = false;
      }
    }
    checks.push_back({"mean e_r(" + key_name(key_hi) + ") >= mean e_r(" +
                          key_name(key_lo) + ") at each n",
                      pass, warning});
  }

  // Bound dominance: empirical mean absolute error under the Theorem 1 RHS.
  bool dominance = true;
  for (const auto& s : summaries)
    if (s.count > 0 && !(s.mean_abs <= s.bound_rhs)) dominance = false;
  checks.push_back({"mean ||Y_N - Y_n|| <= theorem-1 RHS in every cell", dominance, false});

  return checks;
}

void write_results_csv(const std::filesystem::path& path,
                       std::span<const TrialResult> results) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path.string());
  out << "N,n,d_target,c_d,trial,seed,e_r,degenerate,wall_ms\n";
  for (const auto& r : results) {
    out << r.N << ',' << r.n << ',' << format_real(r.d_target) << ','
        << format_real(r.c_d) << ',' << r.trial << ',' << r.seed << ','
        << format_real(r.e_r) << ',' << (r.degenerate ? 1 : 0) << ',' << r.wall_ms
        << '\n';
  }
  if (!out) throw io_error("write failed: " + path.string());
}

void write_summary_csv(const std::filesystem::path& path,
                       std::span<const SweepSummary> summaries) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path.string());
  out << "N,n,d_target,mean_er,sd_er,count,bound_rhs\n";
  for (const auto& s : summaries) {
    out << s.N << ',' << s.n << ',' << format_real(s.d_target) << ','
        << format_real(s.mean_er) << ',' << format_real(s.sd_er) << ',' << s.count
        << ',' << format_real(s.bound_rhs) << '\n';
  }
  if (!out) throw io_error("write failed: " + path.string());
}

std::vector<SweepSummary> read_summary_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "N,n,d_target,mean_er,sd_er,count,bound_rhs")
    throw format_error(path.string() + ": bad summary header");
  std::vector<SweepSummary> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7)
      throw format_error(path.string() + ":" + std::to_string(lineno) + ": bad row");
    SweepSummary s;
    try {
      s.N = std::stoull(fields[0]);
      s.n = std::stoull(fields[1]);
      s.d_target = std::stod(fields[2]);
      s.mean_er = std::stod(fields[3]);
      s.sd_er = std::stod(fields[4]);
      s.count = std::stoull(fields[5]);
      s.bound_rhs = std::stod(fields[6]);
    } catch (const std::exception&) {
      throw format_error(path.string() + ":" + std::to_string(lineno) + ": bad row");
    }
    out.push_back(s);
  }
  return out;
}

std::filesystem::path make_run_dir(const std::filesystem::path& out_dir,
                                   const std::string& sweep, std::string label) {
  if (label.empty()) {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    localtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
    label = buf;
  }
  std::filesystem::path dir = out_dir / sweep / label;
  int suffix = 2;
  while (std::filesystem::exists(dir)) {
    dir = out_dir / sweep / (label + "-" + std::to_string(suffix));
    ++suffix;
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw io_error("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

std::filesystem::path write_sweep_outputs(const ExperimentConfig& cfg, SweepKind kind,
                                          const SweepOutput& output,
                                          const std::string& label) {
  const std::string name = kind == SweepKind::Scale ? "scale" : "degree";
  const auto dir = make_run_dir(cfg.out_dir, name, label);
  write_results_csv(dir / "results.csv", output.results);
  write_summary_csv(dir / "summary.csv", output.summaries);
  emit_plot(output.summaries, dir / "figure.svg");
  std::ofstream echo(dir / "config.echo");
  if (!echo) throw io_error("cannot write " + (dir / "config.echo").string());
  echo << cfg.echo();
  return dir;
}

}  // namespace sparsegcn
