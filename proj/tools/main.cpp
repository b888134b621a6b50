#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "sparsegcn/bounds.hpp"
#include "sparsegcn/config.hpp"
#include "sparsegcn/experiment.hpp"
#include "sparsegcn/io.hpp"
#include "sparsegcn/rng.hpp"
#include "sparsegcn/svg.hpp"

namespace fs = std::filesystem;
using namespace sparsegcn;

namespace {

struct GlobalArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
  std::size_t threads = 0;
};

ExperimentConfig load_config(const GlobalArgs& g) {
  ExperimentConfig cfg =
      g.config_path.empty() ? ExperimentConfig{} : ExperimentConfig::from_file(g.config_path);
  if (g.seed_set) cfg.master_seed = g.seed;
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  if (g.threads > 0) cfg.threads = g.threads;
  cfg.validate();
  return cfg;
}

// The graphon and shared model are rebuilt from the config the same way the
// sweeps build them, so standalone subcommands match sweep cells exactly.
struct ModelContext {
  double c_d;
  double eps;
  double t_N;
  Graphon graphon{Kernel(0.0), 1.0};
  SpectrumEstimate spectrum;
  double rho;
};

ModelContext make_context(const ExperimentConfig& cfg, std::size_t N, double degree) {
  ModelContext ctx{};
  const ScaleFunction scale = cfg.scale_fn();
  ctx.t_N = scale(N);
  ctx.c_d = cfg.c_d ? *cfg.c_d : calibrate_cd(scale, N, degree, cfg.quad_points);
  ctx.graphon = Graphon(Kernel(ctx.c_d), ctx.t_N);
  ctx.eps = edge_density(ctx.graphon, cfg.quad_points);
  ctx.spectrum = graphon_spectrum(ctx.graphon, cfg.spectrum_points);
  const double lam = ctx.spectrum.eigenvalues.empty()
                         ? 0.0
                         : std::abs(ctx.spectrum.eigenvalues.front());
  ctx.rho = std::max(1.5 * lam / ctx.eps, 1e-6);
  return ctx;
}

void print_check_rows(const CheckReport& report, std::ostream& out) {
  for (const auto& row : report) {
    out << (row.pass ? "[PASS] " : "[FAIL] ") << row.check << "  N=" << row.N
        << " trials=" << row.trials << "  empirical=" << format_real(row.empirical_mean)
        << "  bound=" << format_real(row.bound) << '\n';
  }
}

void write_check_csv(const fs::path& path, const CheckReport& report) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path.string());
  out << "check,N,n,trials,empirical_mean,bound,pass\n";
  for (const auto& row : report) {
    out << row.check << ',' << row.N << ',' << row.n << ',' << row.trials << ','
        << format_real(row.empirical_mean) << ',' << format_real(row.bound) << ','
        << (row.pass ? 1 : 0) << '\n';
  }
}

int dispatch(int argc, char** argv) {
  CLI::App app{"sparse graph downsampling and GCN transferability toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs g;
  app.add_option("--config", g.config_path, "experiment config file (key=value)");
  auto* seed_opt = app.add_option("--seed", g.seed, "master seed override");
  app.add_option("--out", g.out_dir, "output directory override");
  app.add_option("--threads", g.threads, "worker thread override");

  // generate
  auto* cmd_gen = app.add_subcommand("generate", "sample a graph/signal/latents triple");
  std::size_t gen_N = 0;
  double gen_degree = 0.0;
  cmd_gen->add_option("--N", gen_N, "graph size (default: first of N_list)");
  cmd_gen->add_option("--degree", gen_degree, "target degree (default: first of degree_list)");

  // downsample
  auto* cmd_down = app.add_subcommand("downsample", "downsample a stored instance");
  std::size_t down_n = 0;
  std::string down_mode;
  std::string down_graph, down_signal, down_latents;
  cmd_down->add_option("--n", down_n, "downsampled size")->required();
  cmd_down->add_option("--mode", down_mode, "induced or resample (default: config)");
  cmd_down->add_option("--graph", down_graph, "input graph file (default: <out>/graph.txt)");
  cmd_down->add_option("--signal", down_signal, "input signal file");
  cmd_down->add_option("--latents", down_latents, "input latents file");

  // forward
  auto* cmd_fwd = app.add_subcommand("forward", "run the GCN on a stored graph");
  std::string fwd_graph, fwd_signal, fwd_model, fwd_save_model, fwd_output;
  double fwd_eps = 0.0;
  bool fwd_by_n = false;
  cmd_fwd->add_option("--graph", fwd_graph, "input graph file (default: <out>/graph.txt)");
  cmd_fwd->add_option("--signal", fwd_signal, "input signal file");
  cmd_fwd->add_option("--model", fwd_model, "load a serialized model instead of random init");
  cmd_fwd->add_option("--save-model", fwd_save_model, "write the model used");
  cmd_fwd->add_option("--output", fwd_output, "output signal file (default: <out>/output.txt)");
  auto* eps_opt = cmd_fwd->add_option("--eps", fwd_eps, "normalize by eps*n with this eps");
  cmd_fwd->add_flag("--by-n", fwd_by_n, "normalize by n (default: eps(N) of the config model)");

  // bound
  auto* cmd_bound = app.add_subcommand("bound", "evaluate the transferability bound RHS");
  std::size_t bound_N = 0, bound_n = 0;
  double bound_degree = 0.0;
  cmd_bound->add_option("--N", bound_N, "large size (default: first of N_list)");
  cmd_bound->add_option("--n", bound_n, "small size (default: first of n_list)");
  cmd_bound->add_option("--degree", bound_degree, "target degree (default: first of degree_list)");

  // check-lemmas
  auto* cmd_check = app.add_subcommand(
      "check-lemmas", "Monte Carlo validation of the sampling lemmas and order statistics");

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "run the scale or degree sweep");
  std::string sweep_kind;
  std::string sweep_label;
  cmd_sweep->add_option("kind", sweep_kind, "scale or degree")->required();
  cmd_sweep->add_option("--label", sweep_label, "run directory name (default: timestamp)");

  // plot
  auto* cmd_plot = app.add_subcommand("plot", "render a summary.csv as SVG");
  std::string plot_summary, plot_svg;
  cmd_plot->add_option("--summary", plot_summary, "summary.csv path")->required();
  cmd_plot->add_option("--svg", plot_svg, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  g.seed_set = seed_opt->count() > 0;

  const ExperimentConfig cfg = load_config(g);
  const fs::path out_dir = cfg.out_dir;

  if (cmd_gen->parsed()) {
    const std::size_t N = gen_N > 0 ? gen_N : cfg.N_list.front();
    const double degree = gen_degree > 0.0 ? gen_degree : cfg.degree_list.front();
    const ModelContext ctx = make_context(cfg, N, degree);
    const auto latents = sample_latents(N, derive_seed(cfg.master_seed, 1));
    const auto inst = sample_graph(ctx.graphon, cfg.signal_fn(), latents,
                                   derive_seed(cfg.master_seed, 2));
    fs::create_directories(out_dir);
    write_graph(out_dir / "graph.txt", inst.graph);
    write_values(out_dir / "signal.txt", inst.signal);
    write_values(out_dir / "latents.txt", inst.latents.values);
    std::cout << "generated N=" << N << " m=" << inst.graph.num_edges()
              << " (c_d=" << format_real(ctx.c_d) << ") into " << out_dir.string() << '\n';
    return 0;
  }

  if (cmd_down->parsed()) {
    const fs::path graph_path = down_graph.empty() ? out_dir / "graph.txt" : fs::path(down_graph);
    const fs::path signal_path =
        down_signal.empty() ? out_dir / "signal.txt" : fs::path(down_signal);
    const fs::path latents_path =
        down_latents.empty() ? out_dir / "latents.txt" : fs::path(down_latents);
    SampledInstance inst{read_graph(graph_path), read_values(signal_path),
                         LatentFeatures{read_values(latents_path)},
                         Graphon(Kernel(0.0), 1.0), cfg.signal_fn()};
    const std::size_t N = inst.graph.num_nodes();
    if (inst.signal.size() != N || inst.latents.size() != N)
      throw config_error("downsample: graph/signal/latents sizes disagree");
    const double degree = cfg.degree_list.front();
    const ModelContext ctx = make_context(cfg, N, degree);
    inst.graphon = ctx.graphon;
    ExperimentConfig mode_cfg = cfg;
    if (!down_mode.empty()) mode_cfg.downsample_mode = down_mode;
    const auto sub = downsample(inst, down_n, mode_cfg.downsample_kind(),
                                derive_seed(cfg.master_seed, 3));
    fs::create_directories(out_dir);
    write_graph(out_dir / "downsampled.graph.txt", sub.graph);
    write_values(out_dir / "downsampled.signal.txt", sub.signal);
    write_values(out_dir / "downsampled.latents.txt", sub.latents.values);
    std::cout << "downsampled to n=" << down_n << " m=" << sub.graph.num_edges()
              << " into " << out_dir.string() << '\n';
    return 0;
  }

  if (cmd_fwd->parsed()) {
    const fs::path graph_path = fwd_graph.empty() ? out_dir / "graph.txt" : fs::path(fwd_graph);
    const fs::path signal_path =
        fwd_signal.empty() ? out_dir / "signal.txt" : fs::path(fwd_signal);
    const SparseGraph graph = read_graph(graph_path);
    const GraphSignal signal = read_values(signal_path);
    const ModelContext ctx = make_context(cfg, graph.num_nodes(), cfg.degree_list.front());
    GcnModel model = fwd_model.empty()
                         ? random_init(cfg.gcn_layers, cfg.gcn_width, cfg.gcn_taps,
                                       cfg.weight_seed, ctx.rho, cfg.activation_kind())
                         : read_model(fwd_model);
    NormalizedShift shift = fwd_by_n ? make_shift_by_n(graph)
                            : eps_opt->count() > 0
                                ? make_shift_by_eps_n(graph, fwd_eps)
                                : make_shift_by_eps_n(graph, ctx.eps);
    const GraphSignal y = gcn_forward(model, shift, signal);
    const fs::path output_path =
        fwd_output.empty() ? out_dir / "output.txt" : fs::path(fwd_output);
    fs::create_directories(output_path.parent_path().empty() ? "." : output_path.parent_path());
    write_values(output_path, y);
    if (!fwd_save_model.empty()) write_model(fwd_save_model, model);
    std::cout << "forward pass on n=" << graph.num_nodes() << " written to "
              << output_path.string() << '\n';
    return 0;
  }

  if (cmd_bound->parsed()) {
    const std::size_t N = bound_N > 0 ? bound_N : cfg.N_list.front();
    const std::size_t n = bound_n > 0 ? bound_n : cfg.n_list.front();
    const double degree = bound_degree > 0.0 ? bound_degree : cfg.degree_list.front();
    const ModelContext ctx = make_context(cfg, N, degree);
    const GcnModel model = random_init(cfg.gcn_layers, cfg.gcn_width, cfg.gcn_taps,
                                       cfg.weight_seed, ctx.rho, cfg.activation_kind());
    double a_h = 0.0, dh = 0.0;
    model.for_each_filter([&](const FilterTaps& f) {
      a_h = std::max(a_h, filter_lipschitz(f, -ctx.rho, ctx.rho));
      dh = std::max(dh, delta_h(f, ctx.spectrum));
    });
    const double norm_x = cfg.signal_fn().l2_norm();
    BoundInputs b;
    b.N = N;
    b.n = n;
    b.d = cfg.c_d ? static_cast<double>(N - 1) * ctx.eps : degree;
    b.t_N = ctx.t_N;
    b.L1 = kernel_l1(Kernel(ctx.c_d), ctx.t_N, cfg.quad_points);
    b.L2sq = kernel_l2sq(Kernel(ctx.c_d), ctx.t_N, cfg.quad_points);
    b.A_Rplus = Kernel(ctx.c_d).lipschitz();
    b.A_s = cfg.signal_fn().lipschitz();
    b.A_h = a_h;
    b.C_m = 2.0 * static_cast<double>(cfg.gcn_layers) *
            std::pow(static_cast<double>(cfg.gcn_width),
                     static_cast<double>(cfg.gcn_layers) - 1.0) *
            norm_x;
    b.dh = dh;
    const Theorem1Bound t1 = theorem1_bound(b);
    std::cout << "N=" << N << " n=" << n << " d=" << format_real(b.d)
              << " c_d=" << format_real(ctx.c_d) << '\n'
              << "L1=" << format_real(b.L1) << " L2sq=" << format_real(b.L2sq)
              << " A_Rplus=" << format_real(b.A_Rplus) << " A_h=" << format_real(b.A_h)
              << " delta_h=" << format_real(b.dh) << " C_m=" << format_real(b.C_m) << '\n'
              << "theorem1 filter_term   = " << format_real(t1.filter_term) << '\n'
              << "theorem1 signal_term   = " << format_real(t1.signal_term) << '\n'
              << "theorem1 response_term = " << format_real(t1.response_term) << '\n'
              << "theorem1 total         = " << format_real(t1.total) << '\n'
              << "theorem2 total         = " << format_real(theorem2_bound(b, norm_x))
              << '\n';
    return 0;
  }

  if (cmd_check->parsed()) {
    CheckReport report;
    const std::vector<std::size_t> l2_sizes{64, 256, 1024};
    const auto r2 = check_lemma2(cfg.signal_fn(), l2_sizes, 200,
                                 derive_seed(cfg.master_seed, 0x6c32));
    report.insert(report.end(), r2.begin(), r2.end());
    const std::vector<std::size_t> l3_sizes{128, 256, 512};
    const auto r3 = check_lemma3(cfg.scale_fn(), cfg.degree_list.front(), l3_sizes, 100,
                                 derive_seed(cfg.master_seed, 0x6c33), cfg.quad_points);
    report.insert(report.end(), r3.begin(), r3.end());
    const double t = cfg.scale_fn()(cfg.N_list.front());
    const auto r4 = check_lemma4(Graphon(Kernel(1.0), t), Graphon(Kernel(2.0), t), 256);
    report.insert(report.end(), r4.begin(), r4.end());
    const std::vector<std::size_t> ranks{1, 5000, 10000};
    const auto r5 =
        check_order_statistics(10000, 200, ranks, derive_seed(cfg.master_seed, 0x6f73));
    report.insert(report.end(), r5.begin(), r5.end());

    print_check_rows(report, std::cout);
    fs::create_directories(out_dir);
    write_check_csv(out_dir / "checks.csv", report);
    const bool all_pass =
        std::all_of(report.begin(), report.end(), [](const auto& r) { return r.pass; });
    std::cout << (all_pass ? "all checks passed" : "CHECK FAILURES PRESENT") << '\n';
    return all_pass ? 0 : 1;
  }

  if (cmd_sweep->parsed()) {
    SweepKind kind;
    if (sweep_kind == "scale") {
      kind = SweepKind::Scale;
    } else if (sweep_kind == "degree") {
      kind = SweepKind::Degree;
    } else {
      throw config_error("sweep: kind must be 'scale' or 'degree'");
    }
    const SweepOutput output = run_sweep(cfg, kind);
    const fs::path dir = write_sweep_outputs(cfg, kind, output, sweep_label);
    for (const auto& s : output.summaries) {
      std::cout << "N=" << s.N << " n=" << s.n << " d=" << format_real(s.d_target)
                << "  mean_er=" << format_real(s.mean_er)
                << " sd=" << format_real(s.sd_er) << " count=" << s.count
                << " bound=" << format_real(s.bound_rhs) << '\n';
    }
    for (const auto& t : output.trends) {
      std::cout << (t.pass ? (t.warning ? "[WARN] " : "[PASS] ") : "[FAIL] ")
                << t.description << '\n';
    }
    std::cout << "outputs in " << dir.string() << '\n';
    return 0;
  }

  if (cmd_plot->parsed()) {
    const auto summaries = read_summary_csv(plot_summary);
    emit_plot(summaries, plot_svg);
    std::cout << "wrote " << plot_svg << '\n';
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const io_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
