#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sparsegcn/bounds.hpp"
#include "sparsegcn/config.hpp"
#include "sparsegcn/experiment.hpp"
#include "sparsegcn/gcn.hpp"
#include "sparsegcn/io.hpp"
#include "sparsegcn/kernel.hpp"
#include "sparsegcn/sampler.hpp"
#include "sparsegcn/stepfun.hpp"
#include "sparsegcn/svg.hpp"

namespace py = pybind11;
using namespace sparsegcn;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse random graph model, graphon-preserving downsampling, "
            "polynomial-filter GCNs, and transferability bound evaluation.";

  py::register_exception<infeasible_error>(m, "InfeasibleError", PyExc_ValueError);
  py::register_exception<degenerate_error>(m, "DegenerateError", PyExc_ArithmeticError);
  py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

  // kernel model -----------------------------------------------------------
  py::class_<Kernel>(m, "Kernel")
      .def(py::init<double>(), py::arg("c_d"))
      .def_property_readonly("c_d", &Kernel::cd)
      .def_property_readonly("lipschitz", &Kernel::lipschitz)
      .def("eval", &Kernel::eval, py::arg("u"), py::arg("v"));

  py::class_<ScaleFunction>(m, "ScaleFunction")
      .def(py::init<double>(), py::arg("exponent") = 0.5)
      .def_property_readonly("exponent", &ScaleFunction::exponent)
      .def("__call__", &ScaleFunction::operator(), py::arg("n"));

  py::class_<SignalFunction>(m, "SignalFunction")
      .def_static("cosine", &SignalFunction::cosine)
      .def_static("constant", &SignalFunction::constant, py::arg("value"))
      .def("__call__", &SignalFunction::operator(), py::arg("u"))
      .def_property_readonly("lipschitz", &SignalFunction::lipschitz)
      .def("l2_norm", &SignalFunction::l2_norm, py::arg("quad_points") = 4096);

  py::class_<Graphon>(m, "Graphon")
      .def(py::init<Kernel, double>(), py::arg("kernel"), py::arg("t"))
      .def_property_readonly("t", &Graphon::t)
      .def_property_readonly("kernel", &Graphon::kernel)
      .def("eval", &Graphon::eval, py::arg("u"), py::arg("v"));

  m.def("edge_density", &edge_density, py::arg("graphon"), py::arg("quad_points") = 2048);
  m.def("avg_degree", &avg_degree, py::arg("graphon"), py::arg("n"),
        py::arg("quad_points") = 2048);
  m.def("kernel_l1", &kernel_l1, py::arg("kernel"), py::arg("t"),
        py::arg("quad_points") = 2048);
  m.def("kernel_l2sq", &kernel_l2sq, py::arg("kernel"), py::arg("t"),
        py::arg("quad_points") = 2048);
  m.def("calibrate_cd", &calibrate_cd, py::arg("scale"), py::arg("n"),
        py::arg("target_d"), py::arg("quad_points") = 2048);

  // sampling ---------------------------------------------------------------
  py::class_<LatentFeatures>(m, "LatentFeatures")
      .def_readonly("values", &LatentFeatures::values)
      .def("__len__", &LatentFeatures::size);

  py::class_<SparseGraph>(m, "SparseGraph")
      .def_static("from_edges", &SparseGraph::from_edges, py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_nodes", &SparseGraph::num_nodes)
      .def_property_readonly("num_edges", &SparseGraph::num_edges)
      .def("degree", &SparseGraph::degree, py::arg("i"))
      .def("has_edge", &SparseGraph::has_edge, py::arg("i"), py::arg("j"))
      .def("neighbors",
           [](const SparseGraph& g, std::size_t i) {
             const auto nbrs = g.neighbors(i);
             return std::vector<std::uint32_t>(nbrs.begin(), nbrs.end());
           },
           py::arg("i"))
      .def("edge_list", &SparseGraph::edge_list);

  py::class_<SampledInstance>(m, "SampledInstance")
      .def_readonly("graph", &SampledInstance::graph)
      .def_readonly("signal", &SampledInstance::signal)
      .def_readonly("latents", &SampledInstance::latents)
      .def_readonly("graphon", &SampledInstance::graphon);

  py::enum_<DownsampleMode>(m, "DownsampleMode")
      .value("INDUCED", DownsampleMode::Induced)
      .value("RESAMPLE", DownsampleMode::Resample);

  m.def("sample_latents", &sample_latents, py::arg("n"), py::arg("seed"));
  m.def("sample_graph", &sample_graph, py::arg("graphon"), py::arg("signal"),
        py::arg("latents"), py::arg("seed"));
  m.def("downsample", &downsample, py::arg("instance"), py::arg("n"), py::arg("mode"),
        py::arg("seed"));
  m.def("empirical_density", &empirical_density, py::arg("graph"));

  // gcn engine -------------------------------------------------------------
  py::class_<FilterTaps>(m, "FilterTaps")
      .def(py::init([](std::vector<double> taps) { return FilterTaps{std::move(taps)}; }),
           py::arg("taps"))
      .def_readwrite("taps", &FilterTaps::taps);

  py::enum_<Activation>(m, "Activation")
      .value("RELU", Activation::Relu)
      .value("TANH", Activation::Tanh);

  py::class_<GcnModel>(m, "GcnModel")
      .def_property_readonly("layers", &GcnModel::layers)
      .def_property_readonly("width", &GcnModel::width)
      .def_property_readonly("taps_per_filter", &GcnModel::taps_per_filter)
      .def_property_readonly("activation", &GcnModel::activation)
      .def("taps",
           [](const GcnModel& mdl, std::size_t l, std::size_t a, std::size_t b) {
             return mdl.taps(l, a, b);
           },
           py::arg("layer"), py::arg("f_in"), py::arg("f_out"));

  py::class_<NormalizedShift>(m, "NormalizedShift")
      .def_readonly("scale", &NormalizedShift::scale);

  m.def("make_shift_by_n", &make_shift_by_n, py::arg("graph"), py::keep_alive<0, 1>());
  m.def("make_shift_by_eps_n", &make_shift_by_eps_n, py::arg("graph"), py::arg("eps"),
        py::keep_alive<0, 1>());
  m.def("graph_convolve", &graph_convolve, py::arg("taps"), py::arg("shift"), py::arg("x"));
  m.def("gcn_forward", &gcn_forward, py::arg("model"), py::arg("shift"), py::arg("x"));
  m.def("random_init", &random_init, py::arg("layers"), py::arg("width"),
        py::arg("taps_per_filter"), py::arg("seed"), py::arg("spectral_radius_est"),
        py::arg("activation") = Activation::Relu);
  m.def("filter_response",
        [](const FilterTaps& taps, std::vector<double> lambdas) {
          return filter_response(taps, lambdas);
        },
        py::arg("taps"), py::arg("lambdas"));
  m.def("filter_lipschitz", &filter_lipschitz, py::arg("taps"), py::arg("lo"), py::arg("hi"));

  // continuous forms -------------------------------------------------------
  py::class_<StepFunction1D>(m, "StepFunction1D")
      .def(py::init<std::vector<double>>(), py::arg("values"))
      .def_property_readonly("values", &StepFunction1D::values)
      .def("__len__", &StepFunction1D::size)
      .def("__call__", &StepFunction1D::operator(), py::arg("u"))
      .def("l2_norm", &StepFunction1D::l2_norm);

  py::class_<StepFunction2D>(m, "StepFunction2D")
      .def(py::init<std::size_t, std::vector<double>>(), py::arg("n"), py::arg("values"))
      .def_property_readonly("values", &StepFunction2D::values)
      .def("__len__", &StepFunction2D::size)
      .def("__call__", &StepFunction2D::operator(), py::arg("u"), py::arg("v"))
      .def("l2_norm", &StepFunction2D::l2_norm);

  m.def("induce_signal", &induce_signal, py::arg("signal"));
  m.def("induce_graphon", &induce_graphon, py::arg("graph"), py::arg("scale") = 1.0);
  m.def("l2_distance_1d",
        py::overload_cast<const StepFunction1D&, const StepFunction1D&>(&l2_distance),
        py::arg("f"), py::arg("g"));
  m.def("l2_distance_2d",
        py::overload_cast<const StepFunction2D&, const StepFunction2D&>(&l2_distance),
        py::arg("f"), py::arg("g"));
  m.def("l2_distance_to_signal", &l2_distance_to_signal, py::arg("f"), py::arg("signal"),
        py::arg("quad_per_cell") = 16);
  m.def("l2_distance_to_graphon", &l2_distance_to_graphon, py::arg("f"), py::arg("graphon"),
        py::arg("quad_per_cell") = 8);
  m.def("wnn_shift", &wnn_shift, py::arg("w"), py::arg("x"));
  m.def("wnn_convolve", &wnn_convolve, py::arg("taps"), py::arg("w"), py::arg("x"));
  m.def("wnn_forward", &wnn_forward, py::arg("model"), py::arg("w"), py::arg("x"));
  m.def("relative_error", &relative_error, py::arg("y_large"), py::arg("y_small"));

  // bound evaluation -------------------------------------------------------
  py::class_<SpectrumEstimate>(m, "SpectrumEstimate")
      .def_readonly("grid_size", &SpectrumEstimate::grid_size)
      .def_readonly("eigenvalues", &SpectrumEstimate::eigenvalues);

  py::class_<BoundInputs>(m, "BoundInputs")
      .def(py::init<>())
      .def_readwrite("N", &BoundInputs::N)
      .def_readwrite("n", &BoundInputs::n)
      .def_readwrite("d", &BoundInputs::d)
      .def_readwrite("t_N", &BoundInputs::t_N)
      .def_readwrite("L1", &BoundInputs::L1)
      .def_readwrite("L2sq", &BoundInputs::L2sq)
      .def_readwrite("A_Rplus", &BoundInputs::A_Rplus)
      .def_readwrite("A_s", &BoundInputs::A_s)
      .def_readwrite("A_h", &BoundInputs::A_h)
      .def_readwrite("C_m", &BoundInputs::C_m)
      .def_readwrite("delta_h", &BoundInputs::dh);

  py::class_<Theorem1Bound>(m, "Theorem1Bound")
      .def_readonly("total", &Theorem1Bound::total)
      .def_readonly("filter_term", &Theorem1Bound::filter_term)
      .def_readonly("signal_term", &Theorem1Bound::signal_term)
      .def_readonly("response_term", &Theorem1Bound::response_term);

  m.def("graphon_spectrum", &graphon_spectrum, py::arg("graphon"), py::arg("m") = 512);
  m.def("delta_h", &delta_h, py::arg("taps"), py::arg("spectrum"));
  m.def("theorem1_bound", &theorem1_bound, py::arg("inputs"));
  m.def("theorem2_bound", &theorem2_bound, py::arg("inputs"), py::arg("norm_x"));

  py::class_<CheckRow>(m, "CheckRow")
      .def_readonly("check", &CheckRow::check)
      .def_readonly("N", &CheckRow::N)
      .def_readonly("n", &CheckRow::n)
      .def_readonly("trials", &CheckRow::trials)
      .def_readonly("empirical_mean", &CheckRow::empirical_mean)
      .def_readonly("bound", &CheckRow::bound)
      .def_readonly("passed", &CheckRow::pass);

  m.def("check_lemma2",
        [](const SignalFunction& x, std::vector<std::size_t> sizes, std::size_t trials,
           std::uint64_t seed) { return check_lemma2(x, sizes, trials, seed); },
        py::arg("signal"), py::arg("sizes"), py::arg("trials"), py::arg("seed"));
  m.def("check_lemma3",
        [](const ScaleFunction& scale, double target_d, std::vector<std::size_t> sizes,
           std::size_t trials, std::uint64_t seed) {
          return check_lemma3(scale, target_d, sizes, trials, seed);
        },
        py::arg("scale"), py::arg("target_d"), py::arg("sizes"), py::arg("trials"),
        py::arg("seed"));
  m.def("check_lemma4", &check_lemma4, py::arg("g1"), py::arg("g2"), py::arg("m") = 256);
  m.def("check_order_statistics",
        [](std::size_t n, std::size_t trials, std::vector<std::size_t> ranks,
           std::uint64_t seed) { return check_order_statistics(n, trials, ranks, seed); },
        py::arg("n"), py::arg("trials"), py::arg("ranks"), py::arg("seed"));

  // experiment harness -----------------------------------------------------
  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_static("from_file", &ExperimentConfig::from_file, py::arg("path"))
      .def_static("from_string", &ExperimentConfig::from_string, py::arg("text"))
      .def_readwrite("target_degree", &ExperimentConfig::target_degree)
      .def_readwrite("scale_exponent", &ExperimentConfig::scale_exponent)
      .def_readwrite("signal", &ExperimentConfig::signal)
      .def_readwrite("gcn_layers", &ExperimentConfig::gcn_layers)
      .def_readwrite("gcn_width", &ExperimentConfig::gcn_width)
      .def_readwrite("gcn_taps", &ExperimentConfig::gcn_taps)
      .def_readwrite("activation", &ExperimentConfig::activation)
      .def_readwrite("weight_seed", &ExperimentConfig::weight_seed)
      .def_readwrite("normalizer", &ExperimentConfig::normalizer)
      .def_readwrite("N_list", &ExperimentConfig::N_list)
      .def_readwrite("n_list", &ExperimentConfig::n_list)
      .def_readwrite("degree_list", &ExperimentConfig::degree_list)
      .def_readwrite("downsample_mode", &ExperimentConfig::downsample_mode)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("master_seed", &ExperimentConfig::master_seed)
      .def_readwrite("quad_points", &ExperimentConfig::quad_points)
      .def_readwrite("spectrum_points", &ExperimentConfig::spectrum_points)
      .def_readwrite("out_dir", &ExperimentConfig::out_dir)
      .def_readwrite("threads", &ExperimentConfig::threads)
      .def("echo", &ExperimentConfig::echo);

  py::class_<TrialResult>(m, "TrialResult")
      .def_readonly("N", &TrialResult::N)
      .def_readonly("n", &TrialResult::n)
      .def_readonly("d_target", &TrialResult::d_target)
      .def_readonly("c_d", &TrialResult::c_d)
      .def_readonly("trial", &TrialResult::trial)
      .def_readonly("seed", &TrialResult::seed)
      .def_readonly("e_r", &TrialResult::e_r)
      .def_readonly("abs_err", &TrialResult::abs_err)
      .def_readonly("degenerate", &TrialResult::degenerate);

  py::class_<SweepSummary>(m, "SweepSummary")
      .def_readonly("N", &SweepSummary::N)
      .def_readonly("n", &SweepSummary::n)
      .def_readonly("d_target", &SweepSummary::d_target)
      .def_readonly("mean_er", &SweepSummary::mean_er)
      .def_readonly("sd_er", &SweepSummary::sd_er)
      .def_readonly("count", &SweepSummary::count)
      .def_readonly("bound_rhs", &SweepSummary::bound_rhs)
      .def_readonly("mean_abs", &SweepSummary::mean_abs);

  py::enum_<SweepKind>(m, "SweepKind")
      .value("SCALE", SweepKind::Scale)
      .value("DEGREE", SweepKind::Degree);

  py::class_<TrendCheck>(m, "TrendCheck")
      .def_readonly("description", &TrendCheck::description)
      .def_readonly("passed", &TrendCheck::pass)
      .def_readonly("warning", &TrendCheck::warning);

  py::class_<SweepOutput>(m, "SweepOutput")
      .def_readonly("results", &SweepOutput::results)
      .def_readonly("summaries", &SweepOutput::summaries)
      .def_readonly("trends", &SweepOutput::trends);

  m.def("run_trial", &run_trial, py::arg("config"), py::arg("N"), py::arg("n"),
        py::arg("seed"));
  m.def("run_sweep", &run_sweep, py::arg("config"), py::arg("kind"),
        py::call_guard<py::gil_scoped_release>());
  m.def("emit_plot",
        [](const std::vector<SweepSummary>& s, const std::filesystem::path& p) {
          emit_plot(s, p);
        },
        py::arg("summaries"), py::arg("path"));

  // file formats -----------------------------------------------------------
  m.def("write_graph", &write_graph, py::arg("path"), py::arg("graph"));
  m.def("read_graph", &read_graph, py::arg("path"));
  m.def("write_values", &write_values, py::arg("path"), py::arg("values"));
  m.def("read_values", &read_values, py::arg("path"));
  m.def("write_model", &write_model, py::arg("path"), py::arg("model"));
  m.def("read_model", &read_model, py::arg("path"));

  m.attr("__all__") = py::make_tuple(
      "Kernel", "ScaleFunction", "SignalFunction", "Graphon", "edge_density",
      "avg_degree", "kernel_l1", "kernel_l2sq", "calibrate_cd", "LatentFeatures",
      "SparseGraph", "SampledInstance", "DownsampleMode", "sample_latents",
      "sample_graph", "downsample", "empirical_density", "FilterTaps", "Activation",
      "GcnModel", "NormalizedShift", "make_shift_by_n", "make_shift_by_eps_n",
      "graph_convolve", "gcn_forward", "random_init", "filter_response",
      "filter_lipschitz", "StepFunction1D", "StepFunction2D", "induce_signal",
      "induce_graphon", "l2_distance_1d", "l2_distance_2d", "l2_distance_to_signal",
      "l2_distance_to_graphon", "wnn_shift", "wnn_convolve", "wnn_forward",
      "relative_error", "SpectrumEstimate", "BoundInputs", "Theorem1Bound",
      "graphon_spectrum", "delta_h", "theorem1_bound", "theorem2_bound", "CheckRow",
      "check_lemma2", "check_lemma3", "check_lemma4", "check_order_statistics",
      "ExperimentConfig", "TrialResult", "SweepSummary", "SweepKind", "TrendCheck",
      "SweepOutput", "run_trial", "run_sweep", "emit_plot", "write_graph", "read_graph",
      "write_values", "read_values", "write_model", "read_model", "InfeasibleError",
      "DegenerateError", "ConfigError");
}
