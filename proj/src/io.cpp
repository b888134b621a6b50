#include "sparsegcn/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sparsegcn {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read " + path.string());
  return in;
}

double parse_real(const std::string& token, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw format_error(path.string() + ": bad real '" + token + "'");
  }
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_graph(const std::filesystem::path& path, const SparseGraph& graph) {
  auto out = open_out(path);
  out << graph.num_nodes() << ' ' << graph.num_edges() << '\n';
  for (const auto& [i, j] : graph.edge_list()) out << i << ' ' << j << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

SparseGraph read_graph(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::size_t n = 0, m = 0;
  if (!(in >> n >> m)) throw format_error(path.string() + ": bad header");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::uint64_t i = 0, j = 0;
    if (!(in >> i >> j)) throw format_error(path.string() + ": truncated edge list");
    if (i >= j || j >= n)
      throw format_error(path.string() + ": edge must satisfy i < j < n");
    edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  }
  return SparseGraph::from_edges(n, std::move(edges));
}

void write_values(const std::filesystem::path& path, const std::vector<double>& values) {
  auto out = open_out(path);
  for (const double v : values) out << format_real(v) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

std::vector<double> read_values(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<double> values;
  std::string token;
  while (in >> token) values.push_back(parse_real(token, path));
  return values;
}

void write_step1d(const std::filesystem::path& path, const StepFunction1D& f) {
  auto out = open_out(path);
  out << f.size() << '\n';
  for (const double v : f.values()) out << format_real(v) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

StepFunction1D read_step1d(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw format_error(path.string() + ": bad header");
  std::vector<double> values(n);
  std::string token;
  for (auto& v : values) {
    if (!(in >> token)) throw format_error(path.string() + ": truncated values");
    v = parse_real(token, path);
  }
  return StepFunction1D(std::move(values));
}

void write_step2d(const std::filesystem::path& path, const StepFunction2D& f) {
  auto out = open_out(path);
  const std::size_t n = f.size();
  out << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out << format_real(f.value(i, j)) << (j + 1 == n ? '\n' : ' ');
    }
  }
  if (!out) throw io_error("write failed: " + path.string());
}

StepFunction2D read_step2d(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw format_error(path.string() + ": bad header");
  std::vector<double> values(n * n);
  std::string token;
  for (auto& v : values) {
    if (!(in >> token)) throw format_error(path.string() + ": truncated values");
    v = parse_real(token, path);
  }
  return StepFunction2D(n, std::move(values));
}

void write_model(const std::filesystem::path& path, const GcnModel& model) {
  auto out = open_out(path);
  out << model.layers() << ' ' << model.width() << ' ' << model.taps_per_filter() << ' '
      << (model.activation() == Activation::Relu ? "relu" : "tanh") << '\n';
  model.for_each_filter([&](const FilterTaps& f) {
    for (const double h : f.taps) out << format_real(h) << '\n';
  });
  if (!out) throw io_error("write failed: " + path.string());
}

GcnModel read_model(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::size_t L = 0, F = 0, K = 0;
  std::string act;
  if (!(in >> L >> F >> K >> act)) throw format_error(path.string() + ": bad header");
  Activation activation;
  if (act == "relu") {
    activation = Activation::Relu;
  } else if (act == "tanh") {
    activation = Activation::Tanh;
  } else {
    throw format_error(path.string() + ": unknown activation '" + act + "'");
  }
  GcnModel model(L, F, K, activation);
  std::string token;
  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t a = 0; a < model.fan_in(l); ++a) {
      for (std::size_t b = 0; b < model.fan_out(l); ++b) {
        for (std::size_t k = 0; k < K; ++k) {
          if (!(in >> token)) throw format_error(path.string() + ": truncated taps");
          model.taps(l, a, b).taps[k] = parse_real(token, path);
        }
      }
    }
  }
  return model;
}

}  // namespace sparsegcn
