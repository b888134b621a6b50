#include "sparsegcn/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sparsegcn/io.hpp"

namespace sparsegcn {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw config_error("config: bad number for " + key + ": '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw config_error("config: bad integer for " + key + ": '" + value + "'");
  return v;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& value, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw config_error("config: empty element in " + key);
    out.push_back(parse(key, item));
  }
  if (out.empty()) throw config_error("config: empty list for " + key);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw config_error("config: bad boolean for " + key + ": '" + value + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str());
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "kernel") {
      cfg.kernel = value;
    } else if (key == "c_d") {
      cfg.c_d = parse_double(key, value);
    } else if (key == "target_degree") {
      cfg.target_degree = parse_double(key, value);
    } else if (key == "scale_exponent") {
      cfg.scale_exponent = parse_double(key, value);
    } else if (key == "signal") {
      cfg.signal = value;
    } else if (key == "gcn_layers") {
      cfg.gcn_layers = parse_u64(key, value);
    } else if (key == "gcn_width") {
      cfg.gcn_width = parse_u64(key, value);
    } else if (key == "gcn_taps") {
      cfg.gcn_taps = parse_u64(key, value);
    } else if (key == "activation") {
      cfg.activation = value;
    } else if (key == "weight_seed") {
      cfg.weight_seed = parse_u64(key, value);
    } else if (key == "normalizer") {
      cfg.normalizer = value;
    } else if (key == "N_list") {
      cfg.N_list = parse_list<std::size_t>(key, value, [](const auto& k, const auto& v) {
        return static_cast<std::size_t>(parse_u64(k, v));
      });
    } else if (key == "n_list") {
      cfg.n_list = parse_list<std::size_t>(key, value, [](const auto& k, const auto& v) {
        return static_cast<std::size_t>(parse_u64(k, v));
      });
    } else if (key == "degree_list") {
      cfg.degree_list = parse_list<double>(key, value, [](const auto& k, const auto& v) {
        return parse_double(k, v);
      });
    } else if (key == "downsample_mode") {
      cfg.downsample_mode = value;
    } else if (key == "trials") {
      cfg.trials = parse_u64(key, value);
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(key, value);
    } else if (key == "quad_points") {
      cfg.quad_points = static_cast<int>(parse_u64(key, value));
    } else if (key == "spectrum_points") {
      cfg.spectrum_points = parse_u64(key, value);
    } else if (key == "record_timing") {
      cfg.record_timing = parse_bool(key, value);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "threads") {
      cfg.threads = parse_u64(key, value);
    } else {
      throw config_error("config: unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (kernel != "exp-product")
    throw config_error("config: unknown kernel '" + kernel + "'");
  if (c_d && *c_d < 0.0) throw config_error("config: c_d must be >= 0");
  if (!(target_degree > 0.0)) throw config_error("config: target_degree must be > 0");
  if (!(scale_exponent > 0.0) || scale_exponent > 1.0)
    throw config_error("config: scale_exponent must be in (0,1]");
  signal_fn();
  activation_kind();
  normalizer_kind();
  downsample_kind();
  if (gcn_layers < 1 || gcn_width < 1 || gcn_taps < 1)
    throw config_error("config: gcn_layers, gcn_width, gcn_taps must be >= 1");
  if (N_list.empty() || n_list.empty() || degree_list.empty())
    throw config_error("config: N_list, n_list, degree_list must be nonempty");
  for (const double d : degree_list)
    if (!(d > 0.0)) throw config_error("config: degrees must be > 0");
  if (trials < 1) throw config_error("config: trials must be >= 1");
  if (quad_points < 16) throw config_error("config: quad_points must be >= 16");
  if (spectrum_points < 16) throw config_error("config: spectrum_points must be >= 16");
  if (threads < 1) throw config_error("config: threads must be >= 1");
}

SignalFunction ExperimentConfig::signal_fn() const {
  if (signal == "cosine") return SignalFunction::cosine();
  if (signal.rfind("constant:", 0) == 0)
    return SignalFunction::constant(parse_double("signal", signal.substr(9)));
  throw config_error("config: unknown signal '" + signal + "'");
}

Activation ExperimentConfig::activation_kind() const {
  if (activation == "relu") return Activation::Relu;
  if (activation == "tanh") return Activation::Tanh;
  throw config_error("config: unknown activation '" + activation + "'");
}

DownsampleMode ExperimentConfig::downsample_kind() const {
  if (downsample_mode == "induced") return DownsampleMode::Induced;
  if (downsample_mode == "resample") return DownsampleMode::Resample;
  throw config_error("config: unknown downsample_mode '" + downsample_mode + "'");
}

NormalizerKind ExperimentConfig::normalizer_kind() const {
  if (normalizer == "eps_N") return NormalizerKind::EpsLarge;
  if (normalizer == "eps_n") return NormalizerKind::EpsSmall;
  if (normalizer == "empirical") return NormalizerKind::Empirical;
  throw config_error("config: unknown normalizer '" + normalizer + "'");
}

std::string ExperimentConfig::echo() const {
  std::ostringstream out;
  const auto list_u = [](const std::vector<std::size_t>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return s.str();
  };
  const auto list_d = [](const std::vector<double>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << format_real(v[i]);
    return s.str();
  };
  out << "kernel = " << kernel << '\n';
  if (c_d) out << "c_d = " << format_real(*c_d) << '\n';
  out << "target_degree = " << format_real(target_degree) << '\n'
      << "scale_exponent = " << format_real(scale_exponent) << '\n'
      << "signal = " << signal << '\n'
      << "gcn_layers = " << gcn_layers << '\n'
      << "gcn_width = " << gcn_width << '\n'
      << "gcn_taps = " << gcn_taps << '\n'
      << "activation = " << activation << '\n'
      << "weight_seed = " << weight_seed << '\n'
      << "normalizer = " << normalizer << '\n'
      << "N_list = " << list_u(N_list) << '\n'
      << "n_list = " << list_u(n_list) << '\n'
      << "degree_list = " << list_d(degree_list) << '\n'
      << "downsample_mode = " << downsample_mode << '\n'
      << "trials = " << trials << '\n'
      << "master_seed = " << master_seed << '\n'
      << "quad_points = " << quad_points << '\n'
      << "spectrum_points = " << spectrum_points << '\n'
      << "record_timing = " << (record_timing ? "true" : "false") << '\n'
      << "out_dir = " << out_dir << '\n'
      << "threads = " << threads << '\n';
  return out.str();
}

}  // namespace sparsegcn
