#include "sparsegcn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "sparsegcn/io.hpp"

namespace sparsegcn {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 72.0, kRight = 24.0, kTop = 24.0, kBottom = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

std::string fmt_key(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

void emit_plot(std::span<const SweepSummary> summaries,
               const std::filesystem::path& path) {
  if (summaries.empty()) throw std::invalid_argument("emit_plot: empty summary set");

  // One curve per N when several initial sizes are present, otherwise per d.
  std::vector<std::size_t> distinct_N;
  for (const auto& s : summaries)
    if (std::find(distinct_N.begin(), distinct_N.end(), s.N) == distinct_N.end())
      distinct_N.push_back(s.N);
  const bool by_scale = distinct_N.size() > 1;

  std::map<double, std::vector<const SweepSummary*>> groups;
  for (const auto& s : summaries)
    groups[by_scale ? static_cast<double>(s.N) : s.d_target].push_back(&s);

  double x_lo = 1e300, x_hi = -1e300, y_hi = 0.0;
  std::vector<std::size_t> n_ticks;
  for (const auto& s : summaries) {
    const double lx = std::log2(static_cast<double>(s.n));
    x_lo = std::min(x_lo, lx);
    x_hi = std::max(x_hi, lx);
    y_hi = std::max(y_hi, s.mean_er + s.sd_er);
    if (std::find(n_ticks.begin(), n_ticks.end(), s.n) == n_ticks.end())
      n_ticks.push_back(s.n);
  }
  std::sort(n_ticks.begin(), n_ticks.end());
  if (x_hi <= x_lo) {  // single n value: give the axis some width
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_hi <= 0.0) y_hi = 1.0;
  y_hi *= 1.05;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto xpos = [&](std::size_t n) {
    return kLeft + (std::log2(static_cast<double>(n)) - x_lo) / (x_hi - x_lo) * plot_w;
  };
  const auto ypos = [&](double v) { return kTop + (1.0 - v / y_hi) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";

  // x ticks at the sampled n values (log2 axis).
  for (const std::size_t n : n_ticks) {
    const double x = xpos(n);
    svg << "<line x1=\"" << x << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << x
        << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << kTop + plot_h + 20
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << n
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
      << "sampling size n (log2)</text>\n";

  // y ticks: 5 equal divisions.
  for (int i = 0; i <= 5; ++i) {
    const double v = y_hi * i / 5.0;
    const double y = ypos(v);
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft
        << "\" y2=\"" << y << "\" stroke=\"#333\"/>\n";
    std::ostringstream label;
    label.precision(3);
    label << v;
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
        << label.str() << "</text>\n";
  }
  svg << "<text x=\"16\" y=\"" << kTop + plot_h / 2
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 16 " << kTop + plot_h / 2 << ")\">"
      << "mean relative error</text>\n";

  std::size_t color = 0;
  for (const auto& [gk, cells] : groups) {
    std::vector<const SweepSummary*> sorted(cells);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->n < b->n; });
    const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];

    if (sorted.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
      for (const auto* s : sorted) svg << xpos(s->n) << ',' << ypos(s->mean_er) << ' ';
      svg << "\"/>\n";
    }
    for (const auto* s : sorted) {
      const double x = xpos(s->n);
      if (s->sd_er > 0.0) {
        const double y0 = ypos(std::max(s->mean_er - s->sd_er, 0.0));
        const double y1 = ypos(s->mean_er + s->sd_er);
        svg << "<line x1=\"" << x << "\" y1=\"" << y0 << "\" x2=\"" << x << "\" y2=\""
            << y1 << "\" stroke=\"" << stroke << "\"/>\n";
        svg << "<line x1=\"" << x - 3 << "\" y1=\"" << y0 << "\" x2=\"" << x + 3
            << "\" y2=\"" << y0 << "\" stroke=\"" << stroke << "\"/>\n";
        svg << "<line x1=\"" << x - 3 << "\" y1=\"" << y1 << "\" x2=\"" << x + 3
            << "\" y2=\"" << y1 << "\" stroke=\"" << stroke << "\"/>\n";
      }
      svg << "<circle cx=\"" << x << "\" cy=\"" << ypos(s->mean_er)
          << "\" r=\"3\" fill=\"" << stroke << "\"/>\n";
    }

    const double ly = kTop + 16 + 18 * static_cast<double>(color);
    svg << "<line x1=\"" << kLeft + plot_w - 130 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + plot_w - 104 << "\" y2=\"" << ly << "\" stroke=\"" << stroke
        << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w - 98 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << (by_scale ? "N = " : "d = ") << fmt_key(gk) << "</text>\n";
    ++color;
  }
  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path.string());
  out << svg.str();
  if (!out) throw io_error("write failed: " + path.string());
}

}  // namespace sparsegcn
