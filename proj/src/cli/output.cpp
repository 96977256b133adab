#include "ztnd/cli/output.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>

namespace ztnd::cli {

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

void write_trace_csv(std::ostream& os, const Trace& tr) {
  const std::size_t n = tr.states.empty() ? 0 : tr.states.front().size();
  os << "t";
  for (std::size_t i = 1; i <= n; ++i) os << ",z_" << i;
  os << ",residual_norm,solution_error,xi,kappa\n";
  const bool coeffs = tr.coefficients.size() == tr.size();
  const bool errors = tr.solution_errors.size() == tr.size();
  for (std::size_t k = 0; k < tr.size(); ++k) {
    os << format_number(tr.times[k]);
    for (double z : tr.states[k]) os << ',' << format_number(z);
    os << ',' << format_number(tr.residual_norms[k]) << ',';
    if (errors) os << format_number(tr.solution_errors[k]);
    os << ',';
    if (coeffs) os << format_number(tr.coefficients[k].xi) << ',' << format_number(tr.coefficients[k].kappa);
    else os << ',';
    os << '\n';
  }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "label,convergence_time,steady_state_max,steady_state_mean,classification,terminated\n";
  for (const auto& r : rows) {
    os << r.label << ',';
    if (r.summary.convergence_time) os << format_number(*r.summary.convergence_time);
    os << ',' << format_number(r.summary.steady_state_max) << ','
       << format_number(r.summary.steady_state_mean) << ',' << to_string(r.summary.classification)
       << ',' << to_string(r.terminated) << '\n';
  }
}

namespace {

constexpr std::array<const char*, 6> kPalette{"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
    ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return ticks;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  constexpr double W = 800, H = 480, L = 80, R = 170, T = 40, B = 60;
  const double pw = W - L - R, ph = H - T - B;

  auto ty = [&](double v) { return spec.log_y ? std::log10(std::max(v, kLogFloor)) : v; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : spec.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (spec.log_y) {
    y0 = std::floor(y0);
    y1 = std::ceil(y1);
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  if (spec.equal_aspect) {
    // Grow the shorter range so one unit spans the same pixels on both axes.
    const double sx = (x1 - x0) / pw, sy = (y1 - y0) / ph;
    if (sx > sy) {
      const double mid = (y0 + y1) / 2, half = sx * ph / 2;
      y0 = mid - half, y1 = mid + half;
    } else {
      const double mid = (x0 + x1) / 2, half = sy * pw / 2;
      x0 = mid - half, x1 = mid + half;
    }
  }
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return T + ph - (y - y0) / (y1 - y0) * ph; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
      W, H, W, H, L + pw / 2, escape(spec.title));

  for (double xt : nice_ticks(x0, x1)) {
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#e0e0e0\"/>\n"
        "<text x=\"{0:.2f}\" y=\"{3:.2f}\" text-anchor=\"middle\">{4:g}</text>\n",
        px(xt), T, T + ph, T + ph + 16, xt);
  }
  std::vector<double> yticks;
  if (spec.log_y) {
    const int stride = std::max(1, static_cast<int>(std::ceil((y1 - y0) / 10)));
    for (int e = static_cast<int>(y0); e <= static_cast<int>(y1); e += stride) yticks.push_back(e);
  } else {
    yticks = nice_ticks(y0, y1);
  }
  for (double yt : yticks) {
    const std::string label = spec.log_y ? fmt::format("1e{:d}", static_cast<int>(yt)) : fmt::format("{:g}", yt);
    svg += fmt::format(
        "<line x1=\"{1:.2f}\" y1=\"{0:.2f}\" x2=\"{2:.2f}\" y2=\"{0:.2f}\" stroke=\"#e0e0e0\"/>\n"
        "<text x=\"{3:.2f}\" y=\"{4:.2f}\" text-anchor=\"end\">{5}</text>\n",
        py(yt), L, L + pw, L - 6, py(yt) + 4, label);
  }
  svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                     L, T, pw, ph);
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", L + pw / 2, H - 16,
                     escape(spec.x_label));
  svg += fmt::format(
      "<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{1}</text>\n",
      T + ph / 2, escape(spec.y_label));

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const auto& s = spec.series[si];
    const char* color = kPalette[si % kPalette.size()];
    std::string pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      pts += fmt::format("{:.2f},{:.2f} ", px(s.x[i]), py(ty(s.y[i])));
    }
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                       color, pts);
    const double ly = T + 14 + 18 * static_cast<double>(si);
    svg += fmt::format(
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n"
        "<text x=\"{4}\" y=\"{5}\">{6}</text>\n",
        L + pw + 12, ly, L + pw + 36, color, L + pw + 42, ly + 4, escape(s.label));
  }
  svg += "</svg>\n";
  return svg;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace ztnd::cli
