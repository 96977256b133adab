#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ztnd/errors.hpp"
#include "ztnd/integrator.hpp"
#include "ztnd/metrics.hpp"

namespace ztnd::cli {

/// Raised when an output file cannot be written. Maps to exit code 3.
class IoError : public Error {
 public:
  using Error::Error;
};

/// 17 significant digits, shortest round-trip friendly form.
std::string format_number(double v);

void write_trace_csv(std::ostream& os, const Trace& tr);

struct SummaryRow {
  std::string label;
  RunSummary summary;
  Termination terminated = Termination::Completed;
};

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  bool equal_aspect = false;
  std::vector<Series> series;
};

/// Values below this are drawn at this level on log axes.
inline constexpr double kLogFloor = 1e-12;

/// Static SVG polyline plot with no external references.
std::string render_svg(const PlotSpec& spec);

/// Writes `content` to `path`, throwing IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace ztnd::cli
