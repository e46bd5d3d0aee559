#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "anosov/cartan.hpp"
#include "anosov/limitcurve.hpp"

namespace anosov::cli {

// Exit codes shared by every command.
inline constexpr int kOk = 0;
inline constexpr int kNo = 1;
inline constexpr int kInvalid = 2;

// Raw key=value settings, from a config file and then from flags.
using Settings = std::map<std::string, std::string>;

Settings read_config_file(const std::string& path);  // InvalidConfig on bad lines

struct RunConfig {
  cartan::TriangleSignature sig;
  cartan::RepType type;
  std::string component;  // hitchin, barbot or custom
  std::optional<double> t;
  double t_min = 0, t_max = 0;
  int steps = 0;
  int depth = 30;
  int samples = 500;
  std::uint64_t seed = 1;
  std::string out;
  bool allow_critical = false;
  Tolerances tol;

  // command specific extras
  double u_min = -1.5, u_max = 3;
  std::optional<projlin::Vec3> chart;
  int svgap_len = 0;
  std::uint64_t max_triples = 1'000'000, sample_triples = 200'000;
  unsigned threads = 0;

  Settings resolved;  // every key with its final value, for output headers

  // "# key=value" lines (prefix "# ") or an XML comment body (prefix "").
  std::string header(const std::string& prefix = "# ") const;
};

// Parses t values: a number, a landmark (t_crit, t_red), a multiple "2*t_red",
// or a reciprocal "1/t_crit", "1/(2*t_red)".
double parse_t(const std::string& s, const cartan::TriangleSignature& sig);

// Validates and fills a RunConfig. `needs` lists keys the command requires.
// Throws Error(InvalidConfig | InvalidSignature | TypeOutOfRange, ...).
RunConfig resolve(const Settings& s, const std::vector<std::string>& needs);

int cmd_classify(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_goldman_plot(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_limit_curve(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_verify_boxes(const RunConfig& c, std::ostream& out, std::ostream& err);

// SVG of the xi1 trace in the curve's chart, one polyline per chart-contiguous arc.
std::string render_svg(const limitcurve::Curve& curve, const std::string& header_comment);

// Runs the command line; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anosov::cli
