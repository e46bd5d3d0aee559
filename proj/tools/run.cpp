#include <CLI11.hpp>

#include "anosov/error.hpp"
#include "cli.hpp"

namespace anosov::cli {

namespace {

struct Bound {
  explicit Bound(CLI::App* a) : app(a) {}
  Bound(const Bound&) = delete;

  CLI::App* app;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config;
  bool allow_critical = false;
  CLI::Option* allow_opt = nullptr;
};

void add_value(Bound& b, const std::string& key, const std::string& help) {
  b.options[key] = b.app->add_option("--" + key, b.values[key], help);
}

void add_common(Bound& b) {
  add_value(b, "p", "orders P1,P2,P3");
  add_value(b, "component", "hitchin or barbot");
  add_value(b, "type", "explicit type Q1,Q2,Q3");
  add_value(b, "t", "parameter: number, t_crit, t_red, 2*t_red, 1/t_crit, ...");
  add_value(b, "depth", "code depth (default 30)");
  add_value(b, "samples", "circle samples (default 500)");
  add_value(b, "seed", "random seed (default 1)");
  add_value(b, "out", "output path");
  add_value(b, "threads", "worker threads, 0 for all cores");
  for (const char* k : {"tol.det", "tol.eig", "tol.pt", "tol.inc", "tol.conic", "tol.side", "tol.cr",
                        "tol.rel", "tol.angle", "tol.flag", "tol.delta"})
    add_value(b, k, "tolerance override");
  b.allow_opt = b.app->add_flag("--allow-critical", b.allow_critical, "sample at t_crit or 1/t_crit");
  b.app->add_option("--config", b.config, "flat key=value file; flags override it");
}

void add_range(Bound& b) {
  add_value(b, "t-min", "range start");
  add_value(b, "t-max", "range end");
  add_value(b, "steps", "number of samples");
}

Settings collect(const Bound& b) {
  Settings s;
  if (!b.config.empty()) s = read_config_file(b.config);
  for (const auto& [k, opt] : b.options)
    if (opt->count() > 0) s[k] = b.values.at(k);
  if (b.allow_opt->count() > 0) s["allow-critical"] = b.allow_critical ? "true" : "false";
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anosov representations of hyperbolic triangle groups"};
  app.require_subcommand(1);

  Bound classify{app.add_subcommand("classify", "component, traces and Anosov verdict")};
  add_common(classify);

  Bound scan{app.add_subcommand("scan", "classify along a t range and write the sweep CSV")};
  add_common(scan);
  add_range(scan);
  scan.app->require_subcommand(0, 1);
  Bound goldman{scan.app->add_subcommand("goldman-plot", "curves f(u) and g+-(u) of the (u, v) plane")};
  add_common(goldman);
  add_value(goldman, "steps", "number of u samples (default 1000)");
  add_value(goldman, "u-min", "u range start (default -1.5)");
  add_value(goldman, "u-max", "u range end (default 3)");

  Bound curve{app.add_subcommand("limit-curve", "sample the boundary map; write CSV and SVG")};
  add_common(curve);
  add_value(curve, "chart", "affine chart covector A,B,C for the SVG");
  add_value(curve, "svgap-len", "also fit the singular value gap slope up to this word length");

  Bound verify{app.add_subcommand("verify-boxes", "check every box inclusion with margins")};
  add_common(verify);
  add_value(verify, "max-triples", "exhaustive triple check up to this many (default 1e6)");
  add_value(verify, "sample-triples", "random triples beyond the cutoff (default 2e5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    // subcommand help requests arrive here as well
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }

  try {
    if (*classify.app) {
      const auto c = resolve(collect(classify), {"p", "component", "t"});
      return cmd_classify(c, out, err);
    }
    if (*goldman.app) {
      auto s = collect(goldman);
      if (!s.count("component") && !s.count("type")) s["component"] = "barbot";
      const auto c = resolve(s, {"p", "component"});
      return cmd_goldman_plot(c, out, err);
    }
    if (*scan.app) {
      const auto c = resolve(collect(scan), {"p", "component", "t-min", "t-max", "steps"});
      return cmd_scan(c, out, err);
    }
    if (*curve.app) {
      const auto c = resolve(collect(curve), {"p", "component", "t"});
      return cmd_limit_curve(c, out, err);
    }
    if (*verify.app) {
      auto s = collect(verify);
      if (!s.count("component") && !s.count("type")) s["component"] = "barbot";
      const auto c = resolve(s, {"p", "component", "t"});
      return cmd_verify_boxes(c, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace anosov::cli
