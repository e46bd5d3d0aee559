#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "anosov/boxes.hpp"
#include "anosov/classify.hpp"
#include "anosov/error.hpp"
#include "anosov/limitcurve.hpp"
#include "cli.hpp"

namespace anosov::cli {

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string g17(double x) { return fmt("%.17g", x); }

std::string landmark_or_na(double x) { return std::isnan(x) ? "n/a" : fmt("%.12g", x); }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
  f << body;
  if (!f) throw Error(ErrorCode::InvalidConfig, "failed writing " + path);
}

// Output either to --out or to the given stream.
void emit(const RunConfig& c, const std::string& body, std::ostream& out) {
  if (c.out.empty())
    out << body;
  else
    write_file(c.out, body);
}

cartan::CartanMatrix cartan_of(const RunConfig& c) {
  return cartan::normal_form(c.sig, c.type, c.t.value_or(1.0));
}

bool barbot_landmarks(const RunConfig& c) {
  return c.sig.all_odd() && c.type == cartan::barbot_type(c.sig);
}

}  // namespace

int cmd_classify(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto cm = cartan_of(c);
  const auto v = classify::classify(cm, c.tol);
  std::ostringstream s;
  auto line = [&](const char* k, const std::string& val) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-11s ", k);
    s << buf << val << "\n";
  };
  line("signature", c.sig.str());
  line("type", c.type.str());
  line("t", cm.has_parameter() ? g17(cm.t) : "n/a");
  line("component", std::string(classify::to_string(v.component)));
  line("t1", g17(v.traces.t1));
  line("t2", g17(v.traces.t2));
  line("t3", g17(v.traces.t3));
  line("x", g17(v.traces.x));
  line("y", g17(v.traces.y));
  line("delta", g17(v.delta));
  line("regime", std::string(classify::to_string(v.regime)));
  line("eig-regime", std::string(classify::to_string(v.eig_regime)));
  line("t_crit", landmark_or_na(v.t_crit));
  line("t_red", landmark_or_na(v.t_red));
  line("anosov", v.anosov ? "yes" : "no");
  out << s.str();
  if (!c.out.empty()) write_file(c.out, c.header() + s.str());
  return v.anosov ? kOk : kNo;
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto rows = classify::sweep(c.sig, c.type, c.t_min, c.t_max, c.steps, c.tol);
  std::string landmarks;
  double tc = std::nan(""), tr = std::nan("");
  if (barbot_landmarks(c)) {
    tc = classify::t_crit(c.sig);
    tr = classify::t_red(c.sig);
    for (double t : {1 / tr, 1 / tc, tc, tr}) {
      if (t < c.t_min || t > c.t_max) continue;
      rows.push_back(classify::sweep(c.sig, c.type, t, t, 1, c.tol).front());
      landmarks += (landmarks.empty() ? "" : ",") + g17(t);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  }

  std::string csv = c.header();
  if (!landmarks.empty()) csv += "# landmark-rows=" + landmarks + "\n";
  csv += "t,t1,t2,t3,x,y,u,v,delta,regime,anosov\n";
  for (const auto& r : rows) {
    csv += g17(r.t) + "," + g17(r.tr.t1) + "," + g17(r.tr.t2) + "," + g17(r.tr.t3) + "," +
           g17(r.tr.x) + "," + g17(r.tr.y) + "," + g17(r.tr.u) + "," + g17(r.tr.v) + "," +
           g17(r.delta) + "," + std::string(classify::to_string(r.regime)) + "," +
           (r.anosov ? "true" : "false") + "\n";
  }

  // non-Anosov runs and reducible rows
  std::ostringstream sum;
  int runs = 0;
  for (std::size_t i = 0; i < rows.size();) {
    if (rows[i].anosov) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < rows.size() && !rows[j + 1].anosov) ++j;
    ++runs;
    sum << "non-anosov interval: [" << g17(rows[i].t) << ", " << g17(rows[j].t) << "] ("
        << (j - i + 1) << " rows)";
    if (i > 0) sum << ", entered after t=" << g17(rows[i - 1].t);
    if (j + 1 < rows.size()) sum << ", left before t=" << g17(rows[j + 1].t);
    sum << "\n";
    i = j + 1;
  }
  sum << "non-anosov intervals found: " << runs << "\n";
  if (!std::isnan(tc))
    sum << "expected non-anosov interval: [" << g17(1 / tc) << ", " << g17(tc) << "]\n";
  for (const auto& r : rows)
    if (std::abs(r.tr.x + r.tr.y + 2) < 1e-9)
      sum << "reducible row: t=" << g17(r.t) << " |x+y+2|=" << fmt("%.3g", std::abs(r.tr.x + r.tr.y + 2))
          << "\n";

  emit(c, csv, out);
  (c.out.empty() ? err : out) << sum.str();
  return kOk;
}

int cmd_goldman_plot(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const int steps = c.steps > 0 ? c.steps : 1000;
  const auto g = classify::goldman_curves(c.sig, c.type, c.u_min, c.u_max, steps);
  const auto k = cartan::type_constants(c.sig, c.type);
  std::string csv = c.header();
  csv += "# u-min=" + g17(c.u_min) + "\n# u-max=" + g17(c.u_max) + "\n";
  csv += "# u_minus=" + g17(g.u_minus) + "\n# u_plus=" + g17(g.u_plus) + "\n";
  csv += "u,f,g_plus,g_minus\n";
  for (const auto& r : g.rows)
    csv += g17(r.u) + "," + g17(r.f) + "," + g17(r.g_plus) + "," + g17(r.g_minus) + "\n";
  emit(c, csv, out);
  std::ostringstream sum;
  sum << "u_minus=" << g17(g.u_minus) << " f(u_minus)=" << g17(classify::goldman_f(k, g.u_minus)) << "\n";
  sum << "u_plus=" << g17(g.u_plus) << " f(u_plus)=" << g17(classify::goldman_f(k, g.u_plus)) << "\n";
  (c.out.empty() ? err : out) << sum.str();
  return kOk;
}

int cmd_limit_curve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto rep = cartan::build_representation(cartan_of(c), c.tol);
  limitcurve::CurveOptions opt;
  opt.samples = c.samples;
  opt.depth = c.depth;
  opt.allow_critical = c.allow_critical;
  opt.svgap_len = c.svgap_len;
  opt.threads = c.threads;
  opt.chart = c.chart;
  limitcurve::Curve curve;
  try {
    curve = limitcurve::sample_curve(rep, opt, c.tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotInBarbotRange && e.code() != ErrorCode::EvenSignature) throw;
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  const auto& d = curve.diag;
  std::ostringstream diag;
  diag << "route=" << limitcurve::to_string(curve.route) << "\n";
  if (curve.route == limitcurve::Route::Hitchin)
    diag << "note=hitchin curves come from singular directions of long code words, not from boxes\n";
  diag << "critical=" << (curve.critical ? "true" : "false") << "\n";
  diag << "chart=" << g17(curve.chart[0]) << "," << g17(curve.chart[1]) << "," << g17(curve.chart[2]) << "\n";
  diag << "max_diameter=" << fmt("%.6g", d.max_diameter) << "\n";
  diag << "min_pair_separation=" << fmt("%.6g", d.min_pair_separation) << "\n";
  diag << "min_transversality=" << fmt("%.6g", d.min_transversality) << "\n";
  diag << "coxeter_transversality=" << fmt("%.6g", d.coxeter_transversality) << "\n";
  diag << "equivariance_residual=" << fmt("%.6g", d.equivariance_residual) << "\n";
  diag << "incidence_residual=" << fmt("%.6g", d.incidence_residual) << "\n";
  diag << "min_nest_margin=" << fmt("%.6g", d.min_nest_margin) << "\n";
  diag << "near_incident_pairs=" << d.near_incident_pairs << "\n";
  diag << "pattern_violations=" << d.pattern_violations << "\n";
  diag << "null_homotopic=" << (d.null_homotopic ? "true" : "false") << "\n";
  diag << "affine_chart=" << (d.affine_chart ? "true" : "false") << "\n";
  diag << "chart_crossings=" << d.chart_crossings << (d.chart_crossings % 2 ? " (odd)" : " (even)") << "\n";
  if (c.svgap_len > 0) diag << "svgap_slope=" << fmt("%.6g", d.svgap_slope) << "\n";

  std::string head = c.header();
  std::string csv = head;
  std::istringstream lines(diag.str());
  for (std::string l; std::getline(lines, l);) csv += "# " + l + "\n";
  csv += limitcurve::curve_csv(curve);

  const std::string base = c.out.empty() ? std::string("limit_curve") : c.out;
  write_file(base + ".csv", csv);
  write_file(base + ".svg", render_svg(curve, c.header("") + diag.str()));
  out << diag.str() << "wrote " << base << ".csv and " << base << ".svg\n";
  return kOk;
}

int cmd_verify_boxes(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (!barbot_landmarks(c)) {
    err << "error: verify-boxes needs the Barbot component\n";
    return kInvalid;
  }
  const auto rep = cartan::build_representation(cartan_of(c), c.tol);
  std::string report = c.header();
  std::ostringstream sum;
  bool ok = true;
  try {
    const auto cfg = boxes::build_config(rep, c.tol);
    sum << "residuals: orbit " << fmt("%.3g", cfg.orbit_residual) << ", incidence "
        << fmt("%.3g", cfg.incidence_residual) << ", conic " << fmt("%.3g", cfg.conic_residual) << "\n";
    std::vector<boxes::OrderingReport> ord;
    for (int f = 0; f < 3; ++f) {
      ord.push_back(boxes::ordering_check(cfg, f, c.tol));
      sum << "ordering@" << f << ": " << (ord.back().ok() ? "ok" : "FAIL") << "\n";
    }
    if (!std::all_of(ord.begin(), ord.end(), [](const auto& o) { return o.ok(); })) {
      report += "lemma\tword\trelation\tmargin\tpass\n";
      for (const auto& o : ord)
        if (!o.ok())
          report += "ordering@" + std::to_string(o.frame) + "\te\tcyclic-order\t" +
                    g17(-std::max(o.min_w_separation, 1e-300)) + "\tFAIL\n";
      ok = false;
    } else {
      const auto bx = boxes::build_boxes(cfg, c.tol);
      boxes::VerifyOptions vo;
      vo.seed = c.seed;
      vo.max_triples = c.max_triples;
      vo.sample = c.sample_triples;
      vo.threads = c.threads;
      const auto r = boxes::verify_inclusions(cfg, bx, vo, c.tol);
      report += "# triples-checked=" + std::to_string(r.triples_checked) +
                "\n# triples-total=" + std::to_string(r.triples_total) + "\n";
      report += r.table();
      std::size_t fails = 0;
      for (const auto& e : r.entries) fails += e.pass ? 0 : 1;
      sum << "entries " << r.entries.size() << ", failures " << fails << ", triples "
          << r.triples_checked << "/" << r.triples_total << "\n";
      for (const char* fam : {"orbit-points", "quad-hull", "box-step", "box-two-step", "line-avoid",
                              "tbar-touch", "triple-interior", "triple-exceptional"}) {
        if (r.count(fam) == 0) continue;
        sum << "  " << fam << ": " << r.count(fam) << " checks, min margin "
            << fmt("%.3g", r.min_margin(fam)) << "\n";
      }
      ok = r.all_pass();
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ComplexCoxeter && e.code() != ErrorCode::ConicDegenerate &&
        e.code() != ErrorCode::OrderViolation && e.code() != ErrorCode::ChartCrossing)
      throw;
    const auto v = classify::classify(rep.cartan, c.tol);
    report += "lemma\tword\trelation\tmargin\tpass\n";
    report += "coxeter-spectrum\tabc\treal-distinct\t" + g17(v.delta) + "\tFAIL\n";
    sum << "no box configuration: " << e.what() << "\n";
    ok = false;
  }
  sum << (ok ? "all inclusions pass" : "inclusion check FAILED") << "\n";
  emit(c, report, out);
  (c.out.empty() ? err : out) << sum.str();
  return ok ? kOk : kNo;
}

}  // namespace anosov::cli
