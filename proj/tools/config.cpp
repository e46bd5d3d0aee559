#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>

#include "anosov/classify.hpp"
#include "anosov/error.hpp"
#include "cli.hpp"

namespace anosov::cli {

namespace {

std::string trim(std::string s) {
  auto sp = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), sp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), sp).base(), s.end());
  return s;
}

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); }

double to_double(const std::string& key, const std::string& v) {
  const std::string s = trim(v);
  double x = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size())
    bad(key + ": not a number: '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  const std::string s = trim(v);
  long long x = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size())
    bad(key + ": not an integer: '" + v + "'");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::array<int, 3> triple(const std::string& key, const std::string& v) {
  const auto parts = split(v, ',');
  if (parts.size() != 3) bad(key + ": expected three comma separated integers");
  std::array<int, 3> a{};
  for (int k = 0; k < 3; ++k) a[k] = static_cast<int>(to_int(key, parts[k]));
  return a;
}

bool to_bool(const std::string& key, const std::string& v) {
  const std::string s = trim(v);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  bad(key + ": expected true or false");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> k{
      "p",          "component",  "type",           "t",           "t-min",     "t-max",
      "steps",      "depth",      "samples",        "seed",        "out",       "allow-critical",
      "u-min",      "u-max",      "chart",          "svgap-len",   "max-triples", "sample-triples",
      "threads",    "tol.det",    "tol.eig",        "tol.pt",      "tol.inc",   "tol.conic",
      "tol.side",   "tol.cr",     "tol.rel",        "tol.angle",   "tol.flag",  "tol.delta"};
  return k;
}

// Keys that only steer where or how fast output is produced.
bool is_plumbing(const std::string& key) { return key == "out" || key == "threads"; }

double landmark(const std::string& s, const cartan::TriangleSignature& sig) {
  const std::string e = trim(s);
  const auto star = e.find('*');
  if (star != std::string::npos) {
    const std::string a = e.substr(0, star), b = e.substr(star + 1);
    return landmark(a, sig) * landmark(b, sig);
  }
  if (e == "t_crit") return classify::t_crit(sig);
  if (e == "t_red") return classify::t_red(sig);
  return to_double("t", e);
}

}  // namespace

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read config file " + path);
  Settings s;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad(path + ":" + std::to_string(n) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (!known_keys().count(key)) bad(path + ":" + std::to_string(n) + ": unknown key '" + key + "'");
    s[key] = trim(line.substr(eq + 1));
  }
  return s;
}

double parse_t(const std::string& s, const cartan::TriangleSignature& sig) {
  std::string e = trim(s);
  if (e.rfind("1/", 0) == 0) {
    e = trim(e.substr(2));
    if (!e.empty() && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
    const double d = landmark(e, sig);
    if (d == 0) bad("t: division by zero");
    return 1 / d;
  }
  return landmark(e, sig);
}

std::string RunConfig::header(const std::string& prefix) const {
  std::string out;
  for (const auto& [k, v] : resolved) {
    if (is_plumbing(k)) continue;
    out += prefix + k + "=" + v + "\n";
  }
  return out;
}

RunConfig resolve(const Settings& s, const std::vector<std::string>& needs) {
  for (const auto& [k, v] : s)
    if (!known_keys().count(k)) bad("unknown setting '" + k + "'");
  auto has = [&](const std::string& k) { return s.count(k) > 0 && !trim(s.at(k)).empty(); };
  auto need = [&](const std::string& k) {
    return std::find(needs.begin(), needs.end(), k) != needs.end();
  };
  for (const auto& k : needs)
    if (k != "component" && !has(k)) bad("missing required setting --" + k);

  RunConfig c;
  auto& r = c.resolved;
  if (has("p")) {
    const auto p = triple("p", s.at("p"));
    c.sig = {p[0], p[1], p[2]};
    c.sig.validate();
    r["p"] = std::to_string(p[0]) + "," + std::to_string(p[1]) + "," + std::to_string(p[2]);
  }

  if (has("type")) {
    const auto q = triple("type", s.at("type"));
    c.type = {q[0], q[1], q[2]};
    cartan::validate_type(c.sig, c.type);
    if (c.type == cartan::hitchin_type())
      c.component = "hitchin";
    else if (c.sig.all_odd() && c.type == cartan::barbot_type(c.sig))
      c.component = "barbot";
    else
      c.component = "custom";
    if (has("component") && trim(s.at("component")) != c.component)
      bad("--component " + s.at("component") + " contradicts --type " + c.type.str());
  } else if (has("component")) {
    c.component = trim(s.at("component"));
    if (c.component == "hitchin")
      c.type = cartan::hitchin_type();
    else if (c.component == "barbot")
      c.type = cartan::barbot_type(c.sig);  // InvalidSignature unless all orders are odd
    else
      bad("--component must be hitchin or barbot");
  } else if (need("component")) {
    bad("missing required setting --component (or --type)");
  }
  if (!c.component.empty()) {
    r["component"] = c.component;
    r["type"] = std::to_string(c.type.q1) + "," + std::to_string(c.type.q2) + "," +
                std::to_string(c.type.q3);
  }

  auto tval = [&](const std::string& k) {
    const double v = parse_t(s.at(k), c.sig);
    if (!std::isfinite(v)) bad(k + ": not finite");
    return v;
  };
  if (has("t")) {
    c.t = tval("t");
    if (*c.t == 0) bad("t must be non-zero");
    r["t"] = fmt(*c.t);
    if (trim(s.at("t")) != r["t"]) r["t-expr"] = trim(s.at("t"));
  }
  if (has("t-min")) c.t_min = tval("t-min");
  if (has("t-max")) c.t_max = tval("t-max");
  if (has("steps")) c.steps = static_cast<int>(to_int("steps", s.at("steps")));
  if (need("t-min")) {
    if (!(c.t_min < c.t_max)) bad("need t-min < t-max");
    if (c.steps < 2) bad("need steps >= 2");
    r["t-min"] = fmt(c.t_min);
    r["t-max"] = fmt(c.t_max);
    r["steps"] = std::to_string(c.steps);
  }

  if (has("depth")) c.depth = static_cast<int>(to_int("depth", s.at("depth")));
  if (has("samples")) c.samples = static_cast<int>(to_int("samples", s.at("samples")));
  if (has("seed")) c.seed = static_cast<std::uint64_t>(to_int("seed", s.at("seed")));
  if (c.depth < 0 || c.depth > 100000) bad("depth out of range");
  if (c.samples < 3 || c.samples > 1000000) bad("samples out of range");
  r["depth"] = std::to_string(c.depth);
  r["samples"] = std::to_string(c.samples);
  r["seed"] = std::to_string(c.seed);
  if (has("out")) c.out = trim(s.at("out"));
  r["out"] = c.out;
  if (has("allow-critical")) c.allow_critical = to_bool("allow-critical", s.at("allow-critical"));
  r["allow-critical"] = c.allow_critical ? "true" : "false";

  if (has("u-min")) c.u_min = to_double("u-min", s.at("u-min"));
  if (has("u-max")) c.u_max = to_double("u-max", s.at("u-max"));
  if (has("chart")) {
    const auto parts = split(s.at("chart"), ',');
    if (parts.size() != 3) bad("chart: expected three comma separated numbers");
    projlin::Vec3 l{to_double("chart", parts[0]), to_double("chart", parts[1]),
                    to_double("chart", parts[2])};
    if (projlin::norm(l) == 0) bad("chart: zero covector");
    c.chart = l;
    r["chart"] = fmt(l[0]) + "," + fmt(l[1]) + "," + fmt(l[2]);
  }
  if (has("svgap-len")) c.svgap_len = static_cast<int>(to_int("svgap-len", s.at("svgap-len")));
  if (c.svgap_len < 0 || c.svgap_len > 40) bad("svgap-len out of range");
  if (has("max-triples"))
    c.max_triples = static_cast<std::uint64_t>(to_int("max-triples", s.at("max-triples")));
  if (has("sample-triples"))
    c.sample_triples = static_cast<std::uint64_t>(to_int("sample-triples", s.at("sample-triples")));
  if (has("threads")) c.threads = static_cast<unsigned>(to_int("threads", s.at("threads")));

  struct TolKey {
    const char* key;
    double Tolerances::*field;
  };
  static const TolKey tols[] = {
      {"tol.det", &Tolerances::det},     {"tol.eig", &Tolerances::eig},
      {"tol.pt", &Tolerances::pt},       {"tol.inc", &Tolerances::inc},
      {"tol.conic", &Tolerances::conic}, {"tol.side", &Tolerances::side},
      {"tol.cr", &Tolerances::cr},       {"tol.rel", &Tolerances::rel},
      {"tol.angle", &Tolerances::angle}, {"tol.flag", &Tolerances::flag},
      {"tol.delta", &Tolerances::delta}};
  for (const auto& tk : tols) {
    if (has(tk.key)) {
      const double v = to_double(tk.key, s.at(tk.key));
      if (!(v > 0)) bad(std::string(tk.key) + " must be positive");
      c.tol.*tk.field = v;
    }
    r[tk.key] = fmt(c.tol.*tk.field);
  }
  return c;
}

}  // namespace anosov::cli
