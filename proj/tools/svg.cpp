#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cli.hpp"

namespace anosov::cli {

using projlin::Vec3;

namespace {

constexpr double kClamp = 20;  // chart coordinates beyond this are off the picture anyway

struct Frame {
  Vec3 l, e1, e2;

  explicit Frame(const Vec3& chart) : l(projlin::normalized(chart)) {
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(l[i]) < std::abs(l[k])) k = i;
    Vec3 axis{0, 0, 0};
    axis[k] = 1;
    e1 = projlin::normalized(projlin::cross(l, axis));
    e2 = projlin::cross(l, e1);
  }

  std::array<double, 2> chart(const Vec3& x) const {
    double z = projlin::dot(l, x);
    if (std::abs(z) < 1e-300) z = 1e-300;
    return {projlin::dot(e1, x) / z, projlin::dot(e2, x) / z};
  }
};

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t i = std::min(v.size() - 1, static_cast<std::size_t>(q * (v.size() - 1)));
  return v[i];
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  std::string s = buf;
  if (s == "-0.00000") s = "0.00000";
  return s;
}

}  // namespace

std::string render_svg(const limitcurve::Curve& curve, const std::string& header_comment) {
  const Frame fr(curve.chart);
  const auto& tr = curve.trace;
  const std::size_t n = tr.size();

  // lift so that neighbouring points have non-negative inner product
  std::vector<Vec3> lift(n);
  for (std::size_t i = 0; i < n; ++i) {
    lift[i] = projlin::normalized(tr[i].point);
    if (i > 0 && projlin::dot(lift[i - 1], lift[i]) < 0) lift[i] = projlin::operator*(-1.0, lift[i]);
  }
  // crossing[i]: the chart line separates point i from point i+1 (cyclically)
  std::vector<bool> crossing(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a = lift[i];
    Vec3 b = lift[(i + 1) % n];
    if (projlin::dot(a, b) < 0) b = projlin::operator*(-1.0, b);
    crossing[i] = (projlin::dot(fr.l, a) < 0) != (projlin::dot(fr.l, b) < 0);
  }

  std::vector<std::array<double, 2>> pts(n);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = fr.chart(tr[i].point);
    xs.push_back(pts[i][0]);
    ys.push_back(pts[i][1]);
  }
  const double cx = percentile(xs, 0.5), cy = percentile(ys, 0.5);
  std::vector<double> r;
  for (const auto& p : pts) r.push_back(std::max(std::abs(p[0] - cx), std::abs(p[1] - cy)));
  const double reach = std::max(percentile(r, 0.9), 1e-12);
  const double scale = 0.9 / reach;
  auto place = [&](const std::array<double, 2>& p) {
    const double x = std::clamp((p[0] - cx) * scale, -kClamp, kClamp);
    const double y = std::clamp(-(p[1] - cy) * scale, -kClamp, kClamp);
    return num(x) + "," + num(y);
  };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1 -1 2 2\" width=\"800\" height=\"800\">\n";
  s += "<!--\n" + header_comment + "-->\n";
  s += "<rect x=\"-1\" y=\"-1\" width=\"2\" height=\"2\" fill=\"white\"/>\n";
  s += "<g fill=\"none\" stroke=\"black\" stroke-width=\"0.004\" stroke-linejoin=\"round\">\n";

  std::size_t start = 0;
  const auto first_cross = std::find(crossing.begin(), crossing.end(), true);
  const bool closed = first_cross == crossing.end();
  if (!closed) start = (static_cast<std::size_t>(first_cross - crossing.begin()) + 1) % n;
  std::string line;
  std::size_t count = 0;
  auto flush = [&] {
    if (count >= 2) s += "<polyline points=\"" + line + "\"/>\n";
    line.clear();
    count = 0;
  };
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (start + k) % n;
    if (count) line += ' ';
    line += place(pts[i]);
    ++count;
    if (crossing[i]) flush();
  }
  if (closed && n > 0) line += ' ' + place(pts[start]), ++count;
  flush();
  s += "</g>\n";

  s += "<g fill=\"#4682b4\" fill-opacity=\"0.5\" stroke=\"none\">\n";
  for (const auto& smp : curve.samples) {
    const auto p = fr.chart(smp.point);
    const double x = (p[0] - cx) * scale, y = -(p[1] - cy) * scale;
    if (std::abs(x) > 1 || std::abs(y) > 1) continue;
    char buf[96];
    std::snprintf(buf, sizeof buf, "<circle cx=\"%s\" cy=\"%s\" r=\"%.3g\"/>\n", num(x).c_str(),
                  num(y).c_str(), smp.diam1 * scale);
    s += buf;
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace anosov::cli
