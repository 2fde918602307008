#include "monge/figure.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace monge {

namespace {

using P = std::array<double, 2>;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double v) {
  if (std::fabs(v) < 5e-4) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

P xy(const Point<double>& p) { return {p.coords[0], p.coords[1]}; }

double cross(const P& o, const P& a, const P& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Counter-clockwise convex hull (monotone chain).
std::vector<P> hull(std::vector<P> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<P> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// Keeps the part of a convex polygon with normal . x >= offset.
std::vector<P> clip(const std::vector<P>& poly, const Halfspace<double>& h) {
  std::vector<P> out;
  const auto side = [&](const P& p) { return h.normal[0] * p[0] + h.normal[1] * p[1] - h.offset; };
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const P& a = poly[k];
    const P& b = poly[(k + 1) % poly.size()];
    const double sa = side(a);
    const double sb = side(b);
    if (sa >= 0) out.push_back(a);
    if ((sa >= 0) != (sb >= 0)) {
      const double t = sa / (sa - sb);
      out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
  }
  return out;
}

struct Box {
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;

  void add(const P& p) {
    x0 = std::min(x0, p[0]);
    y0 = std::min(y0, p[1]);
    x1 = std::max(x1, p[0]);
    y1 = std::max(y1, p[1]);
  }
  std::vector<P> corners() const { return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}; }
};

/// The part of the line normal . x = offset inside the box, if any.
std::optional<std::array<P, 2>> clip_line(const Hyperplane<double>& h, const Box& box) {
  const double a = h.normal[0];
  const double b = h.normal[1];
  const P p0 = {a * h.offset / (a * a + b * b), b * h.offset / (a * a + b * b)};
  const P dir = {-b, a};
  double lo = -INFINITY;
  double hi = INFINITY;
  const double mins[2] = {box.x0, box.y0};
  const double maxs[2] = {box.x1, box.y1};
  for (int k = 0; k < 2; ++k) {
    if (std::fabs(dir[k]) < 1e-15) {
      if (p0[k] < mins[k] || p0[k] > maxs[k]) return std::nullopt;
      continue;
    }
    double t0 = (mins[k] - p0[k]) / dir[k];
    double t1 = (maxs[k] - p0[k]) / dir[k];
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  }
  if (lo > hi) return std::nullopt;
  return std::array<P, 2>{P{p0[0] + lo * dir[0], p0[1] + lo * dir[1]}, P{p0[0] + hi * dir[0], p0[1] + hi * dir[1]}};
}

const Tolerance kTol = Tolerance::uniform(1e-9);

std::vector<P> outline_points(const Shape<double>& s) {
  std::vector<P> out;
  if (const auto* b = std::get_if<Ball<double>>(&s)) {
    const P c = xy(b->center);
    out = {{c[0] - b->radius, c[1] - b->radius}, {c[0] + b->radius, c[1] + b->radius}};
  } else if (const auto* v = std::get_if<VertexSet<double>>(&s)) {
    for (const auto& p : v->vertices) out.push_back(xy(p));
  } else {
    for (const auto& p : detail::enumerate_vertices(std::get<HalfspaceSet<double>>(s).constraints, 2, kTol))
      out.push_back(xy(p));
  }
  return out;
}

/// Ends of the guide segments running from the center c to the larger shape.
std::vector<P> guide_targets(const Shape<double>& big, const P& c, const Box& view) {
  if (const auto* b = std::get_if<Ball<double>>(&big)) {
    const P o = xy(b->center);
    const double dx = o[0] - c[0];
    const double dy = o[1] - c[1];
    const double d = std::hypot(dx, dy);
    if (d <= b->radius) return {};
    const double reach = std::sqrt(d * d - b->radius * b->radius);
    const double spread = std::asin(b->radius / d);
    const double base = std::atan2(dy, dx);
    return {{c[0] + reach * std::cos(base + spread), c[1] + reach * std::sin(base + spread)},
            {c[0] + reach * std::cos(base - spread), c[1] + reach * std::sin(base - spread)}};
  }
  std::vector<P> pts;
  if (const auto* v = std::get_if<VertexSet<double>>(&big)) {
    for (const auto& p : v->vertices) pts.push_back(xy(p));
  } else {
    std::vector<P> region = view.corners();
    for (const auto& h : std::get<HalfspaceSet<double>>(big).constraints) region = clip(region, h);
    pts = region;
  }
  // Support points: the extreme angles as seen from c.
  if (pts.empty()) return {};
  P mean = {0.0, 0.0};
  for (const auto& p : pts) {
    mean[0] += p[0] / pts.size();
    mean[1] += p[1] / pts.size();
  }
  const double base = std::atan2(mean[1] - c[1], mean[0] - c[0]);
  double lo = INFINITY;
  double hi = -INFINITY;
  P lo_p = pts.front();
  P hi_p = pts.front();
  for (const auto& p : pts) {
    if (std::hypot(p[0] - c[0], p[1] - c[1]) < 1e-12) continue;
    double a = std::atan2(p[1] - c[1], p[0] - c[0]) - base;
    a = std::remainder(a, 2.0 * M_PI);
    if (a < lo) lo = a, lo_p = p;
    if (a > hi) hi = a, hi_p = p;
  }
  if (hi - lo >= M_PI - 1e-9) return {};  // c inside the shape
  return {lo_p, hi_p};
}

}  // namespace

std::string render_figure(const MongeConfig<double>& config, const MongeReport<double>& report,
                          const FigureOptions& options) {
  if (config.dimension() != 2) throw ScenarioError("figures need planar shapes");

  Box box;
  for (const auto& s : config.shapes)
    for (const auto& p : outline_points(s)) box.add(p);
  for (const auto& [key, c] : report.centers) box.add(xy(c));
  const double span = std::max({box.x1 - box.x0, box.y1 - box.y0, 1e-9});
  const double pad = 0.08 * span;
  box.x0 -= pad;
  box.y0 -= pad;
  box.x1 += pad;
  box.y1 += pad;
  // Keep the view from collapsing to a strip when everything is collinear.
  const double width = box.x1 - box.x0;
  const double height = box.y1 - box.y0;
  if (width < 0.25 * height) {
    box.x0 -= (0.25 * height - width) / 2;
    box.x1 += (0.25 * height - width) / 2;
  } else if (height < 0.25 * width) {
    box.y0 -= (0.25 * width - height) / 2;
    box.y1 += (0.25 * width - height) / 2;
  }

  const double scale = options.extent / std::max(box.x1 - box.x0, box.y1 - box.y0);
  const double w_px = (box.x1 - box.x0) * scale + 2 * options.margin;
  const double h_px = (box.y1 - box.y0) * scale + 2 * options.margin;
  const double tx = options.margin - scale * box.x0;
  const double ty = options.margin + scale * box.y1;
  const auto to_px = [&](const P& p) { return P{tx + scale * p[0], ty - scale * p[1]}; };
  const std::string stroke = num(1.5 / scale);
  const std::string thin = num(1.0 / scale);
  const std::string dash = num(6.0 / scale) + "," + num(4.0 / scale);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w_px) << "\" height=\""
      << num(h_px) << "\" viewBox=\"0 0 " << num(w_px) << " " << num(h_px) << "\">\n"
      << "<title>Homothety centers of three planar shapes</title>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(w_px) << "\" height=\"" << num(h_px) << "\" fill=\"white\"/>\n"
      << "<g transform=\"matrix(" << num(scale) << " 0 0 " << num(-scale) << " " << num(tx) << " " << num(ty)
      << ")\">\n";

  for (std::size_t k = 0; k < config.shapes.size(); ++k) {
    const Shape<double>& s = config.shapes[k];
    const char* color = kPalette[k % std::size(kPalette)];
    svg << "  <g class=\"shape\" id=\"shape-" << k + 1 << "\" fill=\"" << color << "\" fill-opacity=\"0.12\" stroke=\""
        << color << "\" stroke-width=\"" << stroke << "\">\n";
    if (const auto* b = std::get_if<Ball<double>>(&s)) {
      svg << "    <circle cx=\"" << num(b->center.coords[0]) << "\" cy=\"" << num(b->center.coords[1]) << "\" r=\""
          << num(b->radius) << "\"/>\n";
    } else {
      std::vector<P> poly;
      if (const auto* v = std::get_if<VertexSet<double>>(&s)) {
        std::vector<P> pts;
        for (const auto& p : v->vertices) pts.push_back(xy(p));
        poly = hull(std::move(pts));
      } else {
        poly = box.corners();
        for (const auto& h : std::get<HalfspaceSet<double>>(s).constraints) poly = clip(poly, h);
      }
      svg << "    <polygon points=\"";
      for (std::size_t i = 0; i < poly.size(); ++i) svg << (i ? " " : "") << num(poly[i][0]) << "," << num(poly[i][1]);
      svg << "\"/>\n";
    }
    svg << "  </g>\n";
  }

  svg << "  <g class=\"guides\" stroke=\"#555555\" stroke-width=\"" << thin << "\" stroke-dasharray=\"" << dash
      << "\" fill=\"none\">\n";
  for (const auto& [key, c] : report.centers) {
    const P cp = xy(c);
    for (const auto& t : guide_targets(config.shapes[report.order[key.first]], cp, box)) {
      svg << "    <line x1=\"" << num(cp[0]) << "\" y1=\"" << num(cp[1]) << "\" x2=\"" << num(t[0]) << "\" y2=\""
          << num(t[1]) << "\"/>\n";
    }
  }
  svg << "  </g>\n";

  if (report.hyperplane) {
    if (const auto seg = clip_line(*report.hyperplane, box)) {
      svg << "  <line class=\"monge-line\" x1=\"" << num((*seg)[0][0]) << "\" y1=\"" << num((*seg)[0][1])
          << "\" x2=\"" << num((*seg)[1][0]) << "\" y2=\"" << num((*seg)[1][1]) << "\" stroke=\"black\" stroke-width=\""
          << stroke << "\"/>\n";
    }
  }
  svg << "</g>\n";

  // Markers and labels live in pixel space so the text is not mirrored.
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (const auto& [key, c] : report.centers) {
    const P px = to_px(xy(c));
    const int a = std::min(report.order[key.first], report.order[key.second]) + 1;
    const int b = std::max(report.order[key.first], report.order[key.second]) + 1;
    svg << "  <circle class=\"center-marker\" cx=\"" << num(px[0]) << "\" cy=\"" << num(px[1])
        << "\" r=\"4\" fill=\"black\"/>\n"
        << "  <text x=\"" << num(px[0] + 6) << "\" y=\"" << num(px[1] - 6) << "\">(" << a << "," << b << ")</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::string render_figure(const Json& scenario, const FigureOptions& options) {
  if (!scenario.is_object()) throw ScenarioError("scenario must be a JSON object");
  if (parse_geometry(scenario.value("geometry", std::string("euclidean"))) != Geometry::Euclidean)
    throw ScenarioError("figures need a Euclidean scenario");
  if (scenario.value("kind", std::string()) != "shapes") throw ScenarioError("figures need a shapes scenario");
  if (scenario.value("dimension", 0) != 2) throw ScenarioError("figures need dimension 2");
  const MongeConfig<double> config = decode_shapes_scenario<double>(scenario, kTol);
  return render_figure(config, run_monge(config, kTol), options);
}

}  // namespace monge
