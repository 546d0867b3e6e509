#include "watchroute/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>

namespace watchroute {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 20.0;
constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

class Frame {
 public:
  explicit Frame(const std::vector<Point>& pts) {
    lo_ = hi_ = pts.front();
    for (const Point& p : pts) {
      lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
      hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
    }
    const double span = std::max({hi_.x - lo_.x, hi_.y - lo_.y, 1e-9});
    scale_ = (kCanvas - 2 * kMargin) / span;
    width_ = (hi_.x - lo_.x) * scale_ + 2 * kMargin;
    height_ = (hi_.y - lo_.y) * scale_ + 2 * kMargin;
  }

  double width() const { return width_; }
  double height() const { return height_; }
  Point map(Point p) const {
    return {kMargin + (p.x - lo_.x) * scale_, height_ - kMargin - (p.y - lo_.y) * scale_};
  }
  std::string points(const std::vector<Point>& pts) const {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point q = map(pts[i]);
      out += (i ? " " : "") + num(q.x) + "," + num(q.y);
    }
    return out;
  }

 private:
  Point lo_, hi_;
  double scale_ = 1.0;
  double width_ = 0.0;
  double height_ = 0.0;
};

std::vector<Point> star_shape(Point c, double r) {
  std::vector<Point> out;
  for (int k = 0; k < 10; ++k) {
    const double a = std::numbers::pi / 2 + k * std::numbers::pi / 5;
    const double rr = k % 2 ? r * 0.45 : r;
    out.push_back({c.x + rr * std::cos(a), c.y - rr * std::sin(a)});
  }
  return out;
}

std::vector<Point> sub_curve(const std::vector<Point>& way, const std::vector<double>& cum,
                             double s0, double s1, const Curve& curve) {
  std::vector<Point> out{curve.at(s0)};
  for (std::size_t i = 0; i < way.size(); ++i) {
    if (cum[i] > s0 && cum[i] < s1) out.push_back(way[i]);
  }
  out.push_back(curve.at(s1));
  return out;
}

}  // namespace

std::string render_svg(const InstanceDocument& instance, const SolutionDocument* solution) {
  std::vector<Point> all = instance.polygon;
  for (const auto* extra : {&instance.curve, &instance.targets, &instance.viewpoints}) {
    if (*extra) all.insert(all.end(), (*extra)->begin(), (*extra)->end());
  }
  if (instance.depots) all.insert(all.end(), instance.depots->depots.begin(), instance.depots->depots.end());
  const Frame f(all);
  const SimplePolygon poly = polygon_of(instance);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(f.width()) << "\" height=\""
      << num(f.height()) << "\" viewBox=\"0 0 " << num(f.width()) << " " << num(f.height())
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<polygon points=\"" << f.points(poly.vertices())
      << "\" fill=\"#f4f4f4\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  if (instance.curve) {
    out << "<polyline points=\"" << f.points(*instance.curve)
        << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4,3\"/>\n";
  }
  if (instance.viewpoints) {
    for (const Point& v : *instance.viewpoints) {
      const Point q = f.map(v);
      out << "<rect x=\"" << num(q.x - 3) << "\" y=\"" << num(q.y - 3)
          << "\" width=\"6\" height=\"6\" fill=\"none\" stroke=\"#777777\"/>\n";
    }
  }
  if (instance.depots) {
    for (const Point& d : instance.depots->depots) {
      const Point q = f.map(d);
      out << "<circle cx=\"" << num(q.x) << "\" cy=\"" << num(q.y)
          << "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
  }

  if (solution) {
    std::optional<Curve> curve;
    if (instance.curve) curve.emplace(poly, *instance.curve);
    auto square = [&](Point p, const char* color) {
      const Point q = f.map(p);
      out << "<rect x=\"" << num(q.x - 4) << "\" y=\"" << num(q.y - 4)
          << "\" width=\"8\" height=\"8\" fill=\"" << color << "\"/>\n";
    };
    for (std::size_t r = 0; r < solution->paths.size() && curve; ++r) {
      const PathOnCurve& p = solution->paths[r];
      if (p.idle()) continue;
      const char* color = kPalette[r % kPalette.size()];
      const auto line =
          sub_curve(curve->waypoints(), curve->cumulative_arclen(), p.s_start, p.s_end, *curve);
      out << "<polyline points=\"" << f.points(line) << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"4\" stroke-linecap=\"round\"/>\n";
      for (double s : p.viewpoints) square(curve->at(s), color);
    }
    for (std::size_t r = 0; r < solution->routes.size(); ++r) {
      const RobotRoute& rt = solution->routes[r];
      const char* color = kPalette[r % kPalette.size()];
      if (rt.polyline.size() >= 2) {
        out << "<polyline points=\"" << f.points(rt.polyline) << "\" fill=\"none\" stroke=\""
            << color << "\" stroke-width=\"3\" stroke-linejoin=\"round\"/>\n";
      }
      for (std::size_t v : rt.viewpoints) {
        if (instance.viewpoints && v < instance.viewpoints->size()) {
          square((*instance.viewpoints)[v], color);
        }
      }
    }
  }

  if (instance.targets) {
    for (const Point& x : *instance.targets) {
      out << "<polygon points=\"";
      const auto shape = star_shape(f.map(x), 7.0);
      for (std::size_t i = 0; i < shape.size(); ++i) {
        out << (i ? " " : "") << num(shape[i].x) << "," << num(shape[i].y);
      }
      out << "\" fill=\"#ffcc00\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace watchroute
