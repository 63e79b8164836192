#include <algorithm>
#include <cstdio>
#include <sstream>

#include "chaut/svg.hpp"

namespace chaut {

namespace {

constexpr double kSize = 400.0;
constexpr double kMargin = 20.0;
constexpr double kPlot = kSize - 2 * kMargin;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

double sx(double x, double offset = 0) { return offset + kMargin + x * kPlot; }
double sy(double y) { return kMargin + (1.0 - y) * kPlot; }

std::string header(double width) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(kSize) +
         "\" viewBox=\"0 0 " + num(width) + " " + num(kSize) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string frame(double offset = 0) {
  return "<rect x=\"" + num(offset + kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" + num(kPlot) +
         "\" height=\"" + num(kPlot) + "\" fill=\"none\" stroke=\"black\"/>\n";
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
  std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += " ";
    s += num(pts[i].first) + "," + num(pts[i].second);
  }
  return s + "\"/>\n";
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string complex_cells(const std::vector<std::vector<Point>>& cells, double offset) {
  std::string s;
  for (const auto& cell : cells) {
    s += "<polygon fill=\"#dde8f4\" stroke=\"#1f77b4\" points=\"";
    for (std::size_t i = 0; i < cell.size(); ++i) {
      if (i) s += " ";
      s += num(sx(to_double(cell[i](0)), offset)) + "," + num(sy(to_double(cell[i](1))));
    }
    s += "\"/>\n";
  }
  return s;
}

}  // namespace

std::string svg_map_graph(const PiecewiseFractionalMap& map, int samples) {
  if (map.n() != 2) throw Error(ErrorCode::Unsupported, "map graphs need n = 2");
  if (samples < 2) throw Error(ErrorCode::Unsupported, "need at least 2 samples");
  std::string s = header(kSize) + frame();
  s += "<line x1=\"" + num(sx(0)) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" + num(sx(1)) + "\" y2=\"" + num(sy(1)) +
       "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < samples; ++k) {
    const Rational x(k, samples - 1);
    const Rational y = apply(map, make_point({x}))(0);
    pts.emplace_back(sx(to_double(x)), sy(to_double(y)));
  }
  s += polyline(pts, kColors[0]);
  std::vector<Rational> xs;
  for (const auto& v : map.source().vertices()) xs.push_back(v(0));
  std::sort(xs.begin(), xs.end());
  for (const auto& x : xs) {
    const Rational y = apply(map, make_point({x}))(0);
    s += "<circle cx=\"" + num(sx(to_double(x))) + "\" cy=\"" + num(sy(to_double(y))) +
         "\" r=\"3\" fill=\"black\"><title>" + to_string(x) + " -> " + to_string(y) + "</title></circle>\n";
  }
  return s + "</svg>\n";
}

std::string svg_complex_image(const PiecewiseFractionalMap& map) {
  if (map.n() != 3) throw Error(ErrorCode::Unsupported, "complex images need n = 3");
  const auto& src = map.source();
  std::vector<std::vector<Point>> before, after;
  for (std::size_t t = 0; t < src.num_top(); ++t) {
    const auto& vs = src.top_polytope(t).vertices();
    before.push_back(vs);
    std::vector<Point> img;
    for (const auto& v : vs) img.push_back(dehomogenize(IntVector(map.matrix(t) * primitive_homogeneous(v).coords)));
    after.push_back(std::move(img));
  }
  std::string s = header(2 * kSize);
  s += complex_cells(before, 0) + frame(0);
  s += complex_cells(after, kSize) + frame(kSize);
  return s + "</svg>\n";
}

std::string svg_orbit_trace(const OrbitRecord& orbit) {
  const std::size_t len = orbit.size();
  if (len == 0) throw Error(ErrorCode::Unsupported, "empty orbit");
  const std::size_t dim = orbit.mode == Mode::Exact ? orbit.exact[0].size() : orbit.approx[0].size();
  std::string s = header(kSize) + frame();
  const double span = len > 1 ? static_cast<double>(len - 1) : 1.0;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < len; ++k) {
      const double y = orbit.mode == Mode::Exact ? to_double(orbit.exact[k](static_cast<Eigen::Index>(i)))
                                                 : orbit.approx[k][i];
      pts.emplace_back(sx(static_cast<double>(k) / span), sy(y));
    }
    s += polyline(pts, kColors[i % 5]);
  }
  return s + "</svg>\n";
}

}  // namespace chaut
