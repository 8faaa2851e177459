#pragma once

// Test-side reference computations. Nothing here calls into the library's
// arithmetic: plain long long matrices and a planar crossing count.

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

namespace oracle {

// Planar model of the four-holed sphere P: holes 1, 2, 3 at (0,0), (2,0),
// (4,0), hole 4 at infinity. The closed genus-3 surface is the double of P,
// with a_i the boundary circle of hole i (counterclockwise) and b_i the
// double of a vertical arc from hole i up to hole 4. The coefficient of a_i
// in a curve's class is its signed crossing count with that arc, i.e. the
// winding number of the polygon about hole i. b-coefficients vanish since
// every curve lies in one copy of P.
struct Point {
  double x, y;
};

inline int crossings_with_arc(const std::vector<Point>& polygon, Point hole) {
  int total = 0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point p = polygon[i];
    const Point q = polygon[(i + 1) % polygon.size()];
    if ((p.x < hole.x) == (q.x < hole.x)) continue;
    const double t = (hole.x - p.x) / (q.x - p.x);
    const double y = p.y + t * (q.y - p.y);
    if (y <= hole.y) continue;
    total += q.x < p.x ? 1 : -1;  // leftward crossing above the hole is counterclockwise
  }
  return total;
}

inline std::vector<Point> box(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

using Vec6 = std::array<long long, 6>;

inline Vec6 polygon_class(const std::vector<Point>& polygon) {
  const Point holes[] = {{0, 0}, {2, 0}, {4, 0}};
  Vec6 v{};
  for (int i = 0; i < 3; ++i) v[2 * i] = crossings_with_arc(polygon, holes[i]);
  return v;
}

inline std::map<std::string, std::vector<Point>> lantern_polygons() {
  std::map<std::string, std::vector<Point>> out;
  out["1"] = box(-0.5, -0.5, 0.5, 0.5);
  out["2"] = box(1.5, -0.5, 2.5, 0.5);
  out["3"] = box(3.5, -0.5, 4.5, 0.5);
  auto outer = box(-10, -10, 10, 10);
  std::reverse(outer.begin(), outer.end());  // boundary of hole 4, oriented like the others
  out["4"] = outer;
  out["alpha"] = box(-1, -1, 3, 1);
  out["beta"] = box(1, -1, 5, 1);
  // around holes 1 and 3, passing below hole 2
  out["gamma"] = {{-1, -1}, {5, -1}, {5, 1}, {3, 1}, {3, -0.5}, {1, -0.5}, {1, 1}, {-1, 1}};
  return out;
}

using Mat6 = std::array<std::array<long long, 6>, 6>;

inline Mat6 identity6() {
  Mat6 m{};
  for (int i = 0; i < 6; ++i) m[i][i] = 1;
  return m;
}

inline long long pairing(const Vec6& x, const Vec6& y) {
  long long s = 0;
  for (int i = 0; i < 6; i += 2) s += x[i] * y[i + 1] - x[i + 1] * y[i];
  return s;
}

// Row-vector action x -> x + e <x,c> c, built column by column from basis images.
inline Mat6 twist_action(const Vec6& c, long long e) {
  Mat6 m{};
  for (int r = 0; r < 6; ++r) {
    Vec6 x{};
    x[r] = 1;
    const long long k = e * pairing(x, c);
    for (int col = 0; col < 6; ++col) m[r][col] = x[col] + k * c[col];
  }
  return m;
}

inline Mat6 mul(const Mat6& a, const Mat6& b) {
  Mat6 out{};
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k)
      for (int j = 0; j < 6; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// Leftmost twist acts first on row vectors, so the product is left to right.
inline Mat6 lantern_action(const std::vector<std::string>& curves) {
  const auto polys = lantern_polygons();
  Mat6 m = identity6();
  for (const auto& name : curves) m = mul(m, twist_action(polygon_class(polys.at(name)), 1));
  return m;
}

using Mat2 = std::array<long long, 4>;  // row-major

inline Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

// L = [[1,0],[1,1]], R = [[1,1],[0,1]]; powers by repeated multiplication.
inline Mat2 torus_eval(const std::vector<std::pair<char, int>>& letters) {
  Mat2 m{1, 0, 0, 1};
  for (const auto& [g, e] : letters) {
    const Mat2 step = g == 'L' ? (e > 0 ? Mat2{1, 0, 1, 1} : Mat2{1, 0, -1, 1})
                               : (e > 0 ? Mat2{1, 1, 0, 1} : Mat2{1, -1, 0, 1});
    for (int i = 0; i < (e > 0 ? e : -e); ++i) m = mul(m, step);
  }
  return m;
}

}  // namespace oracle
