/*
 * Copyright 2026 The layoutkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp_non_negative(double v) { return v < 0 ? 0 : v; }

// Strict interior crossing of segments ab and cd.  Touching endpoints do
// not count, so degenerate (collapsed) quads stay valid.
bool segments_cross(Point a, Point b, Point c, Point d) {
  auto orient = [](Point p, Point q, Point r) {
    const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return (v > 0) - (v < 0);
  };
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  return o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 && o1 != o2 && o3 != o4;
}

// Axis-aligned extent with +-inf for unbounded interval axes.  All the
// box-based binary ops run on this representation.
struct Extent {
  double x1, y1, x2, y2;
};

Extent extent_of(const Interval& iv) {
  Extent e{-kInf, -kInf, kInf, kInf};
  if (iv.axis() == Axis::horizontal) {
    e.x1 = iv.start();
    e.x2 = iv.end();
    if (iv.canvas_height()) {
      e.y1 = 0;
      e.y2 = *iv.canvas_height();
    }
  } else {
    e.y1 = iv.start();
    e.y2 = iv.end();
    if (iv.canvas_width()) {
      e.x1 = 0;
      e.x2 = *iv.canvas_width();
    }
  }
  return e;
}

Extent extent_of(const Coordinate& c) {
  if (const auto* iv = std::get_if<Interval>(&c)) return extent_of(*iv);
  const Rectangle r = std::holds_alternative<Rectangle>(c)
                          ? std::get<Rectangle>(c)
                          : std::get<Quadrilateral>(c).bounding_rect();
  return {r.x1(), r.y1(), r.x2(), r.y2()};
}

std::optional<double> merge_extent(std::optional<double> a,
                                   std::optional<double> b) {
  return a == b ? a : std::nullopt;
}

// Retained canvas for binary interval results: kept only when both operands
// agree, so the ops stay commutative.
Interval merge_canvas(const Interval& a, const Interval& b, double start,
                      double end) {
  return Interval(start, end, a.axis(),
                  merge_extent(a.canvas_width(), b.canvas_width()),
                  merge_extent(a.canvas_height(), b.canvas_height()));
}

Coordinate retag(const Rectangle& r, CoordKind target) {
  if (target == CoordKind::quadrilateral) return r.to_quadrilateral();
  return r;
}

// 3x3 homography, row major.
using Mat3 = std::array<double, 9>;

// Solves the 8x8 linear system of the four point correspondences
// (sx_i, sy_i) -> (dx_i, dy_i) by Gaussian elimination with partial
// pivoting; h33 is fixed at 1.
Mat3 homography_from_corners(const std::array<Point, 4>& src,
                             const std::array<Point, 4>& dst) {
  double a[8][9] = {};
  for (int i = 0; i < 4; ++i) {
    const double sx = src[i].x, sy = src[i].y;
    const double dx = dst[i].x, dy = dst[i].y;
    double* r0 = a[2 * i];
    double* r1 = a[2 * i + 1];
    r0[0] = sx; r0[1] = sy; r0[2] = 1;
    r0[6] = -sx * dx; r0[7] = -sy * dx; r0[8] = dx;
    r1[3] = sx; r1[4] = sy; r1[5] = 1;
    r1[6] = -sx * dy; r1[7] = -sy * dy; r1[8] = dy;
  }
  for (int col = 0; col < 8; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 8; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-12)
      throw Error("degenerate quadrilateral: corner correspondences are rank deficient");
    std::swap_ranges(a[col], a[col] + 9, a[pivot]);
    for (int r = 0; r < 8; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int k = col; k < 9; ++k) a[r][k] -= f * a[col][k];
    }
  }
  Mat3 h;
  for (int i = 0; i < 8; ++i) h[i] = a[i][8] / a[i][i];
  h[8] = 1;
  return h;
}

Point apply_homography(const Mat3& h, double x, double y) {
  const double w = h[6] * x + h[7] * y + h[8];
  return {(h[0] * x + h[1] * y + h[2]) / w,
          (h[3] * x + h[4] * y + h[5]) / w};
}

Rgb sample_bilinear(const RasterImage& img, double x, double y) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  auto clamped = [&](int px, int py) {
    px = std::clamp(px, 0, img.width() - 1);
    py = std::clamp(py, 0, img.height() - 1);
    return img.pixel(px, py);
  };
  const Rgb p00 = clamped(x0, y0), p10 = clamped(x0 + 1, y0);
  const Rgb p01 = clamped(x0, y0 + 1), p11 = clamped(x0 + 1, y0 + 1);
  auto mix = [&](double c00, double c10, double c01, double c11) {
    const double v = c00 * (1 - fx) * (1 - fy) + c10 * fx * (1 - fy) +
                     c01 * (1 - fx) * fy + c11 * fx * fy;
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
  };
  return {mix(p00.r, p10.r, p01.r, p11.r), mix(p00.g, p10.g, p01.g, p11.g),
          mix(p00.b, p10.b, p01.b, p11.b)};
}

double dist(Point a, Point b) { return std::hypot(b.x - a.x, b.y - a.y); }

}  // namespace

// ---------------------------------------------------------------------------
// Interval

Interval::Interval(double start, double end, Axis axis,
                   std::optional<double> canvas_width,
                   std::optional<double> canvas_height)
    : start_(start),
      end_(end),
      axis_(axis),
      canvas_width_(canvas_width),
      canvas_height_(canvas_height) {
  if (start > end)
    throw Error("interval start " + std::to_string(start) + " > end " +
                std::to_string(end));
  if ((canvas_width_ && *canvas_width_ < 0) ||
      (canvas_height_ && *canvas_height_ < 0))
    throw Error("canvas extents must be >= 0");
}

Interval Interval::shift(double dx, double dy) const {
  const double d = axis_ == Axis::horizontal ? dx : dy;
  return Interval(start_ + d, end_ + d, axis_, canvas_width_, canvas_height_);
}

Interval Interval::pad(const Padding& p, bool safe_mode) const {
  const double lo = axis_ == Axis::horizontal ? p.left : p.top;
  const double hi = axis_ == Axis::horizontal ? p.right : p.bottom;
  double s = start_ - lo;
  double e = end_ + hi;
  if (s > e) throw Error("pad inverted the interval");
  if (safe_mode) {
    s = clamp_non_negative(s);
    e = clamp_non_negative(e);
    const std::optional<double> bound =
        axis_ == Axis::horizontal ? canvas_width_ : canvas_height_;
    if (bound) {
      s = std::min(s, *bound);
      e = std::min(e, *bound);
    }
  }
  return Interval(s, e, axis_, canvas_width_, canvas_height_);
}

Interval Interval::scale(double fx, double fy) const {
  if (fx <= 0 || fy <= 0) throw Error("scale factors must be positive");
  const double f = axis_ == Axis::horizontal ? fx : fy;
  auto scaled = [](std::optional<double> v, double factor) {
    return v ? std::optional<double>(*v * factor) : std::nullopt;
  };
  return Interval(start_ * f, end_ * f, axis_, scaled(canvas_width_, fx),
                  scaled(canvas_height_, fy));
}

Rectangle Interval::to_rectangle(std::optional<CanvasSize> canvas) const {
  double free_lo = 0, free_hi = 0;
  if (canvas) {
    free_hi = axis_ == Axis::horizontal ? canvas->height : canvas->width;
  } else if (axis_ == Axis::horizontal && canvas_height_) {
    free_hi = *canvas_height_;
  } else if (axis_ == Axis::vertical && canvas_width_) {
    free_hi = *canvas_width_;
  } else {
    throw Error("interval has no bound for its free axis; supply canvas extents");
  }
  return axis_ == Axis::horizontal
             ? Rectangle(start_, free_lo, end_, free_hi)
             : Rectangle(free_lo, start_, free_hi, end_);
}

// ---------------------------------------------------------------------------
// Rectangle

Rectangle::Rectangle(double x1, double y1, double x2, double y2)
    : x1_(x1), y1_(y1), x2_(x2), y2_(y2) {
  if (x1 > x2 || y1 > y2)
    throw Error("rectangle corners out of order: (" + std::to_string(x1) +
                ", " + std::to_string(y1) + ", " + std::to_string(x2) + ", " +
                std::to_string(y2) + ")");
}

std::array<Point, 4> Rectangle::corners() const {
  return {Point{x1_, y1_}, Point{x2_, y1_}, Point{x2_, y2_}, Point{x1_, y2_}};
}

Rectangle Rectangle::shift(double dx, double dy) const {
  return Rectangle(x1_ + dx, y1_ + dy, x2_ + dx, y2_ + dy);
}

Rectangle Rectangle::pad(const Padding& p, bool safe_mode) const {
  double x1 = x1_ - p.left, y1 = y1_ - p.top;
  double x2 = x2_ + p.right, y2 = y2_ + p.bottom;
  if (x1 > x2 || y1 > y2) throw Error("pad inverted the rectangle");
  if (safe_mode) {
    x1 = clamp_non_negative(x1);
    y1 = clamp_non_negative(y1);
    x2 = clamp_non_negative(x2);
    y2 = clamp_non_negative(y2);
  }
  return Rectangle(x1, y1, x2, y2);
}

Rectangle Rectangle::scale(double fx, double fy) const {
  if (fx <= 0 || fy <= 0) throw Error("scale factors must be positive");
  return Rectangle(x1_ * fx, y1_ * fy, x2_ * fx, y2_ * fy);
}

Quadrilateral Rectangle::to_quadrilateral() const {
  const auto c = corners();
  return Quadrilateral(c[0], c[1], c[2], c[3]);
}

// ---------------------------------------------------------------------------
// Quadrilateral

Quadrilateral::Quadrilateral(const std::array<Point, 4>& points)
    : points_(points) {
  if (segments_cross(points_[0], points_[1], points_[2], points_[3]) ||
      segments_cross(points_[1], points_[2], points_[3], points_[0]))
    throw Error("quadrilateral is self-intersecting");
}

Quadrilateral::Quadrilateral(Point p1, Point p2, Point p3, Point p4)
    : Quadrilateral(std::array<Point, 4>{p1, p2, p3, p4}) {}

Rectangle Quadrilateral::bounding_rect() const {
  double x1 = points_[0].x, x2 = points_[0].x;
  double y1 = points_[0].y, y2 = points_[0].y;
  for (const Point& p : points_) {
    x1 = std::min(x1, p.x);
    x2 = std::max(x2, p.x);
    y1 = std::min(y1, p.y);
    y2 = std::max(y2, p.y);
  }
  return Rectangle(x1, y1, x2, y2);
}

double Quadrilateral::area() const {
  double s = 0;
  for (int i = 0; i < 4; ++i) {
    const Point& p = points_[i];
    const Point& q = points_[(i + 1) % 4];
    s += p.x * q.y - q.x * p.y;
  }
  return std::abs(s) / 2.0;
}

Quadrilateral Quadrilateral::shift(double dx, double dy) const {
  std::array<Point, 4> pts;
  for (int i = 0; i < 4; ++i) pts[i] = {points_[i].x + dx, points_[i].y + dy};
  return Quadrilateral(pts);
}

Quadrilateral Quadrilateral::pad(const Padding& p, bool safe_mode) const {
  const Rectangle box = bounding_rect();
  if (box.width() + p.left + p.right < 0 ||
      box.height() + p.top + p.bottom < 0)
    throw Error("pad inverted the quadrilateral");
  // Corner roles by construction: p1 top-left, p2 top-right, p3 bottom-right,
  // p4 bottom-left.
  std::array<Point, 4> pts = points_;
  pts[0].x -= p.left;  pts[0].y -= p.top;
  pts[1].x += p.right; pts[1].y -= p.top;
  pts[2].x += p.right; pts[2].y += p.bottom;
  pts[3].x -= p.left;  pts[3].y += p.bottom;
  if (safe_mode)
    for (Point& pt : pts) {
      pt.x = clamp_non_negative(pt.x);
      pt.y = clamp_non_negative(pt.y);
    }
  return Quadrilateral(pts);
}

Quadrilateral Quadrilateral::scale(double fx, double fy) const {
  if (fx <= 0 || fy <= 0) throw Error("scale factors must be positive");
  std::array<Point, 4> pts;
  for (int i = 0; i < 4; ++i) pts[i] = {points_[i].x * fx, points_[i].y * fy};
  return Quadrilateral(pts);
}

// ---------------------------------------------------------------------------
// Variant-level operations

CoordKind kind(const Coordinate& c) {
  return static_cast<CoordKind>(c.index());
}

const char* kind_name(CoordKind k) {
  switch (k) {
    case CoordKind::interval: return "interval";
    case CoordKind::rectangle: return "rectangle";
    case CoordKind::quadrilateral: return "quadrilateral";
  }
  return "?";
}

Coordinate shift(const Coordinate& c, double dx, double dy) {
  return std::visit([&](const auto& v) -> Coordinate { return v.shift(dx, dy); }, c);
}

Coordinate pad(const Coordinate& c, const Padding& p, bool safe_mode) {
  return std::visit(
      [&](const auto& v) -> Coordinate { return v.pad(p, safe_mode); }, c);
}

Coordinate scale(const Coordinate& c, double fx, double fy) {
  return std::visit(
      [&](const auto& v) -> Coordinate { return v.scale(fx, fy); }, c);
}

bool is_in(const Coordinate& inner, const Coordinate& outer, bool center_only) {
  const Extent in = extent_of(inner);
  const Extent out = extent_of(outer);
  if (!center_only) {
    return in.x1 >= out.x1 && in.x2 <= out.x2 && in.y1 >= out.y1 &&
           in.y2 <= out.y2;
  }
  // Center of an unbounded slab axis is NaN; such an axis only passes when
  // the outer region is unbounded there too.
  const double cx = (in.x1 + in.x2) / 2.0;
  const double cy = (in.y1 + in.y2) / 2.0;
  auto axis_ok = [](double c, double lo, double hi) {
    if (std::isnan(c)) return lo == -kInf && hi == kInf;
    return c >= lo && c <= hi;
  };
  return axis_ok(cx, out.x1, out.x2) && axis_ok(cy, out.y1, out.y2);
}

Coordinate intersect(const Coordinate& a, const Coordinate& b) {
  const CoordKind target = std::max(kind(a), kind(b));

  if (target == CoordKind::interval) {
    const auto& ia = std::get<Interval>(a);
    const auto& ib = std::get<Interval>(b);
    if (ia.axis() == ib.axis()) {
      double lo = std::max(ia.start(), ib.start());
      double hi = std::min(ia.end(), ib.end());
      if (lo > hi) lo = hi = (lo + hi) / 2.0;  // disjoint: collapse between
      return merge_canvas(ia, ib, lo, hi);
    }
    // Crossing slabs bound each other on both axes; the extent path below
    // also applies canvas clipping when extents are attached.
  }

  const Extent ea = extent_of(a);
  const Extent eb = extent_of(b);
  double x1 = std::max(ea.x1, eb.x1), x2 = std::min(ea.x2, eb.x2);
  double y1 = std::max(ea.y1, eb.y1), y2 = std::min(ea.y2, eb.y2);
  if (x1 > x2) x1 = x2 = (x1 + x2) / 2.0;
  if (y1 > y2) y1 = y2 = (y1 + y2) / 2.0;
  if (std::isinf(x1) || std::isinf(x2) || std::isinf(y1) || std::isinf(y2))
    throw Error("intersection is unbounded; the interval operand needs canvas extents");
  return retag(Rectangle(x1, y1, x2, y2), target);
}

Coordinate union_of(const Coordinate& a, const Coordinate& b) {
  const CoordKind target = std::max(kind(a), kind(b));

  if (target == CoordKind::interval) {
    const auto& ia = std::get<Interval>(a);
    const auto& ib = std::get<Interval>(b);
    if (ia.axis() == ib.axis()) {
      return merge_canvas(ia, ib, std::min(ia.start(), ib.start()),
                          std::max(ia.end(), ib.end()));
    }
  }

  const Extent ea = extent_of(a);
  const Extent eb = extent_of(b);
  const double x1 = std::min(ea.x1, eb.x1), x2 = std::max(ea.x2, eb.x2);
  const double y1 = std::min(ea.y1, eb.y1), y2 = std::max(ea.y2, eb.y2);
  if (std::isinf(x1) || std::isinf(x2) || std::isinf(y1) || std::isinf(y2))
    throw Error("union is unbounded; the interval operand needs canvas extents");
  return retag(Rectangle(x1, y1, x2, y2),
               std::max(target, CoordKind::rectangle));
}

namespace {

Point origin_of(const Coordinate& base) {
  if (const auto* iv = std::get_if<Interval>(&base)) {
    return iv->axis() == Axis::horizontal ? Point{iv->start(), 0}
                                          : Point{0, iv->start()};
  }
  const Rectangle r = bounding_rect(base);
  return {r.x1(), r.y1()};
}

}  // namespace

Coordinate relative_to(const Coordinate& c, const Coordinate& base) {
  const Point o = origin_of(base);
  return shift(c, -o.x, -o.y);
}

Coordinate condition_on(const Coordinate& c, const Coordinate& base) {
  const Point o = origin_of(base);
  return shift(c, o.x, o.y);
}

RasterImage crop_image(const Coordinate& c, const RasterImage& image) {
  if (image.empty()) throw Error("cannot crop an empty image");

  if (const auto* q = std::get_if<Quadrilateral>(&c)) {
    const auto& p = q->points();
    const int w = static_cast<int>(
        std::lround((dist(p[0], p[1]) + dist(p[3], p[2])) / 2.0));
    const int h = static_cast<int>(
        std::lround((dist(p[0], p[3]) + dist(p[1], p[2])) / 2.0));
    if (w <= 0 || h <= 0) throw Error("crop region is empty");
    const std::array<Point, 4> upright = {
        Point{0, 0}, Point{double(w), 0}, Point{double(w), double(h)},
        Point{0, double(h)}};
    const Mat3 hom = homography_from_corners(upright, p);
    RasterImage out(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const Point s = apply_homography(hom, x, y);
        out.set_pixel(x, y, sample_bilinear(image, s.x, s.y));
      }
    return out;
  }

  const Extent e = extent_of(c);
  auto clamped = [](double v, int lo, int hi) {
    const double c = std::clamp(v, double(lo), double(hi));
    return static_cast<int>(std::lround(c));
  };
  const int x1 = clamped(e.x1, 0, image.width());
  const int y1 = clamped(e.y1, 0, image.height());
  const int x2 = clamped(e.x2, 0, image.width());
  const int y2 = clamped(e.y2, 0, image.height());
  if (x2 <= x1 || y2 <= y1) throw Error("crop region is empty");
  RasterImage out(x2 - x1, y2 - y1);
  for (int y = y1; y < y2; ++y)
    for (int x = x1; x < x2; ++x) out.set_pixel(x - x1, y - y1, image.pixel(x, y));
  return out;
}

Coordinate coerce(const Coordinate& c, CoordKind target,
                  std::optional<CanvasSize> canvas) {
  if (kind(c) == target) return c;
  switch (target) {
    case CoordKind::rectangle:
      if (const auto* iv = std::get_if<Interval>(&c))
        return iv->to_rectangle(canvas);
      return std::get<Quadrilateral>(c).bounding_rect();
    case CoordKind::quadrilateral: {
      const Rectangle r = std::holds_alternative<Rectangle>(c)
                              ? std::get<Rectangle>(c)
                              : std::get<Interval>(c).to_rectangle(canvas);
      return r.to_quadrilateral();
    }
    case CoordKind::interval:
      throw Error(std::string("cannot coerce a ") + kind_name(kind(c)) +
                  " to an interval: the target axis is ambiguous");
  }
  throw Error("unknown coercion target");
}

Rectangle bounding_rect(const Coordinate& c, std::optional<CanvasSize> canvas) {
  if (const auto* iv = std::get_if<Interval>(&c)) {
    if (canvas || (iv->axis() == Axis::horizontal && iv->canvas_height()) ||
        (iv->axis() == Axis::vertical && iv->canvas_width()))
      return iv->to_rectangle(canvas);
    // Unbounded free axis collapses to zero extent.
    return iv->axis() == Axis::horizontal
               ? Rectangle(iv->start(), 0, iv->end(), 0)
               : Rectangle(0, iv->start(), 0, iv->end());
  }
  if (const auto* r = std::get_if<Rectangle>(&c)) return *r;
  return std::get<Quadrilateral>(c).bounding_rect();
}

double area(const Coordinate& c) {
  if (std::holds_alternative<Interval>(c)) return 0;
  if (const auto* r = std::get_if<Rectangle>(&c)) return r->area();
  return std::get<Quadrilateral>(c).area();
}

}  // namespace lk
