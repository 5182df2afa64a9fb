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

// Coordinate types for page regions and the operation algebra defined on
// them.  Three geometries are supported:
//
//   Interval       a 1D span on one page axis (optionally canvas-bounded)
//   Rectangle      an axis-aligned box, top-left / bottom-right corners
//   Quadrilateral  four corners, clockwise from top-left, for skewed regions
//
// Binary operations on mixed types promote to the "larger" geometry:
// Interval < Rectangle < Quadrilateral.  Quadrilaterals participate in the
// box algebra (is_in / intersect / union) through their axis-aligned
// bounding box; the result of a promoted op is re-tagged with the larger
// type so the algebra stays closed.
//
// All values are immutable; every operation returns a new value.

#pragma once

#include <array>
#include <optional>
#include <variant>

#include "lk/errors.hpp"
#include "lk/image.hpp"

namespace lk {

enum class Axis { horizontal, vertical };

enum class CoordKind { interval = 0, rectangle = 1, quadrilateral = 2 };

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Pad amounts per edge.  Negative values shrink the block.
struct Padding {
  double top = 0;
  double bottom = 0;
  double left = 0;
  double right = 0;
};

/// Page extents used when an Interval has to be widened into a Rectangle.
struct CanvasSize {
  double width = 0;
  double height = 0;
  friend bool operator==(const CanvasSize&, const CanvasSize&) = default;
};

class Rectangle;

/// A 1D span on one axis.  The free axis is unbounded unless canvas extents
/// are attached, in which case the interval behaves like a slab over the
/// canvas.
class Interval {
 public:
  Interval(double start, double end, Axis axis,
           std::optional<double> canvas_width = std::nullopt,
           std::optional<double> canvas_height = std::nullopt);

  double start() const { return start_; }
  double end() const { return end_; }
  Axis axis() const { return axis_; }
  std::optional<double> canvas_width() const { return canvas_width_; }
  std::optional<double> canvas_height() const { return canvas_height_; }

  double length() const { return end_ - start_; }
  double center() const { return (start_ + end_) / 2.0; }

  /// Only the displacement along the interval's axis applies.
  Interval shift(double dx, double dy) const;
  Interval pad(const Padding& p, bool safe_mode = false) const;
  Interval scale(double fx, double fy) const;

  /// Slab over the given canvas; falls back to the stored canvas extents.
  /// Throws when the free axis is unbounded.
  Rectangle to_rectangle(std::optional<CanvasSize> canvas = std::nullopt) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double start_;
  double end_;
  Axis axis_;
  std::optional<double> canvas_width_;
  std::optional<double> canvas_height_;
};

class Quadrilateral;

/// Axis-aligned box; (x1, y1) top-left, (x2, y2) bottom-right.
class Rectangle {
 public:
  Rectangle(double x1, double y1, double x2, double y2);

  double x1() const { return x1_; }
  double y1() const { return y1_; }
  double x2() const { return x2_; }
  double y2() const { return y2_; }

  double width() const { return x2_ - x1_; }
  double height() const { return y2_ - y1_; }
  double area() const { return width() * height(); }
  Point center() const { return {(x1_ + x2_) / 2.0, (y1_ + y2_) / 2.0}; }

  /// Corners clockwise from top-left.
  std::array<Point, 4> corners() const;

  Rectangle shift(double dx, double dy) const;
  Rectangle pad(const Padding& p, bool safe_mode = false) const;
  Rectangle scale(double fx, double fy) const;
  Quadrilateral to_quadrilateral() const;

  friend bool operator==(const Rectangle&, const Rectangle&) = default;

 private:
  double x1_, y1_, x2_, y2_;
};

/// Four corners in clockwise order starting at the top-left.  The polygon
/// must be simple (no edge crossings); degenerate (zero-area) quads are
/// allowed so that batch pipelines never abort on collapsed regions.
class Quadrilateral {
 public:
  explicit Quadrilateral(const std::array<Point, 4>& points);
  Quadrilateral(Point p1, Point p2, Point p3, Point p4);

  const std::array<Point, 4>& points() const { return points_; }

  Rectangle bounding_rect() const;
  /// Signed-area magnitude of the polygon itself (shoelace), not the bbox.
  double area() const;

  Quadrilateral shift(double dx, double dy) const;
  /// Pads the corner points so that for an axis-aligned quad the result
  /// matches Rectangle::pad on the corresponding box.
  Quadrilateral pad(const Padding& p, bool safe_mode = false) const;
  Quadrilateral scale(double fx, double fy) const;

  friend bool operator==(const Quadrilateral&, const Quadrilateral&) = default;

 private:
  std::array<Point, 4> points_;
};

using Coordinate = std::variant<Interval, Rectangle, Quadrilateral>;

CoordKind kind(const Coordinate& c);
const char* kind_name(CoordKind k);

Coordinate shift(const Coordinate& c, double dx, double dy);
Coordinate pad(const Coordinate& c, const Padding& p, bool safe_mode = false);
Coordinate scale(const Coordinate& c, double fx, double fy);

/// Containment test, boundary-inclusive.  With center_only the test reduces
/// to "inner's center point lies in outer".  Intervals act as infinite
/// slabs unless canvas extents bound them; the outer region of a
/// Quadrilateral is its bounding box (consistent with the box algebra).
bool is_in(const Coordinate& inner, const Coordinate& outer,
           bool center_only = false);

/// Axis-aligned intersection; the result takes the larger operand type.
/// An empty overlap collapses symmetrically to a zero-extent block between
/// the operands rather than raising.
Coordinate intersect(const Coordinate& a, const Coordinate& b);

/// Smallest axis-aligned region enclosing both operands (enclosing-box
/// union, not a geometric union).  Mixed-axis interval pairs need canvas
/// extents to bound their free axes.
Coordinate union_of(const Coordinate& a, const Coordinate& b);

/// Translate `c` into the frame whose origin is `base`'s top-left point.
Coordinate relative_to(const Coordinate& c, const Coordinate& base);

/// Inverse of relative_to with the same base.
Coordinate condition_on(const Coordinate& c, const Coordinate& base);

/// Interval / Rectangle: clamped axis-aligned crop.  Quadrilateral:
/// perspective warp of the four corners onto an upright rectangle whose
/// sides are the means of the opposing edge lengths (bilinear sampling).
/// Throws when the clamped region is empty.
RasterImage crop_image(const Coordinate& c, const RasterImage& image);

/// Explicit conversion between geometry kinds.  Upward coercions enlarge
/// (Interval becomes a canvas slab, Rectangle its four corners); coercing a
/// Quadrilateral down gives its bounding box.  Coercions onto Interval are
/// only defined for Interval inputs.
Coordinate coerce(const Coordinate& c, CoordKind target,
                  std::optional<CanvasSize> canvas = std::nullopt);

/// Bounding rectangle of any coordinate.  The free axis of a canvas-less
/// Interval collapses to [0, 0] unless extents are supplied.
Rectangle bounding_rect(const Coordinate& c,
                        std::optional<CanvasSize> canvas = std::nullopt);

/// Region area: exact for Rectangle, shoelace for Quadrilateral, zero for
/// Interval (no extent on the free axis).
double area(const Coordinate& c);

}  // namespace lk
