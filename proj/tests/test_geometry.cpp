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

#include "doctest.h"

#include <cmath>

#include "lk/geometry.hpp"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"

using namespace lk;
using namespace lk::testsupport;

namespace {

Rectangle rect_of(const Coordinate& c) { return std::get<Rectangle>(c); }

bool approx_rect(const Rectangle& a, const Rectangle& b, double eps = 1e-9) {
  return std::abs(a.x1() - b.x1()) < eps && std::abs(a.y1() - b.y1()) < eps &&
         std::abs(a.x2() - b.x2()) < eps && std::abs(a.y2() - b.y2()) < eps;
}

}  // namespace

TEST_CASE("interval invariants") {
  CHECK_THROWS_AS(Interval(9, 5, Axis::horizontal), Error);
  CHECK_THROWS_AS(Interval(0, 5, Axis::horizontal, -1.0, 10.0), Error);
  const Interval iv(5, 9, Axis::vertical);
  CHECK(iv.length() == 4);
  CHECK(iv.center() == 7);
}

TEST_CASE("rectangle invariants") {
  CHECK_THROWS_AS(Rectangle(5, 0, 4, 10), Error);
  CHECK_THROWS_AS(Rectangle(0, 5, 10, 4), Error);
  CHECK(Rectangle(0, 0, 0, 0).area() == 0);
}

TEST_CASE("quadrilateral rejects self-intersection") {
  CHECK_THROWS_AS(Quadrilateral(Point{0, 0}, Point{10, 10}, Point{10, 0},
                                Point{0, 10}),
                  Error);
  // Degenerate but simple is fine.
  CHECK_NOTHROW(Quadrilateral(Point{0, 0}, Point{5, 0}, Point{5, 0}, Point{0, 0}));
}

TEST_CASE("shift examples") {
  CHECK(Rectangle(0, 0, 10, 10).shift(0, 0) == Rectangle(0, 0, 10, 10));
  CHECK(Rectangle(1, 2, 3, 4).shift(10, 20) == Rectangle(11, 22, 13, 24));
  // The vertical component is ignored for a horizontal interval.
  CHECK(Interval(5, 9, Axis::horizontal).shift(3, 100) ==
        Interval(8, 12, Axis::horizontal));
  CHECK(Interval(5, 9, Axis::vertical).shift(100, 3) ==
        Interval(8, 12, Axis::vertical));
}

TEST_CASE("pad examples") {
  const Rectangle r(10, 10, 20, 20);
  CHECK(r.pad({}) == r);
  CHECK(r.pad({.top = 5, .bottom = 1, .left = 2, .right = 3}) ==
        Rectangle(8, 5, 23, 21));
  CHECK(Rectangle(1, 1, 5, 5).pad({.top = 4}, /*safe_mode=*/true) ==
        Rectangle(1, 0, 5, 5));
  CHECK_THROWS_AS(Rectangle(0, 0, 4, 4).pad({.left = -10}), Error);
  CHECK_THROWS_AS(Interval(2, 4, Axis::horizontal).pad({.left = -10}), Error);

  // Interval pad clamps to its canvas in safe mode.
  const Interval iv(2, 8, Axis::horizontal, 10.0, 10.0);
  CHECK(iv.pad({.left = 5, .right = 5}, true) ==
        Interval(0, 10, Axis::horizontal, 10.0, 10.0));

  const Quadrilateral q(Point{0, 0}, Point{8, 0}, Point{8, 6}, Point{0, 6});
  CHECK(q.pad({.top = 1, .bottom = 1, .left = 2, .right = 2}) ==
        Quadrilateral(Point{-2, -1}, Point{10, -1}, Point{10, 7}, Point{-2, 7}));
  CHECK_THROWS_AS(q.pad({.left = -5, .right = -5}), Error);
}

TEST_CASE("scale examples") {
  CHECK(Rectangle(2, 4, 6, 8).scale(1, 1) == Rectangle(2, 4, 6, 8));
  CHECK(Rectangle(2, 4, 6, 8).scale(0.5, 0.25) == Rectangle(1, 1, 3, 2));
  const Quadrilateral q(Point{0, 0}, Point{10, 0}, Point{10, 10}, Point{0, 10});
  const Quadrilateral expected(Point{0, 0}, Point{20, 0}, Point{20, 30},
                               Point{0, 30});
  CHECK(q.scale(2, 3) == expected);
  CHECK_THROWS_AS(Rectangle(0, 0, 1, 1).scale(0, 1), Error);
  CHECK_THROWS_AS(Rectangle(0, 0, 1, 1).scale(1, -2), Error);
}

TEST_CASE("is_in examples") {
  Rng rng(101);
  for (int i = 0; i < 50; ++i) {
    const Coordinate b = random_coordinate(rng);
    CAPTURE(i);
    CHECK(is_in(b, b));  // reflexive for every type
  }
  CHECK(is_in(Coordinate{Rectangle(2, 2, 4, 4)}, Coordinate{Rectangle(0, 0, 10, 10)}));
  const Coordinate inner{Rectangle(8, 8, 12, 12)};
  const Coordinate outer{Rectangle(0, 0, 10, 10)};
  CHECK_FALSE(is_in(inner, outer));
  CHECK(is_in(inner, outer, /*center_only=*/true));  // center (10,10) on boundary
}

TEST_CASE("is_in with interval slabs") {
  const Coordinate h{Interval(3, 7, Axis::horizontal)};
  const Coordinate r{Rectangle(0, 0, 10, 10)};
  // An unbounded slab cannot fit inside a finite box...
  CHECK_FALSE(is_in(h, r));
  // ...but the box fits inside the slab that spans its x range.
  CHECK(is_in(Coordinate{Rectangle(4, 0, 6, 100)},
              Coordinate{Interval(3, 7, Axis::horizontal)}));
  // Same-axis intervals compare on that axis alone.
  CHECK(is_in(Coordinate{Interval(4, 6, Axis::vertical)},
              Coordinate{Interval(3, 7, Axis::vertical)}));
  CHECK_FALSE(is_in(Coordinate{Interval(1, 6, Axis::vertical)},
                    Coordinate{Interval(3, 7, Axis::vertical)}));
}

TEST_CASE("intersect examples") {
  const Coordinate a{Rectangle(0, 0, 10, 10)};
  CHECK(rect_of(intersect(a, a)) == Rectangle(0, 0, 10, 10));
  CHECK(rect_of(intersect(a, Coordinate{Rectangle(5, 5, 20, 20)})) ==
        Rectangle(5, 5, 10, 10));
  CHECK(rect_of(intersect(Coordinate{Interval(3, 7, Axis::horizontal, 100.0, 100.0)},
                          a)) == Rectangle(3, 0, 7, 10));
  // Canvas-less slabs are bounded by the rectangle operand.
  CHECK(rect_of(intersect(Coordinate{Interval(3, 7, Axis::horizontal)}, a)) ==
        Rectangle(3, 0, 7, 10));
}

TEST_CASE("intersect of disjoint blocks is a degenerate block, symmetrically") {
  const Coordinate a{Rectangle(0, 0, 10, 10)};
  const Coordinate b{Rectangle(20, 0, 30, 10)};
  const Rectangle r1 = rect_of(intersect(a, b));
  const Rectangle r2 = rect_of(intersect(b, a));
  CHECK(r1 == r2);
  CHECK(r1.width() == 0);
  CHECK(r1.x1() == 15);  // collapses midway between the blocks
  CHECK(area(Coordinate{r1}) == 0);
}

TEST_CASE("intersect promotes to the larger type") {
  const Coordinate q{Rectangle(0, 0, 10, 10).to_quadrilateral()};
  const Coordinate r{Rectangle(5, 5, 20, 20)};
  const Coordinate result = intersect(q, r);
  CHECK(kind(result) == CoordKind::quadrilateral);
  CHECK(std::get<Quadrilateral>(result).bounding_rect() == Rectangle(5, 5, 10, 10));

  // Crossing slabs bound each other without canvas extents.
  const Coordinate cross = intersect(Coordinate{Interval(1, 4, Axis::horizontal)},
                                     Coordinate{Interval(2, 9, Axis::vertical)});
  CHECK(rect_of(cross) == Rectangle(1, 2, 4, 9));
}

TEST_CASE("union examples") {
  Rng rng(7);
  const Coordinate q{random_quadrilateral(rng)};
  const Coordinate u = union_of(q, q);
  CHECK(kind(u) == CoordKind::quadrilateral);
  CHECK(std::get<Quadrilateral>(u).bounding_rect() ==
        std::get<Quadrilateral>(q).bounding_rect());

  CHECK(rect_of(union_of(Coordinate{Rectangle(0, 0, 2, 2)},
                         Coordinate{Rectangle(8, 8, 10, 10)})) ==
        Rectangle(0, 0, 10, 10));
  CHECK(union_of(Coordinate{Interval(1, 3, Axis::vertical)},
                 Coordinate{Interval(7, 9, Axis::vertical)}) ==
        Coordinate{Interval(1, 9, Axis::vertical)});
}

TEST_CASE("union of mixed-axis intervals needs canvas extents") {
  const Coordinate h{Interval(1, 3, Axis::horizontal, 50.0, 40.0)};
  const Coordinate v{Interval(5, 9, Axis::vertical, 50.0, 40.0)};
  CHECK(rect_of(union_of(h, v)) == Rectangle(0, 0, 50, 40));
  CHECK_THROWS_AS(union_of(Coordinate{Interval(1, 3, Axis::horizontal)},
                           Coordinate{Interval(5, 9, Axis::vertical)}),
                  Error);
}

TEST_CASE("relative_to and condition_on examples") {
  const Coordinate b{Rectangle(10, 12, 20, 22)};
  CHECK(relative_to(b, Coordinate{Rectangle(0, 0, 50, 50)}) == b);
  CHECK(rect_of(relative_to(b, Coordinate{Rectangle(10, 12, 100, 100)})) ==
        Rectangle(0, 0, 10, 10));
  CHECK(rect_of(condition_on(Coordinate{Rectangle(0, 0, 10, 10)},
                             Coordinate{Rectangle(10, 12, 100, 100)})) ==
        Rectangle(10, 12, 20, 22));

  const Quadrilateral q(Point{6, 7}, Point{16, 8}, Point{15, 18}, Point{5, 17});
  const Coordinate base{Rectangle(5, 5, 60, 60)};
  CHECK(condition_on(relative_to(Coordinate{q}, base), base) == Coordinate{q});
}

TEST_CASE("coerce examples") {
  const Coordinate r{Rectangle(1, 2, 3, 4)};
  const Coordinate q = coerce(r, CoordKind::quadrilateral);
  CHECK(std::get<Quadrilateral>(q).points() ==
        std::array<Point, 4>{Point{1, 2}, Point{3, 2}, Point{3, 4}, Point{1, 4}});
  CHECK(coerce(q, CoordKind::rectangle) == r);

  CHECK(rect_of(coerce(Coordinate{Interval(3, 7, Axis::horizontal)},
                       CoordKind::rectangle, CanvasSize{100, 50})) ==
        Rectangle(3, 0, 7, 50));
  CHECK_THROWS_AS(coerce(Coordinate{Interval(3, 7, Axis::horizontal)},
                         CoordKind::rectangle),
                  Error);
  CHECK_THROWS_AS(coerce(r, CoordKind::interval), Error);
}

TEST_CASE("crop_image matches direct slicing") {
  Rng rng(2024);
  RasterImage img(9, 11);
  for (int y = 0; y < 11; ++y)
    for (int x = 0; x < 9; ++x)
      img.set_pixel(x, y, Rgb{std::uint8_t(uniform_int(rng, 0, 255)),
                              std::uint8_t(uniform_int(rng, 0, 255)),
                              std::uint8_t(uniform_int(rng, 0, 255))});

  const RasterImage full = crop_image(Coordinate{Rectangle(0, 0, 9, 11)}, img);
  CHECK(full == img);

  const RasterImage crop = crop_image(Coordinate{Rectangle(2, 3, 5, 7)}, img);
  REQUIRE(crop.width() == 3);
  REQUIRE(crop.height() == 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 3; ++x) CHECK(crop.pixel(x, y) == img.pixel(x + 2, y + 3));

  // An axis-aligned quadrilateral warps to exactly the rectangle crop.
  const Coordinate q{Quadrilateral(Point{2, 3}, Point{5, 3}, Point{5, 7}, Point{2, 7})};
  CHECK(crop_image(q, img) == crop);

  // Interval crops span the full free axis.
  const RasterImage slab = crop_image(Coordinate{Interval(2, 5, Axis::horizontal)}, img);
  CHECK(slab.width() == 3);
  CHECK(slab.height() == 11);

  CHECK_THROWS_AS(crop_image(Coordinate{Rectangle(20, 20, 30, 30)}, img), Error);
  CHECK_THROWS_AS(crop_image(Coordinate{Rectangle(0, 0, 1, 1)}, RasterImage{}), Error);
}

TEST_CASE("quadrilateral crop warps a sheared region") {
  // Source shear: column x contains color (x, y) marker; warping the
  // parallelogram upright must take each output row from a shifted x.
  RasterImage img(40, 20);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 40; ++x)
      img.set_pixel(x, y, Rgb{std::uint8_t(x * 6), std::uint8_t(y * 12), 0});
  const Quadrilateral sheared(Point{10, 2}, Point{20, 2}, Point{26, 14},
                              Point{16, 14});
  const RasterImage out = crop_image(Coordinate{sheared}, img);
  CHECK(out.width() == 10);
  // Output height is the mean slanted-edge length: |p1p4| = sqrt(180) ~ 13.4.
  CHECK(out.height() == 13);
  // Corner pixels map exactly onto the quad corners.
  CHECK(out.pixel(0, 0).r == img.pixel(10, 2).r);
  CHECK(out.pixel(9, 0).r == img.pixel(19, 2).r);
  // Moving down the left edge drifts right through the shear.
  CHECK(out.pixel(0, 12).r > out.pixel(0, 0).r + 20);
}

TEST_CASE("property: shift round trip is exact on integer coordinates") {
  Rng rng(11);
  auto int_coordinate = [&]() -> Coordinate {
    const int a = uniform_int(rng, 0, 400), b = uniform_int(rng, 0, 400);
    const int w = uniform_int(rng, 0, 200), h = uniform_int(rng, 0, 200);
    switch (uniform_int(rng, 0, 2)) {
      case 0:
        return Interval(a, a + w,
                        uniform_int(rng, 0, 1) ? Axis::horizontal : Axis::vertical,
                        500.0, 500.0);
      case 1: return Rectangle(a, b, a + w, b + h);
      default:
        return Quadrilateral(Point{double(a), double(b)},
                             Point{double(a + 4 + w), double(b)},
                             Point{double(a + 4 + w), double(b + 4 + h)},
                             Point{double(a), double(b + 4 + h)});
    }
  };
  for (int i = 0; i < 2000; ++i) {
    const double dx = uniform_int(rng, -300, 300);
    const double dy = uniform_int(rng, -300, 300);
    const Coordinate b = int_coordinate();
    CHECK(shift(shift(b, dx, dy), -dx, -dy) == b);
  }
}

TEST_CASE("property: scale round trip within 1e-9") {
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    const double fx = uniform(rng, 0.1, 8);
    const double fy = uniform(rng, 0.1, 8);
    const Rectangle r = random_rectangle(rng);
    const Rectangle back =
        std::get<Rectangle>(scale(scale(Coordinate{r}, fx, fy), 1 / fx, 1 / fy));
    CHECK(approx_rect(back, r));
  }
}

TEST_CASE("property: intersect and union are commutative and idempotent") {
  Rng rng(13);
  for (int i = 0; i < 3000; ++i) {
    const Coordinate a = random_coordinate(rng);
    const Coordinate b = random_coordinate(rng);
    const bool unbounded_union =
        std::holds_alternative<Interval>(a) || std::holds_alternative<Interval>(b);
    CHECK(intersect(a, b) == intersect(b, a));
    const Coordinate i1 = intersect(a, b);
    CHECK(intersect(i1, i1) == i1);
    if (!unbounded_union) {
      CHECK(union_of(a, b) == union_of(b, a));
      const Coordinate u1 = union_of(a, b);
      CHECK(union_of(u1, u1) == u1);
      CHECK(is_in(i1, u1));
    }
  }
}

TEST_CASE("property: intersection is contained in both operands") {
  Rng rng(14);
  int checked = 0;
  for (int i = 0; i < 5000; ++i) {
    const Coordinate a{random_rectangle(rng, 200)};
    const Coordinate b{random_rectangle(rng, 200)};
    const Coordinate inter = intersect(a, b);
    if (area(inter) <= 0) continue;
    ++checked;
    CHECK(is_in(inter, a));
    CHECK(is_in(inter, b));
  }
  CHECK(checked > 500);  // the generator overlaps often enough to be meaningful
}

TEST_CASE("property: relative_to / condition_on round trip for all type pairs") {
  Rng rng(15);
  // Exact on integer coordinates, within 1e-9 on fractional ones.
  for (int i = 0; i < 2000; ++i) {
    const Coordinate b = random_int_coordinate(rng);
    const Coordinate base = random_int_coordinate(rng);
    CHECK(condition_on(relative_to(b, base), base) == b);
  }
  for (int i = 0; i < 2000; ++i) {
    const Coordinate b = random_coordinate(rng);
    const Coordinate base = random_coordinate(rng);
    CHECK(approx_equal(condition_on(relative_to(b, base), base), b));
  }
}

TEST_CASE("property: intersection area equals the pixel-grid count") {
  Rng rng(16);
  for (int i = 0; i < 300; ++i) {
    auto make = [&] {
      const int x1 = uniform_int(rng, 0, 49), y1 = uniform_int(rng, 0, 49);
      return Rectangle(x1, y1, uniform_int(rng, x1, 50), uniform_int(rng, y1, 50));
    };
    const Rectangle a = make(), b = make();
    const double closed_form = area(intersect(Coordinate{a}, Coordinate{b}));
    CHECK(closed_form ==
          double(pixel_grid_intersection_area(a, b, 50)));
  }
}
