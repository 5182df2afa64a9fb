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

// TextBlock couples a coordinate with the extra features of a layout
// element (text, category, confidence, reading-order links).  Layout is an
// ordered collection of TextBlocks or nested Layouts and carries the batch
// operations.  Like the geometry types, both are immutable values: every
// operation returns a new object.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lk/geometry.hpp"

namespace lk {

class TextBlock {
 public:
  explicit TextBlock(Coordinate block);

  const Coordinate& block() const { return block_; }
  const std::optional<std::string>& text() const { return text_; }
  const std::optional<std::string>& category() const { return category_; }
  std::optional<double> score() const { return score_; }
  std::optional<std::int64_t> id() const { return id_; }
  std::optional<std::int64_t> parent() const { return parent_; }
  std::optional<std::int64_t> next() const { return next_; }

  // Builder-style setters; each returns a copy with the field replaced.
  TextBlock with_text(std::optional<std::string> text) const;
  TextBlock with_category(std::optional<std::string> category) const;
  TextBlock with_score(std::optional<double> score) const;  // must be in [0,1]
  TextBlock with_id(std::optional<std::int64_t> id) const;
  TextBlock with_parent(std::optional<std::int64_t> parent) const;
  TextBlock with_next(std::optional<std::int64_t> next) const;
  TextBlock with_block(Coordinate block) const;

  // The Table-2 transformations, applied to the coordinate with every other
  // feature carried over.
  TextBlock shift(double dx, double dy) const;
  TextBlock pad(const Padding& p, bool safe_mode = false) const;
  TextBlock scale(double fx, double fy) const;
  TextBlock relative_to(const Coordinate& base) const;
  TextBlock condition_on(const Coordinate& base) const;
  RasterImage crop_image(const RasterImage& image) const;

  bool is_in(const Coordinate& outer, bool center_only = false) const;

  friend bool operator==(const TextBlock&, const TextBlock&) = default;

 private:
  Coordinate block_;
  std::optional<std::string> text_;
  std::optional<std::string> category_;
  std::optional<double> score_;
  std::optional<std::int64_t> id_;
  std::optional<std::int64_t> parent_;
  std::optional<std::int64_t> next_;
};

/// Page-level metadata carried by a Layout.
struct PageInfo {
  std::optional<std::string> file_name;
  std::optional<std::int64_t> page_number;
  std::optional<double> width;
  std::optional<double> height;
  friend bool operator==(const PageInfo&, const PageInfo&) = default;
};

class Layout;

/// One entry of a Layout: either a TextBlock or a nested Layout.  Value
/// semantics throughout; nested layouts are deep-copied.
class Element {
 public:
  Element(TextBlock block);  // NOLINT(google-explicit-constructor)
  Element(Layout child);     // NOLINT(google-explicit-constructor)
  Element(const Element& other);
  Element(Element&& other) noexcept;
  Element& operator=(const Element& other);
  Element& operator=(Element&& other) noexcept;
  ~Element();

  bool is_block() const;
  const TextBlock& block() const;
  const Layout& child() const;

  friend bool operator==(const Element& a, const Element& b);

 private:
  std::variant<TextBlock, std::unique_ptr<Layout>> v_;
};

enum class ReadingOrder {
  column_rtl,  // right-to-left columns (vertical scripts), ties top-down
  row_ltr,     // top-down rows, ties left-to-right
};

class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<Element> elements,
                  std::optional<PageInfo> page_info = std::nullopt);

  const std::vector<Element>& elements() const { return elements_; }
  const std::optional<PageInfo>& page_info() const { return page_info_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  void push_back(Element e) { elements_.push_back(std::move(e)); }
  void set_page_info(std::optional<PageInfo> info) { page_info_ = std::move(info); }

  /// Applies a coordinate transform to every block, recursively.  Order and
  /// non-positional fields are untouched.
  Layout apply(const std::function<Coordinate(const Coordinate&)>& fn) const;

  /// Keeps blocks satisfying the predicate; nested layouts are filtered
  /// recursively and dropped when they end up empty.
  Layout filter(const std::function<bool(const TextBlock&)>& pred) const;

  /// Texts of all blocks in depth-first element order, skipping blocks
  /// without text.
  std::vector<std::string> get_texts() const;

  /// Flattened TextBlocks in depth-first element order.
  std::vector<TextBlock> flatten() const;

  /// Sorts top-level elements into reading order by their bounding boxes
  /// and rewrites `next` links along the new linear order (only between
  /// adjacent blocks that carry ids).
  Layout sort_reading_order(ReadingOrder mode) const;

  /// Regroups top-level blocks under their parents: each referenced parent
  /// becomes a nested Layout holding the parent block followed by its
  /// children (coordinates stay absolute).  Blocks without a parent field
  /// stay at the top level.  Throws on a dangling parent reference.
  Layout group_by_parent() const;

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  std::vector<Element> elements_;
  std::optional<PageInfo> page_info_;
};

/// Bounding rectangle of an element (for a nested layout, the box enclosing
/// all of its blocks).  Throws on an empty nested layout.
Rectangle element_bounding_rect(const Element& e);

}  // namespace lk
