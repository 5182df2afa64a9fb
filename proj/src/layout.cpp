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

#include "lk/layout.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <utility>

namespace lk {

// ---------------------------------------------------------------------------
// TextBlock

TextBlock::TextBlock(Coordinate block) : block_(std::move(block)) {}

TextBlock TextBlock::with_text(std::optional<std::string> text) const {
  TextBlock out = *this;
  out.text_ = std::move(text);
  return out;
}

TextBlock TextBlock::with_category(std::optional<std::string> category) const {
  TextBlock out = *this;
  out.category_ = std::move(category);
  return out;
}

TextBlock TextBlock::with_score(std::optional<double> score) const {
  if (score && (*score < 0 || *score > 1))
    throw Error("score " + std::to_string(*score) + " outside [0, 1]");
  TextBlock out = *this;
  out.score_ = score;
  return out;
}

TextBlock TextBlock::with_id(std::optional<std::int64_t> id) const {
  TextBlock out = *this;
  out.id_ = id;
  return out;
}

TextBlock TextBlock::with_parent(std::optional<std::int64_t> parent) const {
  TextBlock out = *this;
  out.parent_ = parent;
  return out;
}

TextBlock TextBlock::with_next(std::optional<std::int64_t> next) const {
  TextBlock out = *this;
  out.next_ = next;
  return out;
}

TextBlock TextBlock::with_block(Coordinate block) const {
  TextBlock out = *this;
  out.block_ = std::move(block);
  return out;
}

TextBlock TextBlock::shift(double dx, double dy) const {
  return with_block(lk::shift(block_, dx, dy));
}

TextBlock TextBlock::pad(const Padding& p, bool safe_mode) const {
  return with_block(lk::pad(block_, p, safe_mode));
}

TextBlock TextBlock::scale(double fx, double fy) const {
  return with_block(lk::scale(block_, fx, fy));
}

TextBlock TextBlock::relative_to(const Coordinate& base) const {
  return with_block(lk::relative_to(block_, base));
}

TextBlock TextBlock::condition_on(const Coordinate& base) const {
  return with_block(lk::condition_on(block_, base));
}

RasterImage TextBlock::crop_image(const RasterImage& image) const {
  return lk::crop_image(block_, image);
}

bool TextBlock::is_in(const Coordinate& outer, bool center_only) const {
  return lk::is_in(block_, outer, center_only);
}

// ---------------------------------------------------------------------------
// Element

Element::Element(TextBlock block) : v_(std::move(block)) {}
Element::Element(Layout child) : v_(std::make_unique<Layout>(std::move(child))) {}

Element::Element(const Element& other)
    : v_(other.is_block()
             ? decltype(v_){other.block()}
             : decltype(v_){std::make_unique<Layout>(other.child())}) {}

Element::Element(Element&& other) noexcept = default;

Element& Element::operator=(const Element& other) {
  if (this != &other) *this = Element(other);
  return *this;
}

Element& Element::operator=(Element&& other) noexcept = default;
Element::~Element() = default;

bool Element::is_block() const {
  return std::holds_alternative<TextBlock>(v_);
}

const TextBlock& Element::block() const { return std::get<TextBlock>(v_); }

const Layout& Element::child() const {
  return *std::get<std::unique_ptr<Layout>>(v_);
}

bool operator==(const Element& a, const Element& b) {
  if (a.is_block() != b.is_block()) return false;
  return a.is_block() ? a.block() == b.block() : a.child() == b.child();
}

// ---------------------------------------------------------------------------
// Layout

Layout::Layout(std::vector<Element> elements, std::optional<PageInfo> page_info)
    : elements_(std::move(elements)), page_info_(std::move(page_info)) {}

Layout Layout::apply(const std::function<Coordinate(const Coordinate&)>& fn) const {
  Layout out;
  out.page_info_ = page_info_;
  out.elements_.reserve(elements_.size());
  for (const Element& e : elements_) {
    if (e.is_block())
      out.elements_.emplace_back(e.block().with_block(fn(e.block().block())));
    else
      out.elements_.emplace_back(e.child().apply(fn));
  }
  return out;
}

Layout Layout::filter(const std::function<bool(const TextBlock&)>& pred) const {
  Layout out;
  out.page_info_ = page_info_;
  for (const Element& e : elements_) {
    if (e.is_block()) {
      if (pred(e.block())) out.elements_.emplace_back(e.block());
    } else {
      Layout child = e.child().filter(pred);
      if (!child.empty()) out.elements_.emplace_back(std::move(child));
    }
  }
  return out;
}

std::vector<std::string> Layout::get_texts() const {
  std::vector<std::string> out;
  for (const Element& e : elements_) {
    if (e.is_block()) {
      if (e.block().text()) out.push_back(*e.block().text());
    } else {
      for (auto& t : e.child().get_texts()) out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<TextBlock> Layout::flatten() const {
  std::vector<TextBlock> out;
  for (const Element& e : elements_) {
    if (e.is_block()) {
      out.push_back(e.block());
    } else {
      for (auto& b : e.child().flatten()) out.push_back(std::move(b));
    }
  }
  return out;
}

Rectangle element_bounding_rect(const Element& e) {
  if (e.is_block()) return bounding_rect(e.block().block());
  const auto blocks = e.child().flatten();
  if (blocks.empty()) throw Error("empty nested layout has no bounding box");
  Rectangle box = bounding_rect(blocks[0].block());
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    const Rectangle r = bounding_rect(blocks[i].block());
    box = Rectangle(std::min(box.x1(), r.x1()), std::min(box.y1(), r.y1()),
                    std::max(box.x2(), r.x2()), std::max(box.y2(), r.y2()));
  }
  return box;
}

Layout Layout::sort_reading_order(ReadingOrder mode) const {
  struct Keyed {
    double primary;
    double secondary;
    std::int64_t id_key;
    std::size_t original;
  };
  std::vector<Keyed> keys;
  keys.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Rectangle box = element_bounding_rect(elements_[i]);
    const Point c = box.center();
    std::int64_t id_key = std::numeric_limits<std::int64_t>::max();
    if (elements_[i].is_block() && elements_[i].block().id())
      id_key = *elements_[i].block().id();
    if (mode == ReadingOrder::column_rtl)
      keys.push_back({-c.x, c.y, id_key, i});
    else
      keys.push_back({c.y, c.x, id_key, i});
  }
  std::stable_sort(keys.begin(), keys.end(), [](const Keyed& a, const Keyed& b) {
    if (a.primary != b.primary) return a.primary < b.primary;
    if (a.secondary != b.secondary) return a.secondary < b.secondary;
    return a.id_key < b.id_key;
  });

  Layout out;
  out.page_info_ = page_info_;
  out.elements_.reserve(elements_.size());
  for (const Keyed& k : keys) out.elements_.push_back(elements_[k.original]);

  // Rewrite next links along the new linear order.  A link is only written
  // between adjacent top-level blocks that both carry ids; otherwise the
  // field is cleared so no stale order survives.
  for (std::size_t i = 0; i < out.elements_.size(); ++i) {
    if (!out.elements_[i].is_block()) continue;
    const TextBlock& b = out.elements_[i].block();
    std::optional<std::int64_t> next;
    if (b.id() && i + 1 < out.elements_.size() &&
        out.elements_[i + 1].is_block() && out.elements_[i + 1].block().id())
      next = out.elements_[i + 1].block().id();
    out.elements_[i] = b.with_next(next);
  }
  return out;
}

Layout Layout::group_by_parent() const {
  std::map<std::int64_t, std::size_t> by_id;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Element& e = elements_[i];
    if (e.is_block() && e.block().id()) {
      if (!by_id.emplace(*e.block().id(), i).second)
        throw Error("duplicate block id " + std::to_string(*e.block().id()));
    }
  }

  std::set<std::int64_t> parent_ids;
  for (const Element& e : elements_) {
    if (!e.is_block() || !e.block().parent()) continue;
    const std::int64_t pid = *e.block().parent();
    if (!by_id.count(pid))
      throw Error("dangling parent reference: no block with id " +
                  std::to_string(pid));
    parent_ids.insert(pid);
  }
  if (parent_ids.empty()) return *this;

  std::map<std::int64_t, std::vector<TextBlock>> children;
  for (const Element& e : elements_) {
    if (!e.is_block()) continue;
    const TextBlock& b = e.block();
    const bool is_root = b.id() && parent_ids.count(*b.id());
    if (b.parent() && !is_root) children[*b.parent()].push_back(b);
  }

  // Grouping is single level: each referenced parent becomes a nested
  // layout at its original position, holding the parent block followed by
  // its children in their original order.
  Layout out;
  out.page_info_ = page_info_;
  for (const Element& e : elements_) {
    if (e.is_block()) {
      const TextBlock& b = e.block();
      if (b.id() && parent_ids.count(*b.id())) {
        Layout group;
        group.push_back(b);
        for (TextBlock& c : children[*b.id()]) group.push_back(std::move(c));
        out.elements_.emplace_back(std::move(group));
        continue;
      }
      if (b.parent()) continue;  // collected under its group root
    }
    out.elements_.push_back(e);
  }
  return out;
}

}  // namespace lk
