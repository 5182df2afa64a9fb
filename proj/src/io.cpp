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

#include "lk/io.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

namespace lk::io {

using ojson = nlohmann::ordered_json;

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

// Integral coordinates serialize as JSON integers, everything else as the
// shortest double; both parse back to the same value.
ojson coord_json(double v) {
  const double r = round2(v);
  if (r == std::floor(r) && std::abs(r) < 9.0e15)
    return static_cast<std::int64_t>(r);
  return r;
}

ojson block_to_json(const TextBlock& b) {
  ojson j;
  const Coordinate& c = b.block();
  j["block_type"] = kind_name(kind(c));
  if (const auto* iv = std::get_if<Interval>(&c)) {
    j["start"] = coord_json(iv->start());
    j["end"] = coord_json(iv->end());
    j["axis"] = iv->axis() == Axis::horizontal ? "horizontal" : "vertical";
    if (iv->canvas_width()) j["canvas_width"] = coord_json(*iv->canvas_width());
    if (iv->canvas_height()) j["canvas_height"] = coord_json(*iv->canvas_height());
  } else if (const auto* r = std::get_if<Rectangle>(&c)) {
    j["x_1"] = coord_json(r->x1());
    j["y_1"] = coord_json(r->y1());
    j["x_2"] = coord_json(r->x2());
    j["y_2"] = coord_json(r->y2());
  } else {
    const auto& pts = std::get<Quadrilateral>(c).points();
    ojson arr = ojson::array();
    for (const Point& p : pts) arr.push_back({coord_json(p.x), coord_json(p.y)});
    j["points"] = std::move(arr);
  }
  if (b.id()) j["id"] = *b.id();
  if (b.text()) j["text"] = *b.text();
  if (b.category()) j["category"] = *b.category();
  if (b.score()) j["score"] = *b.score();
  if (b.parent()) j["parent"] = *b.parent();
  if (b.next()) j["next"] = *b.next();
  return j;
}

ojson layout_to_json(const Layout& layout) {
  ojson j;
  if (layout.page_info()) {
    const PageInfo& p = *layout.page_info();
    ojson pj = ojson::object();
    if (p.file_name) pj["file_name"] = *p.file_name;
    if (p.page_number) pj["page_number"] = *p.page_number;
    if (p.width) pj["width"] = coord_json(*p.width);
    if (p.height) pj["height"] = coord_json(*p.height);
    j["page_info"] = std::move(pj);
  } else {
    j["page_info"] = nullptr;
  }
  ojson elems = ojson::array();
  for (const Element& e : layout.elements()) {
    if (e.is_block()) {
      elems.push_back(block_to_json(e.block()));
    } else {
      ojson child = layout_to_json(e.child());
      ojson wrapped;
      wrapped["block_type"] = "layout";
      wrapped["page_info"] = std::move(child["page_info"]);
      wrapped["elements"] = std::move(child["elements"]);
      elems.push_back(std::move(wrapped));
    }
  }
  j["elements"] = std::move(elems);
  return j;
}

[[noreturn]] void fail_at(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

double require_number(const ojson& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail_at(where, std::string("missing field '") + key + "'");
  if (!j[key].is_number()) fail_at(where, std::string("field '") + key + "' is not a number");
  return j[key].get<double>();
}

Coordinate coordinate_from_json(const ojson& j, const std::string& where) {
  const std::string type = j.value("block_type", "");
  if (type == "interval") {
    const std::string axis = j.value("axis", "");
    if (axis != "horizontal" && axis != "vertical")
      fail_at(where, "interval axis must be 'horizontal' or 'vertical'");
    std::optional<double> cw, ch;
    if (j.contains("canvas_width")) cw = require_number(j, "canvas_width", where);
    if (j.contains("canvas_height")) ch = require_number(j, "canvas_height", where);
    return Interval(require_number(j, "start", where),
                    require_number(j, "end", where),
                    axis == "horizontal" ? Axis::horizontal : Axis::vertical,
                    cw, ch);
  }
  if (type == "rectangle") {
    return Rectangle(require_number(j, "x_1", where), require_number(j, "y_1", where),
                     require_number(j, "x_2", where), require_number(j, "y_2", where));
  }
  if (type == "quadrilateral") {
    if (!j.contains("points") || !j["points"].is_array() || j["points"].size() != 4)
      fail_at(where, "quadrilateral needs a 4-entry 'points' array");
    std::array<Point, 4> pts;
    for (int i = 0; i < 4; ++i) {
      const auto& p = j["points"][i];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        fail_at(where, "quadrilateral point " + std::to_string(i) +
                           " is not an [x, y] pair");
      pts[i] = {p[0].get<double>(), p[1].get<double>()};
    }
    return Quadrilateral(pts);
  }
  fail_at(where, "unknown block_type '" + type + "'");
}

TextBlock block_from_json(const ojson& j, const std::string& where) {
  TextBlock b{[&]() -> Coordinate {
    try {
      return coordinate_from_json(j, where);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail_at(where, e.what());
    }
  }()};
  if (j.contains("id")) b = b.with_id(j["id"].get<std::int64_t>());
  if (j.contains("text")) b = b.with_text(j["text"].get<std::string>());
  if (j.contains("category")) b = b.with_category(j["category"].get<std::string>());
  if (j.contains("score")) {
    const double s = require_number(j, "score", where);
    try {
      b = b.with_score(s);
    } catch (const Error& e) {
      fail_at(where, e.what());
    }
  }
  if (j.contains("parent")) b = b.with_parent(j["parent"].get<std::int64_t>());
  if (j.contains("next")) b = b.with_next(j["next"].get<std::int64_t>());
  return b;
}

std::optional<PageInfo> page_info_from_json(const ojson& j, const std::string& where) {
  if (!j.contains("page_info") || j["page_info"].is_null()) return std::nullopt;
  const ojson& pj = j["page_info"];
  if (!pj.is_object()) fail_at(where, "page_info must be an object or null");
  PageInfo p;
  if (pj.contains("file_name")) p.file_name = pj["file_name"].get<std::string>();
  if (pj.contains("page_number")) p.page_number = pj["page_number"].get<std::int64_t>();
  if (pj.contains("width")) p.width = pj["width"].get<double>();
  if (pj.contains("height")) p.height = pj["height"].get<double>();
  return p;
}

Layout layout_from_json(const ojson& j, const std::string& where) {
  const std::string self = where.empty() ? "layout" : where;
  if (!j.is_object()) fail_at(self, "layout must be a JSON object");
  Layout out;
  out.set_page_info(page_info_from_json(j, self));
  if (!j.contains("elements") || !j["elements"].is_array())
    fail_at(self, "missing 'elements' array");

  std::set<std::int64_t> ids;
  std::size_t index = 0;
  for (const ojson& ej : j["elements"]) {
    const std::string here = where.empty()
                                 ? "element " + std::to_string(index)
                                 : where + "." + std::to_string(index);
    if (!ej.is_object()) fail_at(here, "element is not an object");
    if (ej.value("block_type", "") == "layout") {
      out.push_back(layout_from_json(ej, here));
    } else {
      TextBlock b = block_from_json(ej, here);
      if (b.id() && !ids.insert(*b.id()).second)
        fail_at(here, "duplicate id " + std::to_string(*b.id()));
      out.push_back(std::move(b));
    }
    ++index;
  }

  // parent / next must point at ids that exist at this nesting level.
  for (const Element& e : out.elements()) {
    if (!e.is_block()) continue;
    for (const auto& ref : {e.block().parent(), e.block().next()})
      if (ref && !ids.count(*ref))
        fail_at(self, "reference to missing id " + std::to_string(*ref));
  }
  return out;
}

void csv_field(std::ostringstream& os, const std::string& v) {
  if (v.find_first_of(",\"\r\n") == std::string::npos) {
    os << v;
    return;
  }
  os << '"';
  for (char ch : v) {
    if (ch == '"') os << '"';
    os << ch;
  }
  os << '"';
}

void csv_rows(const Layout& layout, std::optional<std::int64_t> page_id,
              std::ostringstream& os) {
  for (const Element& e : layout.elements()) {
    if (!e.is_block()) {
      csv_rows(e.child(), page_id, os);
      continue;
    }
    const TextBlock& b = e.block();
    const Rectangle r = bounding_rect(b.block());
    if (page_id) os << *page_id << ',';
    if (b.id()) os << *b.id();
    os << ',';
    csv_field(os, b.category().value_or(""));
    os << ',';
    if (b.score()) os << format_number(*b.score());
    os << ',';
    csv_field(os, b.text().value_or(""));
    os << ',' << format_number(round2(r.x1())) << ',' << format_number(round2(r.y1()))
       << ',' << format_number(round2(r.x2())) << ',' << format_number(round2(r.y2()))
       << ',';
    if (b.parent()) os << *b.parent();
    os << ',';
    if (b.next()) os << *b.next();
    os << "\r\n";
  }
}

CategoryMap categories_from_coco(const ojson& j) {
  CategoryMap out;
  if (!j.contains("categories")) return out;
  for (const ojson& c : j["categories"])
    out[c.at("id").get<int>()] = c.at("name").get<std::string>();
  return out;
}

std::string label_for(int category_id, const CategoryMap& categories,
                      bool require) {
  auto it = categories.find(category_id);
  if (it != categories.end()) return it->second;
  if (require)
    throw ParseError("unknown category_id " + std::to_string(category_id));
  return std::to_string(category_id);
}

TextBlock block_from_bbox(double x, double y, double w, double h,
                          const std::string& where) {
  if (w < 0 || h < 0)
    fail_at(where, "negative bbox extent (" + format_number(w) + " x " +
                       format_number(h) + ")");
  return TextBlock(Rectangle(x, y, x + w, y + h));
}

}  // namespace

std::string format_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 9.0e15)
    return std::to_string(static_cast<std::int64_t>(v));
  return nlohmann::json(v).dump();
}

std::string export_json(const Layout& layout) {
  return layout_to_json(layout).dump();
}

Layout load_json(std::string_view data) {
  ojson j = ojson::parse(data, nullptr, false);
  if (j.is_discarded()) throw ParseError("layout JSON: malformed document");
  return layout_from_json(j, "");
}

std::string export_csv(const Layout& layout) {
  const bool with_page =
      layout.page_info() && layout.page_info()->page_number.has_value();
  std::ostringstream os;
  if (with_page) os << "page_id,";
  os << "id,category,score,text,x_1,y_1,x_2,y_2,parent,next\r\n";
  csv_rows(layout, with_page ? layout.page_info()->page_number : std::nullopt,
           os);
  return os.str();
}

std::map<std::int64_t, Layout> load_coco(std::string_view data, CocoKind kind,
                                         const CategoryMap& categories) {
  ojson j = ojson::parse(data, nullptr, false);
  if (j.is_discarded()) throw ParseError("COCO JSON: malformed document");
  std::map<std::int64_t, Layout> out;

  if (kind == CocoKind::results) {
    if (!j.is_array()) throw ParseError("COCO results must be a JSON array");
    std::size_t index = 0;
    for (const ojson& rj : j) {
      const std::string where = "record " + std::to_string(index++);
      if (!rj.is_object() || !rj.contains("image_id") || !rj.contains("category_id") ||
          !rj.contains("bbox") || !rj.contains("score"))
        fail_at(where, "expected image_id, category_id, bbox, score");
      const auto& bb = rj["bbox"];
      if (!bb.is_array() || bb.size() != 4)
        fail_at(where, "bbox must be [x, y, width, height]");
      TextBlock b = block_from_bbox(bb[0].get<double>(), bb[1].get<double>(),
                                    bb[2].get<double>(), bb[3].get<double>(), where);
      b = b.with_category(label_for(rj["category_id"].get<int>(), categories,
                                    !categories.empty()))
              .with_score(rj["score"].get<double>());
      out[rj["image_id"].get<std::int64_t>()].push_back(std::move(b));
    }
    return out;
  }

  if (!j.is_object() || !j.contains("images") || !j.contains("annotations") ||
      !j.contains("categories"))
    throw ParseError("COCO dataset needs images, annotations and categories arrays");

  CategoryMap cats = categories_from_coco(j);
  for (const auto& [id, name] : categories) cats[id] = name;  // explicit wins

  for (const ojson& im : j["images"]) {
    PageInfo info;
    if (im.contains("file_name")) info.file_name = im["file_name"].get<std::string>();
    if (im.contains("width")) info.width = im["width"].get<double>();
    if (im.contains("height")) info.height = im["height"].get<double>();
    Layout l;
    l.set_page_info(info);
    out[im.at("id").get<std::int64_t>()] = std::move(l);
  }

  std::size_t index = 0;
  for (const ojson& aj : j["annotations"]) {
    const std::string where = "annotation " + std::to_string(index++);
    if (!aj.contains("image_id") || !aj.contains("category_id") || !aj.contains("bbox"))
      fail_at(where, "expected image_id, category_id, bbox");
    const auto& bb = aj["bbox"];
    if (!bb.is_array() || bb.size() != 4)
      fail_at(where, "bbox must be [x, y, width, height]");
    TextBlock b = block_from_bbox(bb[0].get<double>(), bb[1].get<double>(),
                                  bb[2].get<double>(), bb[3].get<double>(), where);
    b = b.with_category(label_for(aj["category_id"].get<int>(), cats, true));
    if (aj.contains("id")) b = b.with_id(aj["id"].get<std::int64_t>());
    if (aj.contains("score")) b = b.with_score(aj["score"].get<double>());
    auto it = out.find(aj["image_id"].get<std::int64_t>());
    if (it == out.end())
      fail_at(where, "image_id " + aj["image_id"].dump() + " not in images");
    it->second.push_back(std::move(b));
  }
  return out;
}

}  // namespace lk::io
