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

#include "lk/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "lk/io.hpp"

namespace lk::pipelines {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double hi = v[mid];
  return (*std::max_element(v.begin(), v.begin() + mid) + hi) / 2.0;
}

}  // namespace

double iou(const Coordinate& a, const Coordinate& b) {
  const Rectangle ra = bounding_rect(a);
  const Rectangle rb = bounding_rect(b);
  const double ix = std::min(ra.x2(), rb.x2()) - std::max(ra.x1(), rb.x1());
  const double iy = std::min(ra.y2(), rb.y2()) - std::max(ra.y1(), rb.y1());
  if (ix <= 0 || iy <= 0) return 0;
  const double inter = ix * iy;
  const double uni = ra.area() + rb.area() - inter;
  return uni <= 0 ? 0 : inter / uni;
}

Layout nms_blocks(const Layout& layout, double iou_threshold) {
  const std::vector<TextBlock> blocks = layout.flatten();
  std::vector<std::size_t> order(blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return blocks[a].score().value_or(0) > blocks[b].score().value_or(0);
  });

  std::vector<std::size_t> kept;
  for (const std::size_t i : order) {
    const bool suppressed = std::any_of(
        kept.begin(), kept.end(), [&](std::size_t k) {
          return iou(blocks[i].block(), blocks[k].block()) >= iou_threshold;
        });
    if (!suppressed) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());  // preserve input order in the output

  Layout out;
  out.set_page_info(layout.page_info());
  for (const std::size_t i : kept) out.push_back(blocks[i]);
  return out;
}

std::vector<double> detect_rulings(const RasterImage& image,
                                   const Rectangle& region,
                                   Orientation orientation,
                                   double min_run_fraction) {
  const RasterImage crop = crop_image(Coordinate{region}, image);
  const int w = crop.width();
  const int h = crop.height();

  // Longest dark run per position, measured along the ruling orientation.
  const int positions = orientation == Orientation::vertical ? w : h;
  const int depth = orientation == Orientation::vertical ? h : w;
  std::vector<int> max_run(positions, 0);
  for (int p = 0; p < positions; ++p) {
    int run = 0;
    for (int d = 0; d < depth; ++d) {
      const int x = orientation == Orientation::vertical ? p : d;
      const int y = orientation == Orientation::vertical ? d : p;
      if (crop.luma(x, y) < 128) {
        ++run;
        max_run[p] = std::max(max_run[p], run);
      } else {
        run = 0;
      }
    }
  }

  const double need = min_run_fraction * depth;
  std::vector<int> candidates;
  for (int p = 0; p < positions; ++p)
    if (max_run[p] >= need) candidates.push_back(p);

  // Merge candidates within 2 px to their midpoint.
  std::vector<double> out;
  std::size_t i = 0;
  while (i < candidates.size()) {
    std::size_t j = i;
    while (j + 1 < candidates.size() && candidates[j + 1] - candidates[j] <= 2) ++j;
    const double mid = (candidates[i] + candidates[j]) / 2.0;
    const double base = orientation == Orientation::vertical
                            ? std::max(0.0, std::round(region.x1()))
                            : std::max(0.0, std::round(region.y1()));
    out.push_back(base + mid);
    i = j + 1;
  }
  return out;
}

std::vector<RowBand> cluster_rows(const Layout& tokens, double gap_threshold) {
  std::vector<Rectangle> boxes;
  for (const TextBlock& b : tokens.flatten()) boxes.push_back(bounding_rect(b.block()));
  if (boxes.empty()) throw Error("cluster_rows needs at least one token");
  std::sort(boxes.begin(), boxes.end(), [](const Rectangle& a, const Rectangle& b) {
    return a.center().y < b.center().y;
  });

  std::vector<RowBand> bands;
  RowBand cur{boxes[0].y1(), boxes[0].y2()};
  double last_center = boxes[0].center().y;
  for (std::size_t i = 1; i < boxes.size(); ++i) {
    const double c = boxes[i].center().y;
    if (c - last_center > gap_threshold) {
      bands.push_back(cur);
      cur = {boxes[i].y1(), boxes[i].y2()};
    } else {
      cur.top = std::min(cur.top, boxes[i].y1());
      cur.bottom = std::max(cur.bottom, boxes[i].y2());
    }
    last_center = c;
  }
  bands.push_back(cur);
  return bands;
}

std::vector<RowBand> suppress_close_rows(std::vector<RowBand> bands,
                                         double min_gap) {
  std::vector<RowBand> out;
  for (const RowBand& band : bands) {
    if (!out.empty() && band.top - out.back().bottom < min_gap) {
      out.back().top = std::min(out.back().top, band.top);
      out.back().bottom = std::max(out.back().bottom, band.bottom);
    } else {
      out.push_back(band);
    }
  }
  return out;
}

namespace {

TableStructure extract_one_table(const RasterImage& image,
                                 const Rectangle& region,
                                 const std::vector<TextBlock>& tokens,
                                 const TableParams& params) {
  TableStructure table;
  table.region = region;

  // Rulings hugging the region edge are the table border, not separators.
  for (const double x :
       detect_rulings(image, region, Orientation::vertical, params.min_run_fraction)) {
    if (x - region.x1() > params.border_margin &&
        region.x2() - x > params.border_margin)
      table.column_separators.push_back(x);
  }

  std::vector<TextBlock> inside;
  for (const TextBlock& b : tokens)
    if (b.is_in(Coordinate{region}, /*center_only=*/true)) inside.push_back(b);
  if (inside.empty()) return table;

  const double first_boundary = table.column_separators.empty()
                                    ? region.x2()
                                    : table.column_separators.front();
  Layout left_column;
  std::vector<double> heights;
  for (const TextBlock& b : inside) {
    const Rectangle r = bounding_rect(b.block());
    heights.push_back(r.height());
    if (r.center().x < first_boundary) left_column.push_back(b);
  }
  if (left_column.empty()) return table;

  const double row_gap = params.row_gap.value_or(median(heights));
  table.row_bands =
      suppress_close_rows(cluster_rows(left_column, row_gap), params.row_min_gap);

  table.cells.assign(table.rows(),
                     std::vector<std::vector<TextBlock>>(table.columns()));
  for (const TextBlock& b : inside) {
    const Point c = bounding_rect(b.block()).center();
    std::size_t row = table.rows();
    for (std::size_t r = 0; r < table.rows(); ++r)
      if (c.y >= table.row_bands[r].top && c.y <= table.row_bands[r].bottom) {
        row = r;
        break;
      }
    if (row == table.rows()) continue;  // between bands
    std::size_t col = 0;
    while (col < table.column_separators.size() &&
           c.x >= table.column_separators[col])
      ++col;
    table.cells[row][col].push_back(b);
  }
  for (auto& row : table.cells)
    for (auto& cell : row)
      std::sort(cell.begin(), cell.end(), [](const TextBlock& a, const TextBlock& b) {
        return bounding_rect(a.block()).x1() < bounding_rect(b.block()).x1();
      });
  return table;
}

}  // namespace

std::vector<TableStructure> extract_tables(const RasterImage& image,
                                           const Layout& detections,
                                           const Layout& tokens,
                                           const TableParams& params) {
  const Layout candidates = detections.filter([&](const TextBlock& b) {
    return b.category() == "table" && b.score() &&
           *b.score() >= params.score_min;
  });
  const Layout regions = nms_blocks(candidates, params.iou_threshold);

  const std::vector<TextBlock> all_tokens = tokens.flatten();
  std::vector<TableStructure> out;
  for (const TextBlock& det : regions.flatten()) {
    Rectangle region = bounding_rect(det.block());
    // Clip to the page so ruling detection sees real pixels only.
    region = Rectangle(std::max(0.0, region.x1()), std::max(0.0, region.y1()),
                       std::min(double(image.width()), region.x2()),
                       std::min(double(image.height()), region.y2()));
    if (region.width() <= 0 || region.height() <= 0) continue;
    out.push_back(extract_one_table(image, region, all_tokens, params));
  }
  return out;
}

TableStructure concat_tables(const std::vector<TableStructure>& tables,
                             const std::vector<int>& page_order) {
  if (tables.empty()) throw Error("concat_tables needs at least one table");
  if (page_order.size() != tables.size())
    throw Error("concat_tables: one page id per table required");

  std::vector<std::size_t> order(tables.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return page_order[a] < page_order[b];
                   });

  const std::size_t columns = tables[order[0]].columns();
  for (const std::size_t i : order)
    if (tables[i].columns() != columns)
      throw Error("concat_tables: column count mismatch between page " +
                  std::to_string(page_order[order[0]]) + " (" +
                  std::to_string(columns) + " columns) and page " +
                  std::to_string(page_order[i]) + " (" +
                  std::to_string(tables[i].columns()) + " columns)");

  TableStructure out;
  out.region = tables[order[0]].region;
  out.column_separators = tables[order[0]].column_separators;
  double offset = 0;
  for (const std::size_t i : order) {
    const TableStructure& t = tables[i];
    if (t.row_bands.empty()) continue;
    const double base = t.row_bands.front().top;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      out.row_bands.push_back({t.row_bands[r].top - base + offset,
                               t.row_bands[r].bottom - base + offset});
      out.cells.push_back(t.cells[r]);
    }
    offset = out.row_bands.back().bottom + 1;
  }
  return out;
}

std::string table_to_csv(const TableStructure& table, char delimiter) {
  std::ostringstream os;
  for (const auto& row : table.cells) {
    bool first = true;
    for (const auto& cell : row) {
      if (!first) os << delimiter;
      first = false;
      std::string text;
      for (const TextBlock& b : cell) {
        if (!text.empty()) text += ' ';
        text += b.text().value_or("");
      }
      const bool quote =
          text.find_first_of(std::string{delimiter} + "\"\r\n") != std::string::npos;
      if (!quote) {
        os << text;
        continue;
      }
      os << '"';
      for (const char ch : text) {
        if (ch == '"') os << '"';
        os << ch;
      }
      os << '"';
    }
    os << "\r\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Reorganization

ReorgPlan plan_reorganization(const Layout& tokens, double max_height,
                              double gap, double canvas_width) {
  if (max_height <= 0) throw Error("max_height must be positive");
  if (canvas_width <= 0) throw Error("canvas_width must be positive");

  ReorgPlan plan;
  plan.canvas_width = canvas_width;
  plan.max_height = max_height;
  plan.gap = gap;

  const std::vector<TextBlock> blocks = tokens.flatten();
  double x = 0;
  std::size_t line = 0;
  bool line_has_token = false;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Rectangle src = bounding_rect(blocks[i].block());
    double w = src.width();
    double h = src.height();
    if (h > max_height) {
      const double f = max_height / h;
      w *= f;
      h = max_height;
    }
    if (w > canvas_width) {
      std::string name = blocks[i].text().value_or(
          blocks[i].id() ? "id " + std::to_string(*blocks[i].id())
                         : "index " + std::to_string(i));
      throw Error("token '" + name + "' is wider (" + io::format_number(w) +
                  " px) than the canvas (" + io::format_number(canvas_width) +
                  " px)");
    }
    double start = line_has_token ? x + gap : x;
    if (start + w > canvas_width) {
      ++line;
      start = 0;
      line_has_token = false;
    }
    const double top = double(line) * (max_height + gap) + (max_height - h) / 2.0;
    plan.placements.push_back(
        {i, src, Rectangle(start, top, start + w, top + h)});
    x = start + w;
    line_has_token = true;
  }
  plan.canvas_height =
      blocks.empty() ? 0 : double(line + 1) * (max_height + gap);
  return plan;
}

RasterImage render_reorganized(const ReorgPlan& plan, const RasterImage& image) {
  const int W = static_cast<int>(std::llround(plan.canvas_width));
  const int H = static_cast<int>(std::llround(plan.canvas_height));
  RasterImage out(W, std::max(H, 0), kWhite);
  for (const Placement& p : plan.placements) {
    const RasterImage crop = crop_image(Coordinate{p.source}, image);
    const int tx1 = static_cast<int>(std::llround(p.target.x1()));
    const int ty1 = static_cast<int>(std::llround(p.target.y1()));
    const int tw = static_cast<int>(std::llround(p.target.width()));
    const int th = static_cast<int>(std::llround(p.target.height()));
    for (int y = 0; y < th; ++y) {
      const int oy = ty1 + y;
      if (oy < 0 || oy >= out.height()) continue;
      const int sy = std::min(crop.height() - 1,
                              static_cast<int>(double(y) * crop.height() / th));
      for (int x = 0; x < tw; ++x) {
        const int ox = tx1 + x;
        if (ox < 0 || ox >= out.width()) continue;
        const int sx = std::min(crop.width() - 1,
                                static_cast<int>(double(x) * crop.width() / tw));
        out.set_pixel(ox, oy, crop.pixel(sx, sy));
      }
    }
  }
  return out;
}

RemapResult remap_ocr_results(const ReorgPlan& plan, const Layout& ocr_layout) {
  RemapResult result;
  for (const TextBlock& word : ocr_layout.flatten()) {
    const Point c = bounding_rect(word.block()).center();
    const Placement* hit = nullptr;
    for (const Placement& p : plan.placements) {
      if (c.x >= p.target.x1() && c.x <= p.target.x2() &&
          c.y >= p.target.y1() && c.y <= p.target.y2()) {
        hit = &p;
        break;
      }
    }
    if (!hit) {
      ++result.dropped;
      continue;
    }
    const double fx = hit->source.width() / hit->target.width();
    const double fy = hit->source.height() / hit->target.height();
    Coordinate box = relative_to(word.block(), Coordinate{hit->target});
    box = scale(box, fx <= 0 ? 1 : fx, fy <= 0 ? 1 : fy);
    box = condition_on(box, Coordinate{hit->source});
    result.layout.push_back(word.with_block(std::move(box)));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Plan serialization

namespace {

using ojson = nlohmann::ordered_json;

ojson rect_json(const Rectangle& r) {
  return {{"x_1", r.x1()}, {"y_1", r.y1()}, {"x_2", r.x2()}, {"y_2", r.y2()}};
}

Rectangle rect_from(const ojson& j) {
  return Rectangle(j.at("x_1").get<double>(), j.at("y_1").get<double>(),
                   j.at("x_2").get<double>(), j.at("y_2").get<double>());
}

}  // namespace

std::string ReorgPlan::to_json() const {
  ojson j;
  j["canvas"] = {{"width", canvas_width}, {"height", canvas_height}};
  j["max_height"] = max_height;
  j["gap"] = gap;
  ojson arr = ojson::array();
  for (const Placement& p : placements) {
    ojson pj;
    pj["token_index"] = p.token_index;
    pj["source"] = rect_json(p.source);
    pj["target"] = rect_json(p.target);
    arr.push_back(std::move(pj));
  }
  j["placements"] = std::move(arr);
  return j.dump();
}

ReorgPlan ReorgPlan::from_json(std::string_view data) {
  const ojson j = ojson::parse(data, nullptr, false);
  if (j.is_discarded()) throw ParseError("reorg plan: malformed JSON");
  ReorgPlan plan;
  try {
    plan.canvas_width = j.at("canvas").at("width").get<double>();
    plan.canvas_height = j.at("canvas").at("height").get<double>();
    plan.max_height = j.at("max_height").get<double>();
    plan.gap = j.at("gap").get<double>();
    for (const ojson& pj : j.at("placements")) {
      Placement p;
      p.token_index = pj.at("token_index").get<std::size_t>();
      p.source = rect_from(pj.at("source"));
      p.target = rect_from(pj.at("target"));
      plan.placements.push_back(p);
    }
  } catch (const ojson::exception& e) {
    throw ParseError(std::string("reorg plan: ") + e.what());
  }
  return plan;
}

}  // namespace lk::pipelines
