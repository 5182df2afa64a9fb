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

#include "support/synthetic_table.hpp"

#include <algorithm>

#include "lk/font5x7.hpp"
#include "lk/viz.hpp"

namespace lk::testsupport {

namespace {

struct CellContent {
  std::vector<std::string> words;
  int width_px = 0;  // rendered width including intra-cell word gaps
};

void draw_vline(RasterImage& img, int x, int y1, int y2) {
  for (int y = y1; y <= y2; ++y)
    if (x >= 0 && x < img.width() && y >= 0 && y < img.height())
      img.set_pixel(x, y, kBlack);
}

void draw_hline(RasterImage& img, int y, int x1, int x2) {
  for (int x = x1; x <= x2; ++x)
    if (x >= 0 && x < img.width() && y >= 0 && y < img.height())
      img.set_pixel(x, y, kBlack);
}

}  // namespace

TableFixture make_table_fixture(Rng& rng, const TableSpec& spec) {
  TableFixture fx;
  fx.columns = uniform_int(rng, spec.min_columns, spec.max_columns);
  fx.rows = uniform_int(rng, spec.min_rows, spec.max_rows);
  const int s = uniform_int(rng, 1, 2);  // glyph scale ("font size")
  const int glyph_h = font::kCellHeight * s;
  const int cell_pad = 4 * s;
  const int vpad = uniform_int(rng, 6, 12);
  const int pitch = glyph_h + vpad;

  // Contents first; column widths follow from the widest cell.
  std::vector<std::vector<CellContent>> contents(
      fx.rows, std::vector<CellContent>(fx.columns));
  for (int r = 0; r < fx.rows; ++r)
    for (int c = 0; c < fx.columns; ++c) {
      CellContent& cell = contents[r][c];
      if (spec.deterministic_text) {
        cell.words.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
        if ((r + c) % 3 == 0) cell.words.push_back("x" + std::to_string(r + c));
      } else {
        // Every row keeps its left-most cell populated; others may be empty.
        if (c > 0 && uniform_int(rng, 0, 9) == 0) continue;
        const int words = uniform_int(rng, 1, 2);
        for (int w = 0; w < words; ++w)
          cell.words.push_back(random_word(rng, 2, words == 2 ? 4 : 6));
      }
      for (std::size_t w = 0; w < cell.words.size(); ++w) {
        if (w > 0) cell.width_px += font::kCellWidth * s;  // word gap
        cell.width_px += int(cell.words[w].size()) * font::kCellWidth * s;
      }
    }

  std::vector<int> col_width(fx.columns, 0);
  for (int c = 0; c < fx.columns; ++c) {
    for (int r = 0; r < fx.rows; ++r)
      col_width[c] = std::max(col_width[c], contents[r][c].width_px);
    col_width[c] += 2 * cell_pad;
    col_width[c] = std::max(col_width[c], 40);
  }

  const int tx = uniform_int(rng, 5, 60);
  const int ty = uniform_int(rng, 5, 80);
  int tw = 0;
  for (const int w : col_width) tw += w;
  const int th = fx.rows * pitch;
  fx.table_box = Rectangle(tx, ty, tx + tw, ty + th);

  const int page_w = tx + tw + uniform_int(rng, 5, 60);
  const int page_h = ty + th + uniform_int(rng, 20, 50);
  fx.page = RasterImage(page_w, page_h, kWhite);

  // Rulings: full vertical lines at every column boundary; horizontal rules
  // on roughly half the tables.
  std::vector<int> boundaries{tx};
  for (const int w : col_width) boundaries.push_back(boundaries.back() + w);
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    draw_vline(fx.page, boundaries[i], ty, ty + th);
    if (i != 0 && i + 1 != boundaries.size())
      fx.separator_x.push_back(boundaries[i]);
  }
  if (uniform_int(rng, 0, 1)) {
    for (int r = 0; r <= fx.rows; ++r)
      draw_hline(fx.page, ty + r * pitch, tx, tx + tw);
  }

  // Cell texts and the token layout.
  fx.truth.assign(fx.rows, std::vector<std::vector<std::string>>(fx.columns));
  std::int64_t token_id = 0;
  for (int r = 0; r < fx.rows; ++r)
    for (int c = 0; c < fx.columns; ++c) {
      int x = boundaries[c] + cell_pad;
      const int y = ty + r * pitch + vpad / 2;
      for (const std::string& word : contents[r][c].words) {
        viz::render_text(fx.page, word, x, y, glyph_h, kBlack);
        const int w = int(word.size()) * font::kCellWidth * s;
        TextBlock token{Rectangle(x, y, x + w, y + glyph_h)};
        fx.tokens.push_back(token.with_text(word)
                                .with_id(token_id++)
                                .with_score(coord2(rng, 0.81, 0.99)));
        fx.truth[r][c].push_back(word);
        x += w + font::kCellWidth * s;
      }
    }

  // A couple of off-table tokens in the bottom margin.
  for (int i = 0; i < 2; ++i) {
    const int x = uniform_int(rng, 0, std::max(0, page_w - 60));
    const int y = ty + th + 6;
    const std::string word = spec.deterministic_text
                                 ? "margin" + std::to_string(i)
                                 : random_word(rng, 3, 6);
    viz::render_text(fx.page, word, x, y, font::kCellHeight, kBlack);
    fx.tokens.push_back(
        TextBlock{Rectangle(double(x), double(y),
                            double(x + int(word.size()) * font::kCellWidth),
                            double(y + font::kCellHeight))}
            .with_text(word)
            .with_id(token_id++)
            .with_score(0.9));
  }

  // Detections: the true box with edge jitter, a lower-scored duplicate that
  // NMS must drop, a low-confidence box below any sensible score floor, and
  // a non-table region.
  auto jitter = [&] { return double(uniform_int(rng, -2, 2)); };
  const Rectangle detected(fx.table_box.x1() + jitter(), fx.table_box.y1() + jitter(),
                           fx.table_box.x2() + jitter(), fx.table_box.y2() + jitter());
  fx.detections.push_back(TextBlock{detected}
                              .with_category("table")
                              .with_score(coord2(rng, 0.85, 0.99)));
  fx.detections.push_back(TextBlock{detected.shift(jitter(), jitter())}
                              .with_category("table")
                              .with_score(0.82));
  fx.detections.push_back(TextBlock{Rectangle(0, 0, 30, 10)}
                              .with_category("table")
                              .with_score(0.3));
  fx.detections.push_back(TextBlock{Rectangle(0, double(page_h - 12),
                                              double(page_w), double(page_h))}
                              .with_category("text")
                              .with_score(0.95));
  return fx;
}

std::string truth_csv(const TableFixture& fixture) {
  std::string out;
  for (const auto& row : fixture.truth) {
    bool first = true;
    for (const auto& cell : row) {
      if (!first) out += ',';
      first = false;
      for (std::size_t w = 0; w < cell.size(); ++w) {
        if (w > 0) out += ' ';
        out += cell[w];
      }
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace lk::testsupport
