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

#include "lk/ocr.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "lk/font5x7.hpp"

namespace lk::ocr {

namespace {

// Decodes UTF-8 into code points; bytes of invalid sequences pass through
// one by one so the metrics never throw on dirty engine output.
std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = s[i];
    int len = 1;
    char32_t cp = c;
    if (c >= 0xF0) { len = 4; cp = c & 0x07; }
    else if (c >= 0xE0) { len = 3; cp = c & 0x0F; }
    else if (c >= 0xC0) { len = 2; cp = c & 0x1F; }
    if (len > 1) {
      if (i + len > s.size()) len = 1;
      for (int k = 1; k < len; ++k) {
        const unsigned char cc = s[i + k];
        if ((cc & 0xC0) != 0x80) { len = 1; break; }
        cp = (cp << 6) | (cc & 0x3F);
      }
      if (len == 1) cp = c;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

struct TsvRow {
  int level = 0;
  int page_num = 0, block_num = 0, par_num = 0, line_num = 0, word_num = 0;
  double left = 0, top = 0, width = 0, height = 0;
  double conf = -1;
  std::string text;
};

double parse_num(std::string_view field, std::size_t line_no, const char* name) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError("row " + std::to_string(line_no) + ": field '" + name +
                     "' is not numeric: '" + std::string(field) + "'");
  return v;
}

TsvRow parse_row(std::string_view line, std::size_t line_no) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  // The text column may be absent on structural rows.
  if (fields.size() != 12 && fields.size() != 11)
    throw ParseError("row " + std::to_string(line_no) + ": expected 12 fields, got " +
                     std::to_string(fields.size()));
  TsvRow r;
  r.level = static_cast<int>(parse_num(fields[0], line_no, "level"));
  r.page_num = static_cast<int>(parse_num(fields[1], line_no, "page_num"));
  r.block_num = static_cast<int>(parse_num(fields[2], line_no, "block_num"));
  r.par_num = static_cast<int>(parse_num(fields[3], line_no, "par_num"));
  r.line_num = static_cast<int>(parse_num(fields[4], line_no, "line_num"));
  r.word_num = static_cast<int>(parse_num(fields[5], line_no, "word_num"));
  r.left = parse_num(fields[6], line_no, "left");
  r.top = parse_num(fields[7], line_no, "top");
  r.width = parse_num(fields[8], line_no, "width");
  r.height = parse_num(fields[9], line_no, "height");
  r.conf = parse_num(fields[10], line_no, "conf");
  if (fields.size() == 12) r.text = std::string(fields[11]);
  if (r.level < 1 || r.level > 5)
    throw ParseError("row " + std::to_string(line_no) + ": level " +
                     std::to_string(r.level) + " outside 1..5");
  if (r.width < 0 || r.height < 0)
    throw ParseError("row " + std::to_string(line_no) + ": negative extents");
  return r;
}

}  // namespace

Layout parse_tesseract_tsv(std::string_view data, int min_level) {
  Layout out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  std::int64_t next_id = 0;
  // line row (page, block, par, line) -> assigned block id
  std::map<std::array<int, 4>, std::int64_t> line_ids;

  while (pos <= data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    std::string_view line = data.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (pos > data.size()) break;
      continue;
    }
    if (!header_seen) {
      if (line.substr(0, 5) != "level")
        throw ParseError("row 1: missing TSV header");
      header_seen = true;
      continue;
    }

    const TsvRow r = parse_row(line, line_no);
    if (r.level < min_level) continue;

    const bool is_line = r.level == 4;
    if (!is_line && r.conf < 0) continue;  // structural rows carry conf -1

    TextBlock b{Rectangle(r.left, r.top, r.left + r.width, r.top + r.height)};
    b = b.with_id(next_id++);
    if (is_line) {
      b = b.with_category("line");
      line_ids[{r.page_num, r.block_num, r.par_num, r.line_num}] = *b.id();
    } else {
      b = b.with_text(r.text).with_score(std::clamp(r.conf, 0.0, 100.0) / 100.0);
      const auto it = line_ids.find({r.page_num, r.block_num, r.par_num, r.line_num});
      if (it != line_ids.end()) b = b.with_parent(it->second);
    }
    out.push_back(std::move(b));
  }
  if (!header_seen) throw ParseError("row 1: missing TSV header");
  return out;
}

TsvFileOcrAgent::TsvFileOcrAgent(std::string path, int min_level)
    : path_(std::move(path)), min_level_(min_level) {}

Layout TsvFileOcrAgent::detect(const RasterImage&) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw Error("cannot open TSV file: " + path_);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tesseract_tsv(ss.str(), min_level_);
}

Layout GridFontOcrAgent::detect(const RasterImage& image) {
  Layout out;
  const int cols = image.width() / font::kCellWidth;
  const int rows = image.height() / font::kCellHeight;
  std::int64_t next_id = 0;
  for (int r = 0; r < rows; ++r) {
    std::string word;
    int word_start = -1;
    auto flush = [&](int end_col) {
      if (word.empty()) return;
      TextBlock b{Rectangle(double(word_start) * font::kCellWidth,
                            double(r) * font::kCellHeight,
                            double(end_col) * font::kCellWidth,
                            double(r + 1) * font::kCellHeight)};
      out.push_back(b.with_text(word).with_score(1.0).with_id(next_id++));
      word.clear();
      word_start = -1;
    };
    for (int c = 0; c < cols; ++c) {
      const int ch = font::match_cell(image, c * font::kCellWidth,
                                      r * font::kCellHeight);
      if (ch <= ' ') {  // blank or unrecognized cell ends the word
        flush(c);
        continue;
      }
      if (word.empty()) word_start = c;
      word.push_back(static_cast<char>(ch));
    }
    flush(cols);
  }
  return out;
}

double char_jaccard(std::string_view predicted, std::string_view truth) {
  if (predicted.empty() && truth.empty()) return 1.0;
  std::map<char32_t, std::pair<std::size_t, std::size_t>> counts;
  for (char32_t c : decode_utf8(predicted)) counts[c].first++;
  for (char32_t c : decode_utf8(truth)) counts[c].second++;
  std::size_t inter = 0, uni = 0;
  for (const auto& [c, n] : counts) {
    inter += std::min(n.first, n.second);
    uni += std::max(n.first, n.second);
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::size_t levenshtein(std::string_view predicted, std::string_view truth) {
  const std::vector<char32_t> a = decode_utf8(predicted);
  const std::vector<char32_t> b = decode_utf8(truth);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace lk::ocr
