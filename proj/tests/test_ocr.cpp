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

#include <cstdio>
#include <fstream>
#include <string>

#include "lk/ocr.hpp"
#include "lk/viz.hpp"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"

using namespace lk;
using namespace lk::testsupport;

namespace {

const char* kHeader =
    "level\tpage_num\tblock_num\tpar_num\tline_num\tword_num\tleft\ttop\twidth"
    "\theight\tconf\ttext\n";

}  // namespace

TEST_CASE("tsv parsing examples") {
  CHECK(ocr::parse_tesseract_tsv(kHeader).empty());

  const std::string one = std::string(kHeader) +
                          "5\t1\t1\t1\t1\t1\t10\t20\t30\t10\t96\tDeep\n";
  const Layout l = ocr::parse_tesseract_tsv(one);
  REQUIRE(l.size() == 1);
  const TextBlock& b = l.elements()[0].block();
  CHECK(bounding_rect(b.block()) == Rectangle(10, 20, 40, 30));
  CHECK(b.text() == "Deep");
  CHECK(b.score() == doctest::Approx(0.96));

  // Structural rows (conf -1) are skipped at word granularity.
  const std::string mixed = std::string(kHeader) +
                            "1\t1\t0\t0\t0\t0\t0\t0\t300\t400\t-1\t\n"
                            "4\t1\t1\t1\t1\t0\t8\t8\t200\t12\t-1\t\n"
                            "5\t1\t1\t1\t1\t1\t10\t8\t40\t12\t91\talpha\n"
                            "5\t1\t1\t1\t1\t2\t60\t8\t40\t12\t88\tbeta\n";
  CHECK(ocr::parse_tesseract_tsv(mixed).size() == 2);
}

TEST_CASE("tsv line-level parsing wires parents") {
  const std::string data = std::string(kHeader) +
                           "4\t1\t1\t1\t1\t0\t8\t8\t200\t12\t-1\t\n"
                           "5\t1\t1\t1\t1\t1\t10\t8\t40\t12\t91\talpha\n"
                           "4\t1\t1\t1\t2\t0\t8\t30\t200\t12\t-1\t\n"
                           "5\t1\t1\t1\t2\t1\t10\t30\t40\t12\t85\tbeta\n";
  const Layout l = ocr::parse_tesseract_tsv(data, /*min_level=*/4);
  REQUIRE(l.size() == 4);
  const auto blocks = l.flatten();
  CHECK(blocks[0].category() == "line");
  CHECK(blocks[1].parent() == blocks[0].id());
  CHECK(blocks[3].parent() == blocks[2].id());
  CHECK(l.group_by_parent().size() == 2);
}

TEST_CASE("tsv errors carry row numbers") {
  CHECK_THROWS_WITH_AS(ocr::parse_tesseract_tsv("bogus\n"),
                       doctest::Contains("row 1"), ParseError);
  CHECK_THROWS_WITH_AS(
      ocr::parse_tesseract_tsv(std::string(kHeader) + "5\t1\t1\t1\t1\t1\t10\t20\n"),
      doctest::Contains("row 2"), ParseError);
  CHECK_THROWS_WITH_AS(
      ocr::parse_tesseract_tsv(std::string(kHeader) +
                               "5\t1\t1\t1\t1\t1\tten\t20\t30\t10\t96\tDeep\n"),
      doctest::Contains("left"), ParseError);
  CHECK_THROWS_AS(
      ocr::parse_tesseract_tsv(std::string(kHeader) +
                               "5\t1\t1\t1\t1\t1\t10\t20\t-30\t10\t96\tDeep\n"),
      ParseError);
  CHECK_THROWS_AS(
      ocr::parse_tesseract_tsv(std::string(kHeader) +
                               "9\t1\t1\t1\t1\t1\t10\t20\t30\t10\t96\tDeep\n"),
      ParseError);
}

TEST_CASE("tsv blocks stay inside the page rectangle") {
  Rng rng(55);
  std::string data = kHeader;
  const double W = 600, H = 800;
  for (int i = 0; i < 40; ++i) {
    const int left = uniform_int(rng, 0, 500);
    const int top = uniform_int(rng, 0, 700);
    data += "5\t1\t1\t1\t1\t" + std::to_string(i + 1) + "\t" +
            std::to_string(left) + "\t" + std::to_string(top) + "\t" +
            std::to_string(uniform_int(rng, 1, 100)) + "\t" +
            std::to_string(uniform_int(rng, 1, 100)) + "\t75\tw" +
            std::to_string(i) + "\n";
  }
  const Layout l = ocr::parse_tesseract_tsv(data);
  const Coordinate page{Rectangle(0, 0, W, H)};
  for (const TextBlock& b : l.flatten()) CHECK(b.is_in(page));
}

TEST_CASE("tsv file agent replays engine output") {
  const std::string path = "/tmp/lk_agent_words.tsv";
  std::ofstream(path) << kHeader << "5\t1\t1\t1\t1\t1\t4\t4\t20\t8\t80\thi\n";
  ocr::TsvFileOcrAgent agent(path);
  const Layout words = agent.detect(RasterImage(100, 50));
  REQUIRE(words.size() == 1);
  CHECK(words.elements()[0].block().text() == "hi");
  CHECK(words.elements()[0].block().is_in(Coordinate{Rectangle(0, 0, 100, 50)}));
  std::remove(path.c_str());

  ocr::TsvFileOcrAgent missing("/tmp/lk_no_such.tsv");
  CHECK_THROWS_AS(missing.detect(RasterImage(10, 10)), Error);
}

TEST_CASE("char_jaccard examples") {
  CHECK(ocr::char_jaccard("abc", "abc") == 1.0);
  CHECK(ocr::char_jaccard("abc", "abd") == 0.5);
  CHECK(ocr::char_jaccard("", "x") == 0.0);
  CHECK(ocr::char_jaccard("", "") == 1.0);
  // Multiset counting, not set counting.
  CHECK(ocr::char_jaccard("aab", "ab") == doctest::Approx(2.0 / 3.0));
  // Code points, not bytes.
  CHECK(ocr::char_jaccard("\xE6\x97\xA5\xE6\x9C\xAC", "\xE6\x97\xA5") == 0.5);
}

TEST_CASE("char_jaccard is symmetric") {
  Rng rng(56);
  for (int i = 0; i < 500; ++i) {
    const std::string a = random_word(rng, 0, 8);
    const std::string b = random_word(rng, 0, 8);
    CHECK(ocr::char_jaccard(a, b) == ocr::char_jaccard(b, a));
  }
}

TEST_CASE("levenshtein examples") {
  CHECK(ocr::levenshtein("a", "a") == 0);
  CHECK(ocr::levenshtein("kitten", "sitting") == 3);
  CHECK(ocr::levenshtein("", "abc") == 3);
  CHECK(ocr::levenshtein("abc", "") == 3);
  CHECK(ocr::levenshtein("\xE6\x97\xA5\xE6\x9C\xAC", "\xE6\x97\xA5") == 1);
}

TEST_CASE("levenshtein matches the recursive oracle and triangle inequality") {
  Rng rng(57);
  auto short_word = [&] {
    std::string s;
    const int len = uniform_int(rng, 0, 6);
    for (int i = 0; i < len; ++i) s += char('a' + uniform_int(rng, 0, 2));
    return s;
  };
  for (int i = 0; i < 400; ++i) {
    const std::string a = short_word(), b = short_word(), c = short_word();
    const std::size_t ab = ocr::levenshtein(a, b);
    CHECK(ab == levenshtein_oracle(a, b));
    CHECK(ab <= ocr::levenshtein(a, c) + ocr::levenshtein(c, b));
  }
}

TEST_CASE("grid font agent reads back rendered text") {
  Layout page;
  page.push_back(TextBlock{Rectangle(0, 0, 66, 8)}.with_text("Hello world"));
  page.push_back(TextBlock{Rectangle(12, 16, 72, 24)}.with_text("second row"));
  page.push_back(TextBlock{Rectangle(0, 32, 48, 40)}.with_text("0,2:9"));
  const RasterImage img = viz::draw_texts(page, 120, 48);

  ocr::GridFontOcrAgent agent;
  const Layout words = agent.detect(img);
  CHECK(words.get_texts() == std::vector<std::string>{"Hello", "world", "second",
                                                      "row", "0,2:9"});
  // Word boxes land where the text was drawn.
  const TextBlock& hello = words.elements()[0].block();
  CHECK(bounding_rect(hello.block()) == Rectangle(0, 0, 30, 8));
  CHECK(hello.score() == 1.0);

  // Agent output feeds straight back into text rendering.
  CHECK(viz::draw_texts(words, 120, 48) == img);
}
