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

// Batch command-line front end.  Files in, files out; all diagnostics go to
// stderr.  Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "lk/io.hpp"
#include "lk/ocr.hpp"
#include "lk/pipelines.hpp"
#include "lk/registry.hpp"
#include "lk/viz.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lk::Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lk::Error("cannot write file: " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw lk::Error("write failed: " + path);
}

std::string registry_root(const std::string& flag_value) {
  return flag_value.empty() ? lk::registry::default_registry_root() : flag_value;
}

lk::io::CategoryMap load_categories_file(const std::string& path) {
  lk::io::CategoryMap out;
  if (path.empty()) return out;
  const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw lk::ParseError(path + ": category map must be a JSON object");
  for (const auto& [key, value] : j.items())
    out[std::stoi(key)] = value.get<std::string>();
  return out;
}

// Detections arrive either as layout JSON (object) or a COCO results array.
lk::Layout load_detections(const std::string& path, const std::string& categories_path,
                           std::optional<std::int64_t> image_id) {
  const std::string data = read_file(path);
  const auto j = nlohmann::json::parse(data, nullptr, false);
  if (j.is_discarded()) throw lk::ParseError(path + ": malformed JSON");
  if (j.is_array()) {
    auto per_image = lk::io::load_coco(data, lk::io::CocoKind::results,
                                       load_categories_file(categories_path));
    if (image_id) {
      const auto it = per_image.find(*image_id);
      return it == per_image.end() ? lk::Layout{} : it->second;
    }
    if (per_image.size() == 1) return per_image.begin()->second;
    if (per_image.empty()) return lk::Layout{};
    std::string ids;
    for (const auto& [id, layout] : per_image) ids += " " + std::to_string(id);
    throw lk::Error(path + ": multiple image ids present (" + ids +
                    "); pick one with --image-id");
  }
  return lk::io::load_json(data);
}

// Flat JSON config: keys are long option names; values apply only to flags
// the user did not pass (flags win).
void apply_config(CLI::App& cmd, const nlohmann::json& config) {
  if (config.is_null()) return;
  for (CLI::Option* opt : cmd.get_options()) {
    const auto& lnames = opt->get_lnames();
    if (lnames.empty() || opt->count() > 0 || !config.contains(lnames.front()))
      continue;
    const std::string name = lnames.front();
    const auto& v = config[name];
    opt->add_result(v.is_string() ? v.get<std::string>() : v.dump());
    opt->run_callback();
  }
}

struct TableFlags {
  double score_min = 0.8;
  double iou = 0.5;
  double min_run = 0.8;
  double row_gap = -1;  // <0: median token height
  double row_min_gap = 3;
  std::string delimiter = ",";

  lk::pipelines::TableParams params() const {
    lk::pipelines::TableParams p;
    p.score_min = score_min;
    p.iou_threshold = iou;
    p.min_run_fraction = min_run;
    if (row_gap >= 0) p.row_gap = row_gap;
    p.row_min_gap = row_min_gap;
    return p;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layoutkit: document layout toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override it");

  // detect
  auto* detect = app.add_subcommand("detect", "look up detections for an image");
  std::string det_model, det_out, det_registry;
  std::int64_t det_image_id = 0;
  double det_threshold = 0.0;
  detect->add_option("--model", det_model, "lp:// model uri")->required();
  detect->add_option("--image-id", det_image_id, "image id in the results file")->required();
  detect->add_option("--out", det_out, "output layout JSON")->required();
  detect->add_option("--threshold", det_threshold, "minimum score")->capture_default_str();
  detect->add_option("--registry", det_registry, "registry root directory");

  // viz
  auto* viz = app.add_subcommand("viz", "render a layout");
  std::string viz_mode, viz_layout, viz_image, viz_out;
  int viz_width = 0, viz_height = 0, viz_box_width = 1, viz_font_size = 8;
  bool viz_show_score = false;
  viz->add_option("--mode", viz_mode, "boxes or texts")
      ->required()
      ->check(CLI::IsMember({"boxes", "texts"}));
  viz->add_option("--layout", viz_layout, "layout JSON")->required();
  viz->add_option("--image", viz_image, "page image (required for boxes)");
  viz->add_option("--width", viz_width, "canvas width for texts mode");
  viz->add_option("--height", viz_height, "canvas height for texts mode");
  viz->add_option("--out", viz_out, "output PNG")->required();
  viz->add_option("--box-width", viz_box_width, "outline width")->capture_default_str();
  viz->add_option("--font-size", viz_font_size, "label size")->capture_default_str();
  viz->add_flag("--show-score", viz_show_score, "append scores to labels");

  // tables
  auto* tables = app.add_subcommand("tables", "extract table structures");
  std::string tab_image, tab_detections, tab_categories, tab_ocr, tab_out;
  std::optional<std::int64_t> tab_image_id;
  bool tab_concat = false;
  TableFlags tf;
  tables->add_option("--image", tab_image, "page image")->required();
  tables->add_option("--detections", tab_detections,
                     "layout JSON or COCO results array")->required();
  tables->add_option("--categories", tab_categories, "category map for COCO input");
  tables->add_option("--image-id", tab_image_id, "image id for COCO input");
  tables->add_option("--ocr", tab_ocr, "token TSV (Tesseract format)")->required();
  tables->add_option("--out", tab_out, "output CSV")->required();
  tables->add_option("--score-min", tf.score_min, "detection score floor")->capture_default_str();
  tables->add_option("--iou", tf.iou, "NMS IoU threshold")->capture_default_str();
  tables->add_option("--min-run", tf.min_run, "ruling run fraction")->capture_default_str();
  tables->add_option("--row-gap", tf.row_gap, "row clustering gap (px)");
  tables->add_option("--row-min-gap", tf.row_min_gap, "row suppression gap")->capture_default_str();
  tables->add_option("--delimiter", tf.delimiter, "CSV delimiter")->capture_default_str();
  tables->add_flag("--concat", tab_concat,
                   "concatenate the page's tables into one grid");

  // reorg
  auto* reorg = app.add_subcommand("reorg", "pack tokens onto a dense canvas");
  std::string re_layout, re_image, re_out, re_plan, re_order = "none";
  double re_max_height = 0, re_gap = 4, re_canvas_width = 0;
  reorg->add_option("--layout", re_layout, "token layout JSON")->required();
  reorg->add_option("--image", re_image, "source page image")->required();
  reorg->add_option("--max-height", re_max_height, "line height (px)")->required();
  reorg->add_option("--gap", re_gap, "gap between lines and tokens")->capture_default_str();
  reorg->add_option("--canvas-width", re_canvas_width,
                    "target width; defaults to the image width");
  reorg->add_option("--order", re_order, "column_rtl, row_ltr or none")->capture_default_str()
      ->check(CLI::IsMember({"column_rtl", "row_ltr", "none"}));
  reorg->add_option("--out", re_out, "output PNG")->required();
  reorg->add_option("--plan", re_plan, "output plan JSON")->required();

  // remap
  auto* remap = app.add_subcommand("remap", "map OCR output back to the page");
  std::string rm_plan, rm_ocr, rm_out;
  remap->add_option("--plan", rm_plan, "plan JSON from reorg")->required();
  remap->add_option("--ocr", rm_ocr, "TSV of the reorganized canvas")->required();
  remap->add_option("--out", rm_out, "output layout JSON")->required();

  // convert
  auto* convert = app.add_subcommand("convert", "convert between formats");
  std::string cv_from, cv_to, cv_in, cv_out, cv_kind = "results", cv_categories;
  std::optional<std::int64_t> cv_image_id;
  convert->add_option("--from", cv_from, "coco or json")
      ->required()
      ->check(CLI::IsMember({"coco", "json"}));
  convert->add_option("--to", cv_to, "json or csv")
      ->required()
      ->check(CLI::IsMember({"json", "csv"}));
  convert->add_option("--in", cv_in, "input file")->required();
  convert->add_option("--out", cv_out, "output file")->required();
  convert->add_option("--kind", cv_kind, "coco flavor: dataset or results")->capture_default_str()
      ->check(CLI::IsMember({"dataset", "results"}));
  convert->add_option("--categories", cv_categories, "category map JSON");
  convert->add_option("--image-id", cv_image_id, "image id for coco input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    nlohmann::json config;
    if (!config_path.empty()) {
      config = nlohmann::json::parse(read_file(config_path), nullptr, false);
      if (config.is_discarded() || !config.is_object())
        throw lk::ParseError(config_path + ": config must be a JSON object");
      for (CLI::App* sub : app.get_subcommands()) apply_config(*sub, config);
    }

    if (*detect) {
      const auto index =
          lk::registry::RegistryIndex::load_root(registry_root(det_registry));
      const lk::Layout layout = index.detect(
          lk::registry::parse_model_uri(det_model), det_image_id, det_threshold);
      write_file(det_out, lk::io::export_json(layout));
    } else if (*viz) {
      const lk::Layout layout = lk::io::load_json(read_file(viz_layout));
      lk::viz::DrawStyle style;
      style.box_width = viz_box_width;
      style.show_score = viz_show_score;
      style.font_size = viz_font_size;
      lk::RasterImage out;
      if (viz_mode == "boxes") {
        if (viz_image.empty())
          throw lk::Error("viz --mode boxes requires --image");
        out = lk::viz::draw_boxes(lk::io::load_image(viz_image), layout, style);
      } else {
        int w = viz_width, h = viz_height;
        if (!viz_image.empty()) {
          const lk::RasterImage page = lk::io::load_image(viz_image);
          w = page.width();
          h = page.height();
        }
        if (w <= 0 || h <= 0)
          throw lk::Error("viz --mode texts needs --image or --width/--height");
        out = lk::viz::draw_texts(layout, w, h, style);
      }
      lk::io::save_image(out, viz_out);
    } else if (*tables) {
      const lk::RasterImage image = lk::io::load_image(tab_image);
      const lk::Layout detections =
          load_detections(tab_detections, tab_categories, tab_image_id);
      const lk::Layout tokens = lk::ocr::parse_tesseract_tsv(read_file(tab_ocr));
      const auto structures =
          lk::pipelines::extract_tables(image, detections, tokens, tf.params());
      if (tf.delimiter.size() != 1)
        throw lk::Error("--delimiter must be a single character");
      std::string csv;
      if (tab_concat && structures.size() > 1) {
        std::vector<int> pages(structures.size());
        for (std::size_t i = 0; i < pages.size(); ++i) pages[i] = int(i);
        csv = lk::pipelines::table_to_csv(
            lk::pipelines::concat_tables(structures, pages), tf.delimiter[0]);
      } else {
        for (std::size_t i = 0; i < structures.size(); ++i) {
          if (i > 0) csv += "\r\n";  // blank line between tables
          csv += lk::pipelines::table_to_csv(structures[i], tf.delimiter[0]);
        }
      }
      write_file(tab_out, csv);
      std::cerr << "extracted " << structures.size() << " table(s)\n";
    } else if (*reorg) {
      const lk::RasterImage image = lk::io::load_image(re_image);
      lk::Layout tokens = lk::io::load_json(read_file(re_layout));
      if (re_order == "column_rtl")
        tokens = tokens.sort_reading_order(lk::ReadingOrder::column_rtl);
      else if (re_order == "row_ltr")
        tokens = tokens.sort_reading_order(lk::ReadingOrder::row_ltr);
      const double width =
          re_canvas_width > 0 ? re_canvas_width : double(image.width());
      const auto plan =
          lk::pipelines::plan_reorganization(tokens, re_max_height, re_gap, width);
      lk::io::save_image(lk::pipelines::render_reorganized(plan, image), re_out);
      write_file(re_plan, plan.to_json());
    } else if (*remap) {
      const auto plan = lk::pipelines::ReorgPlan::from_json(read_file(rm_plan));
      const lk::Layout words = lk::ocr::parse_tesseract_tsv(read_file(rm_ocr));
      const auto result = lk::pipelines::remap_ocr_results(plan, words);
      write_file(rm_out, lk::io::export_json(result.layout));
      std::cerr << "remapped " << result.layout.size() << " word(s), dropped "
                << result.dropped << "\n";
    } else if (*convert) {
      lk::Layout layout;
      if (cv_from == "coco") {
        auto per_image = lk::io::load_coco(
            read_file(cv_in),
            cv_kind == "dataset" ? lk::io::CocoKind::dataset
                                 : lk::io::CocoKind::results,
            load_categories_file(cv_categories));
        if (cv_image_id) {
          const auto it = per_image.find(*cv_image_id);
          if (it == per_image.end())
            throw lk::Error(cv_in + ": image id " + std::to_string(*cv_image_id) +
                            " not present");
          layout = it->second;
        } else if (per_image.size() == 1) {
          layout = per_image.begin()->second;
        } else {
          std::string ids;
          for (const auto& [id, l] : per_image) ids += " " + std::to_string(id);
          throw lk::Error(cv_in + ": multiple image ids (" + ids +
                          "); pick one with --image-id");
        }
      } else {
        layout = lk::io::load_json(read_file(cv_in));
      }
      write_file(cv_out, cv_to == "json" ? lk::io::export_json(layout)
                                         : lk::io::export_csv(layout));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}
