#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "modie/cli.hpp"

namespace modie {

namespace {

using nlohmann::json;

void read_number(const json& j, const char* key, double& target) {
  if (!j.contains(key)) return;
  if (!j[key].is_number()) throw Error(std::string("config: '") + key + "' must be a number");
  target = j[key].get<double>();
}

Rgba read_color(const json& j, const std::string& what) {
  if (!j.is_string()) throw Error("config: " + what + " must be a \"#RRGGBB\" string");
  return Rgba::from_hex(j.get<std::string>());
}

}  // namespace

void apply_config_json(std::string_view json_text, RunConfig& config) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("config must be a JSON object");

  static const char* kKnown[] = {"geometry", "max_stack", "opacity", "palette", "cycle",
                                 "mutation_mark", "hotspot", "fetch"};
  for (const auto& [key, _] : j.items())
    if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return key == k; }) == std::end(kKnown))
      throw Error("config: unknown key '" + key + "'");

  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    auto& layout = config.layout;
    read_number(g, "diameter", layout.diameter);
    read_number(g, "gap", layout.gap);
    read_number(g, "band_height", layout.band_height);
    read_number(g, "width", layout.width);
    read_number(g, "margin_left", layout.margin_left);
    read_number(g, "margin_right", layout.margin_right);
    read_number(g, "margin_top", layout.margin_top);
    read_number(g, "margin_bottom", layout.margin_bottom);
    read_number(g, "context_height", layout.context_height);
    read_number(g, "font_size", layout.font_size);
    if (layout.diameter <= 0 || layout.gap < 0 || layout.band_height <= 0 ||
        layout.width <= layout.margin_left + layout.margin_right)
      throw Error("config: geometry values are inconsistent");
  }
  if (j.contains("max_stack")) {
    if (j["max_stack"].is_null())
      config.layout.max_stack.reset();
    else if (j["max_stack"].is_number_unsigned() && j["max_stack"].get<std::size_t>() >= 1)
      config.layout.max_stack = j["max_stack"].get<std::size_t>();
    else
      throw Error("config: 'max_stack' must be a positive integer or null");
  }
  if (j.contains("opacity")) {
    read_number(j, "opacity", config.palette.opacity);
    if (!(config.palette.opacity > 0 && config.palette.opacity <= 1)) throw Error("config: 'opacity' must lie in (0, 1]");
  }
  if (j.contains("palette")) {
    if (!j["palette"].is_object()) throw Error("config: 'palette' must map category names to colours");
    for (const auto& [name, value] : j["palette"].items())
      config.palette.overrides[name] = read_color(value, "palette colour for '" + name + "'");
  }
  if (j.contains("cycle")) {
    config.palette.cycle.clear();
    for (const auto& value : j["cycle"]) config.palette.cycle.push_back(read_color(value, "cycle entry"));
  }
  if (j.contains("mutation_mark")) config.palette.mutation_mark = read_color(j["mutation_mark"], "'mutation_mark'");
  if (j.contains("hotspot")) {
    const json& h = j["hotspot"];
    if (h.contains("none")) config.palette.hotspot_none = read_color(h["none"], "hotspot.none");
    if (h.contains("low")) config.palette.hotspot_low = read_color(h["low"], "hotspot.low");
    if (h.contains("high")) config.palette.hotspot_high = read_color(h["high"], "hotspot.high");
  }
  if (j.contains("fetch")) {
    const json& f = j["fetch"];
    if (f.contains("xray_url_template")) config.fetch.xray_url_template = f["xray_url_template"].get<std::string>();
    if (f.contains("predicted_url_template"))
      config.fetch.predicted_url_template = f["predicted_url_template"].get<std::string>();
    if (f.contains("sha256"))
      for (const auto& [id, digest] : f["sha256"].items()) config.fetch.sha256[id] = digest.get<std::string>();
  }
}

void load_config_file(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::filesystem::filesystem_error("cannot read config", path, std::make_error_code(std::errc::no_such_file_or_directory));
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_json(text.str(), config);
}

Window parse_window(std::string_view text) {
  const auto colon = text.find(':');
  auto number = [&](std::string_view part) {
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || end != part.data() + part.size())
      throw Error("window '" + std::string(text) + "' must look like A:B");
    return value;
  };
  if (colon == std::string_view::npos) throw Error("window '" + std::string(text) + "' must look like A:B");
  Window w{number(text.substr(0, colon)), number(text.substr(colon + 1))};
  if (w.start < 1 || w.end < w.start) throw Error("window '" + std::string(text) + "' needs 1 <= A <= B");
  return w;
}

std::filesystem::path resolve_cache_dir(const std::filesystem::path& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("MODIE_CACHE"); env && *env) return env;
  return ".modie-cache";
}

}  // namespace modie
