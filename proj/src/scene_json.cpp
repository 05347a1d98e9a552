#include "modie/render.hpp"

#include <json.hpp>

namespace modie {

namespace {

using nlohmann::json;

std::string_view anchor_name(TextAnchor anchor) {
  switch (anchor) {
    case TextAnchor::Start: return "start";
    case TextAnchor::End: return "end";
    case TextAnchor::Middle: break;
  }
  return "middle";
}

TextAnchor anchor_from(std::string_view name) {
  if (name == "start") return TextAnchor::Start;
  if (name == "end") return TextAnchor::End;
  if (name == "middle") return TextAnchor::Middle;
  throw Error("scene JSON: unknown text anchor '" + std::string(name) + "'");
}

json glyph_to_json(const Glyph& g) {
  json j = json::object();
  j["kind"] = to_string(g.kind);
  j["x"] = g.x;
  j["y"] = g.y;
  j["size"] = g.size;
  if (g.width != 0 || g.height != 0) {
    j["w"] = g.width;
    j["h"] = g.height;
  }
  j["fill"] = g.fill.hex();
  j["opacity"] = g.fill.a;
  json payload = json::object();
  payload["row"] = g.payload.row;
  payload["position"] = g.payload.position;
  payload["record"] = g.payload.record ? json(*g.payload.record) : json(nullptr);
  j["payload"] = std::move(payload);
  if (!g.text.empty()) {
    j["text"] = g.text;
    j["anchor"] = anchor_name(g.anchor);
  }
  return j;
}

Glyph glyph_from_json(const json& j) {
  Glyph g;
  g.kind = glyph_kind_from_string(j.at("kind").get<std::string>());
  g.x = j.at("x").get<double>();
  g.y = j.at("y").get<double>();
  g.size = j.at("size").get<double>();
  g.width = j.value("w", 0.0);
  g.height = j.value("h", 0.0);
  g.fill = Rgba::from_hex(j.at("fill").get<std::string>(), j.at("opacity").get<double>());
  const json& payload = j.at("payload");
  g.payload.row = payload.at("row").get<std::string>();
  g.payload.position = payload.at("position").get<std::int64_t>();
  if (!payload.at("record").is_null()) g.payload.record = payload.at("record").get<std::size_t>();
  if (j.contains("text")) {
    g.text = j.at("text").get<std::string>();
    g.anchor = anchor_from(j.at("anchor").get<std::string>());
  }
  return g;
}

json scene_to_json(const Scene& s) {
  json j = json::object();
  j["view"] = s.view;
  j["width"] = s.width;
  j["height"] = s.height;
  j["coordinate_map"] = {{"window_start", s.coordinate_map.window_start},
                         {"window_end", s.coordinate_map.window_end},
                         {"x_left", s.coordinate_map.x_left},
                         {"x_right", s.coordinate_map.x_right}};
  j["axis"] = {{"x0", s.axis.x0}, {"x1", s.axis.x1}, {"y", s.axis.y}};
  j["rows"] = s.rows;
  json counts = json::object();
  for (auto kind : {GlyphKind::Circle, GlyphKind::Cross, GlyphKind::Bar, GlyphKind::AxisTick, GlyphKind::Label,
                    GlyphKind::WindowOverlay})
    counts[std::string(to_string(kind))] = s.count(kind);
  j["glyph_counts"] = std::move(counts);
  json glyphs = json::array();
  for (const auto& g : s.glyphs) glyphs.push_back(glyph_to_json(g));
  j["glyphs"] = std::move(glyphs);
  return j;
}

Scene scene_from_json(const json& j) {
  Scene s;
  s.view = j.at("view").get<std::string>();
  s.width = j.at("width").get<double>();
  s.height = j.at("height").get<double>();
  const json& map = j.at("coordinate_map");
  s.coordinate_map = {map.at("window_start").get<std::int64_t>(), map.at("window_end").get<std::int64_t>(),
                      map.at("x_left").get<double>(), map.at("x_right").get<double>()};
  const json& axis = j.at("axis");
  s.axis = {axis.at("x0").get<double>(), axis.at("x1").get<double>(), axis.at("y").get<double>()};
  s.rows = j.at("rows").get<std::vector<std::string>>();
  for (const auto& g : j.at("glyphs")) s.glyphs.push_back(glyph_from_json(g));
  return s;
}

json palette_categories(const Palette& p) {
  json out = json::array();
  for (const auto& [name, color] : p.categories) out.push_back({{"name", name}, {"color", color.hex()}});
  return out;
}

void read_categories(const json& j, Palette& p) {
  for (const auto& item : j)
    p.categories.emplace_back(item.at("name").get<std::string>(),
                              Rgba::from_hex(item.at("color").get<std::string>(), p.opacity));
}

}  // namespace

std::string emit_scene_json(const SceneDocument& doc) {
  const Palette& p = doc.classification_palette;
  json j = json::object();
  j["version"] = doc.version;
  j["accession"] = doc.accession;
  j["L"] = doc.length;
  j["window"] = {{"start", doc.window.start}, {"end", doc.window.end}};
  j["palette"] = {{"opacity", p.opacity},
                  {"mutation_mark", p.mutation_mark.hex()},
                  {"hotspot", {{"none", p.hotspot_none.hex()}, {"low", p.hotspot_low.hex()}, {"high", p.hotspot_high.hex()}}},
                  {"classification", palette_categories(doc.classification_palette)},
                  {"types", palette_categories(doc.type_palette)}};
  j["views"] = {{"distribution", scene_to_json(doc.distribution)},
                {"classification", scene_to_json(doc.classification)},
                {"types", scene_to_json(doc.types)}};
  j["context"] = scene_to_json(doc.context);
  j["orders"] = {{"classification", doc.classification_order}, {"types", doc.type_order}};
  return j.dump(1) + "\n";
}

SceneDocument parse_scene_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("scene JSON is not valid JSON: ") + e.what());
  }
  try {
    SceneDocument doc;
    doc.version = j.at("version").get<int>();
    if (doc.version != kSceneSchemaVersion)
      throw Error("scene JSON version " + std::to_string(doc.version) + " is not supported (expected " +
                  std::to_string(kSceneSchemaVersion) + ")");
    doc.accession = j.at("accession").get<std::string>();
    doc.length = j.at("L").get<std::int64_t>();
    doc.window = {j.at("window").at("start").get<std::int64_t>(), j.at("window").at("end").get<std::int64_t>()};

    const json& pj = j.at("palette");
    Palette base;
    base.opacity = pj.at("opacity").get<double>();
    base.mutation_mark = Rgba::from_hex(pj.at("mutation_mark").get<std::string>());
    base.hotspot_none = Rgba::from_hex(pj.at("hotspot").at("none").get<std::string>());
    base.hotspot_low = Rgba::from_hex(pj.at("hotspot").at("low").get<std::string>());
    base.hotspot_high = Rgba::from_hex(pj.at("hotspot").at("high").get<std::string>());
    doc.classification_palette = base;
    doc.type_palette = base;
    read_categories(pj.at("classification"), doc.classification_palette);
    read_categories(pj.at("types"), doc.type_palette);

    const json& views = j.at("views");
    doc.distribution = scene_from_json(views.at("distribution"));
    doc.classification = scene_from_json(views.at("classification"));
    doc.types = scene_from_json(views.at("types"));
    doc.context = scene_from_json(j.at("context"));
    doc.classification_order = j.at("orders").at("classification").get<std::vector<std::string>>();
    doc.type_order = j.at("orders").at("types").get<std::vector<std::string>>();
    return doc;
  } catch (const json::exception& e) {
    throw Error(std::string("scene JSON is malformed: ") + e.what());
  }
}

}  // namespace modie
