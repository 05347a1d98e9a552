#include "modie/layout.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace modie {

namespace {

const Rgba kAxisColor{0x33, 0x33, 0x33, 1.0};
const Rgba kBarColor{0x9E, 0x9E, 0x9E, 1.0};
const Rgba kOverlayColor{0x46, 0x82, 0xB4, 0.25};

Window checked_window(Window window, std::int64_t length) {
  if (window.start < 1 || window.start > length || window.end < window.start)
    throw LayoutError(LayoutErrorCode::WindowOutOfRange,
                      "window " + std::to_string(window.start) + ":" + std::to_string(window.end) +
                          " is not valid for length " + std::to_string(length));
  return clamp_window(window, length);
}

CoordinateMap make_map(Window window, const LayoutConfig& config) {
  return {window.start, window.end, config.margin_left, config.width - config.margin_right};
}

bool in_window(std::int64_t position, Window window) {
  return position >= window.start && position <= window.end;
}

// 1, 2 or 5 times a power of ten, giving at most ~10 ticks.
std::int64_t tick_step(std::int64_t span) {
  std::int64_t step = 1;
  for (;;) {
    for (std::int64_t m : {1, 2, 5})
      if (span / (step * m) <= 10) return step * m;
    step *= 10;
  }
}

void add_axis(Scene& scene, const LayoutConfig& config) {
  const auto& map = scene.coordinate_map;
  scene.axis = {map.x_left, map.x_right, scene.height - config.margin_bottom};
  const std::int64_t step = tick_step(map.window_end - map.window_start);
  std::vector<std::int64_t> ticks;
  for (std::int64_t p = ((map.window_start + step - 1) / step) * step; p <= map.window_end; p += step)
    ticks.push_back(p);
  if (ticks.empty() || ticks.front() != map.window_start) ticks.insert(ticks.begin(), map.window_start);
  for (std::int64_t p : ticks) {
    Glyph tick;
    tick.kind = GlyphKind::AxisTick;
    tick.x = map(static_cast<double>(p));
    tick.y = scene.axis.y;
    tick.size = 4;
    tick.fill = kAxisColor;
    tick.payload.position = p;
    scene.glyphs.push_back(tick);

    Glyph label;
    label.kind = GlyphKind::Label;
    label.x = tick.x;
    label.y = scene.axis.y + 6 + config.font_size;
    label.size = config.font_size;
    label.fill = kAxisColor;
    label.payload.position = p;
    label.text = std::to_string(p);
    label.anchor = TextAnchor::Middle;
    scene.glyphs.push_back(label);
  }
}

// Offsets of k horizontally stacked circles, shifted (and, if wider than the
// canvas, compressed) so every centre stays inside [0, width].
std::vector<double> horizontal_stack(double center, std::size_t k, const LayoutConfig& config) {
  double pitch = config.diameter + config.gap;
  const double radius = config.diameter / 2;
  if (k > 1 && (static_cast<double>(k - 1) * pitch + config.diameter) > config.width)
    pitch = (config.width - config.diameter) / static_cast<double>(k - 1);
  const double half = static_cast<double>(k - 1) / 2 * pitch;
  center = std::clamp(center, half + radius, config.width - half - radius);
  std::vector<double> xs(k);
  for (std::size_t i = 0; i < k; ++i) xs[i] = center + (static_cast<double>(i) - static_cast<double>(k - 1) / 2) * pitch;
  return xs;
}

Glyph circle(double x, double y, const Rgba& fill, std::string row, std::int64_t position, std::size_t record,
             const LayoutConfig& config) {
  Glyph g;
  g.kind = GlyphKind::Circle;
  g.x = x;
  g.y = y;
  g.size = config.diameter;
  g.fill = fill;
  g.payload = {std::move(row), position, record};
  return g;
}

Glyph cross(double x, double y, const Palette& palette, std::string row, std::int64_t position, std::size_t record,
            const LayoutConfig& config) {
  Glyph g;
  g.kind = GlyphKind::Cross;
  g.x = x;
  g.y = y;
  g.size = config.diameter;
  g.fill = palette.mutation_mark;
  g.payload = {std::move(row), position, record};
  return g;
}

Glyph count_label(double x, double y, std::size_t k, std::string row, std::int64_t position,
                  const LayoutConfig& config) {
  Glyph g;
  g.kind = GlyphKind::Label;
  g.x = x + config.diameter;
  g.y = y + config.font_size / 3;
  g.size = config.font_size;
  g.fill = kAxisColor;
  g.payload = {std::move(row), position, std::nullopt};
  g.text = "×" + std::to_string(k);
  g.anchor = TextAnchor::Start;
  return g;
}

Scene layout_bands(std::string view, RowKey key, const OccupancyMatrix& matrix, const std::vector<std::size_t>& order,
                   const std::vector<ModificationRecord>& records, Window window, const Palette& palette,
                   const LayoutConfig& config) {
  const auto n = static_cast<std::size_t>(matrix.rows());
  {
    std::vector<bool> seen(n, false);
    bool ok = order.size() == n;
    for (std::size_t i : order) {
      if (!ok) break;
      ok = i < n && !seen[i];
      if (ok) seen[i] = true;
    }
    if (!ok) throw LayoutError(LayoutErrorCode::BadPermutation, view + ": order is not a permutation of the rows");
  }
  window = checked_window(window, matrix.length());

  Scene scene;
  scene.view = std::move(view);
  scene.width = config.width;
  scene.height = static_cast<double>(n) * config.band_height + config.margin_top + config.margin_bottom;
  scene.coordinate_map = make_map(window, config);

  // band -> position -> record indices, in record order
  std::vector<std::size_t> band_of(n);
  for (std::size_t b = 0; b < n; ++b) band_of[order[b]] = b;
  std::vector<std::map<std::int64_t, std::vector<std::size_t>>> cells(n);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto row = matrix.row_index(row_label(r, key));
    if (!row)
      throw LayoutError(LayoutErrorCode::UnknownRow, scene.view + ": record " + std::to_string(i) + " has label '" +
                                                         row_label(r, key) + "' which is not a matrix row");
    if (r.position < 1 || r.position > matrix.length()) throw PositionOutOfRange(r.position, matrix.length());
    if (in_window(r.position, window)) cells[band_of[static_cast<std::size_t>(*row)]][r.position].push_back(i);
  }

  for (std::size_t b = 0; b < n; ++b) {
    const std::string& label = matrix.row_labels()[order[b]];
    scene.rows.push_back(label);
    const double y = config.margin_top + (static_cast<double>(b) + 0.5) * config.band_height;

    Glyph name;
    name.kind = GlyphKind::Label;
    name.x = config.margin_left - 8;
    name.y = y + config.font_size / 3;
    name.size = config.font_size;
    name.fill = kAxisColor;
    name.payload.row = label;
    name.text = label;
    name.anchor = TextAnchor::End;
    scene.glyphs.push_back(name);

    for (const auto& [position, members] : cells[b]) {
      const double x = scene.coordinate_map(static_cast<double>(position));
      if (config.max_stack && members.size() > *config.max_stack) {
        const auto& first = records[members.front()];
        scene.glyphs.push_back(circle(x, y, palette.color_for(key == RowKey::Classification ? first.classification
                                                                                            : first.mod_type),
                                      label, position, members.front(), config));
        scene.glyphs.push_back(count_label(x, y, members.size(), label, position, config));
      } else {
        const auto xs = horizontal_stack(x, members.size(), config);
        for (std::size_t i = 0; i < members.size(); ++i) {
          const auto& r = records[members[i]];
          scene.glyphs.push_back(circle(xs[i], y, palette.color_for(row_label(r, key)), label, position,
                                        members[i], config));
        }
      }
      for (std::size_t idx : members)
        if (records[idx].is_mutation) scene.glyphs.push_back(cross(x, y, palette, label, position, idx, config));
    }
  }
  add_axis(scene, config);
  return scene;
}

}  // namespace

std::string_view to_string(GlyphKind kind) {
  switch (kind) {
    case GlyphKind::Circle: return "circle";
    case GlyphKind::Cross: return "cross";
    case GlyphKind::Bar: return "bar";
    case GlyphKind::AxisTick: return "axis-tick";
    case GlyphKind::Label: return "label";
    case GlyphKind::WindowOverlay: return "window-overlay";
  }
  return "circle";
}

GlyphKind glyph_kind_from_string(std::string_view name) {
  for (auto kind : {GlyphKind::Circle, GlyphKind::Cross, GlyphKind::Bar, GlyphKind::AxisTick, GlyphKind::Label,
                    GlyphKind::WindowOverlay})
    if (to_string(kind) == name) return kind;
  throw Error("unknown glyph kind '" + std::string(name) + "'");
}

double CoordinateMap::operator()(double position) const noexcept {
  if (window_end == window_start) return (x_left + x_right) / 2;
  return x_left + (position - static_cast<double>(window_start)) * (x_right - x_left) /
                      static_cast<double>(window_end - window_start);
}

std::size_t Scene::count(GlyphKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(glyphs.begin(), glyphs.end(), [kind](const Glyph& g) { return g.kind == kind; }));
}

Window clamp_window(Window window, std::int64_t length) noexcept {
  window.end = std::min(window.end, length);
  window.start = std::min(window.start, window.end);
  return window;
}

Scene layout_classification_view(const OccupancyMatrix& matrix, const std::vector<std::size_t>& order,
                                 const std::vector<ModificationRecord>& records, Window window,
                                 const Palette& palette, const LayoutConfig& config) {
  return layout_bands("classification", RowKey::Classification, matrix, order, records, window, palette, config);
}

Scene layout_type_view(const OccupancyMatrix& matrix, const std::vector<std::size_t>& order,
                       const std::vector<ModificationRecord>& records, Window window, const Palette& palette,
                       const LayoutConfig& config) {
  return layout_bands("types", RowKey::ModType, matrix, order, records, window, palette, config);
}

Scene layout_distribution_view(const std::vector<ModificationRecord>& records, const ResidueStats& stats,
                               Window window, const Palette& palette, const LayoutConfig& config) {
  window = checked_window(window, stats.length());
  std::map<std::int64_t, std::vector<std::size_t>> stacks;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.position < 1 || r.position > stats.length()) throw PositionOutOfRange(r.position, stats.length());
    if (in_window(r.position, window)) stacks[r.position].push_back(i);
  }

  std::size_t tallest = 1;
  for (const auto& [_, members] : stacks) {
    std::size_t drawn = members.size();
    if (config.max_stack && drawn > *config.max_stack) drawn = 1;
    tallest = std::max(tallest, drawn);
  }
  const double pitch = config.diameter + config.gap;

  Scene scene;
  scene.view = "distribution";
  scene.width = config.width;
  scene.height = static_cast<double>(tallest) * pitch + config.margin_top + config.margin_bottom;
  scene.coordinate_map = make_map(window, config);
  const double baseline = scene.height - config.margin_bottom;

  for (const auto& [position, members] : stacks) {
    const double x = scene.coordinate_map(static_cast<double>(position));
    const double y0 = baseline - config.diameter / 2;
    if (config.max_stack && members.size() > *config.max_stack) {
      const auto& first = records[members.front()];
      scene.glyphs.push_back(circle(x, y0, palette.color_for(first.classification), first.classification, position,
                                    members.front(), config));
      scene.glyphs.push_back(count_label(x, y0, members.size(), first.classification, position, config));
      for (std::size_t idx : members)
        if (records[idx].is_mutation)
          scene.glyphs.push_back(cross(x, y0, palette, records[idx].classification, position, idx, config));
      continue;
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto& r = records[members[i]];
      const double y = y0 - static_cast<double>(i) * pitch;
      scene.glyphs.push_back(circle(x, y, palette.color_for(r.classification), r.classification, position,
                                    members[i], config));
      if (r.is_mutation) scene.glyphs.push_back(cross(x, y, palette, r.classification, position, members[i], config));
    }
  }
  add_axis(scene, config);
  return scene;
}

Scene layout_context_bar(const Eigen::VectorX<std::int64_t>& counts, Window window, const LayoutConfig& config) {
  const auto length = static_cast<std::int64_t>(counts.size());
  Scene scene;
  scene.view = "context";
  scene.width = config.width;
  scene.height = config.context_height;
  scene.coordinate_map = make_map({1, std::max<std::int64_t>(length, 1)}, config);
  const double top = 6;
  const double baseline = scene.height - 14;
  scene.axis = {scene.coordinate_map.x_left, scene.coordinate_map.x_right, baseline};
  if (length == 0) return scene;

  const double slot = (scene.coordinate_map.x_right - scene.coordinate_map.x_left) / static_cast<double>(length);
  const double bar_width = std::max(slot * 0.8, 0.1);
  const double peak = static_cast<double>(std::max<std::int64_t>(counts.maxCoeff(), 1));
  for (std::int64_t p = 1; p <= length; ++p) {
    Glyph bar;
    bar.kind = GlyphKind::Bar;
    bar.height = static_cast<double>(counts(p - 1)) / peak * (baseline - top);
    bar.width = bar_width;
    bar.x = std::clamp(scene.coordinate_map(static_cast<double>(p)) - bar_width / 2, 0.0, config.width - bar_width);
    bar.y = baseline - bar.height;
    bar.size = bar_width;
    bar.fill = kBarColor;
    bar.payload.position = p;
    scene.glyphs.push_back(bar);
  }

  window = clamp_window(window, length);
  window.start = std::max<std::int64_t>(window.start, 1);
  window.end = std::max(window.end, window.start);
  Glyph overlay;
  overlay.kind = GlyphKind::WindowOverlay;
  overlay.x = scene.coordinate_map(static_cast<double>(window.start));
  overlay.width = scene.coordinate_map(static_cast<double>(window.end)) - overlay.x;
  overlay.y = top - 4;
  overlay.height = baseline - overlay.y;
  overlay.size = overlay.width;
  overlay.fill = kOverlayColor;
  overlay.payload.position = window.start;
  scene.glyphs.push_back(overlay);
  return scene;
}

}  // namespace modie
