#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modie/analytics.hpp"
#include "modie/error.hpp"
#include "modie/model.hpp"

namespace modie {

struct Rgba {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  double a = 1.0;

  /// "#RRGGBB", alpha excluded.
  std::string hex() const;
  /// Parse "#RRGGBB" (or "RRGGBB"); throws Error on anything else.
  static Rgba from_hex(std::string_view text, double alpha = 1.0);

  friend bool operator==(const Rgba&, const Rgba&) = default;
};

struct PaletteConfig {
  std::vector<Rgba> cycle;                                ///< empty selects the built-in ten-colour cycle
  std::map<std::string, Rgba, std::less<>> overrides;     ///< per-category colours
  double opacity = 0.6;
  Rgba mutation_mark{0, 0, 0, 1.0};
  Rgba hotspot_none{0xFF, 0xFF, 0xFF, 1.0};
  Rgba hotspot_low{0x8F, 0xBC, 0xE6, 1.0};
  Rgba hotspot_high{0xE8, 0x8E, 0x8E, 1.0};
};

struct Palette {
  std::vector<std::pair<std::string, Rgba>> categories;  ///< fills carry the circle opacity
  double opacity = 0.6;
  Rgba mutation_mark{0, 0, 0, 1.0};
  Rgba hotspot_none;
  Rgba hotspot_low;
  Rgba hotspot_high;
  std::vector<std::string> warnings;

  /// Throws Error for a category that was not assigned.
  const Rgba& color_for(std::string_view category) const;
  const Rgba& hotspot(HotspotBin bin) const noexcept;
};

const std::vector<Rgba>& default_color_cycle();

/// Deterministic category colours. Exceeding the cycle length is not fatal:
/// colours repeat and a TooManyCategories warning is recorded.
Palette assign_palette(const std::vector<std::string>& categories, const PaletteConfig& config = {});

struct LayoutConfig {
  double diameter = 6;
  double gap = 1;
  double band_height = 14;
  double width = 1200;
  double margin_left = 140;
  double margin_right = 20;
  double margin_top = 20;
  double margin_bottom = 40;
  double context_height = 60;
  double font_size = 10;
  /// Cells with more circles collapse into one circle plus a count label.
  std::optional<std::size_t> max_stack;
};

enum class GlyphKind { Circle, Cross, Bar, AxisTick, Label, WindowOverlay };

std::string_view to_string(GlyphKind kind);
GlyphKind glyph_kind_from_string(std::string_view name);

enum class TextAnchor { Start, Middle, End };

/// Source reference of a glyph.
struct Payload {
  std::string row;                    ///< row label, or the classification in the distribution view
  std::int64_t position = 0;          ///< sequence position, 0 when not tied to one
  std::optional<std::size_t> record;  ///< index into the records the scene was built from

  friend bool operator==(const Payload&, const Payload&) = default;
};

/// One drawable mark. Circles, crosses, ticks and labels are placed at their
/// centre (x, y); bars and window overlays use (x, y) as the top-left corner
/// with `width` by `height` extent.
struct Glyph {
  GlyphKind kind = GlyphKind::Circle;
  double x = 0;
  double y = 0;
  double size = 0;
  double width = 0;
  double height = 0;
  Rgba fill;
  Payload payload;
  std::string text;
  TextAnchor anchor = TextAnchor::Middle;

  friend bool operator==(const Glyph&, const Glyph&) = default;
};

/// Affine position-to-x mapping of a window onto [x_left, x_right].
struct CoordinateMap {
  std::int64_t window_start = 1;
  std::int64_t window_end = 1;
  double x_left = 0;
  double x_right = 0;

  double operator()(double position) const noexcept;
  friend bool operator==(const CoordinateMap&, const CoordinateMap&) = default;
};

struct Axis {
  double x0 = 0;
  double x1 = 0;
  double y = 0;

  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Resolution-independent drawing shared by the SVG emitter and the web UI.
struct Scene {
  std::string view;
  double width = 0;
  double height = 0;
  CoordinateMap coordinate_map;
  Axis axis;
  std::vector<std::string> rows;  ///< band labels top to bottom, empty for non-band views
  std::vector<Glyph> glyphs;

  std::size_t count(GlyphKind kind) const noexcept;
  friend bool operator==(const Scene&, const Scene&) = default;
};

enum class LayoutErrorCode { BadPermutation, WindowOutOfRange, UnknownRow };

using LayoutError = CodedError<LayoutErrorCode>;

/// end <- min(end, L); start <- min(start, end).
Window clamp_window(Window window, std::int64_t length) noexcept;

/// One band per matrix row in `order`; circles of a cell are stacked
/// horizontally around x(position) in record input order. Mutation records
/// add a black cross at x(position) in their band.
Scene layout_classification_view(const OccupancyMatrix& matrix, const std::vector<std::size_t>& order,
                                 const std::vector<ModificationRecord>& records, Window window,
                                 const Palette& palette, const LayoutConfig& config = {});

/// Same encoding as the classification view with modification types as rows.
Scene layout_type_view(const OccupancyMatrix& matrix, const std::vector<std::size_t>& order,
                       const std::vector<ModificationRecord>& records, Window window, const Palette& palette,
                       const LayoutConfig& config = {});

/// Vertical stacks at each position, one circle per record coloured by its
/// classification.
Scene layout_distribution_view(const std::vector<ModificationRecord>& records, const ResidueStats& stats,
                               Window window, const Palette& palette, const LayoutConfig& config = {});

/// Full-sequence strip of per-position bars plus the focus window overlay.
Scene layout_context_bar(const Eigen::VectorX<std::int64_t>& counts, Window window, const LayoutConfig& config = {});

}  // namespace modie
