#include "modie/layout.hpp"

#include <charconv>

namespace modie {

std::string Rgba::hex() const {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out = "#";
  for (std::uint8_t channel : {r, g, b}) {
    out.push_back(kHex[channel >> 4]);
    out.push_back(kHex[channel & 0xF]);
  }
  return out;
}

Rgba Rgba::from_hex(std::string_view text, double alpha) {
  std::string_view digits = text.starts_with('#') ? text.substr(1) : text;
  if (digits.size() != 6) throw Error("invalid colour '" + std::string(text) + "'");
  Rgba color;
  std::uint8_t* channels[] = {&color.r, &color.g, &color.b};
  for (int i = 0; i < 3; ++i) {
    unsigned value = 0;
    auto sub = digits.substr(static_cast<std::size_t>(i) * 2, 2);
    auto [end, ec] = std::from_chars(sub.data(), sub.data() + 2, value, 16);
    if (ec != std::errc{} || end != sub.data() + 2) throw Error("invalid colour '" + std::string(text) + "'");
    *channels[i] = static_cast<std::uint8_t>(value);
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("colour opacity must lie in (0, 1]");
  color.a = alpha;
  return color;
}

const std::vector<Rgba>& default_color_cycle() {
  static const std::vector<Rgba> cycle = [] {
    std::vector<Rgba> out;
    for (auto hex : {"#4E79A7", "#F28E2B", "#E15759", "#76B7B2", "#59A14F", "#EDC948", "#B07AA1", "#FF9DA7",
                     "#9C755F", "#BAB0AC"})
      out.push_back(Rgba::from_hex(hex));
    return out;
  }();
  return cycle;
}

Palette assign_palette(const std::vector<std::string>& categories, const PaletteConfig& config) {
  if (!(config.opacity > 0.0 && config.opacity <= 1.0)) throw Error("palette opacity must lie in (0, 1]");
  const auto& cycle = config.cycle.empty() ? default_color_cycle() : config.cycle;

  Palette palette;
  palette.opacity = config.opacity;
  palette.mutation_mark = config.mutation_mark;
  palette.mutation_mark.a = 1.0;
  palette.hotspot_none = config.hotspot_none;
  palette.hotspot_low = config.hotspot_low;
  palette.hotspot_high = config.hotspot_high;

  std::size_t cycled = 0;
  for (const auto& category : categories) {
    for (const auto& [name, _] : palette.categories)
      if (name == category) throw Error("palette: duplicate category '" + category + "'");
    Rgba color;
    if (auto it = config.overrides.find(category); it != config.overrides.end()) {
      color = it->second;
    } else {
      color = cycle[cycled % cycle.size()];
      ++cycled;
    }
    color.a = config.opacity;
    palette.categories.emplace_back(category, color);
  }
  if (cycled > cycle.size())
    palette.warnings.push_back("TooManyCategories: " + std::to_string(cycled) + " categories share a " +
                               std::to_string(cycle.size()) + "-colour cycle; colours repeat");
  return palette;
}

const Rgba& Palette::color_for(std::string_view category) const {
  for (const auto& [name, color] : categories)
    if (name == category) return color;
  throw Error("palette has no colour for '" + std::string(category) + "'");
}

const Rgba& Palette::hotspot(HotspotBin bin) const noexcept {
  switch (bin) {
    case HotspotBin::Low: return hotspot_low;
    case HotspotBin::High: return hotspot_high;
    case HotspotBin::None: break;
  }
  return hotspot_none;
}

}  // namespace modie
