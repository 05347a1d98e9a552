#include "modie/render.hpp"

#include <charconv>

namespace modie {

namespace {

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string_view anchor_name(TextAnchor anchor) {
  switch (anchor) {
    case TextAnchor::Start: return "start";
    case TextAnchor::End: return "end";
    case TextAnchor::Middle: break;
  }
  return "middle";
}

class Writer {
 public:
  Writer& raw(std::string_view s) {
    out_ += s;
    return *this;
  }
  Writer& num(std::string_view name, double v) {
    out_ += ' ';
    out_ += name;
    out_ += "=\"";
    out_ += format_number(v);
    out_ += '"';
    return *this;
  }
  Writer& attr(std::string_view name, std::string_view v) {
    out_ += ' ';
    out_ += name;
    out_ += "=\"";
    out_ += escape_xml(v);
    out_ += '"';
    return *this;
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

void write_glyph(Writer& w, const Glyph& g) {
  switch (g.kind) {
    case GlyphKind::Circle:
      w.raw("  <circle").num("cx", g.x).num("cy", g.y).num("r", g.size / 2).attr("fill", g.fill.hex());
      w.num("fill-opacity", g.fill.a).raw("/>\n");
      break;
    case GlyphKind::Cross: {
      const double h = g.size / 2;
      const std::string d = "M" + format_number(g.x - h) + " " + format_number(g.y - h) + " L" +
                            format_number(g.x + h) + " " + format_number(g.y + h) + " M" + format_number(g.x - h) +
                            " " + format_number(g.y + h) + " L" + format_number(g.x + h) + " " + format_number(g.y - h);
      w.raw("  <path class=\"cross\"").attr("d", d).attr("stroke", g.fill.hex()).num("stroke-width", 1.5);
      w.raw(" fill=\"none\"/>\n");
      break;
    }
    case GlyphKind::Bar:
      w.raw("  <rect class=\"bar\"").num("x", g.x).num("y", g.y).num("width", g.width).num("height", g.height);
      w.attr("fill", g.fill.hex()).raw("/>\n");
      break;
    case GlyphKind::WindowOverlay:
      w.raw("  <rect class=\"window\"").num("x", g.x).num("y", g.y).num("width", g.width).num("height", g.height);
      w.attr("fill", g.fill.hex()).num("fill-opacity", g.fill.a).attr("stroke", g.fill.hex()).raw("/>\n");
      break;
    case GlyphKind::AxisTick:
      w.raw("  <line class=\"tick\"").num("x1", g.x).num("y1", g.y).num("x2", g.x).num("y2", g.y + g.size);
      w.attr("stroke", g.fill.hex()).raw("/>\n");
      break;
    case GlyphKind::Label:
      w.raw("  <text").num("x", g.x).num("y", g.y).num("font-size", g.size).attr("text-anchor", anchor_name(g.anchor));
      w.attr("fill", g.fill.hex()).raw(">").raw(escape_xml(g.text)).raw("</text>\n");
      break;
  }
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::fixed, 2);
  if (ec != std::errc{}) return "0.00";
  std::string out(buffer, end);
  if (out == "-0.00") out = "0.00";
  return out;
}

std::string emit_svg(const Scene& scene) {
  Writer w;
  w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
  w.raw("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"");
  w.num("width", scene.width).num("height", scene.height);
  w.attr("viewBox", "0 0 " + format_number(scene.width) + " " + format_number(scene.height));
  if (!scene.view.empty()) w.attr("data-view", scene.view);
  w.raw(">\n");
  w.raw("<g class=\"axes\" stroke=\"#333333\">\n");
  if (scene.axis.x1 > scene.axis.x0)
    w.raw("  <line").num("x1", scene.axis.x0).num("y1", scene.axis.y).num("x2", scene.axis.x1).num("y2", scene.axis.y)
        .raw("/>\n");
  w.raw("</g>\n");
  if (!scene.glyphs.empty()) {
    w.raw("<g class=\"glyphs\">\n");
    for (const auto& g : scene.glyphs) write_glyph(w, g);
    w.raw("</g>\n");
  }
  w.raw("</svg>\n");
  return w.take();
}

}  // namespace modie
