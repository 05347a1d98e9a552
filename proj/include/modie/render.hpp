#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modie/error.hpp"
#include "modie/ingest.hpp"
#include "modie/layout.hpp"

namespace modie {

/// Fixed two-decimal formatting used for every SVG number ("-0.00" folds to "0.00").
std::string format_number(double value);

/// Deterministic SVG 1.1; glyphs are written in list order after the axes group.
std::string emit_svg(const Scene& scene);

inline constexpr int kSceneSchemaVersion = 1;

/// Everything the web UI needs for one accession.
struct SceneDocument {
  int version = kSceneSchemaVersion;
  std::string accession;
  std::int64_t length = 0;
  Window window;
  Palette classification_palette;
  Palette type_palette;
  Scene distribution;
  Scene classification;
  Scene types;
  Scene context;
  std::vector<std::string> classification_order;
  std::vector<std::string> type_order;
};

std::string emit_scene_json(const SceneDocument& document);

/// Inverse of emit_scene_json; throws Error on a schema-version mismatch or
/// a structurally invalid document.
SceneDocument parse_scene_json(std::string_view text);

struct ColoringEntry {
  char chain = 'A';
  std::int64_t author_number = 0;
  std::int64_t position = 0;  ///< sequence position, 0 when unmatched
  std::string hex_color;
  HotspotBin bin = HotspotBin::None;
  bool unmatched = false;
};

struct StructureColoring {
  std::string accession;
  std::string source_id;
  std::int64_t offset = 0;
  std::vector<ColoringEntry> entries;
};

enum class ColoringErrorCode { ChainNotFound };

using ColoringError = CodedError<ColoringErrorCode>;

/// Colour every residue of `chain` by the hot-spot bin of its sequence
/// position (author number minus the chain's accession offset). Residues
/// that map outside the bins are white and flagged unmatched.
StructureColoring emit_structure_coloring(const StructureModel& model, char chain, const std::vector<HotspotBin>& bins,
                                          const Palette& palette, std::string accession);

std::string coloring_to_json(const StructureColoring& coloring);

/// 3Dmol.js statements colouring a loaded model `viewer`'s residues.
std::string coloring_viewer_script(const StructureColoring& coloring);

}  // namespace modie
