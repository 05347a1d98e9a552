#include "modie/render.hpp"

#include <json.hpp>

namespace modie {

StructureColoring emit_structure_coloring(const StructureModel& model, char chain, const std::vector<HotspotBin>& bins,
                                          const Palette& palette, std::string accession) {
  const StructureChain* found = model.find_chain(chain);
  if (!found)
    throw ColoringError(ColoringErrorCode::ChainNotFound,
                        "chain '" + std::string(1, chain) + "' not present in " + model.source_id);
  StructureColoring coloring;
  coloring.accession = std::move(accession);
  coloring.source_id = model.source_id;
  coloring.offset = model.offset_for_chain(chain);
  const auto length = static_cast<std::int64_t>(bins.size());
  for (const auto& residue : found->residues) {
    ColoringEntry entry;
    entry.chain = chain;
    entry.author_number = residue.author_number;
    const std::int64_t position = residue.author_number - coloring.offset;
    if (position >= 1 && position <= length) {
      entry.position = position;
      entry.bin = bins[static_cast<std::size_t>(position - 1)];
    } else {
      entry.unmatched = true;
      entry.bin = HotspotBin::None;
    }
    entry.hex_color = palette.hotspot(entry.bin).hex();
    coloring.entries.push_back(std::move(entry));
  }
  return coloring;
}

std::string coloring_to_json(const StructureColoring& coloring) {
  nlohmann::json j = nlohmann::json::object();
  j["accession"] = coloring.accession;
  j["source_id"] = coloring.source_id;
  j["offset"] = coloring.offset;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : coloring.entries) {
    nlohmann::json item = {{"chain", std::string(1, e.chain)},
                           {"resi", e.author_number},
                           {"color", e.hex_color},
                           {"bin", to_string(e.bin)}};
    if (e.unmatched)
      item["unmatched"] = true;
    else
      item["position"] = e.position;
    entries.push_back(std::move(item));
  }
  j["entries"] = std::move(entries);
  return j.dump(1) + "\n";
}

std::string coloring_viewer_script(const StructureColoring& coloring) {
  // one selection per run of consecutive residues sharing a colour
  std::string out = "// " + coloring.accession + " on " + coloring.source_id + "\n";
  std::size_t i = 0;
  while (i < coloring.entries.size()) {
    const auto& first = coloring.entries[i];
    std::size_t j = i + 1;
    while (j < coloring.entries.size() && coloring.entries[j].hex_color == first.hex_color &&
           coloring.entries[j].author_number == coloring.entries[j - 1].author_number + 1)
      ++j;
    const auto& last = coloring.entries[j - 1];
    out += "viewer.setStyle({chain: '" + std::string(1, first.chain) + "', resi: '" +
             std::to_string(first.author_number) + "-" + std::to_string(last.author_number) +
             "'}, {cartoon: {color: '" + first.hex_color + "'}});\n";
    i = j;
  }
  out += "viewer.render();\n";
  return out;
}

}  // namespace modie
