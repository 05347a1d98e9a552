#include "modie/ingest.hpp"

#include <set>

#include <json.hpp>

namespace modie {

Manifest parse_manifest(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ManifestError(ManifestErrorCode::Malformed, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ManifestError(ManifestErrorCode::Malformed, "manifest must be a JSON array");

  Manifest manifest;
  std::set<std::string> seen;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("accession") || !item["accession"].is_string() ||
        !item.contains("structure_ids") || !item["structure_ids"].is_array())
      throw ManifestError(ManifestErrorCode::Malformed,
                          "manifest entries need a string 'accession' and an array 'structure_ids'");
    ManifestEntry entry;
    entry.accession = trim(item["accession"].get<std::string>());
    if (!seen.insert(entry.accession).second)
      throw ManifestError(ManifestErrorCode::DuplicateAccession, "duplicate accession '" + entry.accession + "'");
    for (const auto& id : item["structure_ids"]) {
      if (!id.is_string() || trim(id.get<std::string>()).empty())
        throw ManifestError(ManifestErrorCode::Malformed, "structure ids must be non-empty strings");
      entry.structure_ids.push_back(trim(id.get<std::string>()));
    }
    if (entry.structure_ids.empty())
      throw ManifestError(ManifestErrorCode::EmptyStructureList,
                          "accession '" + entry.accession + "' lists no structures");
    if (item.contains("preferred_chain") && !item["preferred_chain"].is_null()) {
      const auto& chain = item["preferred_chain"];
      if (!chain.is_string() || chain.get<std::string>().size() != 1)
        throw ManifestError(ManifestErrorCode::Malformed, "preferred_chain must be a one-character string");
      entry.preferred_chain = chain.get<std::string>()[0];
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

}  // namespace modie
