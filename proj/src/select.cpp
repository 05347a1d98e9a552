#include "modie/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace modie {

namespace {

// 0: X-ray with a resolution, 1: X-ray without one, 2: predicted.
int tier(const StructureModel& m) {
  if (m.source_kind == SourceKind::Predicted) return 2;
  return m.resolution ? 0 : 1;
}

}  // namespace

const StructureModel& select_best_model(const std::vector<StructureModel>& candidates) {
  if (candidates.empty()) throw Error("select_best_model: no candidates");
  auto key = [](const StructureModel& m) {
    return std::make_tuple(tier(m), tier(m) == 0 ? *m.resolution : 0.0, m.source_id);
  };
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](const StructureModel& a, const StructureModel& b) { return key(a) < key(b); });
}

SourceKind kind_for_structure_id(std::string_view id) {
  const bool pdb_code = id.size() == 4 && std::isdigit(static_cast<unsigned char>(id[0])) &&
                        std::all_of(id.begin(), id.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
  return pdb_code ? SourceKind::XRay : SourceKind::Predicted;
}

}  // namespace modie
