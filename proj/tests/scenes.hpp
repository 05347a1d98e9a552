#pragma once

#include <set>

#include "fixtures.hpp"
#include "modie/analytics.hpp"
#include "modie/layout.hpp"
#include "modie/ordering.hpp"
#include "modie/render.hpp"

namespace modie::test {

inline std::filesystem::path golden_dir() { return data_dir().parent_path() / "golden"; }

/// Full scene document for a record set, built the way the render command does.
inline SceneDocument build_document(const std::string& accession, const std::vector<ModificationRecord>& records,
                                    std::int64_t length, Window window, const LayoutConfig& config = {}) {
  auto sorted_labels = [&](RowKey key) {
    std::set<std::string> seen;
    for (const auto& r : records) seen.insert(row_label(r, key));
    return std::vector<std::string>(seen.begin(), seen.end());
  };
  SceneDocument doc;
  doc.accession = accession;
  doc.length = length;
  doc.window = window;
  doc.classification_palette = assign_palette(sorted_labels(RowKey::Classification));
  doc.type_palette = assign_palette(sorted_labels(RowKey::ModType));
  const auto stats = residue_counts(records, length);
  const auto cm = occupancy_matrix(records, RowKey::Classification, length);
  const auto tm = occupancy_matrix(records, RowKey::ModType, length);
  const auto corder = cm.rows() ? seriate_rows(cm) : std::vector<std::size_t>{};
  const auto torder = tm.rows() ? seriate_rows(tm) : std::vector<std::size_t>{};
  doc.distribution = layout_distribution_view(records, stats, window, doc.classification_palette, config);
  doc.classification = layout_classification_view(cm, corder, records, window, doc.classification_palette, config);
  doc.types = layout_type_view(tm, torder, records, window, doc.type_palette, config);
  doc.context = layout_context_bar(stats.counts, window, config);
  for (auto i : corder) doc.classification_order.push_back(cm.row_labels()[i]);
  for (auto i : torder) doc.type_order.push_back(tm.row_labels()[i]);
  return doc;
}

inline SceneDocument synthetic_document() { return build_document("TEST1", synthetic_records(), 10, {1, 10}); }

/// (file stem, scene) pairs covered by golden files.
inline std::vector<std::pair<std::string, const Scene*>> golden_views(const SceneDocument& doc) {
  return {{"distribution", &doc.distribution}, {"classification", &doc.classification}, {"types", &doc.types}};
}

}  // namespace modie::test
