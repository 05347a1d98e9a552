#include "modie/analytics.hpp"

#include <algorithm>
#include <unordered_map>

namespace modie {

namespace {

void check_position(const ModificationRecord& r, std::int64_t length) {
  if (r.position < 1 || r.position > length) throw PositionOutOfRange(r.position, length);
}

template <typename KeyFn>
Distribution tally(const std::vector<ModificationRecord>& records, KeyFn key) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& r : records) ++counts[key(r)];
  Distribution out(counts.begin(), counts.end());
  // map iteration is alphabetical, so a stable sort keeps the tie order
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

// Hashes a column by its raw count words.
struct ColumnHash {
  std::size_t operator()(const std::vector<std::int32_t>& column) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : column) h = (h ^ static_cast<std::size_t>(static_cast<std::uint32_t>(v))) * 1099511628211ull;
    return h;
  }
};

}  // namespace

ResidueStats residue_counts(const std::vector<ModificationRecord>& records, std::int64_t length) {
  ResidueStats stats;
  stats.counts = Eigen::VectorX<std::int64_t>::Zero(length);
  for (const auto& r : records) {
    check_position(r, length);
    ++stats.counts(r.position - 1);
  }
  stats.total = static_cast<std::int64_t>(records.size());
  if (length > 0) {
    Eigen::Index argmax = 0;
    stats.max_count = stats.counts.maxCoeff(&argmax);  // first maximum wins
    stats.max_position = argmax + 1;
  }
  return stats;
}

std::vector<HotspotBin> bin_hotspots(const ResidueStats& stats) {
  std::vector<HotspotBin> bins(static_cast<std::size_t>(stats.length()));
  for (Eigen::Index i = 0; i < stats.counts.size(); ++i) bins[static_cast<std::size_t>(i)] = bin_for_count(stats.counts(i));
  return bins;
}

Distribution classification_distribution(const std::vector<ModificationRecord>& records) {
  return tally(records, [](const ModificationRecord& r) -> const std::string& { return r.classification; });
}

Distribution mod_type_distribution(const std::vector<ModificationRecord>& records) {
  return tally(records, [](const ModificationRecord& r) -> const std::string& { return r.mod_type; });
}

Distribution residue_letter_distribution(const std::vector<ModificationRecord>& records) {
  return tally(records, [](const ModificationRecord& r) { return std::string(1, r.residue); });
}

const std::string& row_label(const ModificationRecord& record, RowKey key) noexcept {
  return key == RowKey::Classification ? record.classification : record.mod_type;
}

OccupancyMatrix occupancy_matrix(const std::vector<ModificationRecord>& records, RowKey key, std::int64_t length) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Eigen::Index> index;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> cells;
  cells.reserve(records.size());
  for (const auto& r : records) {
    check_position(r, length);
    const std::string& label = row_label(r, key);
    auto [it, inserted] = index.try_emplace(label, static_cast<Eigen::Index>(labels.size()));
    if (inserted) labels.push_back(label);
    cells.emplace_back(it->second, r.position - 1);
  }
  OccupancyMatrix::Grid grid = OccupancyMatrix::Grid::Zero(static_cast<Eigen::Index>(labels.size()), length);
  for (auto [row, col] : cells) ++grid(row, col);
  return OccupancyMatrix(std::move(labels), std::move(grid));
}

std::vector<MutationSite> mutation_sites(const std::vector<ModificationRecord>& records) {
  std::map<std::int64_t, char> sites;
  for (const auto& r : records)
    if (r.is_mutation) sites.try_emplace(r.position, r.residue);
  std::vector<MutationSite> out;
  out.reserve(sites.size());
  for (auto [position, residue] : sites) out.push_back({position, residue});
  return out;
}

std::vector<PatternGroup> find_repeated_patterns(const OccupancyMatrix& matrix) {
  const auto& grid = matrix.counts();
  std::unordered_map<std::vector<std::int32_t>, std::vector<std::int64_t>, ColumnHash> groups;
  std::vector<std::int32_t> column(static_cast<std::size_t>(grid.rows()));
  for (Eigen::Index c = 0; c < grid.cols(); ++c) {
    bool nonzero = false;
    for (Eigen::Index r = 0; r < grid.rows(); ++r) {
      column[static_cast<std::size_t>(r)] = grid(r, c);
      nonzero = nonzero || grid(r, c) != 0;
    }
    if (nonzero) groups[column].push_back(c + 1);
  }

  std::vector<PatternGroup> out;
  for (auto& [signature, positions] : groups) {
    if (positions.size() < 2) continue;
    PatternGroup group;
    group.signature = Eigen::Map<const Eigen::VectorX<std::int32_t>>(signature.data(),
                                                                     static_cast<Eigen::Index>(signature.size()));
    group.positions = std::move(positions);
    out.push_back(std::move(group));
  }
  std::sort(out.begin(), out.end(), [](const PatternGroup& a, const PatternGroup& b) {
    if (a.positions.size() != b.positions.size()) return a.positions.size() > b.positions.size();
    return a.positions.front() < b.positions.front();
  });
  return out;
}

std::vector<ModificationRecord> without_mutations(const std::vector<ModificationRecord>& records) {
  std::vector<ModificationRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out), [](const auto& r) { return !r.is_mutation; });
  return out;
}

}  // namespace modie
