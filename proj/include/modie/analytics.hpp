#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "modie/error.hpp"
#include "modie/model.hpp"

namespace modie {

/// Per-residue tallies over a sequence of length L.
struct ResidueStats {
  Eigen::VectorX<std::int64_t> counts;  ///< counts[i] = modifications at position i + 1
  std::int64_t total = 0;
  std::int64_t max_position = 0;  ///< smallest position holding max_count, 0 when L == 0
  std::int64_t max_count = 0;

  std::int64_t length() const noexcept { return counts.size(); }
};

class PositionOutOfRange : public Error {
 public:
  PositionOutOfRange(std::int64_t position, std::int64_t length)
      : Error("position " + std::to_string(position) + " is outside 1.." + std::to_string(length)),
        position_(position),
        length_(length) {}
  std::int64_t position() const noexcept { return position_; }
  std::int64_t length() const noexcept { return length_; }

 private:
  std::int64_t position_;
  std::int64_t length_;
};

ResidueStats residue_counts(const std::vector<ModificationRecord>& records, std::int64_t length);

/// None for 0, Low for 1..10, High for 11 and above.
constexpr HotspotBin bin_for_count(std::int64_t count) noexcept {
  if (count <= 0) return HotspotBin::None;
  return count <= 10 ? HotspotBin::Low : HotspotBin::High;
}

std::vector<HotspotBin> bin_hotspots(const ResidueStats& stats);

using Distribution = std::vector<std::pair<std::string, std::int64_t>>;

/// (classification, count) by descending count, ties alphabetical.
Distribution classification_distribution(const std::vector<ModificationRecord>& records);
/// (mod_type, count), ordered like classification_distribution.
Distribution mod_type_distribution(const std::vector<ModificationRecord>& records);
/// (residue letter, count), ordered like classification_distribution.
Distribution residue_letter_distribution(const std::vector<ModificationRecord>& records);

enum class RowKey { Classification, ModType };

const std::string& row_label(const ModificationRecord& record, RowKey key) noexcept;

/// Rows are the distinct labels in first-appearance order.
OccupancyMatrix occupancy_matrix(const std::vector<ModificationRecord>& records, RowKey key, std::int64_t length);

struct MutationSite {
  std::int64_t position = 0;
  char residue = 'X';

  friend bool operator==(const MutationSite&, const MutationSite&) = default;
};

/// Distinct positions of mutation records, ascending. The residue comes from
/// the first mutation record seen at each position.
std::vector<MutationSite> mutation_sites(const std::vector<ModificationRecord>& records);

struct PatternGroup {
  Eigen::VectorX<std::int32_t> signature;  ///< full column vector shared by every position
  std::vector<std::int64_t> positions;     ///< ascending, at least two
};

/// Groups of positions whose non-zero column vectors are identical, largest
/// group first, then by first position.
std::vector<PatternGroup> find_repeated_patterns(const OccupancyMatrix& matrix);

std::vector<ModificationRecord> without_mutations(const std::vector<ModificationRecord>& records);

}  // namespace modie
