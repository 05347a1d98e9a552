#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "modie/error.hpp"

namespace modie {

/// One modification event observed on a protein residue.
struct ModificationRecord {
  std::string accession;
  std::int64_t position = 1;  ///< 1-based index into the protein sequence
  char residue = 'X';         ///< one-letter amino-acid code
  std::string mod_type;
  std::string classification;
  bool is_mutation = false;

  friend bool operator==(const ModificationRecord&, const ModificationRecord&) = default;
};

struct ProteinEntry {
  std::string accession;
  std::string name;
  std::string species;
  std::string sequence;

  std::int64_t length() const noexcept { return static_cast<std::int64_t>(sequence.size()); }
  friend bool operator==(const ProteinEntry&, const ProteinEntry&) = default;
};

/// Dense count grid, rows are categories and columns are residues.
template <typename Scalar>
using CountGrid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Labeled rows (classifications or modification types) by residue columns.
///
/// Column c holds the counts for sequence position c + 1. Row labels are
/// distinct; counts are never negative.
template <typename Scalar>
class BasicOccupancyMatrix {
 public:
  using Grid = CountGrid<Scalar>;

  BasicOccupancyMatrix() = default;
  BasicOccupancyMatrix(std::vector<std::string> row_labels, Grid counts);

  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const Grid& counts() const noexcept { return counts_; }
  Eigen::Index rows() const noexcept { return counts_.rows(); }
  /// Sequence length L.
  Eigen::Index length() const noexcept { return counts_.cols(); }
  Scalar at(Eigen::Index row, std::int64_t position) const { return counts_(row, position - 1); }
  std::optional<Eigen::Index> row_index(std::string_view label) const;

  /// Copy with rows rearranged; `order[i]` is the source row placed at i.
  BasicOccupancyMatrix permuted(const std::vector<std::size_t>& order) const;

 private:
  std::vector<std::string> row_labels_;
  Grid counts_;
};

using OccupancyMatrix = BasicOccupancyMatrix<std::int32_t>;

enum class HotspotBin { None = 0, Low = 1, High = 2 };

std::string_view to_string(HotspotBin bin);

/// Inclusive range of sequence positions.
struct Window {
  std::int64_t start = 1;
  std::int64_t end = 1;

  friend bool operator==(const Window&, const Window&) = default;
};

enum class RecordErrorCode { MissingField, BadPosition, BadResidue, EmptyValue, BadFlag };

std::string_view to_string(RecordErrorCode code);

/// Raised by validate_record; names the offending field.
class RecordError : public CodedError<RecordErrorCode> {
 public:
  RecordError(RecordErrorCode code, std::string field, const std::string& detail);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

using RawRecord = std::map<std::string, std::string, std::less<>>;

/// Names of the canonical record fields, in canonical column order.
inline constexpr std::string_view kRecordFields[] = {
    "accession", "position", "residue", "mod_type", "classification", "is_mutation"};

/// Validate a map of field-name to string into a typed record.
///
/// Strings are trimmed; residue is upper-cased and must be one of the 20
/// standard amino-acid letters or 'X'. Booleans accept true/false, yes/no
/// and 1/0 in any case.
ModificationRecord validate_record(const RawRecord& raw);

bool is_standard_residue(char code) noexcept;
bool is_sequence_letter(char code) noexcept;

/// A record whose residue or position disagrees with its protein sequence.
struct ResidueMismatch {
  std::size_t record_index = 0;
  std::int64_t position = 0;
  char expected = '\0';  ///< sequence letter, '\0' when position exceeds L
  char observed = '\0';
};

/// Collect every record of `entry.accession` that disagrees with the sequence.
std::vector<ResidueMismatch> check_against_sequence(const ProteinEntry& entry,
                                                    const std::vector<ModificationRecord>& records);

/// Three-letter residue name to one-letter code; 'X' for anything unknown.
char residue_letter(std::string_view three_letter) noexcept;

std::string trim(std::string_view text);

// ---------------------------------------------------------------------------

template <typename Scalar>
BasicOccupancyMatrix<Scalar>::BasicOccupancyMatrix(std::vector<std::string> row_labels, Grid counts)
    : row_labels_(std::move(row_labels)), counts_(std::move(counts)) {
  if (static_cast<Eigen::Index>(row_labels_.size()) != counts_.rows())
    throw Error("occupancy matrix: label count does not match row count");
  for (std::size_t i = 0; i < row_labels_.size(); ++i)
    for (std::size_t j = i + 1; j < row_labels_.size(); ++j)
      if (row_labels_[i] == row_labels_[j])
        throw Error("occupancy matrix: duplicate row label '" + row_labels_[i] + "'");
  if (counts_.size() > 0 && counts_.minCoeff() < 0)
    throw Error("occupancy matrix: negative count");
}

template <typename Scalar>
std::optional<Eigen::Index> BasicOccupancyMatrix<Scalar>::row_index(std::string_view label) const {
  for (std::size_t i = 0; i < row_labels_.size(); ++i)
    if (row_labels_[i] == label) return static_cast<Eigen::Index>(i);
  return std::nullopt;
}

template <typename Scalar>
BasicOccupancyMatrix<Scalar> BasicOccupancyMatrix<Scalar>::permuted(
    const std::vector<std::size_t>& order) const {
  if (order.size() != row_labels_.size()) throw Error("permutation size does not match row count");
  std::vector<std::string> labels;
  labels.reserve(order.size());
  Grid grid(counts_.rows(), counts_.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    labels.push_back(row_labels_.at(order[i]));
    grid.row(static_cast<Eigen::Index>(i)) = counts_.row(static_cast<Eigen::Index>(order[i]));
  }
  return BasicOccupancyMatrix(std::move(labels), std::move(grid));
}

}  // namespace modie
