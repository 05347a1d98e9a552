#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modie/error.hpp"
#include "modie/model.hpp"

namespace modie {

// ---------------------------------------------------------------------------
// Modification tables

enum class Dialect { Comma, Tab };

struct RowRejection {
  std::size_t line = 0;  ///< 1-based line number in the input text
  RecordErrorCode code = RecordErrorCode::MissingField;
  std::string field;
  std::string message;
};

/// Everything that went wrong while reading an input, without being fatal.
struct ValidationReport {
  std::vector<RowRejection> rejections;
  std::vector<std::string> warnings;
  std::vector<ResidueMismatch> mismatches;

  bool empty() const noexcept { return rejections.empty() && warnings.empty() && mismatches.empty(); }
};

struct ModificationTable {
  std::vector<ModificationRecord> records;
  ValidationReport report;
};

enum class TableErrorCode { MissingHeader };

using TableError = CodedError<TableErrorCode>;

/// Parse a delimited modification table with a header row.
///
/// Column names are matched case-insensitively and may appear in any order;
/// unknown columns are ignored with a warning. Fields may be double-quoted.
/// Rows that fail validation are reported with their line number and skipped.
/// Throws TableError when the header is absent or lacks a required column.
ModificationTable parse_modification_table(std::string_view text, Dialect dialect = Dialect::Comma);

/// Canonical serialization: header plus one row per record, fields quoted
/// only when they contain the delimiter, a quote or a line break.
std::string serialize_modification_table(const std::vector<ModificationRecord>& records,
                                         Dialect dialect = Dialect::Comma);

// ---------------------------------------------------------------------------
// FASTA

enum class FastaErrorCode { EmptySequence, NoHeader, InvalidResidue };

using FastaError = CodedError<FastaErrorCode>;

/// Parse FASTA text. UniProt headers (`sp|P04075|ALDOA_HUMAN Fructose... OS=Homo sapiens`)
/// are unwrapped into accession, name and species.
std::vector<ProteinEntry> parse_fasta(std::string_view text);

// ---------------------------------------------------------------------------
// PDB

enum class SourceKind { XRay, Predicted };

std::string_view to_string(SourceKind kind);

struct StructureResidue {
  std::int64_t author_number = 0;
  char residue = 'X';

  friend bool operator==(const StructureResidue&, const StructureResidue&) = default;
};

struct StructureChain {
  char id = 'A';
  std::vector<StructureResidue> residues;  ///< strictly increasing author numbers
};

/// DBREF cross reference: author numbering of a chain against a database sequence.
struct DbReference {
  char chain = 'A';
  std::string database;
  std::string accession;
  std::int64_t seq_begin = 0;
  std::int64_t db_seq_begin = 0;

  std::int64_t offset() const noexcept { return seq_begin - db_seq_begin; }
};

struct SkippedResidue {
  char chain = 'A';
  std::int64_t author_number = 0;
  char insertion_code = ' ';
  std::size_t line = 0;
};

struct StructureModel {
  std::string source_id;
  SourceKind source_kind = SourceKind::XRay;
  std::optional<double> resolution;  ///< Angstroms
  std::vector<StructureChain> chains;
  std::vector<DbReference> db_references;
  std::vector<SkippedResidue> skipped_insertions;
  /// author_number - sequence position, taken from the first DBREF record.
  std::int64_t accession_offset = 0;

  const StructureChain* find_chain(char id) const noexcept;
  /// Offset for a chain: its own DBREF when present, else accession_offset.
  std::int64_t offset_for_chain(char id) const noexcept;
};

enum class PdbErrorCode { NoAtoms, MalformedRecord };

class PdbError : public CodedError<PdbErrorCode> {
 public:
  PdbError(PdbErrorCode code, std::size_t line, const std::string& what)
      : CodedError(code, what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Parse legacy fixed-column PDB text.
///
/// Only ATOM records of the first model are considered; atoms with an
/// alternate location other than blank or 'A' are ignored, and residues
/// carrying an insertion code are skipped and listed in skipped_insertions.
/// The source kind is Predicted when the header describes a computed model,
/// unless `kind_override` is given.
StructureModel parse_pdb(std::string_view text, std::optional<SourceKind> kind_override = std::nullopt);

/// Pick the preferred model: the X-ray model with the smallest stated
/// resolution, ties going to the smallest source id; X-ray models without a
/// resolution next; predicted models last. Within a tier the smallest source
/// id wins, so the result does not depend on input order.
const StructureModel& select_best_model(const std::vector<StructureModel>& candidates);

/// Chain used for coloring: `preferred` when present, else the chain whose
/// DBREF names `accession`, else 'A', else the first chain.
std::optional<char> choose_chain(const StructureModel& model, std::string_view accession,
                                 std::optional<char> preferred);

// ---------------------------------------------------------------------------
// Manifest

struct ManifestEntry {
  std::string accession;
  std::vector<std::string> structure_ids;
  std::optional<char> preferred_chain;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
};

enum class ManifestErrorCode { Malformed, DuplicateAccession, EmptyStructureList };

using ManifestError = CodedError<ManifestErrorCode>;

/// Parse a JSON array of {accession, structure_ids, preferred_chain?}.
Manifest parse_manifest(std::string_view json_text);

/// Structure ids that look like PDB codes (digit + three alphanumerics) are
/// experimental; everything else names a predicted model.
SourceKind kind_for_structure_id(std::string_view id);

}  // namespace modie
