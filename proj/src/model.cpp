#include "modie/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace modie {

namespace {

constexpr std::string_view kStandardResidues = "ACDEFGHIKLMNPQRSTVWY";

struct ThreeToOne {
  std::string_view name;
  char code;
};

constexpr std::array<ThreeToOne, 28> kResidueNames{{
    {"ALA", 'A'}, {"ARG", 'R'}, {"ASN", 'N'}, {"ASP", 'D'}, {"CYS", 'C'}, {"GLN", 'Q'},
    {"GLU", 'E'}, {"GLY", 'G'}, {"HIS", 'H'}, {"ILE", 'I'}, {"LEU", 'L'}, {"LYS", 'K'},
    {"MET", 'M'}, {"PHE", 'F'}, {"PRO", 'P'}, {"SER", 'S'}, {"THR", 'T'}, {"TRP", 'W'},
    {"TYR", 'Y'}, {"VAL", 'V'}, {"SEC", 'U'}, {"PYL", 'O'}, {"ASX", 'B'}, {"GLX", 'Z'},
    {"XLE", 'J'}, {"UNK", 'X'}, {"MSE", 'M'}, {"HSD", 'H'},
}};

const std::string* find_field(const RawRecord& raw, std::string_view name) {
  auto it = raw.find(name);
  if (it == raw.end())
    throw RecordError(RecordErrorCode::MissingField, std::string(name), "field is missing");
  return &it->second;
}

std::string required_value(const RawRecord& raw, std::string_view name) {
  std::string value = trim(*find_field(raw, name));
  if (value.empty())
    throw RecordError(RecordErrorCode::EmptyValue, std::string(name), "value is empty");
  return value;
}

std::string lower(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return text;
}

}  // namespace

std::string_view to_string(HotspotBin bin) {
  switch (bin) {
    case HotspotBin::None: return "none";
    case HotspotBin::Low: return "low";
    case HotspotBin::High: return "high";
  }
  return "none";
}

std::string_view to_string(RecordErrorCode code) {
  switch (code) {
    case RecordErrorCode::MissingField: return "MissingField";
    case RecordErrorCode::BadPosition: return "BadPosition";
    case RecordErrorCode::BadResidue: return "BadResidue";
    case RecordErrorCode::EmptyValue: return "EmptyValue";
    case RecordErrorCode::BadFlag: return "BadFlag";
  }
  return "Unknown";
}

RecordError::RecordError(RecordErrorCode code, std::string field, const std::string& detail)
    : CodedError(code, std::string(to_string(code)) + " in field '" + field + "': " + detail),
      field_(std::move(field)) {}

std::string trim(std::string_view text) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return std::string(text);
}

bool is_standard_residue(char code) noexcept {
  return code == 'X' || kStandardResidues.find(code) != std::string_view::npos;
}

bool is_sequence_letter(char code) noexcept { return code >= 'A' && code <= 'Z'; }

char residue_letter(std::string_view three_letter) noexcept {
  for (const auto& entry : kResidueNames)
    if (entry.name == three_letter) return entry.code;
  return 'X';
}

ModificationRecord validate_record(const RawRecord& raw) {
  // Presence first, so a missing column is reported before any value problem.
  for (auto name : kRecordFields) find_field(raw, name);

  ModificationRecord record;
  record.accession = required_value(raw, "accession");

  const std::string position = required_value(raw, "position");
  std::int64_t value = 0;
  auto [end, ec] = std::from_chars(position.data(), position.data() + position.size(), value);
  if (ec != std::errc{} || end != position.data() + position.size())
    throw RecordError(RecordErrorCode::BadPosition, "position", "'" + position + "' is not an integer");
  if (value < 1)
    throw RecordError(RecordErrorCode::BadPosition, "position", "'" + position + "' is below 1");
  record.position = value;

  const std::string residue = required_value(raw, "residue");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(residue[0])));
  if (residue.size() != 1 || !is_standard_residue(letter))
    throw RecordError(RecordErrorCode::BadResidue, "residue",
                      "'" + residue + "' is not a one-letter amino-acid code");
  record.residue = letter;

  record.mod_type = required_value(raw, "mod_type");
  record.classification = required_value(raw, "classification");

  const std::string flag = lower(required_value(raw, "is_mutation"));
  if (flag == "true" || flag == "1" || flag == "yes")
    record.is_mutation = true;
  else if (flag == "false" || flag == "0" || flag == "no")
    record.is_mutation = false;
  else
    throw RecordError(RecordErrorCode::BadFlag, "is_mutation", "'" + flag + "' is not a boolean");
  return record;
}

std::vector<ResidueMismatch> check_against_sequence(const ProteinEntry& entry,
                                                    const std::vector<ModificationRecord>& records) {
  std::vector<ResidueMismatch> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.accession != entry.accession) continue;
    if (r.position > entry.length()) {
      out.push_back({i, r.position, '\0', r.residue});
      continue;
    }
    const char expected = entry.sequence[static_cast<std::size_t>(r.position - 1)];
    if (expected != r.residue) out.push_back({i, r.position, expected, r.residue});
  }
  return out;
}

}  // namespace modie
