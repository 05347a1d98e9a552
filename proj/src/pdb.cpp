#include "modie/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace modie {

namespace {

std::string_view columns(std::string_view line, std::size_t first, std::size_t last) {
  if (first >= line.size()) return {};
  return line.substr(first, std::min(last, line.size() - 1) - first + 1);
}

std::optional<std::int64_t> parse_int(std::string_view field) {
  const std::string text = trim(field);
  if (text.empty()) return std::nullopt;
  std::int64_t value = 0;
  const char* begin = text.data();
  if (*begin == '+') ++begin;
  auto [end, ec] = std::from_chars(begin, text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_double(std::string_view field) {
  const std::string text = trim(field);
  if (text.empty()) return std::nullopt;
  double value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string upper(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

bool is_record(std::string_view line, std::string_view name) {
  if (!line.starts_with(name)) return false;
  // the record name field is six columns wide, padded with blanks
  for (std::size_t i = name.size(); i < 6 && i < line.size(); ++i)
    if (line[i] != ' ') return false;
  return true;
}

// "REMARK   2 RESOLUTION.    1.90 ANGSTROMS."
std::optional<double> read_resolution(std::string_view line) {
  const auto key = line.find("RESOLUTION.");
  if (key == std::string_view::npos) return std::nullopt;
  std::string_view rest = line.substr(key + 11);
  const auto unit = upper(rest).find("ANGSTROM");
  return parse_double(rest.substr(0, unit));
}

struct ChainBuilder {
  char id;
  std::map<std::int64_t, char> residues;
};

}  // namespace

std::string_view to_string(SourceKind kind) {
  return kind == SourceKind::XRay ? "xray" : "predicted";
}

const StructureChain* StructureModel::find_chain(char id) const noexcept {
  for (const auto& chain : chains)
    if (chain.id == id) return &chain;
  return nullptr;
}

std::int64_t StructureModel::offset_for_chain(char id) const noexcept {
  for (const auto& ref : db_references)
    if (ref.chain == id) return ref.offset();
  return accession_offset;
}

StructureModel parse_pdb(std::string_view text, std::optional<SourceKind> kind_override) {
  StructureModel model;
  std::vector<ChainBuilder> chains;
  std::set<std::tuple<char, std::int64_t, char>> skipped_seen;
  bool predicted = false;
  bool first_model_done = false;
  std::size_t line_no = 0;

  auto malformed = [&](const std::string& what) {
    return PdbError(PdbErrorCode::MalformedRecord, line_no,
                    "PDB line " + std::to_string(line_no) + ": " + what);
  };

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (is_record(line, "HEADER")) {
      model.source_id = trim(columns(line, 62, 65));
    } else if (is_record(line, "TITLE")) {
      const std::string title = upper(columns(line, 10, 79));
      if (title.find("ALPHAFOLD") != std::string::npos || title.find("PREDICTION") != std::string::npos)
        predicted = true;
    } else if (is_record(line, "EXPDTA")) {
      const std::string method = upper(columns(line, 10, 79));
      if (method.find("THEORETICAL MODEL") != std::string::npos || method.find("PREDICTED") != std::string::npos)
        predicted = true;
    } else if (is_record(line, "REMARK")) {
      if (parse_int(columns(line, 7, 9)) == 2 && !model.resolution) {
        if (auto value = read_resolution(line)) {
          if (*value <= 0) throw malformed("non-positive resolution");
          model.resolution = value;
        }
      }
    } else if (is_record(line, "DBREF")) {
      if (line.size() < 33) throw malformed("truncated DBREF record");
      DbReference ref;
      ref.chain = line[12];
      auto seq_begin = parse_int(columns(line, 14, 17));
      auto db_begin = parse_int(columns(line, 55, 59));
      if (!seq_begin || !db_begin) throw malformed("DBREF without numeric sequence ranges");
      ref.seq_begin = *seq_begin;
      ref.db_seq_begin = *db_begin;
      ref.database = trim(columns(line, 26, 31));
      ref.accession = trim(columns(line, 33, 40));
      model.db_references.push_back(std::move(ref));
    } else if (is_record(line, "ENDMDL")) {
      first_model_done = true;
    } else if (is_record(line, "ATOM") && !first_model_done) {
      if (line.size() < 27) throw malformed("truncated ATOM record");
      const char alt = line[16];
      if (alt != ' ' && alt != 'A') continue;
      const char chain_id = line[21];
      const auto number = parse_int(columns(line, 22, 25));
      if (!number) throw malformed("residue sequence number is not an integer");
      const char icode = line[26];
      if (icode != ' ') {
        if (skipped_seen.emplace(chain_id, *number, icode).second)
          model.skipped_insertions.push_back({chain_id, *number, icode, line_no});
        continue;
      }
      auto it = std::find_if(chains.begin(), chains.end(),
                             [&](const ChainBuilder& c) { return c.id == chain_id; });
      if (it == chains.end()) it = chains.insert(chains.end(), ChainBuilder{chain_id, {}});
      it->residues.try_emplace(*number, residue_letter(trim(columns(line, 17, 19))));
    }
  }

  if (chains.empty()) throw PdbError(PdbErrorCode::NoAtoms, 0, "PDB text contains no ATOM records");

  for (auto& builder : chains) {
    StructureChain chain{builder.id, {}};
    chain.residues.reserve(builder.residues.size());
    for (const auto& [number, letter] : builder.residues) chain.residues.push_back({number, letter});
    model.chains.push_back(std::move(chain));
  }
  if (!model.db_references.empty()) model.accession_offset = model.db_references.front().offset();
  model.source_kind = kind_override.value_or(predicted ? SourceKind::Predicted : SourceKind::XRay);
  if (model.source_kind == SourceKind::Predicted) model.resolution.reset();
  return model;
}

std::optional<char> choose_chain(const StructureModel& model, std::string_view accession,
                                 std::optional<char> preferred) {
  if (preferred) {
    if (model.find_chain(*preferred)) return preferred;
    return std::nullopt;
  }
  for (const auto& ref : model.db_references)
    if (ref.accession == accession && model.find_chain(ref.chain)) return ref.chain;
  if (model.find_chain('A')) return 'A';
  if (!model.chains.empty()) return model.chains.front().id;
  return std::nullopt;
}

}  // namespace modie
