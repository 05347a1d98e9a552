#include "modie/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace modie {

namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

char delimiter_for(Dialect dialect) { return dialect == Dialect::Tab ? '\t' : ','; }

// RFC 4180 style splitting; quoted fields may contain delimiters, doubled
// quotes and line breaks.
std::vector<Row> split_rows(std::string_view text, char delim) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  row.line = line;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.fields.size() == 1 && trim(row.fields[0]).empty();
    if (!blank) rows.push_back(std::move(row));
    row = Row{};
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
      field.clear();
    } else if (c == delim) {
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_row();
      row.line = ++line;
    } else {
      field.push_back(c);
      if (!std::isspace(static_cast<unsigned char>(c))) field_started = true;
    }
  }
  if (!field.empty() || !row.fields.empty()) end_row();
  return rows;
}

std::string lower(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return text;
}

void write_field(std::string& out, const std::string& value, char delim) {
  const bool needs_quotes = value.find_first_of(std::string{delim, '"', '\n', '\r'}) != std::string::npos ||
                            (!value.empty() && (std::isspace(static_cast<unsigned char>(value.front())) ||
                                                std::isspace(static_cast<unsigned char>(value.back()))));
  if (!needs_quotes) {
    out += value;
    return;
  }
  out.push_back('"');
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

ModificationTable parse_modification_table(std::string_view text, Dialect dialect) {
  const char delim = delimiter_for(dialect);
  std::vector<Row> rows = split_rows(text, delim);
  if (rows.empty()) throw TableError(TableErrorCode::MissingHeader, "modification table has no header row");

  ModificationTable table;
  const Row& header = rows.front();
  std::array<std::optional<std::size_t>, std::size(kRecordFields)> columns;
  for (std::size_t c = 0; c < header.fields.size(); ++c) {
    const std::string name = lower(trim(header.fields[c]));
    auto it = std::find(std::begin(kRecordFields), std::end(kRecordFields), name);
    if (it == std::end(kRecordFields)) {
      table.report.warnings.push_back("UnknownColumn: '" + trim(header.fields[c]) + "' ignored");
      continue;
    }
    auto& slot = columns[static_cast<std::size_t>(it - std::begin(kRecordFields))];
    if (slot) {
      table.report.warnings.push_back("UnknownColumn: duplicate '" + name + "' ignored");
      continue;
    }
    slot = c;
  }
  for (std::size_t f = 0; f < columns.size(); ++f)
    if (!columns[f])
      throw TableError(TableErrorCode::MissingHeader,
                       "modification table header lacks column '" + std::string(kRecordFields[f]) + "'");

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    RawRecord raw;
    for (std::size_t f = 0; f < columns.size(); ++f) {
      const std::size_t c = *columns[f];
      if (c < row.fields.size()) raw.emplace(std::string(kRecordFields[f]), row.fields[c]);
    }
    try {
      table.records.push_back(validate_record(raw));
    } catch (const RecordError& e) {
      table.report.rejections.push_back({row.line, e.code(), e.field(), e.what()});
    }
  }
  return table;
}

std::string serialize_modification_table(const std::vector<ModificationRecord>& records, Dialect dialect) {
  const char delim = delimiter_for(dialect);
  std::string out;
  for (std::size_t f = 0; f < std::size(kRecordFields); ++f) {
    if (f) out.push_back(delim);
    out += kRecordFields[f];
  }
  out.push_back('\n');
  for (const auto& r : records) {
    write_field(out, r.accession, delim);
    out.push_back(delim);
    out += std::to_string(r.position);
    out.push_back(delim);
    out.push_back(r.residue);
    out.push_back(delim);
    write_field(out, r.mod_type, delim);
    out.push_back(delim);
    write_field(out, r.classification, delim);
    out.push_back(delim);
    out += r.is_mutation ? "true" : "false";
    out.push_back('\n');
  }
  return out;
}

}  // namespace modie
