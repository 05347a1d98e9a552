#include "modie/ingest.hpp"

#include <cctype>

namespace modie {

namespace {

// "sp|P04075|ALDOA_HUMAN Fructose-bisphosphate aldolase A OS=Homo sapiens OX=9606 GN=ALDOA"
void parse_header(std::string_view header, ProteinEntry& entry) {
  const std::string line = trim(header);
  const auto space = line.find_first_of(" \t");
  const std::string token = line.substr(0, space);
  const std::string rest = space == std::string::npos ? std::string() : trim(line.substr(space));

  const auto bar1 = token.find('|');
  const auto bar2 = bar1 == std::string::npos ? std::string::npos : token.find('|', bar1 + 1);
  if (bar2 != std::string::npos && (token.starts_with("sp|") || token.starts_with("tr|"))) {
    entry.accession = token.substr(bar1 + 1, bar2 - bar1 - 1);
    entry.name = token.substr(bar2 + 1);
  } else {
    entry.accession = token;
    entry.name = rest.substr(0, rest.find(" OS="));
  }

  const auto os = rest.find("OS=");
  if (os != std::string::npos) {
    std::string species = rest.substr(os + 3);
    const auto next = species.find(" OX=");
    entry.species = trim(species.substr(0, next == std::string::npos ? species.find(" GN=") : next));
  }
}

}  // namespace

std::vector<ProteinEntry> parse_fasta(std::string_view text) {
  std::vector<ProteinEntry> entries;
  std::size_t line_no = 0;
  bool open = false;

  auto close = [&] {
    if (open && entries.back().sequence.empty())
      throw FastaError(FastaErrorCode::EmptySequence,
                       "FASTA record '" + entries.back().accession + "' has no sequence");
  };

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.starts_with('>')) {
      close();
      ProteinEntry entry;
      parse_header(line.substr(1), entry);
      entries.push_back(std::move(entry));
      open = true;
      continue;
    }
    if (line.starts_with(';')) continue;
    std::string chunk;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (up == '*') continue;  // terminal stop
      if (!is_sequence_letter(up))
        throw FastaError(FastaErrorCode::InvalidResidue,
                         "FASTA line " + std::to_string(line_no) + ": invalid residue '" + std::string(1, c) + "'");
      chunk.push_back(up);
    }
    if (chunk.empty()) continue;
    if (!open)
      throw FastaError(FastaErrorCode::NoHeader,
                       "FASTA line " + std::to_string(line_no) + ": sequence before any '>' header");
    entries.back().sequence += chunk;
  }
  close();
  return entries;
}

}  // namespace modie
