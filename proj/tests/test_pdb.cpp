#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "modie/ingest.hpp"

using namespace modie;

namespace {

// "resolution 1.90" then "<chain> <number> <letter>" lines.
struct Reference {
  std::optional<double> resolution;
  std::vector<std::tuple<char, std::int64_t, char>> residues;
};

Reference load_reference(const std::string& name) {
  std::istringstream in(test::read_text(test::data_dir() / name));
  Reference ref;
  std::string word, value;
  in >> word >> value;
  if (value != "none") ref.resolution = std::stod(value);
  char chain = 0, letter = 0;
  std::int64_t number = 0;
  while (in >> chain >> number >> letter) ref.residues.emplace_back(chain, number, letter);
  return ref;
}

std::vector<std::tuple<char, std::int64_t, char>> flatten(const StructureModel& model) {
  std::vector<std::tuple<char, std::int64_t, char>> out;
  for (const auto& chain : model.chains)
    for (const auto& r : chain.residues) out.emplace_back(chain.id, r.author_number, r.residue);
  return out;
}

const char* kAtomAla5 = "ATOM      1  CA  ALA A   5      11.104   6.134  -6.504  1.00  0.00           C\n";

}  // namespace

TEST_CASE("parse_pdb reads the REMARK 2 resolution") {
  const auto model = parse_pdb(std::string("REMARK   2 RESOLUTION.    1.90 ANGSTROMS.\n") + kAtomAla5);
  REQUIRE(model.resolution);
  CHECK(*model.resolution == doctest::Approx(1.90));
  CHECK(model.source_kind == SourceKind::XRay);
}

TEST_CASE("parse_pdb single CA atom") {
  const auto model = parse_pdb(kAtomAla5);
  REQUIRE(model.chains.size() == 1);
  CHECK(model.chains[0].id == 'A');
  REQUIRE(model.chains[0].residues.size() == 1);
  CHECK(model.chains[0].residues[0] == StructureResidue{5, 'A'});
  CHECK_FALSE(model.resolution);
  CHECK(model.accession_offset == 0);
}

TEST_CASE("parse_pdb matches the reference parser on checked-in fixtures") {
  for (const std::string name : {"9zzz", "9zzy", "af_p04075"}) {
    CAPTURE(name);
    const auto model = parse_pdb(test::read_text(test::data_dir() / (name + ".pdb")));
    const auto ref = load_reference(name + ".residues.txt");
    CHECK(flatten(model) == ref.residues);
    CHECK(model.resolution.has_value() == ref.resolution.has_value());
    if (ref.resolution) CHECK(*model.resolution == doctest::Approx(*ref.resolution));
  }
}

TEST_CASE("parse_pdb fixture details") {
  const auto model = parse_pdb(test::read_text(test::data_dir() / "9zzz.pdb"));
  CHECK(model.source_id == "9ZZZ");
  CHECK(model.source_kind == SourceKind::XRay);
  REQUIRE(model.skipped_insertions.size() == 1);
  CHECK(model.skipped_insertions[0].author_number == 12);
  CHECK(model.skipped_insertions[0].insertion_code == 'A');
  REQUIRE(model.db_references.size() == 2);
  CHECK(model.db_references[0].accession == "P04075");
  CHECK(model.accession_offset == -1);
  CHECK(model.offset_for_chain('A') == -1);
  CHECK(model.offset_for_chain('B') == 100);
  // MSE 105 is HETATM, so it is absent
  const auto* b = model.find_chain('B');
  REQUIRE(b);
  CHECK(std::none_of(b->residues.begin(), b->residues.end(), [](const auto& r) { return r.author_number == 105; }));
  CHECK(choose_chain(model, "P09651", std::nullopt) == 'B');
  CHECK(choose_chain(model, "Q99999", std::nullopt) == 'A');
  CHECK(choose_chain(model, "P04075", 'B') == 'B');
  CHECK_FALSE(choose_chain(model, "P04075", 'Z'));
}

TEST_CASE("parse_pdb recognises predicted models") {
  const auto model = parse_pdb(test::read_text(test::data_dir() / "af_p04075.pdb"));
  CHECK(model.source_kind == SourceKind::Predicted);
  CHECK_FALSE(model.resolution);
  CHECK(parse_pdb(kAtomAla5, SourceKind::Predicted).source_kind == SourceKind::Predicted);
  CHECK(parse_pdb(std::string("EXPDTA    THEORETICAL MODEL\n") + kAtomAla5).source_kind == SourceKind::Predicted);
}

TEST_CASE("parse_pdb alternate locations and models") {
  const std::string text =
      "MODEL        1\n"
      "ATOM      1  CA BSER A   3      11.104   6.134  -6.504  0.40  0.00           C\n"
      "ATOM      2  CA  GLY A   4      11.104   6.134  -6.504  1.00  0.00           C\n"
      "ATOM      3  CA ALYS A   2      11.104   6.134  -6.504  0.60  0.00           C\n"
      "ATOM      4  CA BLYS A   2      11.104   6.134  -6.504  0.40  0.00           C\n"
      "ENDMDL\n"
      "MODEL        2\n"
      "ATOM      5  CA  TRP A   9      11.104   6.134  -6.504  1.00  0.00           C\n"
      "ENDMDL\n";
  const auto model = parse_pdb(text);
  REQUIRE(model.chains.size() == 1);
  // residue 3 has only a 'B' conformer; residues come out sorted
  CHECK(model.chains[0].residues == std::vector<StructureResidue>{{2, 'K'}, {4, 'G'}});
}

TEST_CASE("parse_pdb errors") {
  try {
    parse_pdb("HEADER    nothing\nREMARK   2 RESOLUTION.    1.90 ANGSTROMS.\n");
    FAIL("no error");
  } catch (const PdbError& e) {
    CHECK(e.code() == PdbErrorCode::NoAtoms);
  }
  try {
    parse_pdb(std::string(kAtomAla5) + "ATOM      2  CA  ALA A  x5      11.104   6.134  -6.504  1.00  0.00           C\n");
    FAIL("no error");
  } catch (const PdbError& e) {
    CHECK(e.code() == PdbErrorCode::MalformedRecord);
    CHECK(e.line() == 2);
  }
  try {
    parse_pdb("ATOM      1  CA  ALA A\n");
    FAIL("no error");
  } catch (const PdbError& e) {
    CHECK(e.code() == PdbErrorCode::MalformedRecord);
    CHECK(e.line() == 1);
  }
}

TEST_CASE("parse_pdb never yields duplicate (chain, number) pairs") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(1, 30), chain(0, 2), alt(0, 3);
  const char chains[] = {'A', 'B', 'C'};
  const char alts[] = {' ', 'A', 'B', ' '};
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    for (int i = 0; i < 80; ++i) {
      char line[100];
      std::snprintf(line, sizeof line, "ATOM  %5d  CA %cALA %c%4d    %8.3f%8.3f%8.3f  1.00  0.00           C\n", i + 1,
                    alts[alt(rng)], chains[chain(rng)], num(rng), 1.0, 2.0, 3.0);
      text += line;
    }
    text += "ATOM   1000  CA  ALA A   1       1.000   2.000   3.000  1.00  0.00           C\n";
    const auto model = parse_pdb(text);
    std::set<std::pair<char, std::int64_t>> seen;
    for (const auto& c : model.chains) {
      for (std::size_t i = 0; i < c.residues.size(); ++i) {
        CHECK(seen.emplace(c.id, c.residues[i].author_number).second);
        if (i) CHECK(c.residues[i].author_number > c.residues[i - 1].author_number);
      }
    }
  }
}

namespace {

StructureModel candidate(std::string id, SourceKind kind, std::optional<double> resolution) {
  StructureModel m;
  m.source_id = std::move(id);
  m.source_kind = kind;
  m.resolution = resolution;
  return m;
}

}  // namespace

TEST_CASE("select_best_model") {
  SUBCASE("highest resolution wins") {
    std::vector<StructureModel> c = {candidate("2AAA", SourceKind::XRay, 2.5), candidate("1AAA", SourceKind::XRay, 1.9)};
    CHECK(select_best_model(c).source_id == "1AAA");
  }
  SUBCASE("X-ray beats predicted") {
    std::vector<StructureModel> c = {candidate("P04075", SourceKind::Predicted, std::nullopt),
                                     candidate("3AAA", SourceKind::XRay, 2.0)};
    CHECK(select_best_model(c).source_id == "3AAA");
  }
  SUBCASE("predicted only") {
    std::vector<StructureModel> c = {candidate("P04075", SourceKind::Predicted, std::nullopt)};
    CHECK(select_best_model(c).source_id == "P04075");
  }
  SUBCASE("resolution ties go to the smaller id") {
    std::vector<StructureModel> c = {candidate("5BBB", SourceKind::XRay, 1.9), candidate("4BBB", SourceKind::XRay, 1.9)};
    CHECK(select_best_model(c).source_id == "4BBB");
  }
  SUBCASE("empty input") { CHECK_THROWS_AS(select_best_model({}), Error); }
}

TEST_CASE("select_best_model result is an input element and order independent") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> res(1.0, 4.0);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<StructureModel> c;
    const int n = 1 + trial % 6;
    for (int i = 0; i < n; ++i) {
      const int k = kind(rng);
      const double r = std::round(res(rng) * 4) / 4;  // coarse values force ties
      c.push_back(candidate("ID" + std::to_string(i), k == 2 ? SourceKind::Predicted : SourceKind::XRay,
                            k == 0 ? std::optional<double>(r) : std::nullopt));
    }
    const std::string first = select_best_model(c).source_id;
    CHECK(std::any_of(c.begin(), c.end(), [&](const auto& m) { return m.source_id == first; }));
    std::shuffle(c.begin(), c.end(), rng);
    CHECK(select_best_model(c).source_id == first);
  }
}
