#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "modie/analytics.hpp"

using namespace modie;

namespace {

// Direct tallies used as oracles.
std::vector<std::int64_t> brute_counts(const std::vector<ModificationRecord>& records, std::int64_t length) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(length), 0);
  for (const auto& r : records) ++out[static_cast<std::size_t>(r.position - 1)];
  return out;
}

std::vector<std::int64_t> to_vector(const Eigen::VectorX<std::int64_t>& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_CASE("residue_counts examples") {
  const std::vector<ModificationRecord> records = {test::make_record(3, "A"), test::make_record(3, "A"),
                                                   test::make_record(7, "B")};
  const auto stats = residue_counts(records, 10);
  CHECK(to_vector(stats.counts) == std::vector<std::int64_t>{0, 0, 2, 0, 0, 0, 1, 0, 0, 0});
  CHECK(stats.total == 3);
  CHECK(stats.max_position == 3);
  CHECK(stats.max_count == 2);

  const auto empty = residue_counts({}, 5);
  CHECK(to_vector(empty.counts) == std::vector<std::int64_t>(5, 0));
  CHECK(empty.total == 0);
  CHECK(empty.max_count == 0);

  try {
    residue_counts({test::make_record(11, "A")}, 10);
    FAIL("no error");
  } catch (const PositionOutOfRange& e) {
    CHECK(e.position() == 11);
    CHECK(e.length() == 10);
  }
}

TEST_CASE("residue_counts ties resolve to the smallest position") {
  const auto stats = residue_counts({test::make_record(8, "A"), test::make_record(2, "A")}, 10);
  CHECK(stats.max_position == 2);
  CHECK(stats.max_count == 1);
}

TEST_CASE("synthetic fixture tallies") {
  const auto records = test::synthetic_records();
  REQUIRE(records.size() == 12);
  const auto stats = residue_counts(records, 10);
  CHECK(to_vector(stats.counts) == std::vector<std::int64_t>{0, 3, 2, 1, 1, 2, 1, 1, 0, 1});
  CHECK(stats.total == 12);
  CHECK(stats.max_position == 2);
  CHECK(stats.max_count == 3);
  CHECK(classification_distribution(records) ==
        Distribution{{"Post-translational", 5}, {"Chemical derivative", 3}, {"Artefact", 2}, {"Multiple", 2}});
  CHECK(mutation_sites(records) == std::vector<MutationSite>{{4, 'R'}, {8, 'R'}});
  CHECK(residue_letter_distribution(records) == Distribution{{"C", 5}, {"K", 3}, {"R", 2}, {"S", 1}, {"T", 1}});

  const auto by_class = occupancy_matrix(records, RowKey::Classification, 10);
  CHECK(by_class.row_labels() ==
        std::vector<std::string>{"Chemical derivative", "Artefact", "Multiple", "Post-translational"});
  const auto groups = find_repeated_patterns(by_class);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].positions == std::vector<std::int64_t>{5, 7, 10});
  CHECK(groups[1].positions == std::vector<std::int64_t>{4, 8});

  const auto by_type = find_repeated_patterns(occupancy_matrix(records, RowKey::ModType, 10));
  REQUIRE(by_type.size() == 2);
  CHECK(by_type[0].positions == std::vector<std::int64_t>{4, 8});
  CHECK(by_type[1].positions == std::vector<std::int64_t>{5, 7});

  const auto filtered = without_mutations(records);
  CHECK(filtered.size() == 10);
  CHECK(residue_counts(filtered, 10).total == 10);
}

TEST_CASE("bin_for_count thresholds") {
  CHECK(bin_for_count(0) == HotspotBin::None);
  CHECK(bin_for_count(1) == HotspotBin::Low);
  CHECK(bin_for_count(10) == HotspotBin::Low);
  CHECK(bin_for_count(11) == HotspotBin::High);
  CHECK(bin_for_count(81) == HotspotBin::High);
  for (std::int64_t a = 0; a < 40; ++a)
    for (std::int64_t b = a; b < 40; ++b) CHECK(bin_for_count(a) <= bin_for_count(b));

  ResidueStats stats;
  stats.counts.resize(5);
  stats.counts << 0, 1, 10, 11, 50;
  CHECK(bin_hotspots(stats) ==
        std::vector<HotspotBin>{HotspotBin::None, HotspotBin::Low, HotspotBin::Low, HotspotBin::High, HotspotBin::High});
}

TEST_CASE("classification_distribution examples") {
  CHECK(classification_distribution({}).empty());
  CHECK(classification_distribution({test::make_record(1, "Artefact"), test::make_record(2, "Multiple"),
                                     test::make_record(3, "Artefact")}) ==
        Distribution{{"Artefact", 2}, {"Multiple", 1}});
  // ties alphabetical
  CHECK(classification_distribution({test::make_record(1, "Zeta"), test::make_record(2, "Alpha")}) ==
        Distribution{{"Alpha", 1}, {"Zeta", 1}});
}

TEST_CASE("occupancy_matrix examples") {
  const auto m = occupancy_matrix({test::make_record(4, "Artefact"), test::make_record(4, "Artefact")},
                                  RowKey::Classification, 5);
  REQUIRE(m.rows() == 1);
  CHECK(m.row_labels()[0] == "Artefact");
  for (std::int64_t p = 1; p <= 5; ++p) CHECK(m.at(0, p) == (p == 4 ? 2 : 0));
  CHECK(occupancy_matrix({}, RowKey::Classification, 5).rows() == 0);
  CHECK_THROWS_AS(occupancy_matrix({test::make_record(6, "A")}, RowKey::ModType, 5), PositionOutOfRange);
}

TEST_CASE("mutation_sites sorts and deduplicates") {
  CHECK(mutation_sites({test::make_record(3, "A")}).empty());
  const std::vector<ModificationRecord> records = {test::make_record(7, "A", "X", true, 'R'),
                                                   test::make_record(2, "A", "X", true, 'K'),
                                                   test::make_record(7, "B", "Y", true, 'R'),
                                                   test::make_record(5, "B", "Y", false, 'S')};
  CHECK(mutation_sites(records) == std::vector<MutationSite>{{2, 'K'}, {7, 'R'}});
}

TEST_CASE("find_repeated_patterns examples") {
  CHECK(find_repeated_patterns(OccupancyMatrix({"a", "b"}, CountGrid<std::int32_t>::Zero(2, 6))).empty());

  CountGrid<std::int32_t> grid = CountGrid<std::int32_t>::Zero(2, 6);
  grid(0, 1) = 2;
  grid(1, 1) = 1;
  grid(0, 4) = 2;
  grid(1, 4) = 1;
  grid(0, 2) = 2;  // differs from columns 2 and 5 in row b
  const auto groups = find_repeated_patterns(OccupancyMatrix({"a", "b"}, grid));
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].positions == std::vector<std::int64_t>{2, 5});
  CHECK(groups[0].signature(0) == 2);
  CHECK(groups[0].signature(1) == 1);
}

TEST_CASE("analytics invariants on random inputs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t length = 1 + static_cast<std::int64_t>(rng() % 60);
    const auto records = test::random_records(rng, length, rng() % 120);
    const auto stats = residue_counts(records, length);
    const auto brute = brute_counts(records, length);
    CHECK(to_vector(stats.counts) == brute);
    CHECK(stats.total == static_cast<std::int64_t>(records.size()));
    const auto max_it = std::max_element(brute.begin(), brute.end());
    CHECK(stats.max_count == *max_it);
    CHECK(stats.max_position == (max_it - brute.begin()) + 1);

    for (RowKey key : {RowKey::Classification, RowKey::ModType}) {
      const auto m = occupancy_matrix(records, key, length);
      // column sums equal residue counts
      const Eigen::VectorX<std::int64_t> sums = m.counts().cast<std::int64_t>().colwise().sum().transpose();
      CHECK(to_vector(sums) == brute);
      // row sums equal the distribution counts
      const auto dist = key == RowKey::Classification ? classification_distribution(records)
                                                      : mod_type_distribution(records);
      for (const auto& [label, count] : dist) {
        const auto row = m.row_index(label);
        REQUIRE(row);
        CHECK(m.counts().row(*row).cast<std::int64_t>().sum() == count);
      }
      // every group re-checked by literal column comparison, and every
      // repeated non-zero column belongs to a group
      const auto groups = find_repeated_patterns(m);
      std::map<std::int64_t, std::size_t> group_of;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        CHECK(groups[g].positions.size() >= 2);
        CHECK(std::is_sorted(groups[g].positions.begin(), groups[g].positions.end()));
        if (g) {
          const auto& prev = groups[g - 1].positions;
          const auto& cur = groups[g].positions;
          CHECK((prev.size() > cur.size() || (prev.size() == cur.size() && prev.front() < cur.front())));
        }
        for (std::int64_t p : groups[g].positions) {
          CHECK(m.counts().col(p - 1) == groups[g].signature);
          group_of[p] = g;
        }
        CHECK(groups[g].signature.any());
      }
      for (std::int64_t a = 1; a <= length; ++a) {
        if (!m.counts().col(a - 1).any()) continue;
        for (std::int64_t b = a + 1; b <= length; ++b) {
          if (m.counts().col(a - 1) != m.counts().col(b - 1)) continue;
          REQUIRE(group_of.count(a));
          REQUIRE(group_of.count(b));
          CHECK(group_of[a] == group_of[b]);
        }
      }
    }
  }
}
