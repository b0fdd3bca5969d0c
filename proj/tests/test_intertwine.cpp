#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "fibdelay/intertwine.hpp"

using namespace fibdelay;

namespace {

constexpr std::int64_t kHorizon = 10'000;

struct Oracle {
  std::vector<Integer> f;
  std::vector<Integer> g;  // g[i] = G(i - 1)

  Oracle() {
    f = {1, 1};
    while (f.size() <= static_cast<std::size_t>(kHorizon)) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
    g = {0, 1, 1, 1};
    while (g.back() <= f.back()) g.push_back(g[g.size() - 2] + g[g.size() - 3]);
  }

  // Greatest M with G(M) < value, and the last M with G(M) == value.
  std::pair<std::int64_t, std::int64_t> bracket(const Integer& value) const {
    const auto lo = std::lower_bound(g.begin(), g.end(), value);
    const auto hi = std::upper_bound(g.begin(), g.end(), value);
    return {(lo - g.begin()) - 2, (hi - g.begin()) - 2};
  }
};

const Oracle& oracle() {
  static const Oracle o;
  return o;
}

}  // namespace

TEST(Intertwine, Reindexing) {
  EXPECT_EQ(reindex(Family::G, 23), (SplitIndex{1, 11}));
  EXPECT_EQ(reindex(Family::F, 10), (SplitIndex{1, 3}));
  EXPECT_EQ(reindex(Family::F, 0), (SplitIndex{0, 0}));
  EXPECT_THROW(reindex(Family::F, -1), std::invalid_argument);
  for (std::int64_t m = 0; m < 500; ++m) {
    const auto s = reindex(Family::G, m);
    ASSERT_EQ(join_index(Family::G, s.major, s.minor), m);
    ASSERT_LT(s.minor, kGPeriod);
  }
}

TEST(Intertwine, RankExamples) {
  const auto r5 = rank(5);
  EXPECT_EQ(r5.lower_m, 8);
  EXPECT_FALSE(r5.tie_above);
  EXPECT_EQ(r5.g_lower, 7);
  EXPECT_EQ(r5.g_upper, 9);

  const auto r0 = rank(0);
  EXPECT_EQ(r0.lower_m, -1);
  EXPECT_TRUE(r0.tie_above);
  EXPECT_TRUE(r0.tie_below);
  EXPECT_EQ(r0.tie_end_m, 2);
  EXPECT_EQ(r0.g_lower, 0);

  const auto r10 = rank(10);
  EXPECT_EQ(r10.f_value, 89);
  EXPECT_EQ(r10.lower_m, 17);
  EXPECT_EQ(r10.g_lower, 86);
  EXPECT_EQ(r10.g_upper, 114);

  const auto r7 = rank(7);
  EXPECT_EQ(r7.lower_m, 11);
  EXPECT_TRUE(r7.tie_above);
  EXPECT_FALSE(r7.tie_below);
  EXPECT_THROW(rank(-1), std::invalid_argument);
}

TEST(Intertwine, ScannerRejectsBackwardQueries) {
  RankScanner s;
  s.rank_at(10);
  EXPECT_THROW(s.rank_at(9), std::invalid_argument);
  EXPECT_EQ(s.rank_at(10).lower_m, 17);
}

TEST(Intertwine, RankMatchesBruteForce) {
  const auto& o = oracle();
  RankScanner scanner;
  for (std::int64_t n = 0; n <= kHorizon; ++n) {
    const auto r = scanner.rank_at(n);
    const auto [lower, tie_end] = o.bracket(o.f[n]);
    ASSERT_EQ(r.lower_m, lower) << n;
    ASSERT_EQ(r.tie_end_m, tie_end) << n;
    ASSERT_LT(r.g_lower, r.f_value);
    if (r.tie_above) {
      ASSERT_EQ(r.g_upper, r.f_value);
    } else {
      ASSERT_LT(r.f_value, r.g_upper);
    }
    if (n >= 8) {
      ASSERT_FALSE(r.tie_above) << n;
      ASSERT_FALSE(r.tie_below) << n;
    }
  }
}

TEST(Intertwine, ScanExamples) {
  const auto row3 = scan_breakpoints(3, 60);
  ASSERT_GE(row3.size(), 2u);
  EXPECT_EQ(row3[0].k_end, 7);
  EXPECT_TRUE(row3[0].closed);

  const auto row0 = scan_breakpoints(0, 100);
  ASSERT_GE(row0.size(), 3u);
  EXPECT_EQ(row0[0].k_end, 48);
  EXPECT_EQ(row0[1].k_start, 48);
  EXPECT_EQ(row0[1].k_end, 96);
  EXPECT_EQ(row0[0].offset, -1);
  EXPECT_EQ(row0[1].offset, -2);
  EXPECT_FALSE(row0.back().closed);
  EXPECT_EQ(row0.back().k_end, 101);

  EXPECT_THROW(scan_breakpoints(7, 10), std::invalid_argument);
  EXPECT_THROW(scan_breakpoints(0, 0), std::invalid_argument);
}

TEST(Intertwine, ComputedStageBoundaries) {
  const TabulatedStages t;
  const std::array<std::int64_t, kRows> stage1_found{96, 82, 69, 55, 89, 75, 61};
  for (int row = 0; row < kRows; ++row) {
    const auto records = scan_breakpoints(row, 100);
    ASSERT_GE(records.size(), 3u);
    EXPECT_EQ(records[0].k_end, t.stage0_end[row]) << row;
    EXPECT_EQ(records[0].offset, t.stage0_offset[row]) << row;
    EXPECT_EQ(records[1].k_end, stage1_found[row]) << row;
    EXPECT_EQ(records[1].offset, t.stage1_offset[row]) << row;
  }
}

TEST(Intertwine, RowOffsetSchema) {
  for (int row = 0; row < kRows; ++row) {
    const auto records = scan_breakpoints(row, 200);
    ASSERT_FALSE(records.empty());
    EXPECT_EQ(records.front().k_start, 0);
    for (std::size_t s = 0; s < records.size(); ++s) {
      const auto& rec = records[s];
      EXPECT_EQ(rec.stage, static_cast<int>(s));
      EXPECT_LT(rec.k_start, rec.k_end);
      if (s > 0) {
        EXPECT_EQ(rec.k_start, records[s - 1].k_end);
        EXPECT_EQ(rec.offset, records[s - 1].offset - 1) << "row " << row << " stage " << s;
      }
      RankScanner scanner;
      for (std::int64_t K = rec.k_start; K < rec.k_end; ++K) {
        const auto [a, b] = scanner.rank_at(join_index(Family::F, K, row)).admissible_offsets(K);
        ASSERT_LE(a, rec.offset);
        ASSERT_GE(b, rec.offset);
        if (K >= 2) {
          ASSERT_EQ(a, rec.offset);
        }
      }
    }
    EXPECT_EQ(records.back().k_end, 201);
  }
}

TEST(Intertwine, StageLengthsGrow) {
  for (int row = 0; row < kRows; ++row) {
    const auto records = scan_breakpoints(row, 200);
    ASSERT_GE(records.size(), 2u);
    EXPECT_GE(records[1].k_end - records[1].k_start, records[0].k_end - records[0].k_start) << row;
  }
}

TEST(Intertwine, StageTableReport) {
  EXPECT_THROW(verify_stage_tables(95), std::invalid_argument);
  const auto report = verify_stage_tables(100);
  EXPECT_EQ(report.lines.size(), 14u + 7u + 7u + 14u);

  std::set<std::string> failing;
  for (const auto& l : report.lines) {
    if (!l.passed) failing.insert(l.block + ": " + l.label);
  }
  // The tabulated row-2 stage-1 boundary is one past the computed one.
  const std::set<std::string> expected{
      "stage 1 rules: g(K,2) < f(K,2) < g(K,3), 21 <= K < 70",
      "stage boundaries: row 2 stage 1 ends",
  };
  EXPECT_EQ(failing, expected);

  std::size_t ties = 0;
  for (const auto& b : tabulated_brackets()) ties += !b.lower_strict + !b.upper_strict;
  EXPECT_EQ(ties, 8u);
}

TEST(Intertwine, TieFlagsReproduceTabulatedPattern) {
  for (const auto& b : tabulated_brackets()) {
    const auto r = rank(join_index(Family::F, b.f_major, b.f_minor));
    const std::int64_t m_lo = join_index(Family::G, b.g_lower_major, b.g_lower_minor);
    EXPECT_EQ(b.lower_strict, m_lo == r.lower_m) << m_lo;
    EXPECT_EQ(b.upper_strict, m_lo + 1 > r.tie_end_m) << m_lo;
  }
}
