#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibdelay/bigint.hpp"
#include "fibdelay/report.hpp"
#include "fibdelay/sequences.hpp"

namespace fibdelay {

// F indices split as N = 7j + k, G indices as M = 12J + K.
inline constexpr std::int64_t kFPeriod = 7;
inline constexpr std::int64_t kGPeriod = 12;
inline constexpr int kRows = 7;

struct SplitIndex {
  std::int64_t major;
  std::int64_t minor;

  friend bool operator==(const SplitIndex&, const SplitIndex&) = default;
};

inline SplitIndex reindex(Family family, std::int64_t global_index) {
  if (global_index < 0) throw std::invalid_argument("reindex needs a nonnegative index");
  const std::int64_t period = family == Family::F ? kFPeriod : kGPeriod;
  return {global_index / period, global_index % period};
}

inline std::int64_t join_index(Family family, std::int64_t major, std::int64_t minor) {
  return (family == Family::F ? kFPeriod : kGPeriod) * major + minor;
}

/// Position of F(n) inside the merged ordering of the G sequence.
///
/// lower_m is the greatest G index (scanning from -1, G(-1) = 0) with
/// G(lower_m) < F(n). G repeats small values, so several consecutive G terms
/// may equal F(n); tie_end_m is the last of them (lower_m when there is none).
struct RankResult {
  std::int64_t n = 0;
  Integer f_value;
  std::int64_t lower_m = -1;
  std::int64_t tie_end_m = -1;
  bool tie_above = false;  // G(lower_m + 1) == F(n)
  bool tie_below = false;  // G(lower_m + 2) == F(n) as well
  Integer g_lower;
  Integer g_upper;

  /// Drift offsets c with G(12K + c) <= F(n) <= G(12K + c + 1), where
  /// K is the F-major index: a single value unless ties are present.
  std::pair<std::int64_t, std::int64_t> admissible_offsets(std::int64_t major) const {
    return {lower_m - kGPeriod * major, tie_end_m - kGPeriod * major};
  }
};

/// Monotone two-pointer merge of the F and G streams. Queries must come in
/// nondecreasing n; each G term is compared O(1) times amortized.
class RankScanner {
 public:
  RankScanner()
      : f_(RecurrenceSpec::fibonacci(), 0), g_(RecurrenceSpec::gibonacci(), -1) {
    window_.push_back(g_.value());
  }

  RankResult rank_at(std::int64_t n) {
    if (n < f_.index()) {
      throw std::invalid_argument("RankScanner queries must be nondecreasing in n");
    }
    while (f_.index() < n) f_.advance();
    const Integer& f = f_.value();
    while (g_at(1) < f) {
      window_.pop_front();
      ++lower_;
    }
    std::int64_t run = 0;
    while (g_at(static_cast<std::size_t>(run) + 1) == f) ++run;

    RankResult r;
    r.n = n;
    r.f_value = f;
    r.lower_m = lower_;
    r.tie_end_m = lower_ + run;
    r.tie_above = run >= 1;
    r.tie_below = run >= 2;
    r.g_lower = g_at(0);
    r.g_upper = g_at(1);
    return r;
  }

 private:
  const Integer& g_at(std::size_t offset) {
    while (window_.size() <= offset) {
      g_.advance();
      window_.push_back(g_.value());
    }
    return window_[offset];
  }

  RecurrenceStream<Integer> f_;
  RecurrenceStream<Integer> g_;
  std::deque<Integer> window_;  // G(lower_), G(lower_ + 1), ...
  std::int64_t lower_ = -1;
};

inline RankResult rank(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("rank needs a nonnegative F index");
  return RankScanner().rank_at(n);
}

/// A maximal run of majors K in [k_start, k_end) over which F(7K + row)
/// sits between G(12K + offset) and G(12K + offset + 1).
struct BreakpointRecord {
  int row = 0;
  int stage = 0;
  std::int64_t k_start = 0;
  std::int64_t k_end = 0;  // first K where the offset fails, or k_max + 1
  std::int64_t offset = 0;
  bool closed = false;  // false when the run reaches the end of the scan
};

/// Run-length encodes the drift lower_m - 12K over K = 0..k_max.
///
/// At the handful of small indices where F ties with G, the drift is an
/// interval rather than a value; a stage continues while the intersection
/// of the admissible intervals stays nonempty.
inline std::vector<BreakpointRecord> scan_breakpoints(int row, std::int64_t k_max) {
  if (row < 0 || row >= kRows) throw std::invalid_argument("row must be in 0..6");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  RankScanner scanner;
  std::vector<BreakpointRecord> out;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t start = 0;
  auto close = [&](std::int64_t end, bool closed) {
    out.push_back({row, static_cast<int>(out.size()), start, end, lo, closed});
  };
  for (std::int64_t K = 0; K <= k_max; ++K) {
    const auto [a, b] = scanner.rank_at(join_index(Family::F, K, row)).admissible_offsets(K);
    if (K == 0) {
      lo = a;
      hi = b;
      continue;
    }
    const std::int64_t nlo = std::max(lo, a);
    const std::int64_t nhi = std::min(hi, b);
    if (nlo <= nhi) {
      lo = nlo;
      hi = nhi;
    } else {
      close(K, true);
      start = K;
      lo = a;
      hi = b;
    }
  }
  close(k_max + 1, false);
  return out;
}

/// One displayed bracket g(J1,K1) rel f(j,k) rel g(J2,K2) with its values.
struct TabulatedBracket {
  std::int64_t g_lower_major, g_lower_minor;
  bool lower_strict;
  std::int64_t f_major, f_minor;
  bool upper_strict;
  std::int64_t g_upper_major, g_upper_minor;
  long g_lower_value, f_value, g_upper_value;
};

/// Brackets for F majors 0 and 1, with the exact < / <= pattern.
inline const std::array<TabulatedBracket, 14>& tabulated_brackets() {
  static const std::array<TabulatedBracket, 14> table{{
      {0, -1, true, 0, 0, false, 0, 0, 0, 1, 1},
      {0, 1, false, 0, 1, false, 0, 2, 1, 1, 1},
      {0, 3, false, 0, 2, false, 0, 4, 2, 2, 2},
      {0, 5, false, 0, 3, true, 0, 6, 3, 3, 4},
      {0, 6, true, 0, 4, false, 0, 7, 4, 5, 5},
      {0, 8, true, 0, 5, true, 0, 9, 7, 8, 9},
      {0, 10, true, 0, 6, true, 0, 11, 12, 13, 16},
      {0, 11, true, 1, 0, false, 1, 0, 16, 21, 21},
      {1, 1, true, 1, 1, true, 1, 2, 28, 34, 37},
      {1, 3, true, 1, 2, true, 1, 4, 49, 55, 65},
      {1, 5, true, 1, 3, true, 1, 6, 86, 89, 114},
      {1, 6, true, 1, 4, true, 1, 7, 114, 144, 151},
      {1, 8, true, 1, 5, true, 1, 9, 200, 233, 265},
      {1, 10, true, 1, 6, true, 1, 11, 351, 377, 465},
  }};
  return table;
}

/// Drift offsets of stages 0 and 1 per row, and the K where each stage ends.
struct TabulatedStages {
  std::array<std::int64_t, kRows> stage0_offset{-1, 1, 3, 5, 6, 8, 10};
  std::array<std::int64_t, kRows> stage0_end{48, 35, 21, 7, 41, 27, 14};
  std::array<std::int64_t, kRows> stage1_offset{-2, 0, 2, 4, 5, 7, 9};
  std::array<std::int64_t, kRows> stage1_end{96, 82, 70, 55, 89, 75, 61};
};

namespace detail {

inline std::string g_label(std::int64_t offset) {
  // offset = 12 * shift + minor with 0 <= minor < 12
  std::int64_t shift = offset >= 0 ? offset / kGPeriod : -((-offset + kGPeriod - 1) / kGPeriod);
  const std::int64_t minor = offset - shift * kGPeriod;
  std::string major = "K";
  if (shift > 0) major += "+" + std::to_string(shift);
  if (shift < 0) major += std::to_string(shift);
  return "g(" + major + "," + std::to_string(minor) + ")";
}

inline std::string rule_label(int row, std::int64_t offset, std::int64_t k_from, std::int64_t k_to) {
  std::string range = k_from == 0 ? "K < " + std::to_string(k_to)
                                  : std::to_string(k_from) + " <= K < " + std::to_string(k_to);
  return detail::g_label(offset) + " < f(K," + std::to_string(row) + ") < " + detail::g_label(offset + 1) + ", " +
         range;
}

}  // namespace detail

/// Checks every tabulated bracket and stage rule against exact values and
/// compares the detected stage boundaries with the tabulated ones.
inline VerificationReport verify_stage_tables(std::int64_t k_max) {
  const TabulatedStages stages;
  const std::int64_t needed = *std::max_element(stages.stage1_end.begin(), stages.stage1_end.end());
  if (k_max < needed) {
    throw std::invalid_argument("verify_stage_tables needs k_max >= " + std::to_string(needed));
  }
  VerificationReport report;

  const auto F = RecurrenceSpec::fibonacci();
  const auto G = RecurrenceSpec::gibonacci();
  for (const auto& t : tabulated_brackets()) {
    const std::int64_t n = join_index(Family::F, t.f_major, t.f_minor);
    const std::int64_t m_lo = join_index(Family::G, t.g_lower_major, t.g_lower_minor);
    const std::int64_t m_hi = join_index(Family::G, t.g_upper_major, t.g_upper_minor);
    const Integer f = term_integer(F, n);
    const Integer g_lo = term_integer(G, m_lo);
    const Integer g_hi = term_integer(G, m_hi);
    const RankResult r = rank(n);

    std::vector<std::string> problems;
    if (f != t.f_value || g_lo != t.g_lower_value || g_hi != t.g_upper_value) {
      problems.push_back("values " + to_string(g_lo) + "," + to_string(f) + "," + to_string(g_hi));
    }
    if (m_hi != m_lo + 1) problems.push_back("bracket indices not consecutive");
    if (t.lower_strict ? !(g_lo < f) : g_lo != f) problems.push_back("lower relation");
    if (t.upper_strict ? !(f < g_hi) : f != g_hi) problems.push_back("upper relation");
    // Tie flags must reproduce the same pattern.
    if (m_lo < r.lower_m || m_lo > r.tie_end_m) problems.push_back("outside rank bracket");
    if (t.lower_strict != (m_lo == r.lower_m)) problems.push_back("lower tie flag");
    if (t.upper_strict == (m_lo + 1 <= r.tie_end_m)) problems.push_back("upper tie flag");

    const auto rel = [](bool strict) { return strict ? " < " : " <= "; };
    std::string label = "g(" + std::to_string(t.g_lower_major) + "," + std::to_string(t.g_lower_minor) + ")" +
                        rel(t.lower_strict) + "f(" + std::to_string(t.f_major) + "," +
                        std::to_string(t.f_minor) + ")" + rel(t.upper_strict) + "g(" +
                        std::to_string(t.g_upper_major) + "," + std::to_string(t.g_upper_minor) + ")";
    std::string detail = to_string(g_lo) + rel(t.lower_strict) + to_string(f) + rel(t.upper_strict) + to_string(g_hi);
    for (const auto& p : problems) detail += "; " + p;
    report.add(t.f_major == 0 ? "brackets j=0" : "brackets j=1", std::move(label), problems.empty(),
               std::move(detail));
  }

  std::array<std::vector<BreakpointRecord>, kRows> scans;
  for (int row = 0; row < kRows; ++row) scans[row] = scan_breakpoints(row, k_max);

  // Per-instance rule checks, reported as one line per row and stage.
  for (int stage = 0; stage < 2; ++stage) {
    const char* block = stage == 0 ? "stage 0 rules" : "stage 1 rules";
    for (int row = 0; row < kRows; ++row) {
      const std::int64_t offset = stage == 0 ? stages.stage0_offset[row] : stages.stage1_offset[row];
      const std::int64_t k_from = stage == 0 ? 0 : stages.stage0_end[row];
      const std::int64_t k_to = stage == 0 ? stages.stage0_end[row] : stages.stage1_end[row];
      RankScanner scanner;
      std::vector<std::int64_t> failing;
      for (std::int64_t K = k_from; K < k_to; ++K) {
        const auto [a, b] = scanner.rank_at(join_index(Family::F, K, row)).admissible_offsets(K);
        if (offset < a || offset > b) failing.push_back(K);
      }
      std::string detail = std::to_string(k_to - k_from) + " instances";
      if (!failing.empty()) {
        detail += ", failing at K =";
        for (std::size_t i = 0; i < failing.size() && i < 8; ++i) detail += " " + std::to_string(failing[i]);
      }
      report.add(block, detail::rule_label(row, offset, k_from, k_to), failing.empty(), std::move(detail));
    }
  }

  for (int stage = 0; stage < 2; ++stage) {
    for (int row = 0; row < kRows; ++row) {
      const std::int64_t expected = stage == 0 ? stages.stage0_end[row] : stages.stage1_end[row];
      const auto& records = scans[row];
      std::int64_t found = -1;
      if (records.size() > static_cast<std::size_t>(stage) && records[stage].closed) found = records[stage].k_end;
      report.add("stage boundaries", "row " + std::to_string(row) + " stage " + std::to_string(stage) + " ends",
                 found == expected, "found " + std::to_string(found) + ", expected " + std::to_string(expected));
    }
  }
  return report;
}

}  // namespace fibdelay
