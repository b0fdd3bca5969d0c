#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibdelay/bigint.hpp"
#include "fibdelay/errors.hpp"
#include "fibdelay/report.hpp"
#include "fibdelay/sequences.hpp"

namespace fibdelay {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Exact C(n, k) by the multiplicative formula; every intermediate
/// division is exact.
inline Integer binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Integer r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= static_cast<unsigned long>(n - k + i);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return r;
}

/// Sum over j >= 0 with (ell+1) j <= k of C(k - ell j, j).
inline Integer binomial_sum(unsigned ell, std::uint64_t k) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  Integer total = 0;
  for (std::uint64_t j = 0; (ell + 1) * j <= k; ++j) total += binomial(k - ell * j, j);
  return total;
}

/// Ordered composition of a chain into single elements (part 1) and
/// confluence blocks (part ell+1).
struct ChainComposition {
  std::vector<unsigned> parts;
  unsigned ell = 1;

  std::uint64_t length() const {
    std::uint64_t total = 0;
    for (unsigned p : parts) total += p;
    return total;
  }

  /// 'S' per single element, 'B' per block.
  std::string symbols() const {
    std::string s;
    for (unsigned p : parts) s += p == 1 ? 'S' : 'B';
    return s;
  }

  friend bool operator==(const ChainComposition&, const ChainComposition&) = default;
};

/// Visits every composition of `length` into parts {1, ell+1}, in
/// lexicographic order of the parts (1 before ell+1).
template <class Visitor>
void for_each_chain(unsigned ell, std::uint64_t length, Visitor&& visit) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  ChainComposition current{{}, ell};
  const unsigned block = ell + 1;
  auto recurse = [&](auto&& self, std::uint64_t remaining) -> void {
    if (remaining == 0) {
      visit(static_cast<const ChainComposition&>(current));
      return;
    }
    current.parts.push_back(1);
    self(self, remaining - 1);
    current.parts.pop_back();
    if (remaining >= block) {
      current.parts.push_back(block);
      self(self, remaining - block);
      current.parts.pop_back();
    }
  };
  recurse(recurse, length);
}

inline std::vector<ChainComposition> enumerate_chains(unsigned ell, std::uint64_t length,
                                                      std::uint64_t cap = kDefaultEnumerationCap) {
  const Integer count = binomial_sum(ell, length);
  if (count > Integer(static_cast<unsigned long>(cap))) {
    throw CapExceeded("enumerating chains for ell=" + std::to_string(ell) + ", length=" +
                      std::to_string(length) + " would produce " + to_string(count) +
                      " structures (cap " + std::to_string(cap) + "); count them with binomial_sum instead");
  }
  std::vector<ChainComposition> out;
  out.reserve(static_cast<std::size_t>(count.get_ui()));
  for_each_chain(ell, length, [&](const ChainComposition& c) { out.push_back(c); });
  return out;
}

/// For k = 0..k_max: binomial_sum(ell, k) against the F^(ell) recurrence, and
/// for k <= enumeration_max (and within cap) also against the number of
/// enumerated chains.
inline VerificationReport identity_check(unsigned ell, std::uint64_t k_max, std::uint64_t enumeration_max = 25,
                                         std::uint64_t cap = kDefaultEnumerationCap) {
  VerificationReport report;
  const std::string block = "chain identity ell=" + std::to_string(ell);
  RecurrenceStream<Integer> recurrence(RecurrenceSpec::higher_fibonacci(ell), 0);
  std::uint64_t enumerated = 0;
  std::string first_divergence;
  for (std::uint64_t k = 0; k <= k_max; ++k, recurrence.advance()) {
    const Integer sum = binomial_sum(ell, k);
    bool ok = sum == recurrence.value();
    std::string detail = "binomial " + to_string(sum) + ", recurrence " + to_string(recurrence.value());
    if (k <= enumeration_max && sum <= Integer(static_cast<unsigned long>(cap))) {
      std::uint64_t count = 0;
      for_each_chain(ell, k, [&](const ChainComposition&) { ++count; });
      ok = ok && Integer(static_cast<unsigned long>(count)) == sum;
      detail += ", enumerated " + std::to_string(count);
      ++enumerated;
    }
    if (!ok && first_divergence.empty()) first_divergence = "k=" + std::to_string(k) + ": " + detail;
  }
  report.add(block, "binomial sum = recurrence for k <= " + std::to_string(k_max), first_divergence.empty(),
             first_divergence.empty() ? std::to_string(k_max + 1) + " values, " + std::to_string(enumerated) +
                                            " also enumerated"
                                      : "first divergence at " + first_divergence);
  return report;
}

/// One transcribed table row: every structure of the given length.
struct ChainTable {
  unsigned ell = 1;
  std::uint64_t length = 0;
  std::vector<std::string> structures;
};

/// Fixture format: a header `ell=<n> length=<k> count=<c>` followed by c
/// lines of S/B symbols. Blank lines and lines starting with '#' are skipped.
inline std::vector<ChainTable> parse_chain_fixture(std::istream& in) {
  std::vector<ChainTable> tables;
  std::string line;
  std::size_t expected = 0;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("chain fixture line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("ell=", 0) == 0) {
      if (expected != 0) fail("previous table is short by " + std::to_string(expected) + " structures");
      unsigned ell = 0;
      unsigned long long length = 0;
      std::size_t count = 0;
      if (std::sscanf(line.c_str(), "ell=%u length=%llu count=%zu", &ell, &length, &count) != 3 || ell < 1) {
        fail("malformed header '" + line + "'");
      }
      tables.push_back({ell, length, {}});
      expected = count;
      continue;
    }
    if (tables.empty() || expected == 0) fail("structure outside a table: '" + line + "'");
    if (line.find_first_not_of("SB") != std::string::npos) fail("unexpected symbol in '" + line + "'");
    tables.back().structures.push_back(line);
    --expected;
  }
  if (expected != 0) fail("last table is short by " + std::to_string(expected) + " structures");
  return tables;
}

inline std::vector<ChainTable> load_chain_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open chain fixture: " + path);
  return parse_chain_fixture(in);
}

/// Each fixture table must equal the enumeration as a multiset.
inline VerificationReport check_chain_fixture(const std::vector<ChainTable>& tables) {
  VerificationReport report;
  for (const auto& table : tables) {
    std::vector<std::string> expected;
    for (const auto& c : enumerate_chains(table.ell, table.length)) expected.push_back(c.symbols());
    std::vector<std::string> transcribed = table.structures;
    std::sort(expected.begin(), expected.end());
    std::sort(transcribed.begin(), transcribed.end());
    const bool ok = expected == transcribed;
    report.add("chain tables", "ell=" + std::to_string(table.ell) + " length=" + std::to_string(table.length), ok,
               std::to_string(transcribed.size()) + " transcribed, " + std::to_string(expected.size()) +
                   " enumerated");
  }
  return report;
}

}  // namespace fibdelay
