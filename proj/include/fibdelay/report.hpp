#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace fibdelay {

/// One checked statement: which block it belongs to, what it claims, and
/// what was observed.
struct CheckLine {
  std::string block;
  std::string label;
  bool passed = false;
  std::string detail;
};

/// Verification outcome. Failures are content, never exceptions.
struct VerificationReport {
  std::vector<CheckLine> lines;

  void add(std::string block, std::string label, bool passed, std::string detail = {}) {
    lines.push_back({std::move(block), std::move(label), passed, std::move(detail)});
  }

  void append(const VerificationReport& other) {
    lines.insert(lines.end(), other.lines.begin(), other.lines.end());
  }

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [](const CheckLine& l) { return !l.passed; }));
  }

  bool passed() const { return failures() == 0; }

  const CheckLine* first_failure() const {
    auto it = std::find_if(lines.begin(), lines.end(), [](const CheckLine& l) { return !l.passed; });
    return it == lines.end() ? nullptr : &*it;
  }
};

}  // namespace fibdelay
