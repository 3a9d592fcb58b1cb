#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace funkfinsler {

inline constexpr std::string_view kVersion = "1.0.0";

/// One verification check: the largest observed violation against a tolerance.
///
/// For ordinary checks pass means max_violation <= tolerance. Strict checks
/// (sign laws) need max_violation < tolerance, typically with tolerance 0.
struct CheckRecord {
  std::string name;
  std::size_t samples = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool strict = false;
  std::string note;
};

inline CheckRecord make_record(std::string name, std::size_t samples, double max_violation, double tolerance,
                               bool strict = false, std::string note = {}) {
  CheckRecord rec{std::move(name), samples, max_violation, tolerance, false, strict, std::move(note)};
  rec.pass = strict ? max_violation < tolerance : max_violation <= tolerance;
  return rec;
}

struct VerificationReport {
  int eps = 0;
  double r = 1.0;
  std::uint64_t seed = 0;
  std::string generator;
  std::string version{kVersion};
  std::vector<CheckRecord> records;

  bool pass() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& c) { return c.pass; });
  }

  // Records merge by name so the order never depends on evaluation order.
  void sort() {
    std::sort(records.begin(), records.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  }

  const CheckRecord* find(std::string_view name) const {
    for (const CheckRecord& c : records)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace funkfinsler
