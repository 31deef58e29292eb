#pragma once

// Per-prime scan results shared by the form and curve scanners.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arithlab {

struct ScanEntry {
  std::uint64_t p = 0;
  std::string status;
  std::string detail;
  std::optional<std::string> witness;
  bool degenerate = false;
};

struct ScanReport {
  std::string subject;
  std::uint64_t p_max = 0;
  std::vector<ScanEntry> entries;            // sorted by p
  std::map<std::string, std::size_t> counts;  // status -> number of primes
  std::vector<std::uint64_t> excluded;        // primes skipped by policy
  std::string verdict;
};

/// Recomputes counts from entries.
inline void tally(ScanReport& r) {
  r.counts.clear();
  for (const auto& e : r.entries) ++r.counts[e.status];
}

}  // namespace arithlab
