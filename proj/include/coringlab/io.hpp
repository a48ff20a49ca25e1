#pragma once

#include <functional>
#include <iosfwd>
#include <set>

#include "coringlab/galois.hpp"
#include "coringlab/instances.hpp"

namespace coringlab::io {

/// Canonical plain-text instance format: one `key value...` line per datum,
/// blocks and keys emitted in sorted order, matrices row-major. Canonical
/// files round-trip byte-identically through parse/serialize.
std::string serialize(const inst::Instance& in);
inst::Instance parse(const std::string& text);

inst::Instance load_file(const std::string& path);
void save_file(const inst::Instance& in, const std::string& path);

struct VerificationReport {
    Report records;
    std::vector<std::pair<std::string, int>> dims;  // name -> dimension table
    std::uint64_t seed = 1;
    std::vector<std::pair<std::string, double>> timings_ms;  // per suite
    bool pass() const { return records.pass(); }
};

inline const std::set<std::string> kAllSuites = {"systems",    "comatrix", "coring",
                                                 "adjunction", "descent",  "galois"};

/// Run the selected verification suites on an instance.
VerificationReport verify(const inst::Instance& in, const std::set<std::string>& suites,
                          std::uint64_t seed = 1);

std::string render_text(const VerificationReport& rep);
/// One JSON record per identity: {suite, identity, status, counterexample}.
std::string render_machine(const VerificationReport& rep);

/// Re-truncate a lazy instance to its first `level` levels.
inst::Instance truncate_levels(const inst::Instance& in, int level);

}  // namespace coringlab::io
