#pragma once

// Range scans written as JSON lines. With an output path the scan keeps a
// cursor side-file (<out>.cursor) holding the next unprocessed key and the
// byte length of the committed output, so an interrupted scan resumes
// from its last merged batch.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "serialize.hpp"

namespace fltkit::cli {

struct ScanOptions {
    std::string what;              // genus | abc | compcrit | kraus
    std::int64_t dmax = 0;         // squarefree d in [2, dmax]
    std::int64_t lmax = 0;         // primes l = 1 mod 24 up to lmax (kraus)
    unsigned long r1max = 40;      // kraus
    std::optional<std::string> out;
    unsigned jobs = 1;
    std::size_t batch = 256;       // keys per merged batch
};

struct ScanSummary {
    std::size_t records = 0;
    std::size_t errors = 0;        // envelope or domain failures
    std::size_t envelope_errors = 0;
    std::size_t disagreements = 0; // failed cross-checks
    Json stats;                    // kind-specific counts
};

/// Genus-theory and class-group evaluations of conditions (a), (b), (c)
/// agree wherever both are defined.
bool conditions_agree(const QuadFieldReport& g, const DirectConditions& c);

/// Keys of the scan in processing order.
std::vector<std::int64_t> scan_keys(const ScanOptions& opts);

/// The record for one key, without the timestamp field.
Json scan_record(const std::string& what, std::int64_t key, unsigned long r1max);

ScanSummary summarize(const std::string& what, const std::vector<Json>& records, std::int64_t bound);

/// Runs the scan; returns the exit code (0, 1 usage, 2 cross-check, 3 envelope).
int run_scan(const ScanOptions& opts, std::ostream& out, std::ostream& err);

} // namespace fltkit::cli
