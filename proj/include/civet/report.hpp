#pragma once

#include "civet/dataset.hpp"
#include "civet/driftwatch.hpp"
#include "civet/records.hpp"
#include "civet/resample.hpp"
#include "civet/rng.hpp"
#include "civet/stability.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace civet {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "civet-report/1";
inline constexpr uint64_t kDefaultSeed = 17;

struct ReportOptions {
    int b = kDefaultReplicates;
    double alpha = kDefaultAlpha;
    uint64_t seed = kDefaultSeed;
    double target_width_share = kDefaultTargetWidthShare;
    double target_width_prevalence = kDefaultTargetWidthPrevalence;
    StabilityThresholds stability;
    double drift_alpha = kDefaultDriftAlpha;
    double practical_delta = kDefaultPracticalDelta;
    size_t grid_step = 10;
    Exec exec = Exec::parallel;
    // (path, sha256) of the inputs, recorded in report.json provenance
    std::vector<std::pair<std::string, std::string>> inputs;
};

/// Names of every file the report writes, in write order.
std::vector<std::string> report_file_names();

/// Full pipeline: per-(platform, topic) metrics, overlap, dispersion,
/// bootstrap CIs, convergence, rank stability, drift, and content status,
/// exported as plot-ready CSVs plus report.json. Output is a pure function
/// of (dataset, ledger, job order, options): no clocks, no randomness
/// outside the seed.
std::vector<std::string> write_report(const Dataset& dataset, const ChecksumLedger* ledger,
                                      const std::vector<std::string>& job_order,
                                      const ReportOptions& options,
                                      const std::filesystem::path& out_dir);

} // namespace civet
