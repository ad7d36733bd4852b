#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linent/bounds.hpp"
#include "linent/density.hpp"
#include "linent/rng.hpp"

namespace linent {

enum class Ensemble { hs, pure, rank_k };

const char* ensemble_name(Ensemble e);
Ensemble ensemble_from_name(const std::string& name);

struct SamplerConfig {
    std::vector<int> dims{2, 2};
    Ensemble ensemble = Ensemble::hs;
    std::size_t rank = 1;            // rank_k ensemble only
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    bool inject_extremal = false;
    std::string output_prefix;       // empty: no files written
};

// Each sampler draws only from the supplied per-sample substream, so a
// sample's state depends on (master seed, sample index) and nothing else.
DensityMatrix sample_hs_state(const std::vector<int>& dims, SampleRng& rng);
DensityMatrix sample_pure_state(const std::vector<int>& dims, SampleRng& rng);
DensityMatrix sample_rank_k_state(const std::vector<int>& dims,
                                  std::size_t rank, SampleRng& rng);

struct BoundStats {
    std::size_t applicable_count = 0;
    std::size_t violations = 0;  // slack < -1e-9 among applicable samples
    double min_slack = std::numeric_limits<double>::infinity();
    std::size_t argmin_index = 0;
    std::vector<double> slack_deciles;  // 11 order statistics, empty if none
    std::vector<std::pair<std::string, double>> min_slack_by_branch;
};

struct CampaignReport {
    SamplerConfig config;
    std::size_t samples = 0;  // records kept (== count unless aborted)
    std::size_t total_violations = 0;
    std::size_t witness_count = 0;
    bool aborted = false;
    std::string abort_reason;
    std::vector<std::pair<std::string, BoundStats>> bounds;
    std::string jsonl_path;   // set when files were requested
    std::string summary_path;
    std::string io_error;     // non-empty: file writing failed part-way
    double wall_seconds = 0.0;  // stdout only, never serialized
};

CampaignReport run_campaign(const SamplerConfig& config);

// Summary of a campaign with every field that could differ between equal
// configs removed: no wall time, no worker count.
nlohmann::ordered_json campaign_summary_json(const CampaignReport& report);

struct IdentityCheckResult {
    bool passed = true;
    std::vector<std::string> failures;
};

// Deterministic algebraic checks: upper-bound gap identity, branch-seam
// coincidence and gradient, and the Bloch purity decomposition.
IdentityCheckResult identity_suite(const std::vector<DimPair>& pairs,
                                   std::uint64_t seed);

}  // namespace linent
