#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pencil/rng.hpp"
#include "pencil/serialize.hpp"

namespace pencil {

struct PipelineConfig {
    std::string space_source;     // "gen:name:p1,p2,..." or a JSON file path
    int source = 0;
    int sink = -1;                // -1 resolves to the last point
    int scale_exp = 3;            // n; the net scale is r_n = 2^-n * d(s,t)
    double c0 = 4.0;              // domain-ball and support constant
    double lambda = 1.0;          // PI dilation factor
    double lip_radius_multiplier = 2.0; // lip radius = multiplier * resolution
    double good_half_multiplier = 2.0;  // threshold = multiplier * mean curve length
    int geodesic_knn = 0;         // >0: replace the metric by its k-NN shortest-path closure
    std::uint64_t seed = 0;
    int num_g = 20;               // random g for the pencil inequality
    int num_lip_tests = 20;          // random Lipschitz u for the boundary-mass inequality
    int num_pi = 10;              // random PI ball instances
    bool include_timings = false; // wall times make reports non-reproducible; opt-in
};

struct PipelineResult {
    json report;
    json pencil_doc;   // final (good-half) pencil dump; null when skipped
    json current_doc;  // normalized current dump; null when skipped
    json boundary_doc; // boundary atoms; null when skipped
    bool checks_ok = true;  // every executed verification passed
    bool pi_failure = false; // no s-t flow at this scale (certificate emitted)
};

// Resolves config.space_source (generator spec or file) and applies the
// optional geodesic closure.
Space load_space(const PipelineConfig& config);

// net -> graph -> max flow -> min cut -> current -> cycle removal ->
// decomposition -> good half -> verifications, all at one scale.
PipelineResult run_pipeline(const PipelineConfig& config, const Space& space);
PipelineResult run_pipeline(const PipelineConfig& config);

struct SweepResult {
    json report; // {"scales": [per-scale reports], "summary": {...}}
    bool checks_ok = true;
};

SweepResult sweep_scales(const PipelineConfig& config, const Space& space,
                         int n_min, int n_max);

// Structural check that a report carries every required section (present or
// explicitly skipped).
bool validate_report(const json& report, std::string* why = nullptr);

// Seeded test-function builders shared by the pipeline, the CLI and tests.
std::vector<double> random_nonneg_g(Rng& rng, int n);
std::vector<double> random_mcshane(Rng& rng, const Space& space);

} // namespace pencil
