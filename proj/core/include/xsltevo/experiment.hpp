#pragma once

#include <string>
#include <vector>

#include "xsltevo/config.hpp"
#include "xsltevo/evolve.hpp"

namespace xsltevo {

// A batch of independent evolution runs on one input/target pair.
// Run i uses seed = base_seed + i; runs may execute on worker threads
// without affecting any result.
struct ExperimentSpec {
    std::string input_path;
    std::string target_path;
    std::string out_dir = "evolve-out";
    int runs = 30;
    uint64_t base_seed = 1;
    int threads = 0;            // 0: hardware concurrency
    bool zero_wall_ms = false;  // write wall_ms as 0 for byte-stable records
    EvolveConfig evolve;

    struct OperatorOverride {
        StructureType type;
        OperatorKind kind;
        double weight;
    };
    std::vector<OperatorOverride> operator_overrides;
    std::optional<double> group_balance;
};

struct ExperimentSummary {
    int runs = 0;
    int successes = 0;
    // Over evaluations of successful runs; -1 when there were none.
    double median_evaluations = -1;
    double q1_evaluations = -1;
    double q3_evaluations = -1;
    long long min_evaluations = -1;
    long long max_evaluations = -1;
};

struct ExperimentResult {
    std::vector<RunResult> runs;
    ExperimentSummary summary;
};

// Applies recognized config keys onto the spec; unknown keys raise ConfigError.
void apply_config(const KeyValueConfig& config, ExperimentSpec& spec);

// Resolved operator table for the spec (defaults + overrides), validated.
OperatorTable resolve_operator_table(const ExperimentSpec& spec);

ExperimentResult run_experiment(const ExperimentSpec& spec, std::shared_ptr<const Document> input,
                                const Document& target);

// Loads input/target from the spec's paths, runs, writes all outputs.
ExperimentResult run_experiment_files(const ExperimentSpec& spec);

ExperimentSummary summarize(const std::vector<RunResult>& runs);

std::string stats_csv(const ExperimentSpec& spec, const ExperimentResult& result);
std::string summary_csv(const ExperimentSummary& summary);

// run-<i>.xsl for every run plus stats.csv and summary.csv under out_dir.
void write_experiment_outputs(const ExperimentSpec& spec, const ExperimentResult& result);

}  // namespace xsltevo
