#include "xsltevo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "xsltevo/xslt.hpp"

namespace xsltevo {

namespace {

int parse_int(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": expected an integer, got '" + value + "'");
    }
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": expected an integer, got '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": expected a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key " + key + ": expected a boolean, got '" + value + "'");
}

StructureType parse_type(const std::string& key, const std::string& value) {
    if (value == "1" || value == "type1") return StructureType::Type1;
    if (value == "2" || value == "type2") return StructureType::Type2;
    throw ConfigError("config key " + key + ": expected 1 or 2, got '" + value + "'");
}

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

// Linear-interpolation percentile over a sorted sample.
double percentile(const std::vector<long long>& sorted, double p) {
    if (sorted.empty()) return -1;
    if (sorted.size() == 1) return double(sorted[0]);
    double h = p * double(sorted.size() - 1);
    size_t lo = size_t(std::floor(h));
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = h - double(lo);
    return double(sorted[lo]) + frac * double(sorted[hi] - sorted[lo]);
}

}  // namespace

void apply_config(const KeyValueConfig& config, ExperimentSpec& spec) {
    for (const auto& [key, value] : config.values) {
        if (key == "evolve.population") {
            spec.evolve.population = parse_int(key, value);
        } else if (key == "evolve.generations") {
            spec.evolve.max_generations = parse_int(key, value);
        } else if (key == "evolve.tournament") {
            spec.evolve.tournament = parse_int(key, value);
        } else if (key == "evolve.elitism") {
            spec.evolve.elitism = parse_int(key, value);
        } else if (key == "evolve.applications-per-offspring") {
            spec.evolve.applications_per_offspring = parse_int(key, value);
        } else if (key == "evolve.type") {
            spec.evolve.type = parse_type(key, value);
        } else if (key == "init.min-templates") {
            spec.evolve.init.min_templates = parse_int(key, value);
        } else if (key == "init.max-templates") {
            spec.evolve.init.max_templates = parse_int(key, value);
        } else if (key == "init.min-instructions") {
            spec.evolve.init.min_instructions = parse_int(key, value);
        } else if (key == "init.max-instructions") {
            spec.evolve.init.max_instructions = parse_int(key, value);
        } else if (key == "init.shallow-bias") {
            spec.evolve.init.shallow_bias = parse_double(key, value);
        } else if (key == "limits.max-recursion-depth") {
            spec.evolve.limits.max_recursion_depth = parse_int(key, value);
        } else if (key == "limits.max-output-lines") {
            spec.evolve.limits.max_output_lines = parse_int(key, value);
        } else if (key == "output.wrapper-tag") {
            spec.evolve.wrapper_tag = value;
        } else if (key == "output.wrapper-from-root") {
            spec.evolve.wrapper_from_root = parse_bool(key, value);
        } else if (key == "output.line-tag") {
            spec.evolve.line_tag = value;
        } else if (key == "operator.group-balance") {
            spec.group_balance = parse_double(key, value);
        } else if (key.rfind("operator.type1.", 0) == 0 ||
                   key.rfind("operator.type2.", 0) == 0) {
            StructureType type = key[13] == '1' ? StructureType::Type1 : StructureType::Type2;
            std::string name = key.substr(15);
            auto kind = operator_from_name(name);
            if (!kind) throw ConfigError("unknown operator in config key: " + key);
            spec.operator_overrides.push_back({type, *kind, parse_double(key, value)});
        } else if (key == "experiment.runs") {
            spec.runs = parse_int(key, value);
        } else if (key == "experiment.base-seed") {
            spec.base_seed = parse_u64(key, value);
        } else if (key == "experiment.threads") {
            spec.threads = parse_int(key, value);
        } else if (key == "experiment.zero-wall-ms") {
            spec.zero_wall_ms = parse_bool(key, value);
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
}

OperatorTable resolve_operator_table(const ExperimentSpec& spec) {
    OperatorTable table = spec.evolve.operators ? *spec.evolve.operators
                                                : default_operator_table(spec.evolve.type);
    for (const auto& override_ : spec.operator_overrides) {
        if (override_.type != spec.evolve.type) continue;
        table.weight[size_t(override_.kind)] = override_.weight;
    }
    if (spec.group_balance) table.group_balance = *spec.group_balance;
    try {
        check_operator_table(table, spec.evolve.type);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return table;
}

ExperimentResult run_experiment(const ExperimentSpec& spec,
                                std::shared_ptr<const Document> input, const Document& target) {
    if (spec.runs < 1) throw ConfigError("experiment needs at least one run");
    EvolveConfig base = spec.evolve;
    base.operators = resolve_operator_table(spec);

    ExperimentResult result;
    result.runs.resize(size_t(spec.runs));

    unsigned hw = std::thread::hardware_concurrency();
    int threads = spec.threads > 0 ? spec.threads : int(hw ? hw : 1);
    threads = std::min(threads, spec.runs);

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= spec.runs) return;
            try {
                EvolveConfig cfg = base;
                cfg.seed = spec.base_seed + uint64_t(i);
                result.runs[size_t(i)] = run_evolution(cfg, input, target);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; t++) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    result.summary = summarize(result.runs);
    return result;
}

ExperimentResult run_experiment_files(const ExperimentSpec& spec) {
    auto input = std::make_shared<const Document>(load_xml_file(spec.input_path));
    Document target = load_xml_file(spec.target_path);
    ExperimentResult result = run_experiment(spec, input, target);
    write_experiment_outputs(spec, result);
    return result;
}

ExperimentSummary summarize(const std::vector<RunResult>& runs) {
    ExperimentSummary s;
    s.runs = int(runs.size());
    std::vector<long long> evals;
    for (const RunResult& run : runs) {
        if (!run.success) continue;
        s.successes++;
        evals.push_back(run.evaluations);
    }
    std::sort(evals.begin(), evals.end());
    if (!evals.empty()) {
        s.median_evaluations = percentile(evals, 0.5);
        s.q1_evaluations = percentile(evals, 0.25);
        s.q3_evaluations = percentile(evals, 0.75);
        s.min_evaluations = evals.front();
        s.max_evaluations = evals.back();
    }
    return s;
}

std::string stats_csv(const ExperimentSpec& spec, const ExperimentResult& result) {
    std::string out = "run,seed,success,evaluations,generations,deletions,additions,length,wall_ms";
    for (int k = 0; k < kOperatorCount; k++) {
        out += ",";
        out += operator_name(OperatorKind(k));
        out += ",";
        out += operator_name(OperatorKind(k));
        out += "-noop";
    }
    out += ",crossover-discards\n";

    for (size_t i = 0; i < result.runs.size(); i++) {
        const RunResult& run = result.runs[i];
        out += std::to_string(i);
        out += "," + std::to_string(spec.base_seed + i);
        out += std::string(",") + (run.success ? "1" : "0");
        out += "," + std::to_string(run.evaluations);
        out += "," + std::to_string(run.generations);
        out += "," + std::to_string(run.best_fitness.deletions);
        out += "," + std::to_string(run.best_fitness.additions);
        out += "," + std::to_string(run.best_fitness.length);
        out += "," + std::to_string(spec.zero_wall_ms ? 0LL : llround(run.wall_ms));
        for (int k = 0; k < kOperatorCount; k++) {
            out += "," + std::to_string(run.op_stats[size_t(k)].applied);
            out += "," + std::to_string(run.op_stats[size_t(k)].noop);
        }
        out += "," + std::to_string(run.crossover_discards);
        out += "\n";
    }
    return out;
}

std::string summary_csv(const ExperimentSummary& summary) {
    std::string out =
        "runs,successes,success_rate,median_evaluations,q1_evaluations,q3_evaluations,"
        "min_evaluations,max_evaluations\n";
    out += std::to_string(summary.runs);
    out += "," + std::to_string(summary.successes);
    out += "," + fmt(summary.runs ? double(summary.successes) / summary.runs : 0.0, 4);
    out += "," + fmt(summary.median_evaluations, 1);
    out += "," + fmt(summary.q1_evaluations, 1);
    out += "," + fmt(summary.q3_evaluations, 1);
    out += "," + std::to_string(summary.min_evaluations);
    out += "," + std::to_string(summary.max_evaluations);
    out += "\n";
    return out;
}

void write_experiment_outputs(const ExperimentSpec& spec, const ExperimentResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(spec.out_dir);
    auto write = [](const fs::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write file: " + path.string());
        out << content;
    };
    for (size_t i = 0; i < result.runs.size(); i++)
        write(fs::path(spec.out_dir) / ("run-" + std::to_string(i) + ".xsl"),
              render_stylesheet(result.runs[i].best.sheet));
    write(fs::path(spec.out_dir) / "stats.csv", stats_csv(spec, result));
    write(fs::path(spec.out_dir) / "summary.csv", summary_csv(result.summary));
}

}  // namespace xsltevo
