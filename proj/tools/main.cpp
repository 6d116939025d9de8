// Command line driver: batch evolution experiments plus the small utility
// commands (apply a stylesheet, score one, regenerate the bundled corpus).

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "xsltevo/corpus.hpp"
#include "xsltevo/experiment.hpp"
#include "xsltevo/xslt.hpp"

namespace {

using namespace xsltevo;

int cmd_evolve(const ExperimentSpec& spec) {
    ExperimentResult result = run_experiment_files(spec);
    const ExperimentSummary& s = result.summary;
    std::cout << "runs: " << s.runs << "  successes: " << s.successes;
    if (s.successes > 0)
        std::cout << "  median evaluations: " << s.median_evaluations << "  (q1 "
                  << s.q1_evaluations << ", q3 " << s.q3_evaluations << ")";
    std::cout << "\nwrote " << spec.out_dir << "/stats.csv, summary.csv and run-<i>.xsl\n";
    return 0;
}

int cmd_apply(const std::string& sheet_path, const std::string& input_path,
              const std::string& line_tag) {
    Stylesheet sheet = parse_stylesheet(load_xml_file(sheet_path), line_tag);
    Document input = load_xml_file(input_path);
    int height = 0;
    for (const Node& n : input.nodes)
        if (n.is_element()) height = std::max(height, int(n.depth));
    Document output = transform(sheet, input, TransformLimits{height + 8, 1000000});
    std::cout << serialize(output, true);
    return 0;
}

int cmd_fitness(const std::string& sheet_path, const std::string& input_path,
                const std::string& target_path, const std::string& line_tag) {
    Stylesheet sheet = parse_stylesheet(load_xml_file(sheet_path), line_tag);
    Document input = load_xml_file(input_path);
    Document target = load_xml_file(target_path);
    std::vector<std::string> target_lines = canonical_lines(target, line_tag);
    int height = 0;
    for (const Node& n : input.nodes)
        if (n.is_element()) height = std::max(height, int(n.depth));
    TransformLimits limits{height + 8, 16 * int(target_lines.size()) + 64};

    int deletions, additions;
    try {
        Document output = transform(sheet, input, limits);
        std::vector<std::string> obtained = canonical_lines(output, line_tag);
        auto diff = line_diff(obtained, target_lines);
        deletions = diff.first;
        additions = diff.second;
    } catch (const TransformOverflow&) {
        std::cerr << "transform overflowed its limits\n";
        return 1;
    }
    std::printf("deletions=%d additions=%d length=%d\n", deletions, additions,
                sheet_size(sheet));
    return 0;
}

int cmd_gen_corpus(const std::string& dir, const std::string& profile) {
    write_corpus(dir, profile);
    for (const CorpusPair& pair : corpus_pairs(profile))
        std::cout << "pair " << pair.number << " (" << pair.name << "): pair-" << pair.number
                  << "-{input.xml,target.xml,oracle.xsl}\n";
    std::cout << "wrote corpus to " << dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"xsltevo - evolves restricted XSLT stylesheets from an input/target XML pair"};
    app.require_subcommand(1);

    // evolve
    auto* evolve = app.add_subcommand("evolve", "Run a batch evolution experiment");
    std::string input_path, target_path, config_path;
    ExperimentSpec spec;
    int type_flag = 1;
    bool wrapper_from_root = false;
    evolve->add_option("--input", input_path, "Input XML file")->required();
    evolve->add_option("--target", target_path, "Target XML file")->required();
    auto* type_opt = evolve->add_option("--type", type_flag, "Genome structure type (1 or 2)")
                         ->check(CLI::IsMember({1, 2}));
    auto* pop_opt = evolve->add_option("--pop", spec.evolve.population, "Population size");
    auto* gens_opt = evolve->add_option("--gens", spec.evolve.max_generations, "Max generations");
    auto* tour_opt = evolve->add_option("--tournament", spec.evolve.tournament, "Tournament size");
    auto* runs_opt = evolve->add_option("--runs", spec.runs, "Independent runs");
    auto* seed_opt = evolve->add_option("--seed", spec.base_seed, "Base seed (run i adds i)");
    auto* elite_opt = evolve->add_option("--elitism", spec.evolve.elitism, "Elite copies per generation");
    auto* out_opt = evolve->add_option("--out", spec.out_dir, "Output directory");
    auto* threads_opt = evolve->add_option("--threads", spec.threads, "Worker threads (0 = auto)");
    auto* wrap_opt = evolve->add_option("--wrapper-tag", spec.evolve.wrapper_tag,
                                        "Output wrapper element name");
    auto* wrap_root_opt = evolve->add_flag("--wrapper-from-root", wrapper_from_root,
                                           "Name the wrapper after the input root element");
    auto* line_opt = evolve->add_option("--line-tag", spec.evolve.line_tag,
                                        "Intended-output marker element name");
    auto* zero_opt = evolve->add_flag("--zero-wall-ms", spec.zero_wall_ms,
                                      "Write wall_ms as 0 for byte-stable records");
    evolve->add_option("--config", config_path, "Flat key = value config file");

    // apply
    auto* apply = app.add_subcommand("apply", "Apply a restricted stylesheet to an input");
    std::string a_sheet, a_input, a_line = "line";
    apply->add_option("stylesheet", a_sheet, "Stylesheet file")->required();
    apply->add_option("input", a_input, "Input XML file")->required();
    apply->add_option("--line-tag", a_line, "Intended-output marker element name");

    // fitness
    auto* fitness = app.add_subcommand("fitness", "Score a stylesheet against a target");
    std::string f_sheet, f_input, f_target, f_line = "line";
    fitness->add_option("stylesheet", f_sheet, "Stylesheet file")->required();
    fitness->add_option("input", f_input, "Input XML file")->required();
    fitness->add_option("target", f_target, "Target XML file")->required();
    fitness->add_option("--line-tag", f_line, "Intended-output marker element name");

    // gen-corpus
    auto* gen = app.add_subcommand("gen-corpus", "Write the bundled graded corpus");
    std::string g_dir, g_profile = "standard";
    gen->add_option("dir", g_dir, "Output directory")->required();
    gen->add_option("--profile", g_profile, "standard, easy or hard");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*evolve) {
            // Config file first, explicit flags override it.
            ExperimentSpec base;
            if (!config_path.empty()) apply_config(KeyValueConfig::from_file(config_path), base);
            if (type_opt->count())
                base.evolve.type = type_flag == 1 ? StructureType::Type1 : StructureType::Type2;
            if (pop_opt->count()) base.evolve.population = spec.evolve.population;
            if (gens_opt->count()) base.evolve.max_generations = spec.evolve.max_generations;
            if (tour_opt->count()) base.evolve.tournament = spec.evolve.tournament;
            if (elite_opt->count()) base.evolve.elitism = spec.evolve.elitism;
            if (runs_opt->count()) base.runs = spec.runs;
            if (seed_opt->count()) base.base_seed = spec.base_seed;
            if (out_opt->count()) base.out_dir = spec.out_dir;
            if (threads_opt->count()) base.threads = spec.threads;
            if (wrap_opt->count()) base.evolve.wrapper_tag = spec.evolve.wrapper_tag;
            if (wrap_root_opt->count()) base.evolve.wrapper_from_root = wrapper_from_root;
            if (line_opt->count()) base.evolve.line_tag = spec.evolve.line_tag;
            if (zero_opt->count()) base.zero_wall_ms = spec.zero_wall_ms;
            base.input_path = input_path;
            base.target_path = target_path;
            return cmd_evolve(base);
        }
        if (*apply) return cmd_apply(a_sheet, a_input, a_line);
        if (*fitness) return cmd_fitness(f_sheet, f_input, f_target, f_line);
        if (*gen) return cmd_gen_corpus(g_dir, g_profile);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
