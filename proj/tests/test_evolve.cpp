#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "xsltevo/corpus.hpp"
#include "xsltevo/evolve.hpp"

using namespace xsltevo;

namespace {

struct Pair {
    std::shared_ptr<const Document> input;
    Document target;
};

Pair corpus_pair(int number) {
    for (const CorpusPair& pair : corpus_pairs()) {
        if (pair.number != number) continue;
        return Pair{fixtures::shared_doc(pair.input_xml.c_str()),
                    fixtures::doc(corpus_target_xml(pair).c_str())};
    }
    throw std::logic_error("no such corpus pair");
}

bool run_equal(const RunResult& a, const RunResult& b) {
    if (a.success != b.success || a.evaluations != b.evaluations ||
        a.generations != b.generations || a.best_fitness != b.best_fitness)
        return false;
    if (render_stylesheet(a.best.sheet) != render_stylesheet(b.best.sheet)) return false;
    if (a.history.size() != b.history.size()) return false;
    for (size_t i = 0; i < a.history.size(); i++) {
        if (a.history[i].best != b.history[i].best ||
            a.history[i].mean_deletions != b.history[i].mean_deletions ||
            a.history[i].mean_additions != b.history[i].mean_additions ||
            a.history[i].mean_length != b.history[i].mean_length)
            return false;
    }
    for (int k = 0; k < kOperatorCount; k++)
        if (a.op_stats[size_t(k)].applied != b.op_stats[size_t(k)].applied ||
            a.op_stats[size_t(k)].noop != b.op_stats[size_t(k)].noop)
            return false;
    return a.crossover_discards == b.crossover_discards;
}

}  // namespace

TEST_CASE("configuration invariants are checked up front") {
    Pair p = corpus_pair(1);
    EvolveConfig config;

    config.tournament = 1;
    CHECK_THROWS_AS(run_evolution(config, p.input, p.target), ConfigError);

    config = EvolveConfig{};
    config.population = 4;
    config.tournament = 5;
    CHECK_THROWS_AS(run_evolution(config, p.input, p.target), ConfigError);

    config = EvolveConfig{};
    config.elitism = 128;
    CHECK_THROWS_AS(run_evolution(config, p.input, p.target), ConfigError);

    config = EvolveConfig{};
    config.applications_per_offspring = 0;
    CHECK_THROWS_AS(run_evolution(config, p.input, p.target), ConfigError);

    config = EvolveConfig{};
    config.operators = default_operator_table(StructureType::Type2);
    config.type = StructureType::Type1;
    config.operators->weight[size_t(OperatorKind::XpSetDescendant)] = 0.5;
    config.type = StructureType::Type2;
    CHECK_THROWS_AS(run_evolution(config, p.input, p.target), ConfigError);
}

TEST_CASE("a planted solution ends the run with the initial population") {
    Pair p = corpus_pair(1);
    for (const CorpusPair& pair : corpus_pairs("easy")) {
        if (pair.number != 1) continue;
        EvolveConfig config;
        config.population = 32;
        config.type = StructureType::Type1;
        config.seed = 77;
        Genome oracle{StructureType::Type1, fixtures::sheet(pair.oracle_xslt.c_str()), {}};
        config.seed_genomes.push_back(oracle);
        RunResult result = run_evolution(config, p.input, p.target);
        CHECK(result.success);
        CHECK(result.generations == 0);
        CHECK(result.evaluations == 32);
        CHECK(result.best_fitness.solution());
    }
}

TEST_CASE("runs are deterministic in config and seed") {
    Pair p = corpus_pair(2);
    EvolveConfig config;
    config.population = 24;
    config.max_generations = 12;
    config.tournament = 3;
    config.seed = 4242;
    RunResult a = run_evolution(config, p.input, p.target);
    RunResult b = run_evolution(config, p.input, p.target);
    CHECK(run_equal(a, b));

    config.seed = 4243;
    RunResult c = run_evolution(config, p.input, p.target);
    CHECK((a.evaluations != c.evaluations ||
           render_stylesheet(a.best.sheet) != render_stylesheet(c.best.sheet) ||
           a.best_fitness != c.best_fitness));
}

TEST_CASE("tournament selection") {
    std::vector<FitnessVector> fits;
    for (int i = 0; i < 16; i++) fits.push_back(FitnessVector{10, i, 5});
    fits[7] = FitnessVector{0, 0, 1};  // unique best

    Rng rng(1);
    CHECK(tournament_select(fits, int(fits.size()), rng) == 7);
    CHECK(tournament_select(fits, 100, rng) == 7);

    // k = 1 draws uniformly
    std::vector<int> counts(fits.size(), 0);
    for (int i = 0; i < 16000; i++) counts[tournament_select(fits, 1, rng)]++;
    for (int c : counts) CHECK(std::abs(c - 1000) < 250);

    // ties break to the lowest index
    std::vector<FitnessVector> tied(8, FitnessVector{1, 1, 1});
    CHECK(tournament_select(tied, 8, rng) == 0);

    // the unique best is selected exactly when drawn: probability k/n
    const int trials = 20000;
    int hits = 0;
    for (int i = 0; i < trials; i++)
        if (tournament_select(fits, 5, rng) == 7) hits++;
    double expected = 5.0 / 16.0;
    CHECK(std::abs(double(hits) / trials - expected) < 0.02);
}

TEST_CASE("evolution makes monotone progress and counts evaluations") {
    Pair p = corpus_pair(1);
    EvolveConfig config;
    config.population = 48;
    config.max_generations = 60;
    config.seed = 9;
    RunResult result = run_evolution(config, p.input, p.target);

    CHECK(result.evaluations <= (long long)config.population * (config.max_generations + 1));
    for (size_t i = 1; i < result.history.size(); i++)
        CHECK(result.history[i].best <= result.history[i - 1].best);

    // an easy pair with a decent budget should solve
    CHECK(result.success);
    CHECK(result.best_fitness.deletions == 0);
    CHECK(result.best_fitness.additions == 0);
}

TEST_CASE("elitism keeps the best individual alive") {
    Pair p = corpus_pair(3);
    EvolveConfig config;
    config.population = 16;
    config.max_generations = 8;
    config.seed = 31;
    config.elitism = 1;
    RunResult result = run_evolution(config, p.input, p.target);
    for (size_t i = 1; i < result.history.size(); i++)
        CHECK(result.history[i].best <= result.history[i - 1].best);
}

TEST_CASE("every genome in the loop validates") {
    Pair p = corpus_pair(2);
    EvolveConfig config;
    config.population = 16;
    config.max_generations = 10;
    config.seed = 55;
    RunResult result = run_evolution(config, p.input, p.target);
    TagCatalog cat = build_catalog(p.input);
    CHECK(validate(result.best, cat).empty());
}

TEST_CASE("several applications per offspring stay deterministic and valid") {
    Pair p = corpus_pair(2);
    EvolveConfig config;
    config.population = 16;
    config.max_generations = 8;
    config.tournament = 3;
    config.seed = 64;
    config.applications_per_offspring = 3;
    RunResult a = run_evolution(config, p.input, p.target);
    RunResult b = run_evolution(config, p.input, p.target);
    CHECK(run_equal(a, b));
    TagCatalog cat = build_catalog(p.input);
    CHECK(validate(a.best, cat).empty());
}

TEST_CASE("wrapper naming follows the config") {
    Pair p = corpus_pair(1);
    EvolveConfig config;
    config.population = 8;
    config.tournament = 2;
    config.max_generations = 1;
    config.seed = 3;
    config.wrapper_from_root = true;
    RunResult result = run_evolution(config, p.input, p.target);
    CHECK(result.best.sheet.wrapper_tag == "inventory");

    config.wrapper_from_root = false;
    config.wrapper_tag = "extract";
    RunResult named = run_evolution(config, p.input, p.target);
    CHECK(named.best.sheet.wrapper_tag == "extract");
}
