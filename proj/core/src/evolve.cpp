#include "xsltevo/evolve.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <numeric>

namespace xsltevo {

namespace {

bool better(const Individual& a, size_t ia, const Individual& b, size_t ib) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    return ia < ib;
}

size_t best_index(const std::vector<Individual>& pop) {
    size_t best = 0;
    for (size_t i = 1; i < pop.size(); i++)
        if (pop[i].fitness < pop[best].fitness) best = i;
    return best;
}

void check_config(const EvolveConfig& config) {
    if (config.tournament < 2) throw ConfigError("tournament size must be >= 2");
    if (config.population < config.tournament)
        throw ConfigError("population must be >= tournament size");
    if (config.elitism < 0 || config.elitism >= config.population)
        throw ConfigError("elitism must be in [0, population)");
    if (config.max_generations < 0) throw ConfigError("max generations must be >= 0");
    if (config.applications_per_offspring < 1)
        throw ConfigError("applications per offspring must be >= 1");
    if (int(config.seed_genomes.size()) > config.population)
        throw ConfigError("more seed genomes than population slots");
    if (config.init.min_templates < 1 ||
        config.init.min_templates > config.init.max_templates ||
        config.init.min_instructions < 1 ||
        config.init.min_instructions > config.init.max_instructions)
        throw ConfigError("invalid initialization parameters");
}

}  // namespace

size_t tournament_select(const std::vector<FitnessVector>& fitnesses, int k, Rng& rng) {
    assert(k >= 1 && !fitnesses.empty());
    size_t n = fitnesses.size();
    if (size_t(k) >= n) {
        size_t best = 0;
        for (size_t i = 1; i < n; i++)
            if (fitnesses[i] < fitnesses[best]) best = i;
        return best;
    }
    std::vector<size_t> drawn;
    drawn.reserve(size_t(k));
    while (drawn.size() < size_t(k)) {
        size_t c = rng.uniform_index(n);
        if (std::find(drawn.begin(), drawn.end(), c) == drawn.end()) drawn.push_back(c);
    }
    size_t best = drawn[0];
    for (size_t i = 1; i < drawn.size(); i++) {
        size_t c = drawn[i];
        if (fitnesses[c] < fitnesses[best] || (fitnesses[c] == fitnesses[best] && c < best))
            best = c;
    }
    return best;
}

RunResult run_evolution(const EvolveConfig& config, std::shared_ptr<const Document> input,
                        const Document& target) {
    check_config(config);
    auto t0 = std::chrono::steady_clock::now();

    TagCatalog catalog = build_catalog(input);
    std::vector<std::string> target_lines = canonical_lines(target, config.line_tag);

    TransformLimits limits = config.limits;
    if (limits.max_recursion_depth <= 0) limits.max_recursion_depth = catalog.height + 8;
    if (limits.max_output_lines <= 0)
        limits.max_output_lines = 16 * int(target_lines.size()) + 64;

    OperatorTable table =
        config.operators ? *config.operators : default_operator_table(config.type);
    try {
        check_operator_table(table, config.type);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    std::string wrapper =
        config.wrapper_from_root ? input->root_node().tag : config.wrapper_tag;

    Rng rng(config.seed);
    RunResult result;

    auto finish_genome = [&](Genome g) {
        g.sheet.wrapper_tag = wrapper;
        g.sheet.line_tag = config.line_tag;
        g.fitness.reset();
        return g;
    };
    auto evaluated = [&](Genome g) {
        Individual ind{finish_genome(std::move(g)), {}};
        ind.fitness = evaluate(ind.genome, *input, target_lines, limits);
        ind.genome.fitness = ind.fitness;
        result.evaluations++;
        return ind;
    };

    std::vector<Individual> pop;
    pop.reserve(size_t(config.population));
    for (const Genome& g : config.seed_genomes) {
        if (g.type != config.type) throw ConfigError("seed genome has the wrong structure type");
        pop.push_back(evaluated(g));
    }
    while (pop.size() < size_t(config.population))
        pop.push_back(evaluated(random_genome(config.type, catalog, config.init, rng)));

    auto record = [&](int generation) {
        GenerationStats s;
        s.generation = generation;
        s.best = pop[best_index(pop)].fitness;
        double d = 0, a = 0, l = 0;
        int counted = 0;
        for (const Individual& ind : pop) {
            if (ind.fitness.is_worst()) {
                s.overflowed++;
                continue;
            }
            d += ind.fitness.deletions;
            a += ind.fitness.additions;
            l += ind.fitness.length;
            counted++;
        }
        if (counted > 0) {
            s.mean_deletions = d / counted;
            s.mean_additions = a / counted;
            s.mean_length = l / counted;
        }
        result.history.push_back(s);
    };
    record(0);

    Individual best = pop[best_index(pop)];
    int generation = 0;

    while (!best.fitness.solution() && generation < config.max_generations) {
        generation++;

        std::vector<FitnessVector> fits(pop.size());
        for (size_t i = 0; i < pop.size(); i++) fits[i] = pop[i].fitness;

        std::vector<size_t> order(pop.size());
        std::iota(order.begin(), order.end(), size_t(0));
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return better(pop[a], a, pop[b], b); });

        std::vector<Individual> next;
        next.reserve(pop.size());
        for (int e = 0; e < config.elitism; e++) next.push_back(pop[order[size_t(e)]]);

        bool solved = false;
        while (next.size() < size_t(config.population) && !solved) {
            size_t p1 = tournament_select(fits, config.tournament, rng);
            OperatorKind op = select_operator(table, config.type, rng);

            if (config.applications_per_offspring == 1 &&
                op == OperatorKind::CrossoverTemplate) {
                size_t p2 = tournament_select(fits, config.tournament, rng);
                CrossoverResult cx = crossover_template(pop[p1].genome, pop[p2].genome, rng);
                auto& stat = result.op_stats[size_t(op)];
                cx.applied ? stat.applied++ : stat.noop++;

                next.push_back(evaluated(std::move(cx.first)));
                solved = next.back().fitness.solution();
                if (!solved) {
                    if (next.size() < size_t(config.population)) {
                        next.push_back(evaluated(std::move(cx.second)));
                        solved = next.back().fitness.solution();
                    } else {
                        result.crossover_discards++;
                    }
                }
            } else {
                Genome offspring = pop[p1].genome;
                for (int a = 0; a < config.applications_per_offspring; a++) {
                    OperatorKind cur = a == 0 ? op : select_operator(table, config.type, rng);
                    auto& stat = result.op_stats[size_t(cur)];
                    if (cur == OperatorKind::CrossoverTemplate) {
                        size_t p2 = tournament_select(fits, config.tournament, rng);
                        CrossoverResult cx = crossover_template(offspring, pop[p2].genome, rng);
                        cx.applied ? stat.applied++ : stat.noop++;
                        offspring = std::move(cx.first);
                        result.crossover_discards++;
                    } else {
                        MutationResult mr =
                            apply_operator(offspring, cur, catalog, config.init, rng);
                        mr.applied ? stat.applied++ : stat.noop++;
                        offspring = std::move(mr.genome);
                    }
                }
                next.push_back(evaluated(std::move(offspring)));
                solved = next.back().fitness.solution();
            }
        }

        result.generations = generation;
        if (solved) {
            best = next.back();
            break;
        }
        pop = std::move(next);
        record(generation);
        // best-so-far, non-increasing even without elites
        const Individual& pop_best = pop[best_index(pop)];
        if (pop_best.fitness < best.fitness) best = pop_best;
    }

    result.best = best.genome;
    result.best_fitness = best.fitness;
    result.success = best.fitness.solution();
    if (result.success) {
        // Re-check end to end: the reported stylesheet must reproduce the
        // target lines exactly.
        Document out = transform(best.genome.sheet, *input, limits);
        if (canonical_lines(out, config.line_tag) != target_lines)
            throw std::logic_error("successful genome failed the end-to-end re-check");
    }
    result.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace xsltevo
