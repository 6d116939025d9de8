#include <benchmark/benchmark.h>

#include <memory>

#include "xsltevo/corpus.hpp"
#include "xsltevo/evolve.hpp"
#include "xsltevo/fitness.hpp"
#include "xsltevo/xslt.hpp"

using namespace xsltevo;

namespace {

const CorpusPair& pair_n(int number) {
    static std::vector<CorpusPair> pairs = corpus_pairs();
    return pairs[size_t(number - 1)];
}

std::shared_ptr<const Document> input_doc(int number) {
    return std::make_shared<const Document>(parse_xml(pair_n(number).input_xml));
}

static void ParseInput(benchmark::State& state) {
    const std::string& text = pair_n(int(state.range(0))).input_xml;
    for (auto _ : state) {
        Document doc = parse_xml(text);
        benchmark::DoNotOptimize(doc);
    }
}
BENCHMARK(ParseInput)->Arg(1)->Arg(6)->Arg(7);

static void TransformOracle(benchmark::State& state) {
    const CorpusPair& pair = pair_n(int(state.range(0)));
    Document input = parse_xml(pair.input_xml);
    Stylesheet sheet = parse_stylesheet(parse_xml(pair.oracle_xslt));
    TransformLimits limits{64, 100000};
    for (auto _ : state) {
        Document out = transform(sheet, input, limits);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(TransformOracle)->Arg(1)->Arg(6)->Arg(7);

static void EvaluateRandomGenome(benchmark::State& state) {
    auto input = input_doc(6);
    TagCatalog catalog = build_catalog(input);
    Document target = parse_xml(corpus_target_xml(pair_n(6)));
    std::vector<std::string> target_lines = canonical_lines(target);
    TransformLimits limits{catalog.height + 8, 16 * int(target_lines.size()) + 64};
    InitParams params;
    Rng rng(1);
    std::vector<Genome> genomes;
    for (int i = 0; i < 64; i++)
        genomes.push_back(random_genome(StructureType::Type1, catalog, params, rng));
    size_t i = 0;
    for (auto _ : state) {
        FitnessVector fit = evaluate(genomes[i++ % genomes.size()], *input, target_lines, limits);
        benchmark::DoNotOptimize(fit);
    }
}
BENCHMARK(EvaluateRandomGenome);

static void LineDiff(benchmark::State& state) {
    Rng rng(2);
    auto make = [&](int n) {
        std::vector<std::string> lines;
        for (int i = 0; i < n; i++)
            lines.push_back("line " + std::to_string(rng.uniform_int(0, 9)));
        return lines;
    };
    auto a = make(int(state.range(0)));
    auto b = make(int(state.range(0)));
    for (auto _ : state) {
        auto d = line_diff(a, b);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(LineDiff)->Arg(32)->Arg(128)->Arg(512);

static void EvalDescendantPath(benchmark::State& state) {
    auto input = input_doc(7);
    PathExpr expr = parse_xpath("/archive//reading");
    for (auto _ : state) {
        auto nodes = eval_path(expr, kDocumentNode, *input);
        benchmark::DoNotOptimize(nodes);
    }
}
BENCHMARK(EvalDescendantPath);

static void EvolveGeneration(benchmark::State& state) {
    auto input = input_doc(2);
    Document target = parse_xml(corpus_target_xml(pair_n(2)));
    for (auto _ : state) {
        EvolveConfig config;
        config.population = 64;
        config.max_generations = 1;
        config.seed = 7;
        RunResult result = run_evolution(config, input, target);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(EvolveGeneration);

}  // namespace

BENCHMARK_MAIN();
