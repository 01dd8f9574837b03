// Micro-benchmarks: explanation primitives on the bundled zoo table, and
// dataset-size scaling of the two core tests (one linear scan per
// explanation test; at most quadratic work for the irrefutability test).

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "sampex/coherence.hpp"
#include "sampex/data.hpp"
#include "sampex/explainers.hpp"
#include "sampex/surrogate.hpp"

using namespace sampex;

namespace {

constexpr std::uint64_t kCap = 1 << 20;

const LoadResult& zoo() {
    static const LoadResult z =
        load_dataset_file(std::string(SAMPEX_FIXTURES) + "/zoo.csv");
    return z;
}

Question zoo_question(const std::string& id) {
    const auto& z = zoo();
    return make_question(z.theory, z.classifier, z.dataset,
                         z.dataset[z.id_to_instance.at(id)]);
}

// Ten binary features, parity-of-popcount labels, m distinct rows drawn in
// a fixed shuffled order (the target is always present).
struct ScaleCase {
    TheoryPtr theory;
    std::shared_ptr<const TableClassifier> classifier;
    Dataset dataset;
    Instance target;
};

ScaleCase make_scale(std::size_t m) {
    std::vector<std::string> features;
    std::vector<std::vector<std::string>> domains;
    for (int f = 0; f < 10; ++f) {
        features.push_back("f" + std::to_string(f + 1));
        domains.push_back({"0", "1"});
    }
    auto theory = std::make_shared<const Theory>(
        features, domains, std::vector<std::string>{"0", "1"});
    const auto space = enumerate_feature_space(*theory, kCap);
    std::vector<int> labels;
    for (const auto& y : space) {
        labels.push_back(std::accumulate(y.begin(), y.end(), 0) % 2);
    }

    std::vector<std::size_t> idx(space.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937 rng(7u);
    std::shuffle(idx.begin(), idx.end(), rng);

    std::vector<Instance> rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(space[idx[i]]);

    ScaleCase s;
    s.theory = theory;
    s.classifier = std::make_shared<const TableClassifier>(space, labels);
    s.target = rows[0];
    s.dataset = Dataset::make(theory, std::move(rows));
    return s;
}

void BM_IsDwaxpZoo(benchmark::State& state) {
    const auto q = zoo_question("antelope");
    const auto e = parse_assignment(*zoo().theory, "{milk=1}");
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_dwaxp(q, e));
    }
}
BENCHMARK(BM_IsDwaxpZoo);

void BM_FindCaxpZoo(benchmark::State& state) {
    const auto q = zoo_question("antelope");
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_caxp(q));
    }
}
BENCHMARK(BM_FindCaxpZoo);

void BM_IsIrrefutableZoo(benchmark::State& state) {
    const auto q = zoo_question("antelope");
    const auto full = PartialAssignment::from_instance(q.target);
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_irrefutable(q, full));
    }
}
BENCHMARK(BM_IsIrrefutableZoo);

void BM_Id3FitZoo(benchmark::State& state) {
    const auto& z = zoo();
    for (auto _ : state) {
        benchmark::DoNotOptimize(id3_fit(z.dataset, *z.classifier));
    }
}
BENCHMARK(BM_Id3FitZoo);

void BM_TreeExplainZoo(benchmark::State& state) {
    const auto& z = zoo();
    const auto tree = id3_fit(z.dataset, *z.classifier);
    const Instance& ant = z.dataset[z.id_to_instance.at("antelope")];
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_axp_tree(tree, ant));
    }
}
BENCHMARK(BM_TreeExplainZoo);

void BM_IsDwaxpScale(benchmark::State& state) {
    const auto s = make_scale(static_cast<std::size_t>(state.range(0)));
    const auto q =
        make_question(s.theory, s.classifier, s.dataset, s.target);
    const auto e =
        PartialAssignment::make(*s.theory, {{0, s.target[0]}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_dwaxp(q, e));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IsDwaxpScale)
    ->RangeMultiplier(4)
    ->Range(8, 1024)
    ->Complexity(benchmark::oN);

void BM_IsIrrefutableScale(benchmark::State& state) {
    const auto s = make_scale(static_cast<std::size_t>(state.range(0)));
    const auto q =
        make_question(s.theory, s.classifier, s.dataset, s.target);
    const auto full = PartialAssignment::from_instance(s.target);
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_irrefutable(q, full));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IsIrrefutableScale)
    ->RangeMultiplier(4)
    ->Range(8, 1024)
    ->Complexity();

} // namespace

BENCHMARK_MAIN();
