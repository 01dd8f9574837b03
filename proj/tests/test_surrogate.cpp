#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "sampex/errors.hpp"
#include "sampex/surrogate.hpp"

using namespace sampex;
using testutil::eset;
using testutil::pa;

namespace {

constexpr std::uint64_t kCap = 1 << 20;

// Structural sanity: one child per domain value on splits, no feature
// reused on a path, every node reachable exactly once.
void check_tree_invariants(const DecisionTree& t) {
    const Theory& th = *t.theory();
    std::vector<int> seen(static_cast<std::size_t>(t.node_count()), 0);
    struct Frame {
        int node;
        std::set<int> used;
    };
    std::vector<Frame> stack = {{0, {}}};
    while (!stack.empty()) {
        auto [n, used] = stack.back();
        stack.pop_back();
        ++seen[static_cast<std::size_t>(n)];
        const auto& node = t.nodes()[static_cast<std::size_t>(n)];
        if (node.feature < 0) {
            CHECK(node.class_id >= 0);
            CHECK(node.class_id < th.class_count());
            continue;
        }
        CHECK(!used.count(node.feature));
        CHECK(node.children.size() ==
              th.domain(node.feature).size());
        auto next = used;
        next.insert(node.feature);
        for (int c : node.children) stack.push_back({c, next});
    }
    for (int n : seen) CHECK(n == 1);
}

} // namespace

TEST_CASE("tiny fits") {
    // Pure data: a single leaf.
    auto tp = testutil::theory2();
    auto k0 = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}, {1, 1}}, std::vector<int>{1, 1});
    auto d0 = Dataset::make(tp, {{0, 0}, {1, 1}});
    auto t0 = id3_fit(d0, *k0);
    CHECK(t0.node_count() == 1);
    CHECK(t0.is_leaf(0));
    CHECK(t0.depth() == 0);
    CHECK(dt_predict(t0, {0, 1}) == 1);

    // Exclusive-or needs both features.
    testutil::Example1 ex;
    auto full = Dataset::make(ex.theory, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto t1 = id3_fit(full, *ex.k);
    CHECK(t1.depth() == 2);
    CHECK(t1.leaf_count() == 4);
    check_tree_invariants(t1);
    for (const auto& y : full.instances()) {
        CHECK(dt_predict(t1, y) == ex.k->predict(y));
    }

    CHECK_THROWS_AS(id3_fit(Dataset{}, *ex.k), validation_error);
}

TEST_CASE("unseen branches take the parent majority") {
    // f1 splits perfectly but value 2 of f1 never occurs; its branch must
    // predict the majority class of the split's rows (class 0 on a tie,
    // by declaration order).
    auto tp = std::make_shared<const Theory>(
        std::vector<std::string>{"f1", "f2"},
        std::vector<std::vector<std::string>>{{"0", "1", "2"}, {"0", "1"}},
        std::vector<std::string>{"0", "1"});
    auto k = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}, {1, 0}}, std::vector<int>{0, 1});
    auto d = Dataset::make(tp, {{0, 0}, {1, 0}});
    auto t = id3_fit(d, *k);
    REQUIRE(!t.is_leaf(0));
    CHECK(t.nodes()[0].feature == 0);
    CHECK(dt_predict(t, {2, 0}) == 0);
    CHECK(dt_predict(t, {2, 1}) == 0);
    check_tree_invariants(t);
}

TEST_CASE("tree-scoped explanations on the exclusive-or tree") {
    testutil::Example1 ex;
    auto full = Dataset::make(ex.theory, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto t = id3_fit(full, *ex.k);
    const Theory& th = *ex.theory;

    // Both features matter everywhere: the only explanation is the whole
    // instance.
    CHECK(is_dwaxp_tree(t, {0, 0}, pa(th, "{f1=0,f2=0}")));
    CHECK(!is_dwaxp_tree(t, {0, 0}, pa(th, "{f1=0}")));
    CHECK(!is_dwaxp_tree(t, {0, 0}, pa(th, "{f2=0}")));
    CHECK(!is_dwaxp_tree(t, {0, 0}, pa(th, "{f2=1}"))); // outside x
    CHECK(find_axp_tree(t, {0, 0}) == pa(th, "{f1=0,f2=0}"));

    auto q = make_question(ex.theory, ex.k, full, {0, 0});
    CHECK(lsu_explain(q, t, kCap) == eset(th, {"{f1=0,f2=0}"}));
}

TEST_CASE("greedy tree explanation is minimal and order-sensitive") {
    // Class is f1 OR f2: either positive literal explains class 1 alone.
    auto tp = testutil::theory2();
    auto k = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}, {0, 1}, {1, 0}, {1, 1}},
        std::vector<int>{0, 1, 1, 1});
    auto d = Dataset::make(tp, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto t = id3_fit(d, *k);
    check_tree_invariants(t);

    auto asc = find_axp_tree(t, {1, 1});
    auto desc = find_axp_tree(t, {1, 1}, descending_order(2));
    CHECK(asc == pa(*tp, "{f2=1}"));
    CHECK(desc == pa(*tp, "{f1=1}"));
    for (const auto& e : {asc, desc}) {
        CHECK(is_dwaxp_tree(t, {1, 1}, e));
        for (std::size_t pos = 0; pos < e.size(); ++pos) {
            CHECK(!is_dwaxp_tree(t, {1, 1}, e.without(pos)));
        }
    }

    auto q = make_question(tp, k, d, {1, 1});
    CHECK(lsu_explain(q, t, kCap) ==
          eset(*tp, {"{f1=1}", "{f2=1}", "{f1=1,f2=1}"}));
}

TEST_CASE("surrogate cache returns the same tree for equal content") {
    testutil::Example1 ex;
    auto full = Dataset::make(ex.theory, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto a = surrogate_tree(full, *ex.k);
    auto b = surrogate_tree(full, *ex.k);
    CHECK(a.get() == b.get());

    auto other = surrogate_tree(ex.d1, *ex.k);
    CHECK(a.get() != other.get());
}

TEST_CASE("zoo surrogate reproduces every label") {
    auto r = load_dataset_file(testutil::fixture("zoo.csv"));
    const Theory& t = *r.theory;
    auto tree = id3_fit(r.dataset, *r.classifier);
    check_tree_invariants(tree);

    for (const auto& y : r.dataset.instances()) {
        CHECK(dt_predict(tree, y) == r.classifier->predict(y));
    }

    // The information-gain winner at the root is the leg count, not the
    // milk flag (0.939 vs 0.628 nats over the 59 distinct rows).
    REQUIRE(!tree.is_leaf(0));
    CHECK(t.feature_name(tree.nodes()[0].feature) == "legs");

    const auto& antelope = r.dataset[r.id_to_instance.at("antelope")];
    const auto& crow = r.dataset[r.id_to_instance.at("crow")];
    CHECK(assignment_text(t, find_axp_tree(tree, antelope)) ==
          "{hair=1,legs=4}");
    CHECK(assignment_text(t, find_axp_tree(tree, crow)) ==
          "{hair=0,legs=2}");

    // Both greedy results are genuine tree explanations and minimal.
    for (const auto* x : {&antelope, &crow}) {
        auto e = find_axp_tree(tree, *x);
        CHECK(is_dwaxp_tree(tree, *x, e));
        for (std::size_t pos = 0; pos < e.size(); ++pos) {
            CHECK(!is_dwaxp_tree(tree, *x, e.without(pos)));
        }
    }
}

TEST_CASE("tree text rendering is stable") {
    auto tp = std::make_shared<const Theory>(
        std::vector<std::string>{"f1", "f2"},
        std::vector<std::vector<std::string>>{{"0", "1"}, {"0", "1"}},
        std::vector<std::string>{"no", "yes"});
    auto k = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}, {0, 1}, {1, 0}, {1, 1}},
        std::vector<int>{0, 1, 1, 1});
    auto d = Dataset::make(tp, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto t = id3_fit(d, *k);

    auto text = tree_text(t);
    CHECK(text == tree_text(t));
    CHECK(text.find("f1=") != std::string::npos);
    CHECK(text.find("yes") != std::string::npos);
}
