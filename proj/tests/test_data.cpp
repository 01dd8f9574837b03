#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "sampex/errors.hpp"

using namespace sampex;

TEST_CASE("dataset dedups stably and validates domains") {
    auto tp = testutil::theory2();
    Dataset d = Dataset::make(tp, {{0, 1}, {0, 0}, {0, 1}, {1, 1}});
    REQUIRE(d.size() == 3);
    CHECK(d[0] == Instance{0, 1});
    CHECK(d[1] == Instance{0, 0});
    CHECK(d[2] == Instance{1, 1});
    CHECK(d.index_of({0, 0}) == 1);
    CHECK(!d.contains({1, 0}));
    CHECK_THROWS_AS(Dataset::make(tp, {{0, 2}}), validation_error);
    CHECK_THROWS_AS(Dataset::make(tp, {{0}}), validation_error);
    CHECK_THROWS_AS(Dataset::make(nullptr, {}), validation_error);
}

TEST_CASE("table classifier") {
    TableClassifier k({{0, 0}, {0, 1}}, {1, 0});
    CHECK(k.predict({0, 0}) == 1);
    CHECK(k.defined_on({0, 1}));
    CHECK(!k.defined_on({1, 1}));
    CHECK_THROWS_AS(k.predict({1, 1}), validation_error);
    CHECK_THROWS_AS(TableClassifier({{0, 0}, {0, 0}}, {0, 1}),
                    validation_error);
    CHECK_NOTHROW(TableClassifier({{0, 0}, {0, 0}}, {1, 1}));

    FunctionClassifier fn([](const Instance& y) { return y[0]; });
    CHECK(fn.predict({1, 0}) == 1);
    CHECK(fn.defined_on({9, 9}));
}

TEST_CASE("make_question validates membership and coverage") {
    testutil::Example1 ex;
    auto q = make_question(ex.theory, ex.k, ex.d1, ex.x1);
    CHECK(q.target_class() == 0);
    CHECK_THROWS_AS(make_question(ex.theory, ex.k, ex.d1, {1, 1}),
                    validation_error);
    CHECK_THROWS_AS(
        make_question(ex.theory, ex.k, Dataset::make(ex.theory, {}), ex.x1),
        validation_error);
    auto partial = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}}, std::vector<int>{0});
    CHECK_THROWS_AS(make_question(ex.theory, partial, ex.d1, ex.x1),
                    validation_error);
}

TEST_CASE("load_dataset parses a plain csv") {
    std::istringstream in(
        "f1,f2,class\n"
        "0,0,no\n"
        "0,1,yes\n"
        "0,0,no\n");
    auto r = load_dataset(in);
    CHECK(r.report.raw_rows == 3);
    CHECK(r.report.distinct_rows == 2);
    CHECK(r.report.duplicates_removed == 1);
    CHECK(!r.report.has_id_column);
    CHECK(r.theory->features() == std::vector<std::string>{"f1", "f2"});
    CHECK(r.theory->classes() == std::vector<std::string>{"no", "yes"});
    CHECK(r.dataset.size() == 2);
    CHECK(r.classifier->predict(r.dataset[1]) == 1);
    CHECK(r.row_instance == std::vector<std::size_t>{0, 1, 0});
    // f1 is single-valued: padded with a sentinel second value.
    CHECK(r.report.padded_features == std::vector<std::string>{"f1"});
    CHECK(r.theory->domain(0).size() == 2);
    CHECK(r.theory->domain(0)[1] == "_other");
}

TEST_CASE("load_dataset rejects malformed input") {
    std::istringstream empty("");
    CHECK_THROWS_AS(load_dataset(empty), validation_error);
    std::istringstream headeronly("f1,f2,class\n");
    CHECK_THROWS_AS(load_dataset(headeronly), validation_error);
    std::istringstream ragged("f1,f2,class\n0,1\n");
    CHECK_THROWS_AS(load_dataset(ragged), validation_error);
    std::istringstream contradiction(
        "f1,f2,class\n0,0,no\n0,1,yes\n0,0,yes\n");
    CHECK_THROWS_AS(load_dataset(contradiction), validation_error);
    CHECK_THROWS_AS(load_dataset_file("/nonexistent/file.csv"), io_error);
}

TEST_CASE("load_dataset honors an id column named 'name'") {
    std::istringstream in(
        "name,f1,f2,class\n"
        "rowa,0,0,no\n"
        "rowb,1,1,yes\n"
        "rowc,0,0,no\n");
    auto r = load_dataset(in);
    CHECK(r.report.has_id_column);
    CHECK(r.theory->features() == std::vector<std::string>{"f1", "f2"});
    CHECK(r.id_to_instance.at("rowa") == 0);
    CHECK(r.id_to_instance.at("rowb") == 1);
    CHECK(r.id_to_instance.at("rowc") == 0); // same instance as rowa
    CHECK(r.instance_id[0] == "rowa");       // first covering row wins
}

TEST_CASE("single-class data is padded with a sentinel class") {
    std::istringstream in("f1,f2,class\n0,0,same\n1,1,same\n");
    auto r = load_dataset(in);
    CHECK(r.report.padded_class);
    CHECK(r.theory->class_count() == 2);
    CHECK(r.theory->classes()[1] == "_other");
}

TEST_CASE("domain file widens domains and pins class order") {
    std::istringstream in("f1,f2,class\n0,0,no\n1,1,yes\n");
    auto base = load_dataset(in);
    std::istringstream doms(
        "# wider grid\n"
        "f1: 0,1,2\n"
        "classes: yes,no\n");
    auto r = apply_domain_file(base, doms);
    CHECK(r.theory->domain(0) ==
          std::vector<std::string>{"0", "1", "2"});
    CHECK(r.theory->classes() == std::vector<std::string>{"yes", "no"});
    // Labels re-indexed: the first instance was "no", now class index 1.
    CHECK(r.classifier->predict(r.dataset[0]) == 1);

    std::istringstream missing("f1: 1,2\n");
    CHECK_THROWS_AS(apply_domain_file(base, missing), validation_error);
    std::istringstream unknown("zz: 0,1\n");
    CHECK_THROWS_AS(apply_domain_file(base, unknown), validation_error);
    std::istringstream malformed("f1 0,1\n");
    CHECK_THROWS_AS(apply_domain_file(base, malformed), validation_error);
}

TEST_CASE("domain file may drop a padding sentinel") {
    std::istringstream in("f1,f2,class\n0,0,no\n0,1,yes\n");
    auto base = load_dataset(in);
    REQUIRE(base.report.padded_features == std::vector<std::string>{"f1"});
    std::istringstream doms("f1: 0,1\n");
    auto r = apply_domain_file(base, doms);
    CHECK(r.theory->domain(0) == std::vector<std::string>{"0", "1"});
    CHECK(r.report.padded_features.empty());
}

TEST_CASE("digests are stable and content sensitive") {
    testutil::Example1 ex;
    auto d2 = Dataset::make(ex.theory, {{0, 0}, {0, 1}});
    CHECK(dataset_digest(ex.d1) == dataset_digest(d2));
    auto d3 = Dataset::make(ex.theory, {{0, 1}, {0, 0}});
    CHECK(dataset_digest(ex.d1) != dataset_digest(d3));

    auto flipped = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}, {0, 1}, {1, 0}, {1, 1}},
        std::vector<int>{1, 0, 0, 1});
    CHECK(classifier_digest(ex.d1, *ex.k) !=
          classifier_digest(ex.d1, *flipped));

    auto qa = make_question(ex.theory, ex.k, ex.d1, ex.x1);
    auto qb = make_question(ex.theory, ex.k, ex.d1, ex.x2);
    CHECK(question_digest(qa) != question_digest(qb));
    CHECK(digest_hex(0x1234abcdULL) == "000000001234abcd");
}

TEST_CASE("bundled zoo fixture loads cleanly") {
    auto r = load_dataset_file(testutil::fixture("zoo.csv"));
    CHECK(r.report.raw_rows == 101);
    CHECK(r.report.distinct_rows == 59);
    CHECK(r.report.has_id_column);
    CHECK(r.theory->feature_count() == 16);
    CHECK(r.theory->class_count() == 7);
    CHECK(r.id_to_instance.count("antelope") == 1);
    CHECK(r.id_to_instance.count("crow") == 1);
    const auto& antelope = r.dataset[r.id_to_instance.at("antelope")];
    CHECK(r.theory->class_name(r.classifier->predict(antelope)) == "Mammal");
}
