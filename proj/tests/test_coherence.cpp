#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "sampex/errors.hpp"

using namespace sampex;
using testutil::eset;
using testutil::pa;

namespace {

constexpr std::uint64_t kCap = 1 << 20;

} // namespace

TEST_CASE("pool of the first worked example") {
    testutil::Example1 ex;
    auto pool = build_dwaxp_pool(ex.d1, *ex.k, kCap);

    CHECK(pool.members ==
          eset(*ex.theory,
               {"{f1=0,f2=0}", "{f1=0,f2=1}", "{f2=0}", "{f2=1}"}));
    REQUIRE(pool.size() == 4);
    CHECK(pool.labels == std::vector<int>{0, 1, 0, 1});

    CHECK(pool.label_of(pa(*ex.theory, "{f2=0}")) == 0);
    CHECK(pool.label_of(pa(*ex.theory, "{f2=1}")) == 1);
    CHECK(!pool.label_of(pa(*ex.theory, "{f1=0}")).has_value());
}

TEST_CASE("coherence verdicts") {
    testutil::Example1 ex;
    const Theory& t = *ex.theory;

    CHECK(is_coherent_set(eset(t, {"{f1=0,f2=0}", "{f2=1}"}), ex.d1, *ex.k));
    CHECK(is_coherent_set(eset(t, {"{f2=0}", "{f2=1}"}), ex.d1, *ex.k));
    CHECK(is_coherent_set({}, ex.d1, *ex.k));

    // A single member covering both classes conflicts with itself.
    auto bad = is_coherent_set(eset(t, {"{f1=0}"}), ex.d1, *ex.k);
    CHECK(!bad.coherent);
    CHECK(bad.e1 == pa(t, "{f1=0}"));
    CHECK(bad.e2 == pa(t, "{f1=0}"));
    CHECK(ex.k->predict(bad.y) != ex.k->predict(bad.z));
}

TEST_CASE("envelope verdicts report the first failed condition") {
    testutil::Example1 ex;
    const Theory& t = *ex.theory;

    CHECK(is_envelope(eset(t, {"{f1=0,f2=0}", "{f1=0,f2=1}"}), ex.d1, *ex.k)
              .ok());

    auto incoh =
        is_envelope(eset(t, {"{f1=0,f2=0}", "{f1=0}"}), ex.d1, *ex.k);
    CHECK(incoh.failure == EnvelopeFailure::incoherent);

    // {f1=1} covers nothing: coherent, but outside the pool.
    auto stray = is_envelope(
        eset(t, {"{f1=0,f2=0}", "{f1=0,f2=1}", "{f1=1}"}), ex.d1, *ex.k);
    CHECK(stray.failure == EnvelopeFailure::not_in_pool);

    auto gap = is_envelope(eset(t, {"{f1=0,f2=0}"}), ex.d1, *ex.k);
    CHECK(gap.failure == EnvelopeFailure::uncovered);
}

TEST_CASE("all envelopes of the first worked example") {
    testutil::Example1 ex;
    const Theory& t = *ex.theory;
    auto all = all_envelopes(ex.d1, *ex.k, kCap);

    std::vector<Envelope> want = {
        eset(t, {"{f1=0,f2=0}", "{f1=0,f2=1}"}),
        eset(t, {"{f1=0,f2=0}", "{f1=0,f2=1}", "{f2=0}"}),
        eset(t, {"{f1=0,f2=0}", "{f1=0,f2=1}", "{f2=0}", "{f2=1}"}),
        eset(t, {"{f1=0,f2=0}", "{f1=0,f2=1}", "{f2=1}"}),
        eset(t, {"{f1=0,f2=0}", "{f2=0}", "{f2=1}"}),
        eset(t, {"{f1=0,f2=0}", "{f2=1}"}),
        eset(t, {"{f1=0,f2=1}", "{f2=0}"}),
        eset(t, {"{f1=0,f2=1}", "{f2=0}", "{f2=1}"}),
        eset(t, {"{f2=0}", "{f2=1}"}),
    };
    std::sort(want.begin(), want.end());
    CHECK(all == want);

    for (const auto& env : all) CHECK(is_envelope(env, ex.d1, *ex.k).ok());

    auto maximal = maximal_envelopes(ex.d1, *ex.k, kCap);
    REQUIRE(maximal.size() == 1);
    CHECK(maximal[0] ==
          eset(t, {"{f1=0,f2=0}", "{f1=0,f2=1}", "{f2=0}", "{f2=1}"}));

    // With one maximal envelope, the intersection is that envelope itself.
    CHECK(irr_envelope(ex.d1, *ex.k, kCap) == maximal[0]);
}

TEST_CASE("lir on the first worked example") {
    testutil::Example1 ex;
    const Theory& t = *ex.theory;
    CHECK(lir_explain(ex.q1(), kCap) ==
          eset(t, {"{f1=0,f2=0}", "{f2=0}"}));
    CHECK(lir_explain(ex.q2(), kCap) ==
          eset(t, {"{f1=0,f2=1}", "{f2=1}"}));
}

TEST_CASE("second worked example: pool, irrefutable envelope, lir") {
    testutil::Example3 ex;
    const Theory& t = *ex.theory;

    auto pool = build_dwaxp_pool(ex.d, *ex.k, kCap);
    CHECK(pool.members ==
          eset(t, {"{f1=0}", "{f1=0,f2=0}", "{f1=1,f2=0}", "{f1=1,f2=1}",
                   "{f2=0}", "{f2=1}"}));
    CHECK(pool.labels == std::vector<int>{0, 0, 0, 1, 0, 1});

    // {f1=0} and {f2=1} have a consistent union but different labels, so
    // neither survives into the irrefutable envelope.
    auto irr = irr_envelope(ex.d, *ex.k, kCap);
    CHECK(irr == eset(t, {"{f1=0,f2=0}", "{f1=1,f2=0}", "{f1=1,f2=1}",
                          "{f2=0}"}));
    CHECK(is_envelope(irr, ex.d, *ex.k).ok());

    CHECK(lir_explain(ex.q(ex.y1), kCap) ==
          eset(t, {"{f1=0,f2=0}", "{f2=0}"}));
    CHECK(lir_explain(ex.q(ex.y2), kCap) ==
          eset(t, {"{f1=1,f2=0}", "{f2=0}"}));
    CHECK(lir_explain(ex.q(ex.y3), kCap) == eset(t, {"{f1=1,f2=1}"}));
}

TEST_CASE("polynomial irrefutability test matches envelope membership") {
    testutil::Example3 ex;
    for (const auto& x : ex.d.instances()) {
        auto q = ex.q(x);
        auto irr = lir_explain(q, kCap);
        for (const auto& e : subsets_of_target(*ex.theory, x, kCap)) {
            bool in_irr =
                std::binary_search(irr.begin(), irr.end(), e);
            CHECK(is_irrefutable(q, e) == in_irr);
        }
    }
}

TEST_CASE("targets are always irrefutable; greedy result is minimal") {
    testutil::Example1 ex1;
    auto q = ex1.q1();
    CHECK(is_irrefutable(q, PartialAssignment::from_instance(ex1.x1)));

    auto e = find_minimal_irrefutable(q);
    CHECK(e == pa(*ex1.theory, "{f2=0}"));
    for (std::size_t pos = 0; pos < e.size(); ++pos) {
        CHECK(!is_irrefutable(q, e.without(pos)));
    }

    testutil::Example3 ex3;
    for (const auto& x : ex3.d.instances()) {
        auto q3 = ex3.q(x);
        for (const auto& order :
             {ascending_order(2), descending_order(2)}) {
            auto m = find_minimal_irrefutable(q3, order);
            CHECK(is_irrefutable(q3, m));
            for (std::size_t pos = 0; pos < m.size(); ++pos) {
                CHECK(!is_irrefutable(q3, m.without(pos)));
            }
        }
    }
}

TEST_CASE("irrefutability counters stay within the per-call budget") {
    testutil::Example3 ex;
    auto q = ex.q(ex.y1);
    counters().reset();
    CHECK(is_irrefutable(q, pa(*ex.theory, "{f2=0}")));
    // One candidate per differently-classified instance (here just y3),
    // one scan for the membership gate plus one per candidate.
    CHECK(counters().irr_candidate_tests == 1);
    CHECK(counters().dataset_scans <= 1 + ex.d.size());
    counters().reset();
}

TEST_CASE("coherent_from_envelope filters by the target") {
    testutil::Example1 ex;
    const Theory& t = *ex.theory;
    auto full = irr_envelope(ex.d1, *ex.k, kCap);

    CHECK(coherent_from_envelope(full, ex.q1()) ==
          eset(t, {"{f1=0,f2=0}", "{f2=0}"}));
    CHECK(coherent_from_envelope(eset(t, {"{f2=0}", "{f2=1}"}), ex.q1()) ==
          eset(t, {"{f2=0}"}));
    CHECK_THROWS_AS(
        coherent_from_envelope(eset(t, {"{f1=0,f2=0}"}), ex.q1()),
        contract_error);
}

TEST_CASE("decision list induced by an envelope") {
    testutil::Example1 ex;
    const Theory& t = *ex.theory;
    auto x2env = eset(t, {"{f2=0}", "{f2=1}"});
    auto sigma = sigma_from_envelope(x2env, ex.d1, *ex.k);

    REQUIRE(sigma.rules().size() == 2);
    CHECK(sigma.rules()[0].premise == pa(t, "{f2=0}"));
    CHECK(sigma.rules()[0].class_id == 0);
    CHECK(sigma.rules()[1].premise == pa(t, "{f2=1}"));
    CHECK(sigma.rules()[1].class_id == 1);
    CHECK(sigma.default_class() == 0);

    // Agreement with the black box on the dataset.
    for (const auto& y : ex.d1.instances()) {
        CHECK(sigma.predict(y) == ex.k->predict(y));
    }

    // Each member inside an instance is a feature-space explanation of
    // that instance under the decision list.
    auto sp = std::make_shared<const DecisionListClassifier>(sigma);
    for (const auto& y : ex.d1.instances()) {
        auto full = Dataset::make(ex.theory, enumerate_feature_space(t, kCap));
        auto qy = make_question(ex.theory, sp, full, y);
        for (const auto& e : x2env) {
            if (!covers(e, y)) continue;
            CHECK(is_dwaxp(qy, e));
        }
    }

    CHECK_THROWS_AS(sigma_from_envelope(eset(t, {"{f1=0,f2=0}"}), ex.d1,
                                        *ex.k),
                    contract_error);
}

TEST_CASE("single-instance dataset: everything is irrefutable") {
    auto tp = testutil::theory2();
    auto k = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}}, std::vector<int>{0});
    auto d = Dataset::make(tp, {{0, 0}});
    auto q = make_question(tp, k, d, {0, 0});

    auto pool = build_dwaxp_pool(d, *k, kCap);
    CHECK(pool.size() == 4); // every subset of the lone instance
    CHECK(irr_envelope(d, *k, kCap) == pool.members);
    CHECK(is_irrefutable(q, PartialAssignment{}));
    CHECK(find_minimal_irrefutable(q).empty());
}

TEST_CASE("zoo irrefutability: greedy minimal and the broad literal set") {
    auto r = load_dataset_file(testutil::fixture("zoo.csv"));
    const Theory& t = *r.theory;
    const auto& antelope = r.dataset[r.id_to_instance.at("antelope")];
    auto q = make_question(r.theory, r.classifier, r.dataset, antelope);

    auto e = find_minimal_irrefutable(q);
    CHECK(assignment_text(t, e) ==
          "{hair=1,feathers=0,eggs=0,milk=1,airborne=0,aquatic=0,"
          "toothed=1,backbone=1,breathes=1,venomous=0,fins=0,legs=4,"
          "tail=1}");
    for (std::size_t pos = 0; pos < e.size(); ++pos) {
        CHECK(!is_irrefutable(q, e.without(pos)));
    }

    // The hand-picked 14-literal superset (all features except fins and
    // domestic) is refuted: dropping its bound features from a
    // differently-classified instance still leaves a dataset explanation.
    auto broad = parse_assignment(
        t,
        "{hair=1,feathers=0,eggs=0,milk=1,airborne=0,aquatic=0,predator=0,"
        "toothed=1,backbone=1,breathes=1,venomous=0,legs=4,tail=1,"
        "catsize=1}");
    CHECK(is_dwaxp(q, broad));
    CHECK(!is_irrefutable(q, broad));
}
