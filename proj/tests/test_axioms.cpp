#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>

#include "helpers.hpp"
#include "sampex/axioms.hpp"
#include "sampex/errors.hpp"

using namespace sampex;
using testutil::eset;

namespace {

constexpr std::uint64_t kCap = 1 << 20;

int axiom_bit(AxiomId a) {
    for (std::size_t i = 0; i < kAllAxioms.size(); ++i) {
        if (kAllAxioms[i] == a) return static_cast<int>(i);
    }
    return -1;
}

std::uint16_t mask_of(const std::vector<AxiomId>& axioms) {
    std::uint16_t m = 0;
    for (AxiomId a : axioms) m |= std::uint16_t(1) << axiom_bit(a);
    return m;
}

AxiomId axiom_by_name(const std::string& name) {
    for (AxiomId a : kAllAxioms) {
        if (name == axiom_name(a)) return a;
    }
    FAIL("unknown axiom name ", name);
    return AxiomId::Feasibility;
}

const IncompatFixture& fixture_named(
    const std::vector<IncompatFixture>& all, const std::string& name) {
    for (const auto& fx : all) {
        if (fx.name == name) return fx;
    }
    FAIL("unknown fixture ", name);
    return all.front();
}

} // namespace

TEST_CASE("names round-trip") {
    for (ExplainerId e : kAllExplainers) {
        CHECK(parse_explainer(explainer_name(e)) == e);
    }
    CHECK(!parse_explainer("Lx").has_value());
    CHECK(std::string(axiom_name(AxiomId::CounterMonotonicity)) ==
          "CounterMonotonicity");
}

TEST_CASE("all seven explainers on the first worked example") {
    testutil::Example1 ex;
    auto q = ex.q1();
    const Theory& t = *ex.theory;

    CHECK(run_explainer(ExplainerId::Lw, q, kCap) ==
          eset(t, {"{f1=0,f2=0}"}));
    CHECK(run_explainer(ExplainerId::Lc, q, kCap) ==
          eset(t, {"{f1=0,f2=0}"}));
    CHECK(run_explainer(ExplainerId::Ldw, q, kCap) ==
          eset(t, {"{f2=0}", "{f1=0,f2=0}"}));
    CHECK(run_explainer(ExplainerId::Ldc, q, kCap) ==
          eset(t, {"{f2=0}"}));
    CHECK(run_explainer(ExplainerId::Ltr, q, kCap) ==
          eset(t, {"{f1=0,f2=0}"}));
    CHECK(run_explainer(ExplainerId::Lir, q, kCap) ==
          eset(t, {"{f2=0}", "{f1=0,f2=0}"}));
    CHECK(run_explainer(ExplainerId::Lsu, q, kCap) ==
          eset(t, {"{f2=0}", "{f1=0,f2=0}"}));
}

TEST_CASE("desk universe matches the published matrix exactly") {
    auto u = desk_universe();
    CHECK(u.classifiers.size() == 16);
    CHECK(u.datasets.size() == 15);

    auto report = axiom_matrix(u);
    CHECK(report.entries.size() == 70);
    for (const auto& entry : report.entries) {
        INFO(axiom_name(entry.axiom), " / ", explainer_name(entry.explainer),
             " witness: ", entry.witness);
        CHECK(entry.observed == entry.expected);
        if (!entry.observed) CHECK(!entry.witness.empty());
    }
    CHECK(report.discrepancies == 0);

    // Dataset refutations imply feature-space refutations, never the other
    // way round, so the observed matrix must respect both implications.
    for (ExplainerId e : kAllExplainers) {
        auto holds = [&](AxiomId a) {
            for (const auto& entry : report.entries) {
                if (entry.axiom == a && entry.explainer == e) {
                    return entry.observed;
                }
            }
            return false;
        };
        if (holds(AxiomId::Irreducibility)) {
            CHECK(holds(AxiomId::StrongIrreducibility));
        }
        if (holds(AxiomId::Completeness)) {
            CHECK(holds(AxiomId::StrongCompleteness));
        }
    }
}

TEST_CASE("spot expectations from the published matrix") {
    CHECK(expected_satisfied(AxiomId::Feasibility, ExplainerId::Lsu));
    CHECK(expected_satisfied(AxiomId::Coherence, ExplainerId::Lir));
    CHECK(!expected_satisfied(AxiomId::Coherence, ExplainerId::Ldw));
    CHECK(!expected_satisfied(AxiomId::Monotonicity, ExplainerId::Lir));
    CHECK(expected_satisfied(AxiomId::StrongIrreducibility, ExplainerId::Lc));
    CHECK(!expected_satisfied(AxiomId::StrongIrreducibility, ExplainerId::Lw));
    CHECK(expected_satisfied(AxiomId::Completeness, ExplainerId::Ldw));
    CHECK(!expected_satisfied(AxiomId::Completeness, ExplainerId::Lw));
    CHECK(expected_satisfied(AxiomId::CounterMonotonicity, ExplainerId::Ltr));
    CHECK(!expected_satisfied(AxiomId::CounterMonotonicity, ExplainerId::Lsu));
}

TEST_CASE("incompatibility certificates for the published sets") {
    auto fixtures = incompat_fixtures();
    REQUIRE(fixtures.size() == 3);

    const std::uint64_t expected_count[3] = {4096, 256, 512};
    const char* names[3] = {"A", "B", "C"};

    for (const auto& named : incompatible_sets()) {
        const auto& fx = fixture_named(fixtures, named.fixture);
        auto cert = check_incompatibility(named.axioms, fx, kCap);
        INFO(named.name, " on fixture ", named.fixture);
        CHECK(cert.incompatible);
        CHECK(cert.witness.empty());
        for (int i = 0; i < 3; ++i) {
            if (named.fixture == names[i]) {
                CHECK(cert.assignments_checked == expected_count[i]);
            }
        }
    }
}

TEST_CASE("the published compatible sets are satisfiable everywhere") {
    auto fixtures = incompat_fixtures();
    for (const auto& named : compatible_sets()) {
        for (const auto& fx : fixtures) {
            auto cert = check_incompatibility(named.axioms, fx, kCap);
            INFO(named.name, " on fixture ", fx.name, ": ", cert.witness);
            CHECK(!cert.incompatible);
            CHECK(!cert.witness.empty());
        }
    }
}

TEST_CASE("extra pairs are incompatible alongside feasibility+validity") {
    auto fixtures = incompat_fixtures();
    for (const auto& pair : extra_incompatible_pairs()) {
        std::vector<AxiomId> set = {AxiomId::Feasibility, AxiomId::Validity};
        set.insert(set.end(), pair.begin(), pair.end());

        bool certified = false;
        for (const auto& fx : fixtures) {
            if (check_incompatibility(set, fx, kCap).incompatible) {
                certified = true;
                break;
            }
        }
        INFO(axiom_name(pair[0]), "+", axiom_name(pair[1]));
        CHECK(certified);
    }
}

TEST_CASE("certificate existence is exactly the catalogue closure") {
    // For every axiom set containing Feasibility and Validity, some fixture
    // certifies incompatibility iff the set contains one of the published
    // incompatible sets or one of the extra pairs.
    auto fixtures = incompat_fixtures();
    std::vector<std::vector<std::uint16_t>> masks;
    for (const auto& fx : fixtures) {
        masks.push_back(satisfiable_axiom_masks(fx, kCap));
    }

    std::vector<std::uint16_t> closures;
    for (const auto& named : incompatible_sets()) {
        closures.push_back(mask_of(named.axioms));
    }
    for (const auto& pair : extra_incompatible_pairs()) {
        closures.push_back(mask_of(pair));
    }

    const std::uint16_t base = mask_of({AxiomId::Feasibility,
                                        AxiomId::Validity});
    std::vector<AxiomId> rest;
    for (AxiomId a : kAllAxioms) {
        if (a != AxiomId::Feasibility && a != AxiomId::Validity) {
            rest.push_back(a);
        }
    }
    REQUIRE(rest.size() == 8);

    for (std::uint32_t bits = 0; bits < 256; ++bits) {
        std::uint16_t full = base;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (bits & (1u << i)) full |= mask_of({rest[i]});
        }

        bool certified = false;
        for (const auto& fixture_masks : masks) {
            bool satisfiable = false;
            for (std::uint16_t m : fixture_masks) {
                if ((m & full) == full) {
                    satisfiable = true;
                    break;
                }
            }
            if (!satisfiable) {
                certified = true;
                break;
            }
        }

        bool covered = false;
        for (std::uint16_t c : closures) {
            if ((full & c) == c) {
                covered = true;
                break;
            }
        }

        INFO("subset mask ", bits);
        CHECK(certified == covered);
    }
}

TEST_CASE("bundled counterexample universes refute what they claim") {
    auto universes = load_fixtures(std::string(SAMPEX_FIXTURES));
    REQUIRE(universes.size() == 4);

    for (const auto& named : universes) {
        auto slash = named.refutes.find('/');
        REQUIRE(slash != std::string::npos);
        auto exp = parse_explainer(named.refutes.substr(0, slash));
        REQUIRE(exp.has_value());
        AxiomId axiom = axiom_by_name(named.refutes.substr(slash + 1));

        auto verdict = check_axiom(*exp, axiom, named.universe);
        INFO(named.name, " should refute ", named.refutes);
        CHECK(!verdict.holds);
        CHECK(!verdict.witness.empty());

        // The basics still hold on every bundled universe.
        for (AxiomId basic : {AxiomId::Feasibility, AxiomId::Validity,
                              AxiomId::Success}) {
            CHECK(check_axiom(*exp, basic, named.universe).holds);
        }
    }
}
