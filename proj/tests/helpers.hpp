#pragma once

// Shared scaffolding for the test binaries: tiny theories, literal-text
// builders, and fixture-file paths.

#include <memory>
#include <string>
#include <vector>

#include "sampex/coherence.hpp"
#include "sampex/data.hpp"
#include "sampex/explainers.hpp"
#include "sampex/theory.hpp"

#ifndef SAMPEX_FIXTURES
#error "SAMPEX_FIXTURES must point at the bundled fixture directory"
#endif

namespace testutil {

using namespace sampex;

inline std::string fixture(const std::string& name) {
    return std::string(SAMPEX_FIXTURES) + "/" + name;
}

// Two binary features f1, f2 and classes 0, 1.
inline TheoryPtr theory2() {
    return std::make_shared<const Theory>(
        std::vector<std::string>{"f1", "f2"},
        std::vector<std::vector<std::string>>{{"0", "1"}, {"0", "1"}},
        std::vector<std::string>{"0", "1"});
}

inline PartialAssignment pa(const Theory& t, const std::string& text) {
    return parse_assignment(t, text);
}

// Explanation set from literal texts, canonical order.
inline ExplanationSet eset(const Theory& t,
                           const std::vector<std::string>& texts) {
    ExplanationSet out;
    for (const auto& s : texts) out.push_back(parse_assignment(t, s));
    canonicalize(out);
    return out;
}

inline std::string show(const Theory& t, const ExplanationSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += assignment_text(t, s[i]);
    }
    return out + "}";
}

// The four-instance table of the first worked example: exclusive-or of the
// two features, with D1 = the first two rows.
struct Example1 {
    TheoryPtr theory = theory2();
    ClassifierPtr k = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}, {0, 1}, {1, 0}, {1, 1}},
        std::vector<int>{0, 1, 1, 0});
    Dataset d1 = Dataset::make(theory, {{0, 0}, {0, 1}});
    Instance x1{0, 0};
    Instance x2{0, 1};

    Question q1() const { return make_question(theory, k, d1, x1); }
    Question q2() const { return make_question(theory, k, d1, x2); }
};

// The three-instance second worked example: two zeros and a one.
struct Example3 {
    TheoryPtr theory = theory2();
    ClassifierPtr k = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}, {1, 0}, {1, 1}, {0, 1}},
        std::vector<int>{0, 0, 1, 1});
    Dataset d = Dataset::make(theory, {{0, 0}, {1, 0}, {1, 1}});
    Instance y1{0, 0};
    Instance y2{1, 0};
    Instance y3{1, 1};

    Question q(const Instance& x) const {
        return make_question(theory, k, d, x);
    }
};

} // namespace testutil
