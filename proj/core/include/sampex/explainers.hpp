#pragma once

// Core explanation functions over questions Q = (theory, classifier,
// dataset, target):
//   - weak abductive explanations w.r.t. the dataset (is_dwaxp / all_dwaxp)
//   - concise (subset-minimal) explanations (find_caxp / all_caxp)
//   - their feature-space counterparts by bounded enumeration (lw / lc)
//   - the trivial explainer {x}.
// All results use canonical ordering so equal inputs give identical output.

#include <cstdint>
#include <vector>

#include "sampex/data.hpp"
#include "sampex/theory.hpp"

namespace sampex {

// Explanations are partial assignments; sets are kept sorted
// lexicographically by their canonical literal lists.
using Explanation = PartialAssignment;
using ExplanationSet = std::vector<PartialAssignment>;

// Operation counters for complexity sanity checks.  is_dwaxp makes exactly
// one pass over the dataset (one "scan" = m covers checks) whenever E is a
// subset of the target; is_irrefutable (coherence module) counts candidate
// tests.  Single-threaded instrumentation.
struct OpCounters {
    std::uint64_t dwaxp_calls = 0;
    std::uint64_t dataset_scans = 0;   // full passes over D
    std::uint64_t covers_checks = 0;   // per-instance subset tests
    std::uint64_t irr_candidate_tests = 0;

    void reset() { *this = OpCounters{}; }
};

OpCounters& counters();

// True iff E is a subset of the target and every dataset instance covered
// by E has the target's class.  A non-subset E returns false (no error).
// When `refuting` is non-null and the verdict is false due to a covering
// instance of another class, the first such instance is stored there.
bool is_dwaxp(const Question& q, const PartialAssignment& e,
              Instance* refuting = nullptr);

// Every subset of the target that passes is_dwaxp.  Enumerates subsets in
// size-then-lexicographic order; the returned set is in canonical order.
// Throws capacity_error when 2^n exceeds `cap`.
ExplanationSet all_dwaxp(const Question& q, std::uint64_t cap);

// Greedy subset-minimal dwAXp: walk the deletion order once, dropping each
// literal whose removal keeps is_dwaxp true.  The order is a permutation of
// feature indices; features the target does not bind are skipped.
Explanation find_caxp(const Question& q, const std::vector<int>& order);
Explanation find_caxp(const Question& q); // ascending order

// Subset-minimal elements of all_dwaxp.
ExplanationSet all_caxp(const Question& q, std::uint64_t cap);

// Feature-space variants: the same question with the dataset replaced by
// the whole feature space (classifier must be defined everywhere).
ExplanationSet lw_all(const Question& q, std::uint64_t cap);
ExplanationSet lc_all(const Question& q, std::uint64_t cap);

// Exactly { target-as-assignment }.
ExplanationSet trivial_explain(const Question& q);

// Helpers shared with the other explainer modules.
std::vector<int> ascending_order(int n);
std::vector<int> descending_order(int n);

// Every subset of the target's literals, size-then-lex; capacity-guarded.
ExplanationSet subsets_of_target(const Theory& theory, const Instance& x,
                                 std::uint64_t cap);

// Keeps only subset-minimal members (no other member strictly inside).
ExplanationSet minimal_elements(const ExplanationSet& set);

// Sorts into canonical order and drops duplicates.
void canonicalize(ExplanationSet& set);

} // namespace sampex
