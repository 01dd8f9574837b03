#pragma once

// Coherent explanation machinery: the pool of all dataset-scoped weak
// abductive explanations, coherence/envelope verdicts, the irrefutable
// envelope and its polynomial membership test, locally minimal irrefutable
// explanations, exhaustive envelope enumeration for tiny pools, and the
// decision-list classifier induced by an envelope.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sampex/data.hpp"
#include "sampex/explainers.hpp"
#include "sampex/theory.hpp"

namespace sampex {

// An envelope is an explanation set with the envelope property under some
// (dataset, classifier); kept in canonical order like any ExplanationSet.
using Envelope = ExplanationSet;

// Union of all_dwaxp over every dataset instance, each member tagged with
// the (unique) class of the instances it covers.
struct DwaxpPool {
    ExplanationSet members;   // canonical order
    std::vector<int> labels;  // parallel to members

    std::optional<int> label_of(const PartialAssignment& e) const;
    std::size_t size() const { return members.size(); }
};

// Verdict of is_coherent_set: either coherent, or a counterexample pair
// (e1, e2) with covering instances (y, z) of different classes.
struct CoherenceVerdict {
    bool coherent = true;
    PartialAssignment e1, e2;
    Instance y, z;

    explicit operator bool() const { return coherent; }
};

// Verdict of is_envelope: the first failed condition, if any.
enum class EnvelopeFailure { none, incoherent, not_in_pool, uncovered };

struct EnvelopeVerdict {
    EnvelopeFailure failure = EnvelopeFailure::none;
    std::string detail; // human-readable witness description

    bool ok() const { return failure == EnvelopeFailure::none; }
    explicit operator bool() const { return ok(); }
};

// True unless some pair E, E' of X (E = E' allowed) has a consistent union
// while covering dataset instances of different classes.  Quadratic over X
// with one dataset scan per member.
CoherenceVerdict is_coherent_set(const ExplanationSet& x, const Dataset& d,
                                 const Classifier& k);

// Checks, in order: coherence, membership of every member in the pool,
// and coverage of every dataset instance by some member.
EnvelopeVerdict is_envelope(const ExplanationSet& x, const Dataset& d,
                            const Classifier& k);

// Filters an envelope down to the members contained in the question's
// target.  Throws contract_error when X is not an envelope for (D, k).
ExplanationSet coherent_from_envelope(const ExplanationSet& x,
                                      const Question& q);

// The exact pool with labels; capacity-guarded subset enumeration per
// dataset instance.
DwaxpPool build_dwaxp_pool(const Dataset& d, const Classifier& k,
                           std::uint64_t cap);

// Members of the pool that conflict (consistent union, different label)
// with no pool member.  Unique, contains every dataset instance, and is
// itself an envelope.
Envelope irr_envelope(const Dataset& d, const Classifier& k,
                      std::uint64_t cap);

// Polynomial irrefutability test; no pool construction.  True iff E is a
// dwAXp of Q and, for every dataset instance x' of a different class, the
// canonical candidate (x' restricted to the features outside
// features(E) ∩ disagreement(x, x')) fails to be a dwAXp of the question
// targeting x'.
bool is_irrefutable(const Question& q, const PartialAssignment& e);

// Exact filter of irr_envelope by containment in the target.
ExplanationSet lir_explain(const Question& q, std::uint64_t cap);

// Greedy locally minimal irrefutable explanation: start from the target
// (always irrefutable) and drop literals in the given order while
// irrefutability survives.  Every single-literal deletion of the result
// fails is_irrefutable.
Explanation find_minimal_irrefutable(const Question& q,
                                     const std::vector<int>& order);
Explanation find_minimal_irrefutable(const Question& q);

// Exhaustive envelope enumeration over subsets of the pool; needs
// 2^pool-size within cap (tiny universes only).
std::vector<Envelope> all_envelopes(const Dataset& d, const Classifier& k,
                                    std::uint64_t cap);

// Subset-maximal envelopes; verifies the invariant that their intersection
// equals irr_envelope.
std::vector<Envelope> maximal_envelopes(const Dataset& d, const Classifier& k,
                                        std::uint64_t cap);

// First-match decision list induced by an envelope: one rule per member
// (premise -> class of its covered instances), deduplicated, ordered by
// (premise size, literal order); default class = first declared class.
// Rule order never changes predictions (coherence), only output text.
class DecisionListClassifier : public Classifier {
public:
    struct Rule {
        PartialAssignment premise;
        int class_id = 0;
    };

    DecisionListClassifier(std::vector<Rule> rules, int default_class);

    int predict(const Instance& y) const override;

    const std::vector<Rule>& rules() const { return rules_; }
    int default_class() const { return default_class_; }

private:
    std::vector<Rule> rules_;
    int default_class_;
};

// Builds the decision list for an envelope; guarantees (checked in tests):
// it agrees with k on every dataset instance, and every member of X
// contained in an instance x is a dwAXp of the feature-space question on x
// under the decision list.  Throws contract_error on non-envelopes.
DecisionListClassifier sigma_from_envelope(const ExplanationSet& x,
                                           const Dataset& d,
                                           const Classifier& k);

} // namespace sampex
