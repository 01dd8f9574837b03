#pragma once

// Executable axiom checks over finite question universes: the ten formal
// properties as literal formula evaluations, the published
// satisfied/violated matrix for the seven explainers, incompatibility
// certificates by exhaustive assignment enumeration over tiny proof
// fixtures, and the bundled counterexample universes.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sampex/data.hpp"
#include "sampex/explainers.hpp"

namespace sampex {

enum class AxiomId {
    Feasibility,
    Validity,
    Success,
    Coherence,
    Irreducibility,
    StrongIrreducibility,
    Completeness,
    StrongCompleteness,
    Monotonicity,
    CounterMonotonicity,
};

enum class ExplainerId { Lw, Lc, Ldw, Ldc, Ltr, Lir, Lsu };

inline constexpr std::array<AxiomId, 10> kAllAxioms = {
    AxiomId::Feasibility,        AxiomId::Validity,
    AxiomId::Success,            AxiomId::Coherence,
    AxiomId::Irreducibility,     AxiomId::StrongIrreducibility,
    AxiomId::Completeness,       AxiomId::StrongCompleteness,
    AxiomId::Monotonicity,       AxiomId::CounterMonotonicity,
};

inline constexpr std::array<ExplainerId, 7> kAllExplainers = {
    ExplainerId::Lw,  ExplainerId::Lc,  ExplainerId::Ldw, ExplainerId::Ldc,
    ExplainerId::Ltr, ExplainerId::Lir, ExplainerId::Lsu,
};

const char* axiom_name(AxiomId a);
const char* explainer_name(ExplainerId e);
std::optional<ExplainerId> parse_explainer(const std::string& name);

// A finite family of questions: every (classifier, dataset, target in
// dataset) triple, plus feature-space access for the Strong axioms and
// dataset-pair access for the monotonicity axioms.
struct Universe {
    TheoryPtr theory;
    std::vector<ClassifierPtr> classifiers;
    std::vector<Dataset> datasets; // all nonempty
    std::uint64_t cap = std::uint64_t{1} << 20;
};

// Two binary features, both binary-feature classes, all 16 total
// classifiers, all 15 nonempty datasets: large enough to exhibit every
// published violation, small enough for exhaustive Strong-axiom checks.
Universe desk_universe();

struct Verdict {
    bool holds = true;
    std::string witness; // first counterexample, canonical order

    explicit operator bool() const { return holds; }
};

// The explainer as a total function of a question, capacity-guarded.
ExplanationSet run_explainer(ExplainerId e, const Question& q,
                             std::uint64_t cap);

// Literal evaluation of one property for one explainer over the universe.
Verdict check_axiom(ExplainerId e, AxiomId a, const Universe& u);

// Published expectation for (axiom, explainer).
bool expected_satisfied(AxiomId a, ExplainerId e);

struct MatrixEntry {
    AxiomId axiom;
    ExplainerId explainer;
    bool expected = false;
    bool observed = false;
    std::string witness;
};

struct MatrixReport {
    std::vector<MatrixEntry> entries; // axiom-major, explainer-minor
    int discrepancies = 0;
};

// Runs every (axiom, explainer) pair over the universe and compares with
// the published matrix.
MatrixReport axiom_matrix(const Universe& u);

// ---------------------------------------------------------------- fixtures

// A tiny scenario over which every possible explainer output can be
// enumerated: a shared total classifier and a handful of questions.
struct FixtureQuestion {
    Dataset dataset;
    Instance target;
};

struct IncompatFixture {
    std::string name;
    TheoryPtr theory;
    ClassifierPtr classifier;
    std::vector<FixtureQuestion> questions;
    // When set, candidate explanations range over every partial assignment
    // of the theory instead of subsets of the question's target (needed for
    // axiom sets that drop Feasibility).
    bool unconstrained_candidates = false;
};

// The bundled proof scenarios: "A" (three-class dataset), "B" (nested
// dataset pair), "C" (single question, unconstrained candidates).
std::vector<IncompatFixture> incompat_fixtures();

struct Certificate {
    std::string fixture;
    bool incompatible = false;
    std::uint64_t assignments_checked = 0;
    std::string witness; // a satisfying assignment when compatible
};

// Enumerates every assignment of candidate explanation sets to the
// fixture's questions and reports whether any satisfies all the listed
// axioms simultaneously.
Certificate check_incompatibility(const std::vector<AxiomId>& axioms,
                                  const IncompatFixture& fx,
                                  std::uint64_t cap);

// All distinct axiom subsets simultaneously satisfiable on the fixture,
// as bitmasks indexed by kAllAxioms position (bit i = axiom i holds for
// some assignment also matching the other set bits).
std::vector<std::uint16_t> satisfiable_axiom_masks(const IncompatFixture& fx,
                                                   std::uint64_t cap);

struct NamedAxiomSet {
    std::string name;
    std::vector<AxiomId> axioms;
    std::string fixture; // certifying fixture for incompatible sets
};

// The published minimal incompatible sets I1..I5 with their fixtures.
const std::vector<NamedAxiomSet>& incompatible_sets();

// The published compatible sets C1..C5 (satisfiable on every fixture).
const std::vector<NamedAxiomSet>& compatible_sets();

// Minimal incompatible pairs beyond the published catalogue, found by the
// exhaustive fixture scan; together with I1..I5 they characterize exactly
// which axiom sets admit certificates on the bundled fixtures.
const std::vector<std::vector<AxiomId>>& extra_incompatible_pairs();

// ---------------------------------------------------- bundled universes

struct NamedUniverse {
    std::string name;
    std::string refutes; // "explainer/axiom" this universe witnesses against
    Universe universe;
};

// Counterexample universes: the incompatibility scenarios reloaded from
// the bundled data files in `dir`, plus the in-code nested-dataset pairs
// that defeat monotonicity for the irrefutable explainer.
std::vector<NamedUniverse> load_fixtures(const std::string& dir);

} // namespace sampex
