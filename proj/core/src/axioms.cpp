#include "sampex/axioms.hpp"

#include <algorithm>
#include <sstream>

#include "sampex/coherence.hpp"
#include "sampex/errors.hpp"
#include "sampex/surrogate.hpp"

namespace sampex {

const char* axiom_name(AxiomId a) {
    switch (a) {
        case AxiomId::Feasibility: return "Feasibility";
        case AxiomId::Validity: return "Validity";
        case AxiomId::Success: return "Success";
        case AxiomId::Coherence: return "Coherence";
        case AxiomId::Irreducibility: return "Irreducibility";
        case AxiomId::StrongIrreducibility: return "StrongIrreducibility";
        case AxiomId::Completeness: return "Completeness";
        case AxiomId::StrongCompleteness: return "StrongCompleteness";
        case AxiomId::Monotonicity: return "Monotonicity";
        case AxiomId::CounterMonotonicity: return "CounterMonotonicity";
    }
    return "?";
}

const char* explainer_name(ExplainerId e) {
    switch (e) {
        case ExplainerId::Lw: return "Lw";
        case ExplainerId::Lc: return "Lc";
        case ExplainerId::Ldw: return "Ldw";
        case ExplainerId::Ldc: return "Ldc";
        case ExplainerId::Ltr: return "Ltr";
        case ExplainerId::Lir: return "Lir";
        case ExplainerId::Lsu: return "Lsu";
    }
    return "?";
}

std::optional<ExplainerId> parse_explainer(const std::string& name) {
    for (ExplainerId e : kAllExplainers) {
        if (name == explainer_name(e)) return e;
    }
    return std::nullopt;
}

namespace {

int axiom_index(AxiomId a) {
    for (std::size_t i = 0; i < kAllAxioms.size(); ++i) {
        if (kAllAxioms[i] == a) return static_cast<int>(i);
    }
    return -1;
}

int explainer_index(ExplainerId e) {
    for (std::size_t i = 0; i < kAllExplainers.size(); ++i) {
        if (kAllExplainers[i] == e) return static_cast<int>(i);
    }
    return -1;
}

// Published matrix, rows in kAllAxioms order, columns in kAllExplainers
// order (Lw, Lc, Ldw, Ldc, Ltr, Lir, Lsu).
constexpr bool kExpected[10][7] = {
    {true, true, true, true, true, true, true},      // Feasibility
    {true, true, true, true, true, true, true},      // Validity
    {true, true, true, true, true, true, true},      // Success
    {true, true, false, false, true, true, true},    // Coherence
    {false, false, false, true, false, false, false},   // Irreducibility
    {false, true, false, true, false, false, false},    // StrongIrreducibility
    {false, false, true, false, false, false, false},   // Completeness
    {true, false, true, false, false, false, false},    // StrongCompleteness
    {true, true, false, false, true, false, false},     // Monotonicity
    {true, true, true, false, true, false, false},      // CounterMonotonicity
};

std::string instances_text(const Theory& t, const std::vector<Instance>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += instance_text(t, xs[i]);
    }
    return s + "}";
}

std::string set_text(const Theory& t, const ExplanationSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += assignment_text(t, s[i]);
    }
    return out + "}";
}

bool contains(const ExplanationSet& s, const PartialAssignment& e) {
    return std::binary_search(s.begin(), s.end(), e);
}

bool subset(const ExplanationSet& a, const ExplanationSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool dataset_subset(const Dataset& a, const Dataset& b) {
    for (const auto& x : a.instances()) {
        if (!b.contains(x)) return false;
    }
    return true;
}

// Everything check_axiom needs to walk one universe deterministically.
struct UniverseCtx {
    const Universe& u;
    std::vector<Instance> space; // full feature space, built on demand

    explicit UniverseCtx(const Universe& universe) : u(universe) {}

    const std::vector<Instance>& feature_space() {
        if (space.empty()) space = enumerate_feature_space(*u.theory, u.cap);
        return space;
    }

    Question question(std::size_t ci, std::size_t di, std::size_t xi) const {
        return Question{u.theory, u.classifiers[ci], u.datasets[di],
                        u.datasets[di][xi]};
    }

    std::string where(std::size_t ci, std::size_t di, std::size_t xi) const {
        std::ostringstream os;
        os << "classifier#" << ci << " D="
           << instances_text(*u.theory, u.datasets[di].instances())
           << " x=" << instance_text(*u.theory, u.datasets[di][xi]);
        return os.str();
    }
};

} // namespace

Universe desk_universe() {
    auto theory = std::make_shared<const Theory>(
        std::vector<std::string>{"f1", "f2"},
        std::vector<std::vector<std::string>>{{"0", "1"}, {"0", "1"}},
        std::vector<std::string>{"0", "1"});
    const auto space = enumerate_feature_space(*theory, 4);

    Universe u;
    u.theory = theory;
    for (int ki = 0; ki < 16; ++ki) {
        std::vector<int> labels;
        labels.reserve(space.size());
        for (std::size_t i = 0; i < space.size(); ++i) {
            labels.push_back((ki >> i) & 1);
        }
        u.classifiers.push_back(
            std::make_shared<const TableClassifier>(space, labels));
    }
    for (int mask = 1; mask < 16; ++mask) {
        std::vector<Instance> rows;
        for (std::size_t i = 0; i < space.size(); ++i) {
            if (mask & (1 << i)) rows.push_back(space[i]);
        }
        u.datasets.push_back(Dataset::make(theory, std::move(rows)));
    }
    return u;
}

ExplanationSet run_explainer(ExplainerId e, const Question& q,
                             std::uint64_t cap) {
    switch (e) {
        case ExplainerId::Lw: return lw_all(q, cap);
        case ExplainerId::Lc: return lc_all(q, cap);
        case ExplainerId::Ldw: return all_dwaxp(q, cap);
        case ExplainerId::Ldc: return all_caxp(q, cap);
        case ExplainerId::Ltr: return trivial_explain(q);
        case ExplainerId::Lir: return lir_explain(q, cap);
        case ExplainerId::Lsu: {
            auto tree = surrogate_tree(q.dataset, *q.classifier);
            return lsu_explain(q, *tree, cap);
        }
    }
    throw validation_error("unknown explainer id");
}

Verdict check_axiom(ExplainerId e, AxiomId a, const Universe& u) {
    if (!u.theory || u.classifiers.empty() || u.datasets.empty()) {
        throw validation_error("check_axiom: universe lacks a theory, "
                               "classifiers or datasets");
    }
    for (const auto& d : u.datasets) {
        if (d.empty()) {
            throw validation_error("check_axiom: universe datasets must be "
                                   "nonempty");
        }
    }
    UniverseCtx ctx(u);
    const Theory& t = *u.theory;

    auto run = [&](std::size_t ci, std::size_t di, std::size_t xi) {
        return run_explainer(e, ctx.question(ci, di, xi), u.cap);
    };
    auto label = [&](std::size_t ci, const Instance& y) {
        return u.classifiers[ci]->predict(y);
    };

    switch (a) {
        case AxiomId::Feasibility: {
            for (std::size_t ci = 0; ci < u.classifiers.size(); ++ci) {
                for (std::size_t di = 0; di < u.datasets.size(); ++di) {
                    for (std::size_t xi = 0; xi < u.datasets[di].size(); ++xi) {
                        for (const auto& ex : run(ci, di, xi)) {
                            if (!covers(ex, u.datasets[di][xi])) {
                                return Verdict{false,
                                               ctx.where(ci, di, xi) + " E=" +
                                                   assignment_text(t, ex) +
                                                   " not contained in x"};
                            }
                        }
                    }
                }
            }
            return Verdict{};
        }
        case AxiomId::Validity: {
            for (std::size_t ci = 0; ci < u.classifiers.size(); ++ci) {
                for (std::size_t di = 0; di < u.datasets.size(); ++di) {
                    const auto& d = u.datasets[di];
                    for (std::size_t xi = 0; xi < d.size(); ++xi) {
                        const int cx = label(ci, d[xi]);
                        for (const auto& ex : run(ci, di, xi)) {
                            for (std::size_t yi = 0; yi < d.size(); ++yi) {
                                if (covers(ex, d[yi]) &&
                                    label(ci, d[yi]) != cx) {
                                    return Verdict{
                                        false, ctx.where(ci, di, xi) + " E=" +
                                                   assignment_text(t, ex) +
                                                   " covers " +
                                                   instance_text(t, d[yi]) +
                                                   " of another class"};
                                }
                            }
                        }
                    }
                }
            }
            return Verdict{};
        }
        case AxiomId::Success: {
            for (std::size_t ci = 0; ci < u.classifiers.size(); ++ci) {
                for (std::size_t di = 0; di < u.datasets.size(); ++di) {
                    for (std::size_t xi = 0; xi < u.datasets[di].size(); ++xi) {
                        if (run(ci, di, xi).empty()) {
                            return Verdict{false, ctx.where(ci, di, xi) +
                                                      " has an empty "
                                                      "explanation set"};
                        }
                    }
                }
            }
            return Verdict{};
        }
        case AxiomId::Coherence: {
            for (std::size_t ci = 0; ci < u.classifiers.size(); ++ci) {
                for (std::size_t di = 0; di < u.datasets.size(); ++di) {
                    const auto& d = u.datasets[di];
                    for (std::size_t xi = 0; xi < d.size(); ++xi) {
                        for (std::size_t xj = 0; xj < d.size(); ++xj) {
                            if (label(ci, d[xi]) == label(ci, d[xj])) continue;
                            const auto sa = run(ci, di, xi);
                            const auto sb = run(ci, di, xj);
                            for (const auto& ea : sa) {
                                for (const auto& eb : sb) {
                                    if (union_consistent(ea, eb)) {
                                        return Verdict{
                                            false,
                                            ctx.where(ci, di, xi) + " and x'=" +
                                                instance_text(t, d[xj]) +
                                                ": consistent union of " +
                                                assignment_text(t, ea) +
                                                " and " +
                                                assignment_text(t, eb)};
                                    }
                                }
                            }
                        }
                    }
                }
            }
            return Verdict{};
        }
        case AxiomId::Irreducibility:
        case AxiomId::StrongIrreducibility: {
            const bool strong = a == AxiomId::StrongIrreducibility;
            for (std::size_t ci = 0; ci < u.classifiers.size(); ++ci) {
                for (std::size_t di = 0; di < u.datasets.size(); ++di) {
                    const auto& d = u.datasets[di];
                    const auto& space =
                        strong ? ctx.feature_space() : d.instances();
                    for (std::size_t xi = 0; xi < d.size(); ++xi) {
                        const int cx = label(ci, d[xi]);
                        for (const auto& ex : run(ci, di, xi)) {
                            for (std::size_t pos = 0; pos < ex.size(); ++pos) {
                                const auto shorter = ex.without(pos);
                                bool ok = false;
                                for (const auto& xp : space) {
                                    if (label(ci, xp) != cx &&
                                        covers(shorter, xp)) {
                                        ok = true;
                                        break;
                                    }
                                }
                                if (!ok) {
                                    return Verdict{
                                        false,
                                        ctx.where(ci, di, xi) + " E=" +
                                            assignment_text(t, ex) +
                                            " literal " +
                                            literal_text(
                                                t, ex.literals()[pos]) +
                                            " has no differently classified "
                                            "witness"};
                                }
                            }
                        }
                    }
                }
            }
            return Verdict{};
        }
        case AxiomId::Completeness:
        case AxiomId::StrongCompleteness: {
            const bool strong = a == AxiomId::StrongCompleteness;
            for (std::size_t ci = 0; ci < u.classifiers.size(); ++ci) {
                for (std::size_t di = 0; di < u.datasets.size(); ++di) {
                    const auto& d = u.datasets[di];
                    const auto& space =
                        strong ? ctx.feature_space() : d.instances();
                    for (std::size_t xi = 0; xi < d.size(); ++xi) {
                        const int cx = label(ci, d[xi]);
                        const auto chosen = run(ci, di, xi);
                        for (const auto& ex :
                             subsets_of_target(t, d[xi], u.cap)) {
                            if (contains(chosen, ex)) continue;
                            bool refuted = false;
                            for (const auto& y : space) {
                                if (covers(ex, y) && label(ci, y) != cx) {
                                    refuted = true;
                                    break;
                                }
                            }
                            if (!refuted) {
                                return Verdict{
                                    false, ctx.where(ci, di, xi) +
                                               " omits unrefuted E=" +
                                               assignment_text(t, ex)};
                            }
                        }
                    }
                }
            }
            return Verdict{};
        }
        case AxiomId::Monotonicity:
        case AxiomId::CounterMonotonicity: {
            const bool mono = a == AxiomId::Monotonicity;
            for (std::size_t ci = 0; ci < u.classifiers.size(); ++ci) {
                for (std::size_t di = 0; di < u.datasets.size(); ++di) {
                    for (std::size_t dj = 0; dj < u.datasets.size(); ++dj) {
                        if (!dataset_subset(u.datasets[di], u.datasets[dj])) {
                            continue;
                        }
                        for (std::size_t xi = 0; xi < u.datasets[di].size();
                             ++xi) {
                            const auto& x = u.datasets[di][xi];
                            const auto small = run(ci, di, xi);
                            const auto xj = *u.datasets[dj].index_of(x);
                            const auto large = run(ci, dj, xj);
                            const bool ok =
                                mono ? subset(small, large)
                                     : subset(large, small);
                            if (!ok) {
                                return Verdict{
                                    false,
                                    ctx.where(ci, di, xi) + " vs D'=" +
                                        instances_text(
                                            t, u.datasets[dj].instances()) +
                                        ": " + set_text(t, small) +
                                        (mono ? " not within "
                                              : " does not contain ") +
                                        set_text(t, large)};
                            }
                        }
                    }
                }
            }
            return Verdict{};
        }
    }
    throw validation_error("unknown axiom id");
}

bool expected_satisfied(AxiomId a, ExplainerId e) {
    return kExpected[axiom_index(a)][explainer_index(e)];
}

MatrixReport axiom_matrix(const Universe& u) {
    MatrixReport report;
    for (AxiomId a : kAllAxioms) {
        for (ExplainerId e : kAllExplainers) {
            Verdict v = check_axiom(e, a, u);
            MatrixEntry entry{a, e, expected_satisfied(a, e), v.holds,
                              v.witness};
            if (entry.expected != entry.observed) ++report.discrepancies;
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

// ---------------------------------------------------------------- fixtures

namespace {

TheoryPtr binary_theory(int classes) {
    std::vector<std::string> names;
    for (int c = 0; c < classes; ++c) names.push_back(std::to_string(c));
    return std::make_shared<const Theory>(
        std::vector<std::string>{"f1", "f2"},
        std::vector<std::vector<std::string>>{{"0", "1"}, {"0", "1"}},
        std::move(names));
}

} // namespace

std::vector<IncompatFixture> incompat_fixtures() {
    std::vector<IncompatFixture> out;

    // Fixture A: three singleton classes plus a completion instance; the
    // third class makes coherence clash with irreducibility/completeness.
    auto t3 = binary_theory(3);
    auto ka = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 1}, {1, 0}, {0, 0}, {1, 1}},
        std::vector<int>{0, 1, 2, 0});
    Dataset da = Dataset::make(t3, {{0, 1}, {1, 0}, {0, 0}});
    IncompatFixture a;
    a.name = "A";
    a.theory = t3;
    a.classifier = ka;
    a.questions = {{da, {0, 1}}, {da, {1, 0}}, {da, {0, 0}}};
    out.push_back(std::move(a));

    // Fixture B: nested datasets sharing one target; growing the dataset
    // flips which sets stay irreducible.
    auto t2 = binary_theory(2);
    auto kb = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}, {0, 1}, {1, 0}, {1, 1}},
        std::vector<int>{0, 1, 1, 1});
    Dataset db1 = Dataset::make(t2, {{0, 0}, {0, 1}});
    Dataset db2 = Dataset::make(t2, {{0, 0}, {0, 1}, {1, 0}});
    IncompatFixture b;
    b.name = "B";
    b.theory = t2;
    b.classifier = kb;
    b.questions = {{db1, {0, 0}}, {db2, {0, 0}}};
    out.push_back(std::move(b));

    // Fixture C: one question whose candidate explanations range over every
    // partial assignment (the strong axioms bind without Feasibility).
    IncompatFixture c;
    c.name = "C";
    c.theory = t3;
    c.classifier = ka;
    c.questions = {{da, {0, 1}}};
    c.unconstrained_candidates = true;
    out.push_back(std::move(c));

    return out;
}

namespace {

// Precomputed scaffolding for evaluating axioms on any assignment of
// explanation sets to the fixture's questions.
struct FixtureCtx {
    const IncompatFixture& fx;
    std::vector<Instance> space;
    std::vector<int> space_labels;
    std::vector<int> cls;                        // class of each target
    std::vector<std::vector<int>> row_labels;    // per question, per row
    std::vector<ExplanationSet> target_subsets;  // per question
    std::vector<std::vector<bool>> same_dataset; // question pairs
    std::vector<std::vector<bool>> nested;       // D_i subset of D_j
    std::vector<std::vector<bool>> same_target;

    explicit FixtureCtx(const IncompatFixture& fixture, std::uint64_t cap)
        : fx(fixture) {
        space = enumerate_feature_space(*fx.theory, cap);
        for (const auto& y : space) {
            space_labels.push_back(fx.classifier->predict(y));
        }
        const std::size_t qn = fx.questions.size();
        for (const auto& fq : fx.questions) {
            cls.push_back(fx.classifier->predict(fq.target));
            std::vector<int> labels;
            for (const auto& y : fq.dataset.instances()) {
                labels.push_back(fx.classifier->predict(y));
            }
            row_labels.push_back(std::move(labels));
            target_subsets.push_back(
                subsets_of_target(*fx.theory, fq.target, cap));
        }
        same_dataset.assign(qn, std::vector<bool>(qn, false));
        nested.assign(qn, std::vector<bool>(qn, false));
        same_target.assign(qn, std::vector<bool>(qn, false));
        for (std::size_t i = 0; i < qn; ++i) {
            for (std::size_t j = 0; j < qn; ++j) {
                same_dataset[i][j] = fx.questions[i].dataset.instances() ==
                                     fx.questions[j].dataset.instances();
                nested[i][j] = dataset_subset(fx.questions[i].dataset,
                                              fx.questions[j].dataset);
                same_target[i][j] =
                    fx.questions[i].target == fx.questions[j].target;
            }
        }
    }

    // Bitmask over kAllAxioms of the axioms this assignment satisfies.
    std::uint16_t satisfied(const std::vector<ExplanationSet>& s) const {
        const std::size_t qn = fx.questions.size();
        bool res[10];

        bool feas = true;
        for (std::size_t i = 0; i < qn && feas; ++i) {
            for (const auto& e : s[i]) {
                if (!covers(e, fx.questions[i].target)) {
                    feas = false;
                    break;
                }
            }
        }
        res[0] = feas;

        bool valid = true;
        for (std::size_t i = 0; i < qn && valid; ++i) {
            const auto& d = fx.questions[i].dataset;
            for (const auto& e : s[i]) {
                for (std::size_t yi = 0; yi < d.size() && valid; ++yi) {
                    if (covers(e, d[yi]) && row_labels[i][yi] != cls[i]) {
                        valid = false;
                    }
                }
                if (!valid) break;
            }
        }
        res[1] = valid;

        bool success = true;
        for (std::size_t i = 0; i < qn; ++i) {
            if (s[i].empty()) {
                success = false;
                break;
            }
        }
        res[2] = success;

        bool coherent = true;
        for (std::size_t i = 0; i < qn && coherent; ++i) {
            for (std::size_t j = 0; j < qn && coherent; ++j) {
                if (!same_dataset[i][j] || cls[i] == cls[j]) continue;
                for (const auto& e : s[i]) {
                    for (const auto& ep : s[j]) {
                        if (union_consistent(e, ep)) {
                            coherent = false;
                            break;
                        }
                    }
                    if (!coherent) break;
                }
            }
        }
        res[3] = coherent;

        auto irred = [&](bool strong) {
            for (std::size_t i = 0; i < qn; ++i) {
                const auto& d = fx.questions[i].dataset;
                for (const auto& e : s[i]) {
                    for (std::size_t pos = 0; pos < e.size(); ++pos) {
                        const auto shorter = e.without(pos);
                        bool ok = false;
                        if (strong) {
                            for (std::size_t y = 0; y < space.size(); ++y) {
                                if (space_labels[y] != cls[i] &&
                                    covers(shorter, space[y])) {
                                    ok = true;
                                    break;
                                }
                            }
                        } else {
                            for (std::size_t y = 0; y < d.size(); ++y) {
                                if (row_labels[i][y] != cls[i] &&
                                    covers(shorter, d[y])) {
                                    ok = true;
                                    break;
                                }
                            }
                        }
                        if (!ok) return false;
                    }
                }
            }
            return true;
        };
        res[4] = irred(false);
        res[5] = irred(true);

        auto compl_ = [&](bool strong) {
            for (std::size_t i = 0; i < qn; ++i) {
                const auto& d = fx.questions[i].dataset;
                for (const auto& e : target_subsets[i]) {
                    if (std::find(s[i].begin(), s[i].end(), e) !=
                        s[i].end()) {
                        continue;
                    }
                    bool refuted = false;
                    if (strong) {
                        for (std::size_t y = 0; y < space.size(); ++y) {
                            if (covers(e, space[y]) &&
                                space_labels[y] != cls[i]) {
                                refuted = true;
                                break;
                            }
                        }
                    } else {
                        for (std::size_t y = 0; y < d.size(); ++y) {
                            if (covers(e, d[y]) && row_labels[i][y] != cls[i]) {
                                refuted = true;
                                break;
                            }
                        }
                    }
                    if (!refuted) return false;
                }
            }
            return true;
        };
        res[6] = compl_(false);
        res[7] = compl_(true);

        bool mono = true, cm = true;
        for (std::size_t i = 0; i < qn; ++i) {
            for (std::size_t j = 0; j < qn; ++j) {
                if (!same_target[i][j] || !nested[i][j]) continue;
                if (!subset(s[i], s[j])) mono = false;
                if (!subset(s[j], s[i])) cm = false;
            }
        }
        res[8] = mono;
        res[9] = cm;

        std::uint16_t mask = 0;
        for (int bit = 0; bit < 10; ++bit) {
            if (res[bit]) mask |= static_cast<std::uint16_t>(1u << bit);
        }
        return mask;
    }
};

// Candidate explanations per question; families are all subsets of these.
std::vector<ExplanationSet> candidate_bases(const IncompatFixture& fx,
                                            std::uint64_t cap) {
    std::vector<ExplanationSet> bases;
    for (const auto& fq : fx.questions) {
        if (fx.unconstrained_candidates) {
            bases.push_back(enumerate_partial_assignments(*fx.theory, cap));
        } else {
            bases.push_back(subsets_of_target(*fx.theory, fq.target, cap));
        }
    }
    return bases;
}

std::uint64_t assignment_count(const std::vector<ExplanationSet>& bases,
                               std::uint64_t cap) {
    std::uint64_t total = 1;
    for (const auto& base : bases) {
        if (base.size() >= 64) {
            throw capacity_error("incompatibility fixture family too large");
        }
        const std::uint64_t width = std::uint64_t{1} << base.size();
        if (total > cap / width) {
            throw capacity_error(
                "incompatibility assignment space exceeds cap " +
                std::to_string(cap));
        }
        total *= width;
    }
    return total;
}

std::vector<ExplanationSet> pick_assignment(
    const std::vector<ExplanationSet>& bases,
    const std::vector<std::uint64_t>& masks) {
    std::vector<ExplanationSet> chosen;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        ExplanationSet sel;
        for (std::size_t b = 0; b < bases[i].size(); ++b) {
            if (masks[i] & (std::uint64_t{1} << b)) {
                sel.push_back(bases[i][b]);
            }
        }
        canonicalize(sel);
        chosen.push_back(std::move(sel));
    }
    return chosen;
}

bool advance(std::vector<std::uint64_t>& masks,
             const std::vector<ExplanationSet>& bases) {
    for (std::size_t i = masks.size(); i-- > 0;) {
        const std::uint64_t limit = std::uint64_t{1} << bases[i].size();
        if (++masks[i] < limit) return true;
        masks[i] = 0;
    }
    return false;
}

} // namespace

Certificate check_incompatibility(const std::vector<AxiomId>& axioms,
                                  const IncompatFixture& fx,
                                  std::uint64_t cap) {
    FixtureCtx ctx(fx, cap);
    const auto bases = candidate_bases(fx, cap);
    assignment_count(bases, cap); // capacity guard

    std::uint16_t want = 0;
    for (AxiomId a : axioms) {
        want |= static_cast<std::uint16_t>(1u << axiom_index(a));
    }

    Certificate cert;
    cert.fixture = fx.name;
    std::vector<std::uint64_t> masks(bases.size(), 0);
    do {
        const auto chosen = pick_assignment(bases, masks);
        ++cert.assignments_checked;
        if ((ctx.satisfied(chosen) & want) == want) {
            std::ostringstream os;
            for (std::size_t i = 0; i < chosen.size(); ++i) {
                if (i) os << "; ";
                os << "x=" << instance_text(*fx.theory, fx.questions[i].target)
                   << " -> " << set_text(*fx.theory, chosen[i]);
            }
            cert.incompatible = false;
            cert.witness = os.str();
            return cert;
        }
    } while (advance(masks, bases));
    cert.incompatible = true;
    return cert;
}

std::vector<std::uint16_t> satisfiable_axiom_masks(const IncompatFixture& fx,
                                                   std::uint64_t cap) {
    FixtureCtx ctx(fx, cap);
    const auto bases = candidate_bases(fx, cap);
    assignment_count(bases, cap);

    std::vector<std::uint16_t> out;
    std::vector<std::uint64_t> masks(bases.size(), 0);
    do {
        out.push_back(ctx.satisfied(pick_assignment(bases, masks)));
    } while (advance(masks, bases));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const std::vector<NamedAxiomSet>& incompatible_sets() {
    static const std::vector<NamedAxiomSet> sets = {
        {"I1",
         {AxiomId::Feasibility, AxiomId::Success, AxiomId::Coherence,
          AxiomId::Irreducibility},
         "A"},
        {"I2",
         {AxiomId::Feasibility, AxiomId::Coherence, AxiomId::Completeness},
         "A"},
        {"I3",
         {AxiomId::StrongIrreducibility, AxiomId::StrongCompleteness},
         "C"},
        {"I4",
         {AxiomId::Feasibility, AxiomId::Validity, AxiomId::Success,
          AxiomId::Irreducibility, AxiomId::Monotonicity},
         "B"},
        {"I5",
         {AxiomId::Feasibility, AxiomId::Validity, AxiomId::Success,
          AxiomId::Irreducibility, AxiomId::CounterMonotonicity},
         "B"},
    };
    return sets;
}

const std::vector<NamedAxiomSet>& compatible_sets() {
    static const std::vector<NamedAxiomSet> sets = {
        {"C1",
         {AxiomId::Feasibility, AxiomId::Validity, AxiomId::Success,
          AxiomId::Completeness, AxiomId::StrongCompleteness,
          AxiomId::CounterMonotonicity},
         ""},
        {"C2",
         {AxiomId::Feasibility, AxiomId::Validity, AxiomId::Success,
          AxiomId::Irreducibility, AxiomId::StrongIrreducibility},
         ""},
        {"C3",
         {AxiomId::Feasibility, AxiomId::Validity, AxiomId::Success,
          AxiomId::Coherence, AxiomId::Monotonicity,
          AxiomId::CounterMonotonicity, AxiomId::StrongCompleteness},
         ""},
        {"C4",
         {AxiomId::Feasibility, AxiomId::Validity, AxiomId::Success,
          AxiomId::Coherence, AxiomId::Monotonicity,
          AxiomId::CounterMonotonicity, AxiomId::StrongIrreducibility},
         ""},
        {"C5",
         {AxiomId::Feasibility, AxiomId::Validity, AxiomId::Coherence,
          AxiomId::Irreducibility, AxiomId::StrongIrreducibility,
          AxiomId::Monotonicity, AxiomId::CounterMonotonicity},
         ""},
    };
    return sets;
}

const std::vector<std::vector<AxiomId>>& extra_incompatible_pairs() {
    static const std::vector<std::vector<AxiomId>> pairs = {
        {AxiomId::Completeness, AxiomId::Irreducibility},
        {AxiomId::Completeness, AxiomId::StrongIrreducibility},
        {AxiomId::Completeness, AxiomId::Monotonicity},
        {AxiomId::Irreducibility, AxiomId::StrongCompleteness},
    };
    return pairs;
}

std::vector<NamedUniverse> load_fixtures(const std::string& dir) {
    std::vector<NamedUniverse> out;

    auto a = load_dataset_file(dir + "/fixture_a.csv");
    Dataset da = Dataset::make(
        a.theory, {a.dataset[0], a.dataset[1], a.dataset[2]});
    out.push_back({"incompat-a", "Ldw/Coherence",
                   Universe{a.theory, {a.classifier}, {da}}});

    auto b = load_dataset_file(dir + "/fixture_b.csv");
    Dataset db1 = Dataset::make(b.theory, {b.dataset[0], b.dataset[1]});
    Dataset db2 = Dataset::make(
        b.theory, {b.dataset[0], b.dataset[1], b.dataset[2]});
    out.push_back({"incompat-b", "Ldw/Monotonicity",
                   Universe{b.theory, {b.classifier}, {db1, db2}}});

    auto t2 = binary_theory(2);
    auto k_mono = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}, {0, 1}, {1, 0}, {1, 1}},
        std::vector<int>{0, 1, 1, 1});
    out.push_back({"lir-monotonicity", "Lir/Monotonicity",
                   Universe{t2,
                            {k_mono},
                            {Dataset::make(t2, {{0, 0}, {1, 0}}),
                             Dataset::make(t2, {{0, 0}, {1, 0}, {1, 1}})}}});

    auto k_cm = std::make_shared<const TableClassifier>(
        std::vector<Instance>{{0, 0}, {0, 1}, {1, 0}, {1, 1}},
        std::vector<int>{0, 1, 0, 1});
    out.push_back({"lir-counter-monotonicity", "Lir/CounterMonotonicity",
                   Universe{t2,
                            {k_cm},
                            {Dataset::make(t2, {{1, 0}, {0, 1}}),
                             Dataset::make(t2, {{1, 0}, {0, 1}, {0, 0}})}}});

    return out;
}

} // namespace sampex
