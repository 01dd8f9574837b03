#include "sampex/explainers.hpp"

#include <algorithm>
#include <numeric>

namespace sampex {

OpCounters& counters() {
    static OpCounters instance;
    return instance;
}

bool is_dwaxp(const Question& q, const PartialAssignment& e,
              Instance* refuting) {
    ++counters().dwaxp_calls;
    if (!covers(e, q.target)) return false; // feasibility first, no scan
    const int target_class = q.classifier->predict(q.target);
    // One full pass over D: m covers checks, no early exit, so the scan
    // count is a function of |D| alone.
    bool ok = true;
    ++counters().dataset_scans;
    for (const auto& y : q.dataset.instances()) {
        ++counters().covers_checks;
        if (!covers(e, y)) continue;
        if (q.classifier->predict(y) != target_class) {
            if (ok && refuting) *refuting = y;
            ok = false;
        }
    }
    return ok;
}

namespace {

// Calls fn(E) for every subset of the target's literals, size-then-lex.
template <typename Fn>
void for_each_subset_of_target(const Instance& x, Fn&& fn) {
    const int n = static_cast<int>(x.size());
    auto all = PartialAssignment::from_instance(x);
    std::vector<int> pick;
    for (int r = 0; r <= n; ++r) {
        pick.assign(static_cast<std::size_t>(r), 0);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<Literal> lits;
            lits.reserve(static_cast<std::size_t>(r));
            for (int i : pick)
                lits.push_back(all.literals()[static_cast<std::size_t>(i)]);
            fn(lits);
            // next combination
            int i = r - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] ==
                                 i + n - r)
                --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < r; ++j)
                pick[static_cast<std::size_t>(j)] =
                    pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

void check_subset_cap(int n, std::uint64_t cap, const char* what) {
    if (n >= 64 || (1ull << n) > cap)
        throw capacity_error(std::string(what) + ": 2^" + std::to_string(n) +
                             " subsets exceed cap " + std::to_string(cap));
}

} // namespace

ExplanationSet all_dwaxp(const Question& q, std::uint64_t cap) {
    const int n = q.theory->feature_count();
    check_subset_cap(n, cap, "all_dwaxp");
    ExplanationSet out;
    for_each_subset_of_target(q.target, [&](const std::vector<Literal>& lits) {
        auto e = PartialAssignment::make(*q.theory, lits);
        if (is_dwaxp(q, e)) out.push_back(std::move(e));
    });
    canonicalize(out);
    return out;
}

Explanation find_caxp(const Question& q, const std::vector<int>& order) {
    auto e = PartialAssignment::from_instance(q.target);
    for (int f : order) {
        const auto& lits = e.literals();
        auto it = std::find_if(lits.begin(), lits.end(),
                               [f](const Literal& l) { return l.feature == f; });
        if (it == lits.end()) continue;
        auto candidate =
            e.without(static_cast<std::size_t>(it - lits.begin()));
        if (is_dwaxp(q, candidate)) e = std::move(candidate);
    }
    return e;
}

Explanation find_caxp(const Question& q) {
    return find_caxp(q, ascending_order(q.theory->feature_count()));
}

ExplanationSet all_caxp(const Question& q, std::uint64_t cap) {
    return minimal_elements(all_dwaxp(q, cap));
}

namespace {

Question feature_space_question(const Question& q, std::uint64_t cap) {
    auto space = enumerate_feature_space(*q.theory, cap);
    for (const auto& y : space)
        if (!q.classifier->defined_on(y))
            throw validation_error(
                "classifier undefined on feature-space instance " +
                instance_text(*q.theory, y));
    return make_question(q.theory, q.classifier,
                         Dataset::make(q.theory, std::move(space)), q.target);
}

} // namespace

ExplanationSet lw_all(const Question& q, std::uint64_t cap) {
    return all_dwaxp(feature_space_question(q, cap), cap);
}

ExplanationSet lc_all(const Question& q, std::uint64_t cap) {
    return minimal_elements(lw_all(q, cap));
}

ExplanationSet trivial_explain(const Question& q) {
    return {PartialAssignment::from_instance(q.target)};
}

ExplanationSet subsets_of_target(const Theory& theory, const Instance& x,
                                 std::uint64_t cap) {
    check_subset_cap(static_cast<int>(x.size()), cap, "subsets_of_target");
    ExplanationSet out;
    for_each_subset_of_target(x, [&](const std::vector<Literal>& lits) {
        out.push_back(PartialAssignment::make(theory, lits));
    });
    return out;
}

std::vector<int> ascending_order(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    return order;
}

std::vector<int> descending_order(int n) {
    auto order = ascending_order(n);
    std::reverse(order.begin(), order.end());
    return order;
}

ExplanationSet minimal_elements(const ExplanationSet& set) {
    ExplanationSet out;
    for (const auto& e : set) {
        bool minimal = true;
        for (const auto& other : set)
            if (other != e && subset_of(other, e)) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(e);
    }
    canonicalize(out);
    return out;
}

void canonicalize(ExplanationSet& set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
}

} // namespace sampex
