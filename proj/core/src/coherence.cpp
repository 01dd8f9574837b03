#include "sampex/coherence.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <map>
#include <sstream>

#include "sampex/errors.hpp"

namespace sampex {

namespace {

// Indices and class ids of the dataset instances a member covers.
struct Coverage {
    std::vector<std::size_t> rows;
    std::vector<int> classes; // parallel to rows
};

Coverage covered_rows(const PartialAssignment& e, const Dataset& d,
                      const Classifier& k) {
    Coverage cov;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (covers(e, d[i])) {
            cov.rows.push_back(i);
            cov.classes.push_back(k.predict(d[i]));
        }
    }
    return cov;
}

// Class of the instances a member covers when that class is unique;
// nullopt when the member covers nothing or instances of several classes.
std::optional<int> pool_label(const Coverage& cov) {
    if (cov.rows.empty()) return std::nullopt;
    const int first = cov.classes.front();
    for (int c : cov.classes) {
        if (c != first) return std::nullopt;
    }
    return first;
}

// Wraps a borrowed classifier so Question can hold it without taking
// ownership; callers keep the classifier alive for the question's lifetime.
ClassifierPtr borrow(const Classifier& k) {
    return ClassifierPtr(&k, [](const Classifier*) {});
}

} // namespace

std::optional<int> DwaxpPool::label_of(const PartialAssignment& e) const {
    auto it = std::lower_bound(members.begin(), members.end(), e);
    if (it == members.end() || !(*it == e)) return std::nullopt;
    return labels[static_cast<std::size_t>(it - members.begin())];
}

CoherenceVerdict is_coherent_set(const ExplanationSet& x, const Dataset& d,
                                 const Classifier& k) {
    std::vector<Coverage> cov;
    cov.reserve(x.size());
    for (const auto& e : x) cov.push_back(covered_rows(e, d, k));

    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i; j < x.size(); ++j) {
            if (!union_consistent(x[i], x[j])) continue;
            for (std::size_t a = 0; a < cov[i].rows.size(); ++a) {
                for (std::size_t b = 0; b < cov[j].rows.size(); ++b) {
                    if (cov[i].classes[a] == cov[j].classes[b]) continue;
                    CoherenceVerdict v;
                    v.coherent = false;
                    v.e1 = x[i];
                    v.e2 = x[j];
                    v.y = d[cov[i].rows[a]];
                    v.z = d[cov[j].rows[b]];
                    return v;
                }
            }
        }
    }
    return CoherenceVerdict{};
}

EnvelopeVerdict is_envelope(const ExplanationSet& x, const Dataset& d,
                            const Classifier& k) {
    const Theory& t = *d.theory();

    if (auto cv = is_coherent_set(x, d, k); !cv) {
        std::ostringstream os;
        os << "members " << assignment_text(t, cv.e1) << " and "
           << assignment_text(t, cv.e2) << " have a consistent union but cover "
           << instance_text(t, cv.y) << " -> "
           << t.class_name(k.predict(cv.y)) << " and " << instance_text(t, cv.z)
           << " -> " << t.class_name(k.predict(cv.z));
        return EnvelopeVerdict{EnvelopeFailure::incoherent, os.str()};
    }

    for (const auto& e : x) {
        // Coherence already rules out mixed-class members (a member pairs
        // with itself), so the only way out of the pool is covering nothing.
        if (covered_rows(e, d, k).rows.empty()) {
            std::ostringstream os;
            os << "member " << assignment_text(t, e)
               << " covers no dataset instance";
            return EnvelopeVerdict{EnvelopeFailure::not_in_pool, os.str()};
        }
    }

    for (std::size_t i = 0; i < d.size(); ++i) {
        bool hit = false;
        for (const auto& e : x) {
            if (covers(e, d[i])) {
                hit = true;
                break;
            }
        }
        if (!hit) {
            std::ostringstream os;
            os << "instance " << instance_text(t, d[i])
               << " is covered by no member";
            return EnvelopeVerdict{EnvelopeFailure::uncovered, os.str()};
        }
    }
    return EnvelopeVerdict{};
}

ExplanationSet coherent_from_envelope(const ExplanationSet& x,
                                      const Question& q) {
    if (auto v = is_envelope(x, q.dataset, *q.classifier); !v) {
        throw contract_error("coherent_from_envelope: not an envelope: " +
                             v.detail);
    }
    ExplanationSet out;
    for (const auto& e : x) {
        if (covers(e, q.target)) out.push_back(e);
    }
    canonicalize(out);
    return out;
}

DwaxpPool build_dwaxp_pool(const Dataset& d, const Classifier& k,
                           std::uint64_t cap) {
    // The pool enumerates every subset of every instance: d.size() * 2^n
    // candidates in total.  Guard the whole construction, not just the
    // per-instance enumerations.
    const int n = d.theory()->feature_count();
    if (!d.empty() &&
        (n >= 64 || (std::uint64_t{1} << n) > cap / d.size())) {
        throw capacity_error(
            "explanation pool over " + std::to_string(d.size()) +
            " instances with " + std::to_string(n) +
            " features exceeds the capacity bound");
    }
    std::map<PartialAssignment, int> seen;
    ClassifierPtr kp = borrow(k);
    for (std::size_t i = 0; i < d.size(); ++i) {
        Question q{d.theory(), kp, d, d[i]};
        const int cls = k.predict(d[i]);
        for (const auto& e : all_dwaxp(q, cap)) seen.emplace(e, cls);
    }
    DwaxpPool pool;
    pool.members.reserve(seen.size());
    pool.labels.reserve(seen.size());
    for (const auto& [e, cls] : seen) {
        pool.members.push_back(e);
        pool.labels.push_back(cls);
    }
    return pool;
}

namespace {

// Pool plus the bitmask machinery shared by the envelope enumerators;
// usable only while the pool fits in a machine word.
struct PoolMasks {
    DwaxpPool pool;
    std::vector<std::uint64_t> conflicts; // per member: incoherent partners
    std::vector<std::uint64_t> covered_by; // per instance: covering members
    std::uint64_t irr_mask = 0;            // members with no conflicts
};

PoolMasks build_masks(const Dataset& d, const Classifier& k,
                      std::uint64_t cap) {
    PoolMasks pm;
    pm.pool = build_dwaxp_pool(d, k, cap);
    const std::size_t p = pm.pool.size();
    if (p >= 64 || (std::uint64_t{1} << p) > cap) {
        throw capacity_error("envelope enumeration over " +
                             std::to_string(p) +
                             " pool members exceeds the capacity bound");
    }
    pm.conflicts.assign(p, 0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            if (pm.pool.labels[i] != pm.pool.labels[j] &&
                union_consistent(pm.pool.members[i], pm.pool.members[j])) {
                pm.conflicts[i] |= std::uint64_t{1} << j;
                pm.conflicts[j] |= std::uint64_t{1} << i;
            }
        }
    }
    pm.covered_by.assign(d.size(), 0);
    for (std::size_t y = 0; y < d.size(); ++y) {
        for (std::size_t i = 0; i < p; ++i) {
            if (covers(pm.pool.members[i], d[y])) {
                pm.covered_by[y] |= std::uint64_t{1} << i;
            }
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        if (pm.conflicts[i] == 0) pm.irr_mask |= std::uint64_t{1} << i;
    }
    return pm;
}

std::vector<std::uint64_t> envelope_masks(const PoolMasks& pm) {
    const std::size_t p = pm.pool.size();
    std::vector<std::uint64_t> out;
    const std::uint64_t end = std::uint64_t{1} << p;
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        bool ok = true;
        for (std::uint64_t rest = mask; rest != 0 && ok;) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            if (pm.conflicts[static_cast<std::size_t>(i)] & mask) ok = false;
        }
        for (std::size_t y = 0; y < pm.covered_by.size() && ok; ++y) {
            if ((pm.covered_by[y] & mask) == 0) ok = false;
        }
        if (ok) out.push_back(mask);
    }
    return out;
}

Envelope mask_to_set(const PoolMasks& pm, std::uint64_t mask) {
    Envelope env;
    for (std::uint64_t rest = mask; rest != 0;) {
        const int i = std::countr_zero(rest);
        rest &= rest - 1;
        env.push_back(pm.pool.members[static_cast<std::size_t>(i)]);
    }
    return env; // pool order is canonical already
}

} // namespace

Envelope irr_envelope(const Dataset& d, const Classifier& k,
                      std::uint64_t cap) {
    DwaxpPool pool = build_dwaxp_pool(d, k, cap);
    Envelope env;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        bool clean = true;
        for (std::size_t j = 0; j < pool.size() && clean; ++j) {
            if (pool.labels[i] != pool.labels[j] &&
                union_consistent(pool.members[i], pool.members[j])) {
                clean = false;
            }
        }
        if (clean) env.push_back(pool.members[i]);
    }
    return env;
}

bool is_irrefutable(const Question& q, const PartialAssignment& e) {
    if (!is_dwaxp(q, e)) return false;
    const Theory& t = *q.theory;
    const int cls = q.target_class();
    const Dataset& d = q.dataset;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Instance& xp = d[i];
        if (q.classifier->predict(xp) == cls) continue;
        ++counters().irr_candidate_tests;
        // The weakest subset of xp whose union with e stays consistent:
        // xp minus the features where e disagrees with xp.  e has an
        // incoherent partner iff some such candidate is itself a
        // dataset-scoped weak abductive explanation for xp.
        std::vector<Literal> lits;
        for (int f = 0; f < t.feature_count(); ++f) {
            auto ev = e.value_of(f);
            if (ev && *ev != xp[f]) continue;
            lits.push_back(Literal{f, xp[f]});
        }
        Question qp{q.theory, q.classifier, q.dataset, xp};
        if (is_dwaxp(qp, PartialAssignment::make(t, lits))) return false;
    }
    return true;
}

ExplanationSet lir_explain(const Question& q, std::uint64_t cap) {
    // Equivalent to filtering irr_envelope by containment in the target
    // (the test suite checks the equality), but goes through the
    // polynomial membership test instead of building the global pool.
    ExplanationSet out;
    for (auto& e : subsets_of_target(*q.theory, q.target, cap)) {
        if (is_irrefutable(q, e)) out.push_back(std::move(e));
    }
    canonicalize(out);
    return out;
}

Explanation find_minimal_irrefutable(const Question& q,
                                     const std::vector<int>& order) {
    Explanation e = PartialAssignment::from_instance(q.target);
    for (int f : order) {
        const auto& lits = e.literals();
        for (std::size_t pos = 0; pos < lits.size(); ++pos) {
            if (lits[pos].feature != f) continue;
            Explanation shorter = e.without(pos);
            if (is_irrefutable(q, shorter)) e = std::move(shorter);
            break;
        }
    }
    return e;
}

Explanation find_minimal_irrefutable(const Question& q) {
    return find_minimal_irrefutable(
        q, ascending_order(q.theory->feature_count()));
}

std::vector<Envelope> all_envelopes(const Dataset& d, const Classifier& k,
                                    std::uint64_t cap) {
    PoolMasks pm = build_masks(d, k, cap);
    std::vector<Envelope> out;
    for (std::uint64_t mask : envelope_masks(pm)) {
        out.push_back(mask_to_set(pm, mask));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Envelope> maximal_envelopes(const Dataset& d, const Classifier& k,
                                        std::uint64_t cap) {
    PoolMasks pm = build_masks(d, k, cap);
    std::vector<std::uint64_t> masks = envelope_masks(pm);
    std::vector<std::uint64_t> maximal;
    for (std::uint64_t m : masks) {
        bool top = true;
        for (std::uint64_t other : masks) {
            if (other != m && (m & other) == m) {
                top = false;
                break;
            }
        }
        if (top) maximal.push_back(m);
    }
    std::uint64_t meet = ~std::uint64_t{0};
    for (std::uint64_t m : maximal) meet &= m;
    if (!maximal.empty() && meet != pm.irr_mask) {
        throw error("maximal_envelopes: intersection of maximal envelopes "
                    "differs from the irrefutable envelope");
    }
    std::vector<Envelope> out;
    for (std::uint64_t m : maximal) out.push_back(mask_to_set(pm, m));
    std::sort(out.begin(), out.end());
    return out;
}

DecisionListClassifier::DecisionListClassifier(std::vector<Rule> rules,
                                               int default_class)
    : rules_(std::move(rules)), default_class_(default_class) {}

int DecisionListClassifier::predict(const Instance& y) const {
    for (const auto& rule : rules_) {
        if (covers(rule.premise, y)) return rule.class_id;
    }
    return default_class_;
}

DecisionListClassifier sigma_from_envelope(const ExplanationSet& x,
                                           const Dataset& d,
                                           const Classifier& k) {
    if (auto v = is_envelope(x, d, k); !v) {
        throw contract_error("sigma_from_envelope: not an envelope: " +
                             v.detail);
    }
    std::map<PartialAssignment, int> premises;
    for (const auto& e : x) {
        auto label = pool_label(covered_rows(e, d, k));
        premises.emplace(e, *label); // envelope membership guarantees a label
    }
    std::vector<DecisionListClassifier::Rule> rules;
    rules.reserve(premises.size());
    for (const auto& [premise, cls] : premises) {
        rules.push_back({premise, cls});
    }
    std::sort(rules.begin(), rules.end(), [](const auto& a, const auto& b) {
        if (a.premise.size() != b.premise.size()) {
            return a.premise.size() < b.premise.size();
        }
        return a.premise < b.premise;
    });
    return DecisionListClassifier(std::move(rules), 0);
}

} // namespace sampex
