#include "sampex/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "sampex/errors.hpp"

namespace sampex {

DecisionTree::DecisionTree(TheoryPtr theory, std::vector<Node> nodes)
    : theory_(std::move(theory)), nodes_(std::move(nodes)) {}

int DecisionTree::leaf_count() const {
    int n = 0;
    for (const auto& node : nodes_) n += node.feature < 0 ? 1 : 0;
    return n;
}

int DecisionTree::depth() const {
    std::vector<std::pair<int, int>> stack{{0, 0}};
    int best = 0;
    while (!stack.empty()) {
        auto [n, d] = stack.back();
        stack.pop_back();
        if (is_leaf(n)) {
            best = std::max(best, d);
            continue;
        }
        for (int c : nodes_[static_cast<std::size_t>(n)].children) {
            stack.emplace_back(c, d + 1);
        }
    }
    return best;
}

namespace {

struct Id3Builder {
    const Theory& theory;
    const Classifier& k;
    const std::vector<Instance>& rows;
    std::vector<int> labels; // per row
    std::vector<DecisionTree::Node> nodes;

    Id3Builder(const Dataset& d, const Classifier& cls)
        : theory(*d.theory()), k(cls), rows(d.instances()) {
        labels.reserve(rows.size());
        for (const auto& r : rows) labels.push_back(k.predict(r));
    }

    double entropy(const std::vector<std::size_t>& idx) const {
        if (idx.empty()) return 0.0;
        std::vector<int> counts(static_cast<std::size_t>(theory.class_count()), 0);
        for (std::size_t i : idx) ++counts[static_cast<std::size_t>(labels[i])];
        const double n = static_cast<double>(idx.size());
        double h = 0.0;
        for (int c : counts) {
            if (c == 0) continue;
            const double p = static_cast<double>(c) / n;
            h -= p * std::log(p);
        }
        return h;
    }

    int majority(const std::vector<std::size_t>& idx) const {
        std::vector<int> counts(static_cast<std::size_t>(theory.class_count()), 0);
        for (std::size_t i : idx) ++counts[static_cast<std::size_t>(labels[i])];
        int best = 0;
        for (int c = 1; c < theory.class_count(); ++c) {
            if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) {
                best = c; // strict '>' keeps declaration order on ties
            }
        }
        return best;
    }

    int leaf(int class_id) {
        nodes.push_back({-1, class_id, {}});
        return static_cast<int>(nodes.size()) - 1;
    }

    int fit(const std::vector<std::size_t>& idx, std::vector<bool>& used) {
        const int first = labels[idx.front()];
        bool pure = true;
        for (std::size_t i : idx) {
            if (labels[i] != first) {
                pure = false;
                break;
            }
        }
        if (pure) return leaf(first);

        const double base = entropy(idx);
        int best_f = -1;
        double best_gain = 0.0;
        for (int f = 0; f < theory.feature_count(); ++f) {
            if (used[static_cast<std::size_t>(f)]) continue;
            double rem = 0.0;
            for (std::size_t v = 0; v < theory.domain(f).size(); ++v) {
                std::vector<std::size_t> sub;
                for (std::size_t i : idx) {
                    if (rows[i][static_cast<std::size_t>(f)] == static_cast<int>(v)) {
                        sub.push_back(i);
                    }
                }
                rem += static_cast<double>(sub.size()) /
                       static_cast<double>(idx.size()) * entropy(sub);
            }
            const double gain = base - rem;
            if (best_f < 0 || gain > best_gain + 1e-12) {
                best_f = f;
                best_gain = gain;
            }
        }
        if (best_f < 0) {
            throw error("id3_fit: impure node with no features left");
        }

        const int self = static_cast<int>(nodes.size());
        nodes.push_back({best_f, -1, {}});
        nodes[static_cast<std::size_t>(self)].children.assign(
            theory.domain(best_f).size(), -1);
        used[static_cast<std::size_t>(best_f)] = true;
        for (std::size_t v = 0; v < theory.domain(best_f).size(); ++v) {
            std::vector<std::size_t> sub;
            for (std::size_t i : idx) {
                if (rows[i][static_cast<std::size_t>(best_f)] == static_cast<int>(v)) {
                    sub.push_back(i);
                }
            }
            const int child = sub.empty() ? leaf(majority(idx)) : fit(sub, used);
            nodes[static_cast<std::size_t>(self)].children[v] = child;
        }
        used[static_cast<std::size_t>(best_f)] = false;
        return self;
    }
};

} // namespace

DecisionTree id3_fit(const Dataset& d, const Classifier& k) {
    if (d.empty()) {
        throw validation_error("id3_fit: empty dataset");
    }
    Id3Builder b(d, k);
    std::vector<std::size_t> idx(d.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<bool> used(static_cast<std::size_t>(d.theory()->feature_count()),
                           false);
    b.fit(idx, used);
    DecisionTree t(d.theory(), std::move(b.nodes));
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (dt_predict(t, d[i]) != b.labels[i]) {
            throw error("id3_fit: tree disagrees with its training instance");
        }
    }
    return t;
}

int dt_predict(const DecisionTree& t, const Instance& y) {
    int n = 0;
    while (!t.is_leaf(n)) {
        const auto& node = t.nodes()[static_cast<std::size_t>(n)];
        const int v = y[static_cast<std::size_t>(node.feature)];
        n = node.children[static_cast<std::size_t>(v)];
    }
    return t.nodes()[static_cast<std::size_t>(n)].class_id;
}

bool is_dwaxp_tree(const DecisionTree& t, const Instance& x,
                   const PartialAssignment& e) {
    for (const auto& lit : e.literals()) {
        if (x[static_cast<std::size_t>(lit.feature)] != lit.value) return false;
    }
    const int want = dt_predict(t, x);
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int n = stack.back();
        stack.pop_back();
        const auto& node = t.nodes()[static_cast<std::size_t>(n)];
        if (node.feature < 0) {
            if (node.class_id != want) return false;
            continue;
        }
        if (auto v = e.value_of(node.feature)) {
            stack.push_back(node.children[static_cast<std::size_t>(*v)]);
        } else {
            for (int c : node.children) stack.push_back(c);
        }
    }
    return true;
}

Explanation find_axp_tree(const DecisionTree& t, const Instance& x,
                          const std::vector<int>& order) {
    Explanation e = PartialAssignment::from_instance(x);
    for (int f : order) {
        const auto& lits = e.literals();
        for (std::size_t pos = 0; pos < lits.size(); ++pos) {
            if (lits[pos].feature != f) continue;
            Explanation shorter = e.without(pos);
            if (is_dwaxp_tree(t, x, shorter)) e = std::move(shorter);
            break;
        }
    }
    return e;
}

Explanation find_axp_tree(const DecisionTree& t, const Instance& x) {
    return find_axp_tree(t, x, ascending_order(t.theory()->feature_count()));
}

ExplanationSet lsu_explain(const Question& q, const DecisionTree& t,
                           std::uint64_t cap) {
    const Theory& theory = *q.theory;
    const auto full = PartialAssignment::from_instance(q.target);
    const auto& lits = full.literals();
    const std::size_t n = lits.size();
    if (n >= 64 || (std::uint64_t{1} << n) > cap) {
        throw capacity_error("lsu_explain: 2^" + std::to_string(n) +
                             " candidate subsets exceed the capacity bound");
    }
    ExplanationSet out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<Literal> chosen;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint64_t{1} << i)) chosen.push_back(lits[i]);
        }
        auto e = PartialAssignment::make(theory, chosen);
        if (is_dwaxp_tree(t, q.target, e)) out.push_back(e);
    }
    canonicalize(out);
    return out;
}

TreePtr surrogate_tree(const Dataset& d, const Classifier& k) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, std::uint64_t>, TreePtr> cache;
    const auto key = std::make_pair(dataset_digest(d), classifier_digest(d, k));
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto tree = std::make_shared<const DecisionTree>(id3_fit(d, k));
    cache.emplace(key, tree);
    return tree;
}

namespace {

void render(const DecisionTree& t, int n, int indent, std::ostringstream& os) {
    const Theory& theory = *t.theory();
    const auto& node = t.nodes()[static_cast<std::size_t>(n)];
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (node.feature < 0) {
        os << pad << "class: " << theory.class_name(node.class_id) << "\n";
        return;
    }
    for (std::size_t v = 0; v < node.children.size(); ++v) {
        const int child = node.children[v];
        const auto& cn = t.nodes()[static_cast<std::size_t>(child)];
        os << pad << theory.feature_name(node.feature) << "="
           << theory.value_name(node.feature, static_cast<int>(v)) << ":";
        if (cn.feature < 0) {
            os << " " << theory.class_name(cn.class_id) << "\n";
        } else {
            os << "\n";
            render(t, child, indent + 1, os);
        }
    }
}

} // namespace

std::string tree_text(const DecisionTree& t) {
    std::ostringstream os;
    render(t, 0, 0, os);
    return os.str();
}

} // namespace sampex
