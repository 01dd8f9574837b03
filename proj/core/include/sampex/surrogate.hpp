#pragma once

// Multiway decision-tree surrogate: an ID3 fit of the dataset's labels,
// tree-scoped explanations over the full feature space, and a per-digest
// cache so repeated questions against the same data reuse one tree.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sampex/data.hpp"
#include "sampex/explainers.hpp"
#include "sampex/theory.hpp"

namespace sampex {

// Nodes live in a flat vector; index 0 is the root.  Split nodes carry one
// child per domain value of their feature; leaves carry a class.
class DecisionTree {
public:
    struct Node {
        int feature = -1;           // -1 marks a leaf
        int class_id = -1;          // valid on leaves
        std::vector<int> children;  // per value index of `feature`
    };

    DecisionTree(TheoryPtr theory, std::vector<Node> nodes);

    const TheoryPtr& theory() const { return theory_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    bool is_leaf(int n) const { return nodes_[static_cast<std::size_t>(n)].feature < 0; }

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int leaf_count() const;
    int depth() const; // leaf-only tree has depth 0

private:
    TheoryPtr theory_;
    std::vector<Node> nodes_;
};

using TreePtr = std::shared_ptr<const DecisionTree>;

// Classic ID3 on the dataset's (distinct) instances: entropy in nats,
// highest information gain wins with ties (and zero-gain impure nodes)
// resolved toward the lowest feature index, multiway splits, recursion
// stops on pure nodes, and value branches with no instances become leaves
// labelled with the parent's majority class (class declaration order breaks
// count ties).  The fit is exact on every dataset instance (verified).
DecisionTree id3_fit(const Dataset& d, const Classifier& k);

int dt_predict(const DecisionTree& t, const Instance& y);

// Adapts a tree to the classifier interface (total on the feature space).
class TreeClassifier : public Classifier {
public:
    explicit TreeClassifier(TreePtr tree) : tree_(std::move(tree)) {}
    int predict(const Instance& y) const override {
        return dt_predict(*tree_, y);
    }
    const TreePtr& tree() const { return tree_; }

private:
    TreePtr tree_;
};

// True iff e is contained in x and every leaf reachable under e (fixed
// features follow their branch, free features take every branch) carries
// the class the tree assigns to x.  Visits each node at most once.
bool is_dwaxp_tree(const DecisionTree& t, const Instance& x,
                   const PartialAssignment& e);

// Greedy deletion under is_dwaxp_tree, one attempt per feature in `order`.
Explanation find_axp_tree(const DecisionTree& t, const Instance& x,
                          const std::vector<int>& order);
Explanation find_axp_tree(const DecisionTree& t, const Instance& x);

// Every subset of the target that is a tree explanation; capacity-guarded.
ExplanationSet lsu_explain(const Question& q, const DecisionTree& t,
                           std::uint64_t cap);

// Fits (or retrieves) the tree for this dataset/classifier pair, keyed by
// the pair of content digests.
TreePtr surrogate_tree(const Dataset& d, const Classifier& k);

// Indented text rendering, one branch per line, stable across runs.
std::string tree_text(const DecisionTree& t);

} // namespace sampex
