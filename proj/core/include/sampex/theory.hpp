#pragma once

// Classification theories: named features with finite categorical domains
// and a finite class list.  Literals, partial assignments and instances are
// index-based (feature index, domain-value index) for determinism and speed;
// the theory owns the declaration strings used by the canonical text forms.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sampex/errors.hpp"

namespace sampex {

// A feature/value pair, both as declaration indices into the theory.
struct Literal {
    int feature = 0;
    int value = 0;

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

// A total assignment: one domain-value index per feature, by feature index.
using Instance = std::vector<int>;

class Theory {
public:
    Theory(std::vector<std::string> features,
           std::vector<std::vector<std::string>> domains,
           std::vector<std::string> classes);

    int feature_count() const { return static_cast<int>(features_.size()); }
    int class_count() const { return static_cast<int>(classes_.size()); }

    const std::vector<std::string>& features() const { return features_; }
    const std::vector<std::string>& domain(int feature) const;
    const std::vector<std::string>& classes() const { return classes_; }

    const std::string& feature_name(int feature) const;
    const std::string& value_name(int feature, int value) const;
    const std::string& class_name(int class_id) const;

    // Lookups by declaration string; throw validation_error when unknown.
    int feature_index(const std::string& name) const;
    int value_index(int feature, const std::string& value) const;
    int class_index(const std::string& label) const;

    // Same lookups, non-throwing.
    std::optional<int> find_feature(const std::string& name) const;
    std::optional<int> find_value(int feature, const std::string& value) const;
    std::optional<int> find_class(const std::string& label) const;

    // Product of domain sizes, or nullopt when it overflows 64 bits.
    std::optional<std::uint64_t> feature_space_size() const;

    // True when `lit` references a real feature and an in-domain value.
    bool valid_literal(const Literal& lit) const;

private:
    std::vector<std::string> features_;
    std::vector<std::vector<std::string>> domains_;
    std::vector<std::string> classes_;
};

using TheoryPtr = std::shared_ptr<const Theory>;

// A consistent set of literals, at most one per feature, kept sorted by
// feature index (the canonical order used by every text form).  The empty
// assignment is legal and meaningful.
class PartialAssignment {
public:
    PartialAssignment() = default;

    // Validates literals against the theory (invalid-literal -> error) and
    // rejects inconsistent sets (same feature, two values).  Duplicate
    // identical literals collapse (set semantics).
    static PartialAssignment make(const Theory& theory,
                                  std::vector<Literal> literals);

    // From an instance: the total assignment with every feature bound.
    static PartialAssignment from_instance(const Instance& x);

    const std::vector<Literal>& literals() const { return literals_; }
    std::size_t size() const { return literals_.size(); }
    bool empty() const { return literals_.empty(); }

    // Value bound for `feature`, or nullopt when the feature is free.
    std::optional<int> value_of(int feature) const;

    // This assignment minus the literal at position `pos`.
    PartialAssignment without(std::size_t pos) const;

    friend bool operator==(const PartialAssignment&,
                           const PartialAssignment&) = default;
    friend auto operator<=>(const PartialAssignment&,
                            const PartialAssignment&) = default;

private:
    std::vector<Literal> literals_; // sorted by feature, unique features
};

// True iff no feature occurs with two distinct values.  Literals must be
// valid for the theory (invalid-literal -> validation_error).
bool is_consistent(const Theory& theory, const std::vector<Literal>& literals);

// True iff every literal of E appears in y (E "covers" y, i.e. E is a
// subset of y viewed as a literal set).
bool covers(const PartialAssignment& e, const Instance& y);

// True iff E is a subset of E2 as literal sets.
bool subset_of(const PartialAssignment& e, const PartialAssignment& e2);

// True iff E union E2 is a consistent literal set.
bool union_consistent(const PartialAssignment& e, const PartialAssignment& e2);

// All instances of the theory in lexicographic order of (feature index,
// domain-value index).  Throws capacity_error when the feature-space size
// exceeds `cap` (or overflows).
// Every partial assignment of the theory (each feature unset or set to one
// of its values), ordered by the per-feature odometer with "unset" first;
// capacity-guarded on the product of (|domain|+1).
std::vector<PartialAssignment> enumerate_partial_assignments(
    const Theory& theory, std::uint64_t cap);

std::vector<Instance> enumerate_feature_space(const Theory& theory,
                                              std::uint64_t cap);

// Canonical text forms: `feature=value`, comma-joined in ascending feature
// order, `{}` for the empty assignment.
std::string literal_text(const Theory& theory, const Literal& lit);
std::string assignment_text(const Theory& theory, const PartialAssignment& e);
std::string instance_text(const Theory& theory, const Instance& x);

// Parses the canonical text form back into an assignment (round-trip
// inverse of assignment_text).  Throws validation_error on unknown names.
PartialAssignment parse_assignment(const Theory& theory,
                                   const std::string& text);

} // namespace sampex
