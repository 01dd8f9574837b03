#pragma once

// Dataset ingestion, classifier abstraction and question construction.
//
// Input format: UTF-8 comma-separated text, first row = header, last column
// = class label, LF or CRLF line endings, values must not contain commas.
// A column whose header is exactly `name` is treated as a row identifier,
// not a feature (the zoo table ships with one).  Identical rows are
// deduplicated silently (dataset semantics are set semantics); identical
// rows with different labels are a contradiction and rejected.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sampex/theory.hpp"

namespace sampex {

// An ordered list of distinct instances over one theory.
class Dataset {
public:
    Dataset() = default;

    // Keeps the first occurrence of each distinct instance (stable dedup)
    // and validates every value index against the theory.
    static Dataset make(TheoryPtr theory, std::vector<Instance> instances);

    const TheoryPtr& theory() const { return theory_; }
    const std::vector<Instance>& instances() const { return instances_; }
    std::size_t size() const { return instances_.size(); }
    bool empty() const { return instances_.empty(); }

    const Instance& operator[](std::size_t i) const { return instances_[i]; }
    std::optional<std::size_t> index_of(const Instance& x) const;
    bool contains(const Instance& x) const { return index_of(x).has_value(); }

private:
    TheoryPtr theory_;
    std::vector<Instance> instances_;
};

// A classifier maps instances to class indices of its theory.  Concrete
// classifiers must be pure: repeated calls on the same instance agree.
class Classifier {
public:
    virtual ~Classifier() = default;

    // Class index for y; throws validation_error when undefined on y.
    virtual int predict(const Instance& y) const = 0;

    // True when predict(y) would succeed.  Total classifiers return true.
    virtual bool defined_on(const Instance& y) const { return true; }
};

using ClassifierPtr = std::shared_ptr<const Classifier>;

// Explicit instance -> class mapping; total only over its table.
class TableClassifier : public Classifier {
public:
    TableClassifier() = default;
    TableClassifier(std::vector<Instance> keys, std::vector<int> labels);

    int predict(const Instance& y) const override;
    bool defined_on(const Instance& y) const override;

    std::size_t size() const { return keys_.size(); }

private:
    struct InstanceHash {
        std::size_t operator()(const Instance& x) const;
    };
    std::vector<Instance> keys_;
    std::unordered_map<Instance, int, InstanceHash> table_;
};

// Wraps an opaque prediction callback (always total).
class FunctionClassifier : public Classifier {
public:
    explicit FunctionClassifier(std::function<int(const Instance&)> fn)
        : fn_(std::move(fn)) {}
    int predict(const Instance& y) const override { return fn_(y); }

private:
    std::function<int(const Instance&)> fn_;
};

// A question: theory, classifier, dataset and a target drawn from it.
struct Question {
    TheoryPtr theory;
    ClassifierPtr classifier;
    Dataset dataset;
    Instance target;

    int target_class() const { return classifier->predict(target); }
};

// Validates membership (x in D) and classifier coverage of D.
Question make_question(TheoryPtr theory, ClassifierPtr classifier,
                       Dataset dataset, Instance target);

// Deterministic label for y; forwards classifier errors.
int predict(const Classifier& k, const Instance& y);

// What load_dataset found out about its input.
struct LoadReport {
    std::size_t raw_rows = 0;        // data rows in the file
    std::size_t distinct_rows = 0;   // after dedup
    std::size_t duplicates_removed = 0;
    bool has_id_column = false;
    std::vector<std::string> padded_features; // single-valued, sentinel added
    bool padded_class = false;                // single class, sentinel added
};

struct LoadResult {
    TheoryPtr theory;
    Dataset dataset;
    std::shared_ptr<const TableClassifier> classifier;
    LoadReport report;

    // Raw row index -> index into dataset.instances().
    std::vector<std::size_t> row_instance;
    // Row identifier -> dataset index (first occurrence); empty without an
    // id column.
    std::unordered_map<std::string, std::size_t> id_to_instance;
    // Dataset index -> identifier of its first covering row (or "").
    std::vector<std::string> instance_id;
};

LoadResult load_dataset(std::istream& in);
LoadResult load_dataset_file(const std::string& path);

// Domain-file override: lines of `feature: v1,v2,...` plus an optional
// `classes: c1,c2,...` line; `#` starts a comment.  Declared domains must
// cover every observed value.  Returns a reloaded result over the wider
// theory.
LoadResult apply_domain_file(const LoadResult& loaded, std::istream& domains);
LoadResult apply_domain_file_path(const LoadResult& loaded,
                                  const std::string& path);

// Stable 64-bit FNV-1a digests used to key caches and tag reports.
std::uint64_t dataset_digest(const Dataset& d);
std::uint64_t classifier_digest(const Dataset& d, const Classifier& k);
std::uint64_t question_digest(const Question& q);
std::string digest_hex(std::uint64_t digest);

} // namespace sampex
