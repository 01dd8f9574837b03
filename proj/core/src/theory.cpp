#include "sampex/theory.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace sampex {

namespace {

std::string quoted(const std::string& s) { return "'" + s + "'"; }

} // namespace

Theory::Theory(std::vector<std::string> features,
               std::vector<std::vector<std::string>> domains,
               std::vector<std::string> classes)
    : features_(std::move(features)),
      domains_(std::move(domains)),
      classes_(std::move(classes)) {
    if (features_.empty())
        throw validation_error("theory needs at least one feature");
    if (domains_.size() != features_.size())
        throw validation_error("theory needs one domain per feature");
    std::unordered_set<std::string> seen;
    for (const auto& f : features_)
        if (!seen.insert(f).second)
            throw validation_error("duplicate feature name " + quoted(f));
    for (std::size_t i = 0; i < domains_.size(); ++i) {
        if (domains_[i].size() < 2)
            throw validation_error("domain of " + quoted(features_[i]) +
                                   " needs at least two values");
        std::unordered_set<std::string> vals;
        for (const auto& v : domains_[i])
            if (!vals.insert(v).second)
                throw validation_error("duplicate value " + quoted(v) +
                                       " in domain of " + quoted(features_[i]));
    }
    if (classes_.size() < 2)
        throw validation_error("theory needs at least two classes");
    std::unordered_set<std::string> cls;
    for (const auto& c : classes_)
        if (!cls.insert(c).second)
            throw validation_error("duplicate class label " + quoted(c));
}

const std::vector<std::string>& Theory::domain(int feature) const {
    if (feature < 0 || feature >= feature_count())
        throw validation_error("feature index out of range");
    return domains_[static_cast<std::size_t>(feature)];
}

const std::string& Theory::feature_name(int feature) const {
    if (feature < 0 || feature >= feature_count())
        throw validation_error("feature index out of range");
    return features_[static_cast<std::size_t>(feature)];
}

const std::string& Theory::value_name(int feature, int value) const {
    const auto& dom = domain(feature);
    if (value < 0 || value >= static_cast<int>(dom.size()))
        throw validation_error("value index out of range for feature " +
                               quoted(feature_name(feature)));
    return dom[static_cast<std::size_t>(value)];
}

const std::string& Theory::class_name(int class_id) const {
    if (class_id < 0 || class_id >= class_count())
        throw validation_error("class index out of range");
    return classes_[static_cast<std::size_t>(class_id)];
}

std::optional<int> Theory::find_feature(const std::string& name) const {
    auto it = std::find(features_.begin(), features_.end(), name);
    if (it == features_.end()) return std::nullopt;
    return static_cast<int>(it - features_.begin());
}

std::optional<int> Theory::find_value(int feature,
                                      const std::string& value) const {
    if (feature < 0 || feature >= feature_count()) return std::nullopt;
    const auto& dom = domains_[static_cast<std::size_t>(feature)];
    auto it = std::find(dom.begin(), dom.end(), value);
    if (it == dom.end()) return std::nullopt;
    return static_cast<int>(it - dom.begin());
}

std::optional<int> Theory::find_class(const std::string& label) const {
    auto it = std::find(classes_.begin(), classes_.end(), label);
    if (it == classes_.end()) return std::nullopt;
    return static_cast<int>(it - classes_.begin());
}

int Theory::feature_index(const std::string& name) const {
    if (auto i = find_feature(name)) return *i;
    throw validation_error("unknown feature " + quoted(name));
}

int Theory::value_index(int feature, const std::string& value) const {
    if (auto i = find_value(feature, value)) return *i;
    throw validation_error("value " + quoted(value) +
                           " not in domain of " + quoted(feature_name(feature)));
}

int Theory::class_index(const std::string& label) const {
    if (auto i = find_class(label)) return *i;
    throw validation_error("unknown class " + quoted(label));
}

std::optional<std::uint64_t> Theory::feature_space_size() const {
    std::uint64_t size = 1;
    for (const auto& dom : domains_) {
        std::uint64_t d = dom.size();
        if (size > UINT64_MAX / d) return std::nullopt; // would overflow
        size *= d;
    }
    return size;
}

bool Theory::valid_literal(const Literal& lit) const {
    return lit.feature >= 0 && lit.feature < feature_count() &&
           lit.value >= 0 &&
           lit.value < static_cast<int>(
               domains_[static_cast<std::size_t>(lit.feature)].size());
}

PartialAssignment PartialAssignment::make(const Theory& theory,
                                          std::vector<Literal> literals) {
    for (const auto& lit : literals)
        if (!theory.valid_literal(lit))
            throw validation_error("invalid literal: feature " +
                                   std::to_string(lit.feature) + ", value " +
                                   std::to_string(lit.value));
    std::sort(literals.begin(), literals.end());
    literals.erase(std::unique(literals.begin(), literals.end()),
                   literals.end());
    for (std::size_t i = 1; i < literals.size(); ++i)
        if (literals[i].feature == literals[i - 1].feature)
            throw validation_error(
                "inconsistent literal set: feature '" +
                theory.feature_name(literals[i].feature) +
                "' bound to two values");
    PartialAssignment e;
    e.literals_ = std::move(literals);
    return e;
}

PartialAssignment PartialAssignment::from_instance(const Instance& x) {
    PartialAssignment e;
    e.literals_.reserve(x.size());
    for (std::size_t f = 0; f < x.size(); ++f)
        e.literals_.push_back({static_cast<int>(f), x[f]});
    return e;
}

std::optional<int> PartialAssignment::value_of(int feature) const {
    for (const auto& lit : literals_)
        if (lit.feature == feature) return lit.value;
    return std::nullopt;
}

PartialAssignment PartialAssignment::without(std::size_t pos) const {
    PartialAssignment e = *this;
    e.literals_.erase(e.literals_.begin() + static_cast<std::ptrdiff_t>(pos));
    return e;
}

bool is_consistent(const Theory& theory,
                   const std::vector<Literal>& literals) {
    for (const auto& lit : literals)
        if (!theory.valid_literal(lit))
            throw validation_error("invalid literal: feature " +
                                   std::to_string(lit.feature) + ", value " +
                                   std::to_string(lit.value));
    auto sorted = literals;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].feature == sorted[i - 1].feature &&
            sorted[i].value != sorted[i - 1].value)
            return false;
    return true;
}

bool covers(const PartialAssignment& e, const Instance& y) {
    for (const auto& lit : e.literals()) {
        if (lit.feature < 0 || lit.feature >= static_cast<int>(y.size()))
            throw validation_error("assignment/instance theory mismatch");
        if (y[static_cast<std::size_t>(lit.feature)] != lit.value) return false;
    }
    return true;
}

bool subset_of(const PartialAssignment& e, const PartialAssignment& e2) {
    const auto& a = e.literals();
    const auto& b = e2.literals();
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool union_consistent(const PartialAssignment& e,
                      const PartialAssignment& e2) {
    // Both sides are internally consistent; only cross clashes can occur.
    for (const auto& lit : e.literals()) {
        auto v = e2.value_of(lit.feature);
        if (v && *v != lit.value) return false;
    }
    return true;
}

std::vector<PartialAssignment> enumerate_partial_assignments(
    const Theory& theory, std::uint64_t cap) {
    const int n = theory.feature_count();
    std::uint64_t total = 1;
    for (int f = 0; f < n; ++f) {
        const auto width = static_cast<std::uint64_t>(theory.domain(f).size()) + 1;
        if (total > cap / width) {
            throw capacity_error("partial-assignment space exceeds cap " +
                                 std::to_string(cap));
        }
        total *= width;
    }
    std::vector<PartialAssignment> out;
    out.reserve(static_cast<std::size_t>(total));
    // Odometer over per-feature choices: 0 = unset, k = value index k-1.
    std::vector<int> choice(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<Literal> lits;
        for (int f = 0; f < n; ++f) {
            const int c = choice[static_cast<std::size_t>(f)];
            if (c > 0) lits.push_back(Literal{f, c - 1});
        }
        out.push_back(PartialAssignment::make(theory, lits));
        int f = n - 1;
        for (; f >= 0; --f) {
            auto& c = choice[static_cast<std::size_t>(f)];
            if (c + 1 <= static_cast<int>(theory.domain(f).size())) {
                ++c;
                break;
            }
            c = 0;
        }
        if (f < 0) break;
    }
    return out;
}

std::vector<Instance> enumerate_feature_space(const Theory& theory,
                                              std::uint64_t cap) {
    auto size = theory.feature_space_size();
    if (!size)
        throw capacity_error("feature-space size exceeds cap " +
                             std::to_string(cap) +
                             " (size overflows a 64-bit counter)");
    if (*size > cap)
        throw capacity_error("feature-space size " + std::to_string(*size) +
                             " exceeds cap " + std::to_string(cap));
    const int n = theory.feature_count();
    std::vector<Instance> out;
    out.reserve(static_cast<std::size_t>(*size));
    Instance current(static_cast<std::size_t>(n), 0);
    while (true) {
        out.push_back(current);
        int f = n - 1;
        for (; f >= 0; --f) {
            auto& v = current[static_cast<std::size_t>(f)];
            if (v + 1 < static_cast<int>(theory.domain(f).size())) {
                ++v;
                break;
            }
            v = 0;
        }
        if (f < 0) break;
    }
    return out;
}

std::string literal_text(const Theory& theory, const Literal& lit) {
    return theory.feature_name(lit.feature) + "=" +
           theory.value_name(lit.feature, lit.value);
}

std::string assignment_text(const Theory& theory,
                            const PartialAssignment& e) {
    if (e.empty()) return "{}";
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& lit : e.literals()) {
        if (!first) out << ",";
        out << literal_text(theory, lit);
        first = false;
    }
    out << "}";
    return out.str();
}

std::string instance_text(const Theory& theory, const Instance& x) {
    return assignment_text(theory, PartialAssignment::from_instance(x));
}

PartialAssignment parse_assignment(const Theory& theory,
                                   const std::string& text) {
    std::string body = text;
    if (body.size() >= 2 && body.front() == '{' && body.back() == '}')
        body = body.substr(1, body.size() - 2);
    std::vector<Literal> literals;
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw validation_error("malformed literal '" + item +
                                   "' (expected feature=value)");
        int f = theory.feature_index(item.substr(0, eq));
        int v = theory.value_index(f, item.substr(eq + 1));
        literals.push_back({f, v});
    }
    return PartialAssignment::make(theory, std::move(literals));
}

} // namespace sampex
