#include "sampex/data.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace sampex {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_byte(std::uint64_t& h, unsigned char b) {
    h ^= b;
    h *= kFnvPrime;
}

void fnv_string(std::uint64_t& h, const std::string& s) {
    for (unsigned char c : s) fnv_byte(h, c);
    fnv_byte(h, 0xff); // separator
}

void fnv_int(std::uint64_t& h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) fnv_byte(h, static_cast<unsigned char>(v >> (8 * i)));
}

void fnv_theory(std::uint64_t& h, const Theory& t) {
    fnv_int(h, static_cast<std::uint64_t>(t.feature_count()));
    for (int f = 0; f < t.feature_count(); ++f) {
        fnv_string(h, t.feature_name(f));
        for (const auto& v : t.domain(f)) fnv_string(h, v);
    }
    for (const auto& c : t.classes()) fnv_string(h, c);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string trim_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

// A sentinel string distinct from everything in `taken`.
std::string fresh_sentinel(const std::vector<std::string>& taken) {
    std::string base = "_other";
    std::string candidate = base;
    int suffix = 2;
    while (std::find(taken.begin(), taken.end(), candidate) != taken.end())
        candidate = base + std::to_string(suffix++);
    return candidate;
}

} // namespace

Dataset Dataset::make(TheoryPtr theory, std::vector<Instance> instances) {
    if (!theory) throw validation_error("dataset needs a theory");
    Dataset d;
    d.theory_ = std::move(theory);
    const int n = d.theory_->feature_count();
    for (auto& x : instances) {
        if (static_cast<int>(x.size()) != n)
            throw validation_error("instance arity mismatch");
        for (int f = 0; f < n; ++f)
            if (x[static_cast<std::size_t>(f)] < 0 ||
                x[static_cast<std::size_t>(f)] >=
                    static_cast<int>(d.theory_->domain(f).size()))
                throw validation_error("instance value out of domain for '" +
                                       d.theory_->feature_name(f) + "'");
        if (!d.contains(x)) d.instances_.push_back(std::move(x));
    }
    return d;
}

std::optional<std::size_t> Dataset::index_of(const Instance& x) const {
    auto it = std::find(instances_.begin(), instances_.end(), x);
    if (it == instances_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - instances_.begin());
}

std::size_t TableClassifier::InstanceHash::operator()(const Instance& x) const {
    std::uint64_t h = kFnvOffset;
    for (int v : x) fnv_int(h, static_cast<std::uint64_t>(v) + 1);
    return static_cast<std::size_t>(h);
}

TableClassifier::TableClassifier(std::vector<Instance> keys,
                                 std::vector<int> labels)
    : keys_(std::move(keys)) {
    if (keys_.size() != labels.size())
        throw validation_error("table classifier: keys/labels length mismatch");
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        auto [it, inserted] = table_.emplace(keys_[i], labels[i]);
        if (!inserted && it->second != labels[i])
            throw validation_error(
                "table classifier: contradictory labels for one instance");
    }
}

int TableClassifier::predict(const Instance& y) const {
    auto it = table_.find(y);
    if (it == table_.end())
        throw validation_error("classifier undefined on instance");
    return it->second;
}

bool TableClassifier::defined_on(const Instance& y) const {
    return table_.find(y) != table_.end();
}

Question make_question(TheoryPtr theory, ClassifierPtr classifier,
                       Dataset dataset, Instance target) {
    if (!theory || !classifier)
        throw validation_error("question needs a theory and a classifier");
    if (dataset.empty())
        throw validation_error("question needs a nonempty dataset");
    if (!dataset.contains(target))
        throw validation_error("target instance is not in the dataset");
    for (const auto& y : dataset.instances())
        if (!classifier->defined_on(y))
            throw validation_error(
                "classifier undefined on a dataset instance " +
                instance_text(*theory, y));
    return Question{std::move(theory), std::move(classifier),
                    std::move(dataset), std::move(target)};
}

int predict(const Classifier& k, const Instance& y) { return k.predict(y); }

LoadResult load_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw validation_error("empty input: expected a header row");
    auto header = split_csv_line(trim_cr(line));
    if (header.size() < 2)
        throw validation_error(
            "header needs at least one feature column and a class column");

    // Optional identifier column: a header cell spelled exactly "name".
    std::optional<std::size_t> id_col;
    for (std::size_t i = 0; i + 1 < header.size(); ++i)
        if (header[i] == "name") {
            id_col = i;
            break;
        }

    std::vector<std::string> feature_names;
    for (std::size_t i = 0; i + 1 < header.size(); ++i)
        if (!id_col || i != *id_col) feature_names.push_back(header[i]);
    if (feature_names.empty())
        throw validation_error("no feature columns in header");
    const std::size_t ncols = header.size();
    const std::size_t nfeat = feature_names.size();

    std::vector<std::vector<std::string>> raw_rows; // feature values as text
    std::vector<std::string> raw_labels;
    std::vector<std::string> raw_ids;
    while (std::getline(in, line)) {
        line = trim_cr(line);
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != ncols)
            throw validation_error(
                "row " + std::to_string(raw_rows.size() + 1) + " has " +
                std::to_string(cells.size()) + " cells, expected " +
                std::to_string(ncols));
        std::vector<std::string> values;
        values.reserve(nfeat);
        for (std::size_t i = 0; i + 1 < cells.size(); ++i)
            if (!id_col || i != *id_col) values.push_back(cells[i]);
        raw_rows.push_back(std::move(values));
        raw_labels.push_back(cells.back());
        raw_ids.push_back(id_col ? cells[*id_col] : "");
    }
    if (raw_rows.empty())
        throw validation_error("no data rows: expected at least one");

    LoadResult out;
    out.report.raw_rows = raw_rows.size();
    out.report.has_id_column = id_col.has_value();

    // Domains and classes from observed values, first-appearance order.
    std::vector<std::vector<std::string>> domains(nfeat);
    for (const auto& row : raw_rows)
        for (std::size_t f = 0; f < nfeat; ++f)
            if (std::find(domains[f].begin(), domains[f].end(), row[f]) ==
                domains[f].end())
                domains[f].push_back(row[f]);
    for (std::size_t f = 0; f < nfeat; ++f)
        if (domains[f].size() < 2) {
            out.report.padded_features.push_back(feature_names[f]);
            domains[f].push_back(fresh_sentinel(domains[f]));
        }
    std::vector<std::string> classes;
    for (const auto& label : raw_labels)
        if (std::find(classes.begin(), classes.end(), label) == classes.end())
            classes.push_back(label);
    if (classes.size() < 2) {
        out.report.padded_class = true;
        classes.push_back(fresh_sentinel(classes));
    }

    auto theory = std::make_shared<Theory>(feature_names, domains, classes);

    // Distinct instances, contradiction check, raw-row mapping.
    std::vector<Instance> instances;
    std::vector<int> labels;
    for (std::size_t r = 0; r < raw_rows.size(); ++r) {
        Instance x(nfeat);
        for (std::size_t f = 0; f < nfeat; ++f)
            x[f] = theory->value_index(static_cast<int>(f), raw_rows[r][f]);
        int label = theory->class_index(raw_labels[r]);
        auto it = std::find(instances.begin(), instances.end(), x);
        std::size_t idx;
        if (it == instances.end()) {
            idx = instances.size();
            instances.push_back(std::move(x));
            labels.push_back(label);
            out.instance_id.push_back(raw_ids[r]);
        } else {
            idx = static_cast<std::size_t>(it - instances.begin());
            if (labels[idx] != label)
                throw validation_error(
                    "contradictory labels: identical rows " +
                    std::to_string(r + 1) + " and earlier carry '" +
                    raw_labels[r] + "' vs '" +
                    theory->class_name(labels[idx]) + "'");
            ++out.report.duplicates_removed;
        }
        out.row_instance.push_back(idx);
        if (id_col && !raw_ids[r].empty())
            out.id_to_instance.emplace(raw_ids[r], idx); // first wins
    }
    out.report.distinct_rows = instances.size();

    out.classifier =
        std::make_shared<TableClassifier>(instances, labels);
    out.dataset = Dataset::make(theory, std::move(instances));
    out.theory = std::move(theory);
    return out;
}

LoadResult load_dataset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open dataset file '" + path + "'");
    return load_dataset(in);
}

LoadResult apply_domain_file(const LoadResult& loaded, std::istream& domains) {
    const Theory& old = *loaded.theory;
    std::vector<std::vector<std::string>> doms;
    for (int f = 0; f < old.feature_count(); ++f) doms.push_back(old.domain(f));
    std::vector<std::string> classes = old.classes();

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(domains, line)) {
        ++lineno;
        line = trim_cr(line);
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw validation_error("domain file line " +
                                   std::to_string(lineno) +
                                   ": expected 'feature: v1,v2,...'");
        std::string key = line.substr(0, colon);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        std::vector<std::string> values;
        std::istringstream rest(line.substr(colon + 1));
        std::string v;
        while (std::getline(rest, v, ',')) {
            v.erase(0, v.find_first_not_of(" \t"));
            v.erase(v.find_last_not_of(" \t") + 1);
            if (!v.empty()) values.push_back(v);
        }
        if (values.size() < 2)
            throw validation_error("domain file line " +
                                   std::to_string(lineno) +
                                   ": need at least two values");
        if (key == "classes") {
            classes = values;
            continue;
        }
        int f = old.feature_index(key); // throws when unknown
        doms[static_cast<std::size_t>(f)] = values;
    }

    // Declared domains must cover observed values (sentinels excepted:
    // a padded feature may be re-declared without its sentinel).
    for (int f = 0; f < old.feature_count(); ++f) {
        bool padded =
            std::find(loaded.report.padded_features.begin(),
                      loaded.report.padded_features.end(),
                      old.feature_name(f)) != loaded.report.padded_features.end();
        const auto& declared = doms[static_cast<std::size_t>(f)];
        const auto& observed = old.domain(f);
        std::size_t real = observed.size() - (padded ? 1 : 0);
        for (std::size_t i = 0; i < real; ++i)
            if (std::find(declared.begin(), declared.end(), observed[i]) ==
                declared.end())
                throw validation_error("declared domain of '" +
                                       old.feature_name(f) +
                                       "' misses observed value '" +
                                       observed[i] + "'");
    }
    std::size_t real_classes = classes.size();
    {
        std::size_t observed = old.classes().size() -
                               (loaded.report.padded_class ? 1 : 0);
        for (std::size_t i = 0; i < observed; ++i)
            if (std::find(classes.begin(), classes.end(), old.classes()[i]) ==
                classes.end())
                throw validation_error("declared classes miss observed '" +
                                       old.classes()[i] + "'");
        (void)real_classes;
    }

    auto theory = std::make_shared<Theory>(old.features(), doms, classes);

    // Re-index instances and labels under the new theory.
    LoadResult out;
    out.report = loaded.report;
    out.report.padded_features.clear();
    out.report.padded_class = false;
    out.row_instance = loaded.row_instance;
    out.id_to_instance = loaded.id_to_instance;
    out.instance_id = loaded.instance_id;

    std::vector<Instance> instances;
    std::vector<int> labels;
    for (const auto& x : loaded.dataset.instances()) {
        Instance y(x.size());
        for (std::size_t f = 0; f < x.size(); ++f)
            y[f] = theory->value_index(
                static_cast<int>(f),
                old.value_name(static_cast<int>(f), x[f]));
        labels.push_back(theory->class_index(
            old.class_name(loaded.classifier->predict(x))));
        instances.push_back(std::move(y));
    }
    out.classifier = std::make_shared<TableClassifier>(instances, labels);
    out.dataset = Dataset::make(theory, std::move(instances));
    out.theory = std::move(theory);
    return out;
}

LoadResult apply_domain_file_path(const LoadResult& loaded,
                                  const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open domain file '" + path + "'");
    return apply_domain_file(loaded, in);
}

std::uint64_t dataset_digest(const Dataset& d) {
    std::uint64_t h = kFnvOffset;
    fnv_theory(h, *d.theory());
    for (const auto& x : d.instances())
        for (int v : x) fnv_int(h, static_cast<std::uint64_t>(v) + 1);
    return h;
}

std::uint64_t classifier_digest(const Dataset& d, const Classifier& k) {
    std::uint64_t h = dataset_digest(d);
    for (const auto& x : d.instances())
        fnv_int(h, static_cast<std::uint64_t>(k.predict(x)) + 1);
    return h;
}

std::uint64_t question_digest(const Question& q) {
    std::uint64_t h = classifier_digest(q.dataset, *q.classifier);
    for (int v : q.target) fnv_int(h, static_cast<std::uint64_t>(v) + 1);
    return h;
}

std::string digest_hex(std::uint64_t digest) {
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[digest & 0xf];
        digest >>= 4;
    }
    return out;
}

} // namespace sampex
