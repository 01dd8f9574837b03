#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sampex/axioms.hpp"
#include "sampex/coherence.hpp"
#include "sampex/data.hpp"
#include "sampex/errors.hpp"
#include "sampex/explainers.hpp"
#include "sampex/surrogate.hpp"
#include "sampex/theory.hpp"

namespace sampex::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 20;

struct CommonOpts {
    std::string data;
    std::string domains;
    std::string target;
    std::string explainer = "dwaxp";
    std::string order = "asc";
    std::string format = "text";
    std::string out;
    std::uint64_t cap = kDefaultCap;
};

// ------------------------------------------------------------ plumbing

LoadResult load_input(const CommonOpts& o) {
    if (o.data.empty()) throw validation_error("--data is required");
    auto r = load_dataset_file(o.data);
    if (!o.domains.empty()) r = apply_domain_file_path(r, o.domains);
    return r;
}

void check_format(const CommonOpts& o) {
    if (o.format != "text" && o.format != "json") {
        throw validation_error("--format must be text or json, got '" +
                               o.format + "'");
    }
    if (o.cap == 0) throw validation_error("--cap must be positive");
}

std::vector<int> resolve_order(const Theory& t, const std::string& spec) {
    const int n = t.feature_count();
    if (spec == "asc") return ascending_order(n);
    if (spec == "desc") return descending_order(n);

    std::vector<int> order;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::stringstream ss(spec);
    std::string name;
    while (std::getline(ss, name, ',')) {
        auto f = t.find_feature(name);
        if (!f) {
            throw validation_error("--order names unknown feature '" + name +
                                   "'");
        }
        if (seen[static_cast<std::size_t>(*f)]) {
            throw validation_error("--order repeats feature '" + name + "'");
        }
        seen[static_cast<std::size_t>(*f)] = true;
        order.push_back(*f);
    }
    if (static_cast<int>(order.size()) != n) {
        throw validation_error(
            "--order must list every feature exactly once (asc, desc, or a "
            "comma-separated permutation of the feature names)");
    }
    return order;
}

std::size_t resolve_target(const LoadResult& r, const std::string& spec) {
    if (spec.empty()) {
        throw validation_error(
            "--target is required (row=K, name=ID, or f=v[,f=v...])");
    }
    if (spec.rfind("row=", 0) == 0) {
        const std::string num = spec.substr(4);
        std::size_t pos = 0;
        unsigned long long k = 0;
        try {
            k = std::stoull(num, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != num.size() || num.empty()) {
            throw validation_error("--target row index '" + num +
                                   "' is not a number");
        }
        if (k >= r.row_instance.size()) {
            throw validation_error(
                "--target row " + num + " out of range (have " +
                std::to_string(r.row_instance.size()) + " data rows)");
        }
        return r.row_instance[static_cast<std::size_t>(k)];
    }
    if (spec.rfind("name=", 0) == 0) {
        if (!r.report.has_id_column) {
            throw validation_error(
                "--target name=... needs a dataset with an id column");
        }
        const std::string id = spec.substr(5);
        auto it = r.id_to_instance.find(id);
        if (it == r.id_to_instance.end()) {
            throw validation_error("--target name '" + id +
                                   "' not found in the id column");
        }
        return it->second;
    }

    auto e = parse_assignment(*r.theory, spec);
    std::vector<std::size_t> matches;
    for (std::size_t i = 0; i < r.dataset.size(); ++i) {
        if (covers(e, r.dataset[i])) matches.push_back(i);
    }
    if (matches.empty()) {
        throw validation_error("--target matches no dataset instance");
    }
    if (matches.size() > 1) {
        throw validation_error("--target matches " +
                               std::to_string(matches.size()) +
                               " dataset instances; make it unambiguous");
    }
    return matches[0];
}

void emit(const std::string& doc, const CommonOpts& o, std::ostream& out) {
    if (o.out.empty()) {
        out << doc;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw io_error("cannot open output file " + o.out);
    f << doc;
    if (!f) throw io_error("cannot write output file " + o.out);
}

std::string rows_line(const LoadResult& r) {
    std::ostringstream os;
    os << "raw=" << r.report.raw_rows
       << " distinct=" << r.report.distinct_rows
       << " features=" << r.theory->feature_count()
       << " classes=" << r.theory->class_count();
    return os.str();
}

json rows_json(const LoadResult& r) {
    return json{{"raw", r.report.raw_rows},
                {"distinct", r.report.distinct_rows},
                {"features", r.theory->feature_count()},
                {"classes", r.theory->class_count()}};
}

// ------------------------------------------------------------ explain

Question feature_space_question(const LoadResult& r, const Instance& x,
                                std::uint64_t cap) {
    auto full = Dataset::make(r.theory,
                              enumerate_feature_space(*r.theory, cap));
    return make_question(r.theory, r.classifier, full, x);
}

// Runs the chosen explainer and re-verifies every member under its
// defining membership test; a verification failure is a discrepancy.
ExplanationSet compute_explanations(const CommonOpts& o, const LoadResult& r,
                                    const Question& q,
                                    const std::vector<int>& order) {
    const std::string& id = o.explainer;
    ExplanationSet set;
    if (id == "dwaxp") {
        set = all_dwaxp(q, o.cap);
        for (const auto& e : set) {
            if (!is_dwaxp(q, e)) {
                throw contract_error("emitted explanation fails is_dwaxp");
            }
        }
    } else if (id == "caxp") {
        auto e = find_caxp(q, order);
        if (!is_dwaxp(q, e)) {
            throw contract_error("emitted explanation fails is_dwaxp");
        }
        for (std::size_t pos = 0; pos < e.size(); ++pos) {
            if (is_dwaxp(q, e.without(pos))) {
                throw contract_error("emitted explanation is not minimal");
            }
        }
        set = {e};
    } else if (id == "trivial") {
        set = trivial_explain(q);
        for (const auto& e : set) {
            if (!is_dwaxp(q, e)) {
                throw contract_error("emitted explanation fails is_dwaxp");
            }
        }
    } else if (id == "irrefutable") {
        set = lir_explain(q, o.cap);
        for (const auto& e : set) {
            if (!is_irrefutable(q, e)) {
                throw contract_error(
                    "emitted explanation fails is_irrefutable");
            }
        }
    } else if (id == "surrogate") {
        auto tree = surrogate_tree(q.dataset, *q.classifier);
        set = lsu_explain(q, *tree, o.cap);
        for (const auto& e : set) {
            if (!is_dwaxp_tree(*tree, q.target, e)) {
                throw contract_error(
                    "emitted explanation fails is_dwaxp_tree");
            }
        }
    } else if (id == "lw" || id == "lc") {
        set = id == "lw" ? lw_all(q, o.cap) : lc_all(q, o.cap);
        auto qf = feature_space_question(r, q.target, o.cap);
        for (const auto& e : set) {
            if (!is_dwaxp(qf, e)) {
                throw contract_error(
                    "emitted explanation fails the feature-space is_dwaxp");
            }
        }
    } else {
        throw validation_error(
            "--explainer must be one of dwaxp, caxp, trivial, irrefutable, "
            "surrogate, lw, lc; got '" + id + "'");
    }
    return set;
}

json explain_json(const CommonOpts& o, const LoadResult& r,
                  const Question& q, const ExplanationSet& set) {
    const Theory& t = *r.theory;
    json doc;
    doc["command"] = "explain";
    doc["data"] = o.data;
    doc["domains"] = o.domains.empty() ? json(nullptr) : json(o.domains);
    doc["rows"] = rows_json(r);
    doc["explainer"] = o.explainer;
    doc["target"] = assignment_text(
        t, PartialAssignment::from_instance(q.target));
    doc["target_class"] = t.class_name(q.target_class());
    doc["order"] = o.order;
    doc["cap"] = o.cap;
    doc["question_digest"] = digest_hex(question_digest(q));
    json arr = json::array();
    for (const auto& e : set) arr.push_back(assignment_text(t, e));
    doc["explanations"] = std::move(arr);
    doc["verified"] = true;
    return doc;
}

std::string explain_text(const CommonOpts& o, const LoadResult& r,
                         const Question& q, const ExplanationSet& set) {
    const Theory& t = *r.theory;
    std::ostringstream os;
    os << "command: explain\n";
    os << "data: " << o.data << "\n";
    if (!o.domains.empty()) os << "domains: " << o.domains << "\n";
    os << "rows: " << rows_line(r) << "\n";
    os << "explainer: " << o.explainer << "\n";
    os << "target: "
       << assignment_text(t, PartialAssignment::from_instance(q.target))
       << " (class " << t.class_name(q.target_class()) << ")\n";
    os << "order: " << o.order << "\n";
    os << "cap: " << o.cap << "\n";
    os << "question: digest=" << digest_hex(question_digest(q)) << "\n";
    os << "explanations: " << set.size() << "\n";
    for (const auto& e : set) os << "  " << assignment_text(t, e) << "\n";
    os << "verified: " << set.size() << "/" << set.size() << "\n";
    return os.str();
}

int cmd_explain(const CommonOpts& o, std::ostream& out) {
    check_format(o);
    auto r = load_input(o);
    auto order = resolve_order(*r.theory, o.order);
    auto target = resolve_target(r, o.target);
    auto q = make_question(r.theory, r.classifier, r.dataset,
                           r.dataset[target]);
    auto set = compute_explanations(o, r, q, order);
    emit(o.format == "json" ? explain_json(o, r, q, set).dump(2) + "\n"
                            : explain_text(o, r, q, set),
         o, out);
    return 0;
}

// ------------------------------------------------------------ envelope

int cmd_envelope(const CommonOpts& o, bool maximal, std::ostream& out) {
    check_format(o);
    auto r = load_input(o);
    const Theory& t = *r.theory;
    const Dataset& d = r.dataset;
    const Classifier& k = *r.classifier;

    auto irr = irr_envelope(d, k, o.cap);
    auto verdict = is_envelope(irr, d, k);
    if (!verdict.ok()) {
        throw contract_error("irrefutable envelope fails is_envelope: " +
                             verdict.detail);
    }

    std::vector<Envelope> all, max;
    if (maximal) {
        all = all_envelopes(d, k, o.cap);
        max = maximal_envelopes(d, k, o.cap); // checks the intersection
        for (const auto& env : max) {
            if (!is_envelope(env, d, k).ok()) {
                throw contract_error("maximal envelope fails is_envelope");
            }
        }
    }

    const std::string ddig = digest_hex(dataset_digest(d));
    const std::string kdig = digest_hex(classifier_digest(d, k));

    if (o.format == "json") {
        json doc;
        doc["command"] = "envelope";
        doc["data"] = o.data;
        doc["domains"] = o.domains.empty() ? json(nullptr) : json(o.domains);
        doc["rows"] = rows_json(r);
        doc["cap"] = o.cap;
        doc["dataset_digest"] = ddig;
        doc["classifier_digest"] = kdig;
        json members = json::array();
        for (const auto& e : irr) members.push_back(assignment_text(t, e));
        doc["irrefutable_envelope"] = std::move(members);
        if (maximal) {
            doc["envelopes"] = all.size();
            json mx = json::array();
            for (const auto& env : max) {
                json one = json::array();
                for (const auto& e : env) one.push_back(assignment_text(t, e));
                mx.push_back(std::move(one));
            }
            doc["maximal_envelopes"] = std::move(mx);
        }
        doc["verified"] = true;
        emit(doc.dump(2) + "\n", o, out);
        return 0;
    }

    std::ostringstream os;
    os << "command: envelope\n";
    os << "data: " << o.data << "\n";
    if (!o.domains.empty()) os << "domains: " << o.domains << "\n";
    os << "rows: " << rows_line(r) << "\n";
    os << "cap: " << o.cap << "\n";
    os << "digests: dataset=" << ddig << " classifier=" << kdig << "\n";
    os << "irrefutable envelope: " << irr.size() << "\n";
    for (const auto& e : irr) os << "  " << assignment_text(t, e) << "\n";
    if (maximal) {
        os << "envelopes: " << all.size() << "\n";
        os << "maximal envelopes: " << max.size() << "\n";
        for (std::size_t i = 0; i < max.size(); ++i) {
            os << "  [" << i << "] " << max[i].size() << " members\n";
            for (const auto& e : max[i]) {
                os << "    " << assignment_text(t, e) << "\n";
            }
        }
    }
    os << "verified: envelope\n";
    emit(os.str(), o, out);
    return 0;
}

// ------------------------------------------------------------ axioms

int cmd_axioms(const CommonOpts& o, const std::string& fixtures_dir,
               std::ostream& out) {
    check_format(o);
    int problems = 0;

    auto u = desk_universe();
    u.cap = o.cap;
    auto report = axiom_matrix(u);
    problems += report.discrepancies;

    auto fixtures = incompat_fixtures();
    struct CertLine {
        std::string name, axioms, fixture;
        bool ok;
        std::uint64_t checked;
        std::string witness;
    };
    std::vector<CertLine> certs;

    auto axioms_text = [](const std::vector<AxiomId>& axioms) {
        std::string s = "{";
        for (std::size_t i = 0; i < axioms.size(); ++i) {
            if (i) s += ",";
            s += axiom_name(axioms[i]);
        }
        return s + "}";
    };

    for (const auto& named : incompatible_sets()) {
        const IncompatFixture* fx = nullptr;
        for (const auto& f : fixtures) {
            if (f.name == named.fixture) fx = &f;
        }
        if (!fx) throw contract_error("unknown fixture " + named.fixture);
        auto cert = check_incompatibility(named.axioms, *fx, o.cap);
        if (!cert.incompatible) ++problems;
        certs.push_back({named.name, axioms_text(named.axioms), named.fixture,
                         cert.incompatible, cert.assignments_checked,
                         cert.witness});
    }

    struct SatLine {
        std::string name, axioms;
        bool ok;
    };
    std::vector<SatLine> sats;
    for (const auto& named : compatible_sets()) {
        bool everywhere = true;
        for (const auto& fx : fixtures) {
            if (check_incompatibility(named.axioms, fx, o.cap).incompatible) {
                everywhere = false;
            }
        }
        if (!everywhere) ++problems;
        sats.push_back({named.name, axioms_text(named.axioms), everywhere});
    }

    std::vector<std::pair<std::string, bool>> extra;
    for (const auto& pair : extra_incompatible_pairs()) {
        std::vector<AxiomId> set = {AxiomId::Feasibility, AxiomId::Validity};
        set.insert(set.end(), pair.begin(), pair.end());
        bool certified = false;
        for (const auto& fx : fixtures) {
            if (check_incompatibility(set, fx, o.cap).incompatible) {
                certified = true;
            }
        }
        if (!certified) ++problems;
        extra.push_back({std::string(axiom_name(pair[0])) + "+" +
                             axiom_name(pair[1]),
                         certified});
    }

    struct RefLine {
        std::string name, refutes, witness;
        bool refuted;
    };
    std::vector<RefLine> refs;
    for (const auto& named : load_fixtures(fixtures_dir)) {
        auto slash = named.refutes.find('/');
        auto exp = parse_explainer(named.refutes.substr(0, slash));
        AxiomId axiom = AxiomId::Feasibility;
        bool found = false;
        for (AxiomId a : kAllAxioms) {
            if (named.refutes.substr(slash + 1) == axiom_name(a)) {
                axiom = a;
                found = true;
            }
        }
        if (!exp || !found) {
            throw contract_error("malformed refutation tag " + named.refutes);
        }
        auto verdict = check_axiom(*exp, axiom, named.universe);
        if (verdict.holds) ++problems;
        refs.push_back(
            {named.name, named.refutes, verdict.witness, !verdict.holds});
    }

    if (o.format == "json") {
        json doc;
        doc["command"] = "axioms";
        doc["cap"] = o.cap;
        json matrix = json::array();
        for (const auto& entry : report.entries) {
            matrix.push_back(json{{"axiom", axiom_name(entry.axiom)},
                                  {"explainer",
                                   explainer_name(entry.explainer)},
                                  {"expected", entry.expected},
                                  {"observed", entry.observed}});
        }
        doc["matrix"] = std::move(matrix);
        doc["discrepancies"] = report.discrepancies;
        json jcerts = json::array();
        for (const auto& c : certs) {
            jcerts.push_back(json{{"name", c.name},
                                  {"axioms", c.axioms},
                                  {"fixture", c.fixture},
                                  {"incompatible", c.ok},
                                  {"assignments_checked", c.checked}});
        }
        doc["incompatible_sets"] = std::move(jcerts);
        json jsats = json::array();
        for (const auto& s : sats) {
            jsats.push_back(json{{"name", s.name},
                                 {"axioms", s.axioms},
                                 {"satisfiable_everywhere", s.ok}});
        }
        doc["compatible_sets"] = std::move(jsats);
        json jextra = json::array();
        for (const auto& [name, ok] : extra) {
            jextra.push_back(json{{"pair", name}, {"certified", ok}});
        }
        doc["extra_incompatible_pairs"] = std::move(jextra);
        json jrefs = json::array();
        for (const auto& rl : refs) {
            jrefs.push_back(json{{"universe", rl.name},
                                 {"refutes", rl.refutes},
                                 {"refuted", rl.refuted},
                                 {"witness", rl.witness}});
        }
        doc["counterexample_universes"] = std::move(jrefs);
        doc["problems"] = problems;
        emit(doc.dump(2) + "\n", o, out);
        return problems ? 4 : 0;
    }

    std::ostringstream os;
    os << "command: axioms\n";
    os << "cap: " << o.cap << "\n";
    os << "matrix ('+' satisfied, '-' violated, '!' differs from the "
          "published table):\n";
    os << "  " << std::left << std::setw(22) << "axiom";
    for (ExplainerId e : kAllExplainers) {
        os << std::setw(5) << explainer_name(e);
    }
    os << "\n";
    for (AxiomId a : kAllAxioms) {
        os << "  " << std::left << std::setw(22) << axiom_name(a);
        for (ExplainerId e : kAllExplainers) {
            std::string cell;
            for (const auto& entry : report.entries) {
                if (entry.axiom == a && entry.explainer == e) {
                    cell = entry.observed ? "+" : "-";
                    if (entry.observed != entry.expected) cell += "!";
                }
            }
            os << std::setw(5) << cell;
        }
        os << "\n";
    }
    os << "discrepancies: " << report.discrepancies << "\n";
    os << "incompatible sets:\n";
    for (const auto& c : certs) {
        os << "  " << c.name << " " << c.axioms << " on fixture " << c.fixture
           << ": "
           << (c.ok ? "incompatible (" + std::to_string(c.checked) +
                          " assignments exhausted)"
                    : "UNEXPECTEDLY satisfiable: " + c.witness)
           << "\n";
    }
    os << "compatible sets:\n";
    for (const auto& s : sats) {
        os << "  " << s.name << " " << s.axioms << ": "
           << (s.ok ? "satisfiable on every fixture"
                    : "UNEXPECTEDLY incompatible")
           << "\n";
    }
    os << "extra incompatible pairs (alongside Feasibility+Validity):\n";
    for (const auto& [name, ok] : extra) {
        os << "  " << name << ": " << (ok ? "certified" : "NOT certified")
           << "\n";
    }
    os << "counterexample universes:\n";
    for (const auto& rl : refs) {
        os << "  " << rl.name << " refutes " << rl.refutes << ": "
           << (rl.refuted ? "confirmed" : "NOT confirmed") << "\n";
        if (rl.refuted) os << "    witness: " << rl.witness << "\n";
    }
    os << "verdict: "
       << (problems ? "PROBLEMS (" + std::to_string(problems) + ")"
                    : "all checks consistent")
       << "\n";
    emit(os.str(), o, out);
    return problems ? 4 : 0;
}

// ------------------------------------------------------------ surrogate

int cmd_surrogate(const CommonOpts& o, std::ostream& out) {
    check_format(o);
    auto r = load_input(o);
    const Theory& t = *r.theory;
    auto order = resolve_order(t, o.order);
    auto tree = surrogate_tree(r.dataset, *r.classifier);

    std::size_t raw_ok = 0;
    for (std::size_t row = 0; row < r.row_instance.size(); ++row) {
        const auto& y = r.dataset[r.row_instance[row]];
        if (dt_predict(*tree, y) == r.classifier->predict(y)) ++raw_ok;
    }
    std::size_t distinct_ok = 0;
    for (const auto& y : r.dataset.instances()) {
        if (dt_predict(*tree, y) == r.classifier->predict(y)) ++distinct_ok;
    }

    std::vector<std::size_t> targets;
    if (!o.target.empty()) {
        targets.push_back(resolve_target(r, o.target));
    } else {
        for (std::size_t i = 0; i < r.dataset.size(); ++i) {
            targets.push_back(i);
        }
    }

    struct Line {
        std::string label, text;
    };
    std::vector<Line> lines;
    for (std::size_t i : targets) {
        const auto& x = r.dataset[i];
        auto e = find_axp_tree(*tree, x, order);
        if (!is_dwaxp_tree(*tree, x, e)) {
            throw contract_error("emitted explanation fails is_dwaxp_tree");
        }
        for (std::size_t pos = 0; pos < e.size(); ++pos) {
            if (is_dwaxp_tree(*tree, x, e.without(pos))) {
                throw contract_error("emitted explanation is not minimal");
            }
        }
        std::string label = r.report.has_id_column && !r.instance_id[i].empty()
                                ? r.instance_id[i]
                                : "instance " + std::to_string(i);
        lines.push_back({std::move(label), assignment_text(t, e)});
    }

    const std::string root =
        tree->is_leaf(0) ? std::string("(leaf)")
                         : t.feature_name(tree->nodes()[0].feature);
    const std::string ddig = digest_hex(dataset_digest(r.dataset));
    const std::string kdig =
        digest_hex(classifier_digest(r.dataset, *r.classifier));

    if (o.format == "json") {
        json doc;
        doc["command"] = "surrogate";
        doc["data"] = o.data;
        doc["domains"] = o.domains.empty() ? json(nullptr) : json(o.domains);
        doc["rows"] = rows_json(r);
        doc["order"] = o.order;
        doc["dataset_digest"] = ddig;
        doc["classifier_digest"] = kdig;
        doc["tree"] = json{{"nodes", tree->node_count()},
                           {"leaves", tree->leaf_count()},
                           {"depth", tree->depth()},
                           {"root", root},
                           {"text", tree_text(*tree)}};
        doc["accuracy"] =
            json{{"distinct", json::array({distinct_ok, r.dataset.size()})},
                 {"raw", json::array({raw_ok, r.row_instance.size()})}};
        json arr = json::array();
        for (const auto& line : lines) {
            arr.push_back(json{{"instance", line.label},
                               {"explanation", line.text}});
        }
        doc["explanations"] = std::move(arr);
        doc["verified"] = true;
        emit(doc.dump(2) + "\n", o, out);
        return 0;
    }

    std::ostringstream os;
    os << "command: surrogate\n";
    os << "data: " << o.data << "\n";
    if (!o.domains.empty()) os << "domains: " << o.domains << "\n";
    os << "rows: " << rows_line(r) << "\n";
    os << "order: " << o.order << "\n";
    os << "digests: dataset=" << ddig << " classifier=" << kdig << "\n";
    os << "tree: nodes=" << tree->node_count()
       << " leaves=" << tree->leaf_count() << " depth=" << tree->depth()
       << " root=" << root << "\n";
    os << "accuracy: distinct " << distinct_ok << "/" << r.dataset.size()
       << ", raw " << raw_ok << "/" << r.row_instance.size() << "\n";
    os << "tree structure:\n";
    std::istringstream ts(tree_text(*tree));
    for (std::string line; std::getline(ts, line);) {
        os << "  " << line << "\n";
    }
    os << "explanations: " << lines.size() << "\n";
    for (const auto& line : lines) {
        os << "  " << line.label << ": " << line.text << "\n";
    }
    os << "verified: " << lines.size() << "/" << lines.size() << "\n";
    emit(os.str(), o, out);
    return 0;
}

// ------------------------------------------------------------ demo-zoo

int cmd_demo_zoo(const CommonOpts& o, std::ostream& out) {
    check_format(o);
    auto r = load_input(o);
    const Theory& t = *r.theory;

    auto need = [&](const std::string& id) -> const Instance& {
        auto it = r.id_to_instance.find(id);
        if (it == r.id_to_instance.end()) {
            throw validation_error("demo data has no row named '" + id + "'");
        }
        return r.dataset[it->second];
    };
    const Instance& antelope = need("antelope");
    const Instance& crow = need("crow");
    auto q_ant = make_question(r.theory, r.classifier, r.dataset, antelope);
    auto q_crow = make_question(r.theory, r.classifier, r.dataset, crow);

    struct Claim {
        std::string text;
        bool pass;
        std::string note;
    };
    std::vector<Claim> claims;

    auto is_caxp = [&](const Question& q, const PartialAssignment& e) {
        if (!is_dwaxp(q, e)) return false;
        for (std::size_t pos = 0; pos < e.size(); ++pos) {
            if (is_dwaxp(q, e.without(pos))) return false;
        }
        return true;
    };

    claims.push_back({"{milk=1} is a minimal dataset explanation of antelope",
                      is_caxp(q_ant, parse_assignment(t, "{milk=1}")), ""});
    claims.push_back({"{feathers=1} is a minimal dataset explanation of crow",
                      is_caxp(q_crow, parse_assignment(t, "{feathers=1}")),
                      ""});

    // The hand-picked broad set: every antelope literal except fins and
    // domestic.
    std::vector<Literal> broad_lits;
    for (int f = 0; f < t.feature_count(); ++f) {
        const std::string& name = t.feature_name(f);
        if (name == "fins" || name == "domestic") continue;
        broad_lits.push_back({f, antelope[static_cast<std::size_t>(f)]});
    }
    auto broad = PartialAssignment::make(t, broad_lits);
    const bool broad_irr = is_irrefutable(q_ant, broad);
    claims.push_back(
        {"the 14-literal antelope set is irrefutable", broad_irr,
         broad_irr ? ""
                   : "it is a dataset explanation, but a differently "
                     "classified row still admits a compatible explanation"});
    bool deletions_fail = true;
    for (std::size_t pos = 0; pos < broad.size(); ++pos) {
        if (is_irrefutable(q_ant, broad.without(pos))) deletions_fail = false;
    }
    claims.push_back({"all 14 single deletions of that set are refutable",
                      deletions_fail, ""});

    auto tree = surrogate_tree(r.dataset, *r.classifier);
    std::size_t raw_ok = 0;
    for (std::size_t row = 0; row < r.row_instance.size(); ++row) {
        const auto& y = r.dataset[r.row_instance[row]];
        if (dt_predict(*tree, y) == r.classifier->predict(y)) ++raw_ok;
    }
    {
        std::ostringstream claim;
        claim << "surrogate tree reproduces all " << r.row_instance.size()
              << " row labels";
        std::ostringstream note;
        note << "got " << raw_ok << "/" << r.row_instance.size();
        claims.push_back({claim.str(), raw_ok == r.row_instance.size(),
                          raw_ok == r.row_instance.size() ? "" : note.str()});
    }

    const std::string root =
        tree->is_leaf(0) ? std::string("(leaf)")
                         : t.feature_name(tree->nodes()[0].feature);
    claims.push_back({"surrogate root feature is milk", root == "milk",
                      root == "milk" ? "" : "got " + root});

    auto ant_axp = assignment_text(t, find_axp_tree(*tree, antelope));
    claims.push_back({"tree explanation of antelope is {milk=1}",
                      ant_axp == "{milk=1}",
                      ant_axp == "{milk=1}" ? "" : "got " + ant_axp});
    auto crow_axp = assignment_text(t, find_axp_tree(*tree, crow));
    claims.push_back({"tree explanation of crow is {feathers=1,milk=0}",
                      crow_axp == "{feathers=1,milk=0}",
                      crow_axp == "{feathers=1,milk=0}" ? ""
                                                        : "got " + crow_axp});

    int failed = 0;
    for (const auto& c : claims) {
        if (!c.pass) ++failed;
    }

    auto minimal_irr = find_minimal_irrefutable(q_ant);

    if (o.format == "json") {
        json doc;
        doc["command"] = "demo-zoo";
        doc["data"] = o.data;
        doc["rows"] = rows_json(r);
        json arr = json::array();
        for (const auto& c : claims) {
            json one{{"claim", c.text}, {"pass", c.pass}};
            if (!c.note.empty()) one["note"] = c.note;
            arr.push_back(std::move(one));
        }
        doc["claims"] = std::move(arr);
        doc["failed"] = failed;
        doc["minimal_irrefutable_antelope"] =
            json{{"size", minimal_irr.size()},
                 {"literals", assignment_text(t, minimal_irr)}};
        emit(doc.dump(2) + "\n", o, out);
        return failed ? 4 : 0;
    }

    std::ostringstream os;
    os << "command: demo-zoo\n";
    os << "data: " << o.data << "\n";
    os << "rows: " << rows_line(r) << "\n";
    os << "claims:\n";
    for (const auto& c : claims) {
        os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.text;
        if (!c.note.empty()) os << " — " << c.note;
        os << "\n";
    }
    os << "note: the greedy minimal irrefutable explanation of antelope has "
       << minimal_irr.size() << " literals: "
       << assignment_text(t, minimal_irr) << "\n";
    os << "checklist: " << (claims.size() - static_cast<std::size_t>(failed))
       << "/" << claims.size() << " claims reproduced\n";
    emit(os.str(), o, out);
    return failed ? 4 : 0;
}

// ------------------------------------------------------- oracle-compare

int cmd_oracle_compare(const CommonOpts& o, const std::string& ref_path,
                       std::ostream& out) {
    check_format(o);
    if (ref_path.empty()) {
        throw validation_error("--ref is required (a JSON explain document)");
    }
    std::ifstream f(ref_path);
    if (!f) throw io_error("cannot open reference document " + ref_path);
    json ref;
    try {
        f >> ref;
    } catch (const std::exception& ex) {
        throw validation_error("reference document is not valid JSON: " +
                               std::string(ex.what()));
    }
    for (const char* key : {"command", "explainer", "target", "order", "cap",
                            "question_digest", "explanations"}) {
        if (!ref.contains(key)) {
            throw validation_error(
                "reference document lacks required field '" +
                std::string(key) + "'");
        }
    }
    if (ref["command"] != "explain") {
        throw validation_error(
            "reference document was not produced by the explain command");
    }

    CommonOpts replay = o;
    replay.explainer = ref["explainer"].get<std::string>();
    replay.target = ref["target"].get<std::string>();
    replay.order = ref["order"].get<std::string>();
    replay.cap = ref["cap"].get<std::uint64_t>();

    auto r = load_input(replay);
    auto order = resolve_order(*r.theory, replay.order);
    auto target = resolve_target(r, replay.target);
    auto q = make_question(r.theory, r.classifier, r.dataset,
                           r.dataset[target]);
    auto set = compute_explanations(replay, r, q, order);

    const std::string live_digest = digest_hex(question_digest(q));
    const std::string ref_digest = ref["question_digest"].get<std::string>();
    std::vector<std::string> live_texts, ref_texts;
    for (const auto& e : set) {
        live_texts.push_back(assignment_text(*r.theory, e));
    }
    for (const auto& item : ref["explanations"]) {
        ref_texts.push_back(item.get<std::string>());
    }

    const bool digest_match = live_digest == ref_digest;
    const bool set_match = live_texts == ref_texts;
    const bool match = digest_match && set_match;

    if (o.format == "json") {
        json doc;
        doc["command"] = "oracle-compare";
        doc["ref"] = ref_path;
        doc["data"] = o.data;
        doc["explainer"] = replay.explainer;
        doc["question_digest"] =
            json{{"ref", ref_digest}, {"live", live_digest},
                 {"match", digest_match}};
        doc["explanations"] =
            json{{"ref", ref_texts}, {"live", live_texts},
                 {"match", set_match}};
        doc["verdict"] = match ? "match" : "mismatch";
        emit(doc.dump(2) + "\n", o, out);
        return match ? 0 : 4;
    }

    std::ostringstream os;
    os << "command: oracle-compare\n";
    os << "ref: " << ref_path << "\n";
    os << "data: " << o.data << "\n";
    os << "explainer: " << replay.explainer << "\n";
    os << "question digest: ref=" << ref_digest << " live=" << live_digest
       << " match=" << (digest_match ? "yes" : "no") << "\n";
    os << "explanations: ref=" << ref_texts.size()
       << " live=" << live_texts.size()
       << " match=" << (set_match ? "yes" : "no") << "\n";
    if (!set_match) {
        os << "  ref:\n";
        for (const auto& s : ref_texts) os << "    " << s << "\n";
        os << "  live:\n";
        for (const auto& s : live_texts) os << "    " << s << "\n";
    }
    os << "verdict: " << (match ? "match" : "mismatch") << "\n";
    emit(os.str(), o, out);
    return match ? 0 : 4;
}

// ------------------------------------------------------------ wiring

void add_common(CLI::App* cmd, CommonOpts& o, bool with_target,
                bool with_explainer) {
    cmd->add_option("--data", o.data, "CSV dataset (header row required)");
    cmd->add_option("--domains", o.domains,
                    "domain file widening the observed domains");
    if (with_explainer) {
        cmd->add_option(
            "--explainer", o.explainer,
            "dwaxp | caxp | trivial | irrefutable | surrogate | lw | lc");
    }
    if (with_target) {
        cmd->add_option("--target", o.target,
                        "row=K, name=ID, or f=v[,f=v...]");
    }
    cmd->add_option("--cap", o.cap,
                    "enumeration capacity bound (default 2^20)");
    cmd->add_option("--order", o.order,
                    "asc, desc, or a comma-separated feature permutation");
    cmd->add_option("--out", o.out, "write the document to this file");
    cmd->add_option("--format", o.format, "text | json");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{
        "sample-based explanations for black-box classifiers over finite "
        "feature spaces"};
    app.require_subcommand(1);

    CommonOpts o;
    bool maximal = false;
    std::string fixtures_dir = "fixtures";
    std::string ref_path;

    auto* c_explain = app.add_subcommand(
        "explain", "explanations of one dataset instance");
    add_common(c_explain, o, true, true);

    auto* c_envelope = app.add_subcommand(
        "envelope", "irrefutable envelope of the dataset");
    add_common(c_envelope, o, false, false);
    c_envelope->add_flag("--maximal", maximal,
                         "also enumerate all subset-maximal envelopes");

    auto* c_axioms = app.add_subcommand(
        "axioms", "axiom matrix, certificates, and counterexamples");
    c_axioms->add_option("--fixtures", fixtures_dir,
                         "directory with the bundled fixture files");
    c_axioms->add_option("--cap", o.cap, "enumeration capacity bound");
    c_axioms->add_option("--out", o.out, "write the document to this file");
    c_axioms->add_option("--format", o.format, "text | json");

    auto* c_surrogate = app.add_subcommand(
        "surrogate", "decision-tree surrogate and its explanations");
    add_common(c_surrogate, o, true, false);

    auto* c_demo = app.add_subcommand(
        "demo-zoo", "reproduce the bundled zoo walkthrough");
    c_demo->add_option("--data", o.data, "zoo CSV path");
    c_demo->add_option("--out", o.out, "write the document to this file");
    c_demo->add_option("--format", o.format, "text | json");

    auto* c_compare = app.add_subcommand(
        "oracle-compare", "replay a saved explain document and compare");
    c_compare->add_option("--data", o.data, "CSV dataset");
    c_compare->add_option("--domains", o.domains, "domain file");
    c_compare->add_option("--ref", ref_path,
                          "reference JSON document from explain");
    c_compare->add_option("--out", o.out, "write the document to this file");
    c_compare->add_option("--format", o.format, "text | json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_explain->parsed()) return cmd_explain(o, out);
        if (c_envelope->parsed()) return cmd_envelope(o, maximal, out);
        if (c_axioms->parsed()) return cmd_axioms(o, fixtures_dir, out);
        if (c_surrogate->parsed()) return cmd_surrogate(o, out);
        if (c_demo->parsed()) {
            if (o.data.empty()) o.data = "fixtures/zoo.csv";
            return cmd_demo_zoo(o, out);
        }
        if (c_compare->parsed()) {
            return cmd_oracle_compare(o, ref_path, out);
        }
        err << "error: validation: no command selected\n";
        return 2;
    } catch (const capacity_error& e) {
        err << "error: capacity: " << e.what() << "\n";
        return 3;
    } catch (const contract_error& e) {
        err << "error: discrepancy: " << e.what() << "\n";
        return 4;
    } catch (const io_error& e) {
        err << "error: io: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: validation: " << e.what() << "\n";
        return 2;
    }
}

} // namespace sampex::cli
