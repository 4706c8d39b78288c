#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cpo/io.hpp"
#include "cpo/orientation.hpp"
#include "cpo/printer.hpp"

namespace cpo::test {

inline std::filesystem::path data_dir() { return CPO_TEST_DATA; }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Problem load(const std::string& rel) { return parse_problem(read_file(data_dir() / rel)); }

/// A parsed problem with its analysis, kept at a stable address.
struct Loaded {
    Problem problem;
    std::unique_ptr<Analysis> analysis;

    explicit Loaded(Problem p) : problem(std::move(p)), analysis(std::make_unique<Analysis>(problem)) {}
    Loaded(const Loaded&) = delete;
    Loaded& operator=(const Loaded&) = delete;

    EngineEnv env() const { return analysis->env(); }
    const Rule& rule(std::size_t i) const { return problem.rules.at(i); }
};

inline std::unique_ptr<Loaded> load_analysed(const std::string& rel) { return std::make_unique<Loaded>(load(rel)); }
inline std::unique_ptr<Loaded> parse_analysed(const std::string& text) {
    return std::make_unique<Loaded>(parse_problem(text));
}

/// Terms written in the concrete syntax against a signature text: each
/// term is parsed as the lhs of a dummy rule appended after any rules
/// the signature already has.
inline std::vector<TermPtr> terms_in(const std::string& signature, const std::vector<std::string>& ts) {
    std::string text = signature;
    for (const auto& t : ts) text += "\nrule " + t + " -> " + t + ";";
    Problem p = parse_problem(text);
    std::vector<TermPtr> out;
    for (std::size_t i = p.rules.size() - ts.size(); i < p.rules.size(); ++i) out.push_back(p.rules[i].lhs);
    return out;
}

/// A type written in the concrete syntax over `decls` (sort declarations).
inline TypePtr type_in(const std::string& decls, const std::string& type) {
    Problem p = parse_problem(decls + "\nvar type_probe_ : " + type + ";");
    return p.vars.back().type;
}

inline EngineConfig config_with(std::initializer_list<Relax> rs, Mode m = Mode::Full) {
    EngineConfig c;
    c.mode = m;
    for (Relax r : rs) c.with(r);
    return c;
}

/// Rule names in a derivation, pre-order.
inline void collect_rules(const DerivPtr& d, std::vector<std::string>& out) {
    if (!d) return;
    out.push_back(d->rule);
    for (const auto& c : d->children) collect_rules(c, out);
    for (const auto& e : d->pairing) collect_rules(e.proof, out);
}

inline bool uses_relax(const DerivPtr& d, Relax r) {
    if (!d) return false;
    if (d->relax && *d->relax == r) return true;
    for (const auto& c : d->children)
        if (uses_relax(c, r)) return true;
    for (const auto& e : d->pairing)
        if (uses_relax(e.proof, r)) return true;
    return false;
}

/// Structural equality of two problems: declarations, orders and rules
/// (terms up to alpha-equivalence). Returns the first difference found.
inline std::string problem_diff(const Problem& a, const Problem& b) {
    if (a.sorts.names() != b.sorts.names()) return "sort names";
    for (const auto& x : a.sorts.names())
        for (const auto& y : a.sorts.names()) {
            if (a.sorts.gt(x, y) != b.sorts.gt(x, y)) return "sort order " + x + " " + y;
            if ((a.sorts.canonical(x) == a.sorts.canonical(y)) != (b.sorts.canonical(x) == b.sorts.canonical(y)))
                return "sort identification " + x + " " + y;
        }
    if (a.symbols.size() != b.symbols.size()) return "symbol count";
    for (std::size_t i = 0; i < a.symbols.size(); ++i) {
        const auto &f = a.symbols[i], &g = b.symbols[i];
        if (f.name != g.name || !type_eq(f.type, g.type) || f.arity != g.arity || !(f.status == g.status) ||
            f.size != g.size || f.acc != g.acc)
            return "symbol " + f.name;
    }
    for (const auto& f : a.symbols)
        for (const auto& g : a.symbols) {
            if (a.prec.gt(f.name, g.name) != b.prec.gt(f.name, g.name)) return "prec " + f.name + " > " + g.name;
            if (a.prec.eq(f.name, g.name) != b.prec.eq(f.name, g.name)) return "prec " + f.name + " = " + g.name;
        }
    if (a.vars.size() != b.vars.size()) return "variable count";
    for (std::size_t i = 0; i < a.vars.size(); ++i)
        if (a.vars[i].name != b.vars[i].name || !type_eq(a.vars[i].type, b.vars[i].type))
            return "variable " + a.vars[i].name;
    if (a.rules.size() != b.rules.size()) return "rule count";
    for (std::size_t i = 0; i < a.rules.size(); ++i) {
        auto ca = a.rules[i].chain(), cb = b.rules[i].chain();
        if (ca.size() != cb.size()) return "rule " + std::to_string(i + 1) + " chain length";
        for (std::size_t k = 0; k < ca.size(); ++k)
            if (!alpha_eq(ca[k], cb[k])) return "rule " + std::to_string(i + 1) + " term " + std::to_string(k);
    }
    return {};
}

}  // namespace cpo::test
