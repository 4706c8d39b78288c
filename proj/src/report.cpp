#include <sstream>

#include "cpo/io.hpp"
#include "cpo/printer.hpp"
#include "json.hpp"

namespace cpo {

using Json = nlohmann::ordered_json;

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

const char* rel_symbol(Rel r) {
    switch (r) {
        case Rel::Gt: return ">";
        case Rel::GtTyped: return ">t";
        case Rel::Ge: return ">=";
        case Rel::GeTyped: return ">=t";
        case Rel::Plus: return ">+";
    }
    return ">";
}

std::string goal_text(const Goal& g) {
    std::string out = print_term(g.lhs) + " " + rel_symbol(g.rel);
    if (!g.x.empty()) out += "_" + print_varset(g.x);
    return out + " " + print_term(g.rhs);
}

const char* severity_name(Severity s) { return s == Severity::Error ? "error" : "warning"; }

const char* entry_kind(StatusEntry::Kind k) {
    switch (k) {
        case StatusEntry::Kind::Cancel: return "cancel";
        case StatusEntry::Kind::Dom: return "dominate";
        case StatusEntry::Kind::StructDom: return "structural";
    }
    return "dominate";
}

Json term_list(const std::vector<TermPtr>& ts) {
    Json a = Json::array();
    for (const auto& t : ts) a.push_back(print_term(t));
    return a;
}

Json deriv_json(const DerivPtr& d) {
    Json j;
    j["rule_id"] = d->rule;
    Json g;
    Json xs = Json::array();
    for (const auto& v : d->goal.x) xs.push_back(v->name());
    g["x"] = xs;
    g["lhs"] = print_term(d->goal.lhs);
    g["rhs"] = print_term(d->goal.rhs);
    g["rel"] = rel_name(d->goal.rel);
    j["goal"] = g;
    if (d->index >= 0) j["index"] = d->index + 1;
    if (d->rule == "Trans" && d->w) j["middle"] = print_term(d->w);
    if ((d->rule == "Fb-sub") && d->u && d->w) {
        j["basic"] = print_term(d->u);
        j["accessible"] = print_term(d->w);
    }
    if (d->fresh) j["fresh"] = d->fresh->name();
    if (d->relax) j["relax"] = relax_name(*d->relax);
    if (!d->pairing.empty()) {
        Json st = Json::array();
        for (const auto& e : d->pairing) {
            Json s;
            s["kind"] = entry_kind(e.kind);
            s["i"] = e.i + 1;
            s["j"] = e.j + 1;
            if (e.kind == StatusEntry::Kind::StructDom) {
                s["w"] = print_term(e.w);
                s["witness"] = Json{{"v", print_term(e.witness.v)}, {"xs", term_list(e.witness.xs)}};
            }
            if (e.proof) s["proof"] = deriv_json(e.proof);
            st.push_back(std::move(s));
        }
        j["status"] = std::move(st);
    }
    Json ch = Json::array();
    for (const auto& c : d->children) ch.push_back(deriv_json(c));
    j["children"] = std::move(ch);
    return j;
}

Json diag_json(const Diagnostic& d) {
    Json j;
    j["severity"] = severity_name(d.severity);
    j["module"] = d.module;
    j["code"] = d.code;
    j["subject"] = d.subject;
    j["message"] = d.message;
    j["witness"] = d.witness;
    j["line"] = d.pos.line;
    j["column"] = d.pos.column;
    return j;
}

std::string rule_verdict(const RuleReport& r) { return verdict_name(r.verdict); }

void deriv_text(const DerivPtr& d, int depth, std::ostringstream& out) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    out << pad << "[" << d->rule << "] " << goal_text(d->goal);
    if (d->index >= 0) out << "  (argument " << d->index + 1 << ")";
    if (d->rule == "Fb-sub" && d->u && d->w && d->index >= 0) {
        const TermPtr& ti = d->goal.lhs->args()[static_cast<std::size_t>(d->index)];
        if (!alpha_eq(d->u, ti)) out << "  basic " << print_term(d->u);
        if (!alpha_eq(d->w, d->u)) out << "  accessible " << print_term(d->w);
    }
    if (d->rule == "Trans" && d->w) out << "  through " << print_term(d->w);
    if (d->fresh) out << "  fresh " << d->fresh->name();
    if (d->relax) out << "  relaxed " << relax_name(*d->relax);
    out << "\n";
    for (const auto& e : d->pairing) {
        out << pad << "  status " << entry_kind(e.kind) << " " << e.i + 1 << "/" << e.j + 1;
        if (e.kind == StatusEntry::Kind::StructDom) {
            std::vector<std::string> xs;
            for (const auto& x : e.witness.xs) xs.push_back(x->name());
            out << " struct " << print_term(e.w) << " from " << print_term(e.witness.v);
            if (!xs.empty()) out << " {" << join(xs, ", ") << "}";
        }
        out << "\n";
        if (e.proof) deriv_text(e.proof, depth + 2, out);
    }
    for (const auto& c : d->children) deriv_text(c, depth + 1, out);
}

Json config_json(const EngineConfig& c) {
    Json j;
    j["mode"] = mode_name(c.mode);
    Json rs = Json::array();
    for (auto r : c.relax_list()) rs.push_back(relax_name(r));
    j["relax"] = rs;
    j["max_depth"] = c.max_depth ? Json(*c.max_depth) : Json(nullptr);
    return j;
}

}  // namespace

std::string print_problem(const Problem& p) {
    std::ostringstream out;
    if (!p.sorts.names().empty()) out << "sorts " << join(p.sorts.names(), ", ") << ";\n";
    for (const auto& [a, b] : p.sorts.identifications()) out << "sortprec " << a << " = " << b << ";\n";
    for (const auto& [a, b] : p.sorts.gt_edges()) out << "sortprec " << a << " > " << b << ";\n";
    for (const auto& f : p.symbols) {
        out << "fun " << f.name << " : " << f.type->str() << " arity " << f.arity;
        if (f.status_pinned) out << " status " << f.status.str();
        if (f.size_pinned) out << (f.small() ? " small" : " big");
        if (!f.acc.empty()) {
            std::vector<std::string> is;
            for (int i : f.acc) is.push_back(std::to_string(i));
            out << " acc {" << join(is, ", ") << "}";
        }
        out << ";\n";
    }
    for (const auto& [f, g] : p.prec.eq_edges()) out << "prec " << f << " = " << g << ";\n";
    for (const auto& [f, g] : p.prec.gt_edges()) out << "prec " << f << " > " << g << ";\n";
    for (const auto& v : p.vars) out << "var " << v.name << " : " << v.type->str() << ";\n";
    for (const auto& r : p.rules) {
        out << "rule " << print_term(r.lhs) << " -> " << print_term(r.rhs);
        if (!r.via.empty()) {
            std::vector<std::string> ms;
            for (const auto& m : r.via) ms.push_back(print_term(m));
            out << " via " << join(ms, ", ");
        }
        out << ";\n";
    }
    return out.str();
}

std::string render_json(const Report& r, const RenderOptions& opt) {
    Json j;
    j["problem"] = opt.name;
    j["config"] = config_json(r.config);
    j["verdict"] = r.verdict_text();
    Json rules = Json::array();
    for (const auto& rr : r.rules) {
        Json jr;
        jr["index"] = rr.index;
        jr["lhs"] = print_term(rr.lhs);
        jr["rhs"] = print_term(rr.rhs);
        jr["verdict"] = rule_verdict(rr);
        jr["failed_link"] = rr.failed_link >= 0 ? Json(rr.failed_link + 1) : Json(nullptr);
        Json links = Json::array();
        for (const auto& l : rr.links) {
            Json jl;
            jl["from"] = print_term(l.from);
            jl["to"] = print_term(l.to);
            jl["verdict"] = verdict_name(l.verdict);
            if (l.derivation) jl["derivation"] = deriv_json(l.derivation);
            Json fr = Json::array();
            for (const auto& f : l.frontier) fr.push_back(Json{{"rule_id", f.rule}, {"failed", f.failed}});
            jl["frontier"] = fr;
            links.push_back(std::move(jl));
        }
        jr["links"] = std::move(links);
        rules.push_back(std::move(jr));
    }
    j["rules"] = std::move(rules);
    Json ds = Json::array();
    for (const auto& d : r.diagnostics) ds.push_back(diag_json(d));
    j["diagnostics"] = std::move(ds);
    Json st;
    st["calls"] = r.totals.calls;
    st["memo_hits"] = r.totals.memo_hits;
    st["memo_entries"] = r.totals.memo_size;
    st["max_depth"] = r.totals.max_depth_seen;
    j["stats"] = st;
    return j.dump(2) + "\n";
}

std::string render_text(const Report& r, const RenderOptions& opt) {
    std::ostringstream out;
    if (!opt.name.empty()) out << "problem " << opt.name << "\n";
    out << "mode " << mode_name(r.config.mode);
    auto relax = r.config.relax_list();
    if (!relax.empty()) {
        std::vector<std::string> ns;
        for (auto x : relax) ns.push_back(relax_name(x));
        out << ", relaxed: " << join(ns, ", ") << " (unsound)";
    }
    out << "\n";
    out << render_diagnostics_text(r.diagnostics);
    for (const auto& rr : r.rules) {
        out << "rule " << rr.index << ": " << print_term(rr.lhs) << " -> " << print_term(rr.rhs) << "  "
            << rule_verdict(rr);
        if (rr.failed_link >= 0 && rr.links.size() > 1) out << " at link " << rr.failed_link + 1;
        out << "\n";
        for (std::size_t k = 0; k < rr.links.size(); ++k) {
            const auto& l = rr.links[k];
            if (rr.links.size() > 1 || l.verdict != Verdict::Proved || opt.trace)
                out << "  link " << k + 1 << ": " << print_term(l.from) << " >t " << print_term(l.to) << "  "
                    << verdict_name(l.verdict) << "\n";
            if (opt.trace && l.derivation) deriv_text(l.derivation, 2, out);
            for (const auto& f : l.frontier) out << "    tried " << f.rule << ": " << f.failed << "\n";
        }
    }
    out << "verdict: " << r.verdict_text() << "\n";
    out << "stats: " << r.totals.calls << " calls, " << r.totals.memo_hits << " memo hits\n";
    return out.str();
}

std::string render_diagnostics_text(const std::vector<Diagnostic>& ds) {
    std::ostringstream out;
    for (const auto& d : ds) {
        out << severity_name(d.severity);
        if (d.pos.line) out << " at " << d.pos.line << ":" << d.pos.column;
        out << " [" << d.code << "] " << d.subject << ": " << d.message;
        if (!d.witness.empty()) out << " (witness " << d.witness << ")";
        out << "\n";
    }
    return out.str();
}

std::string render_diagnostics_json(const std::vector<Diagnostic>& ds, const std::string& name) {
    Json j;
    j["problem"] = name;
    j["valid"] = !has_errors(ds);
    Json a = Json::array();
    for (const auto& d : ds) a.push_back(diag_json(d));
    j["diagnostics"] = a;
    return j.dump(2) + "\n";
}

std::string render_classification_text(const std::vector<Eligibility>& es) {
    std::ostringstream out;
    for (const auto& e : es) {
        out << e.symbol << ": " << (e.eligible ? "may be small" : "must be big");
        if (!e.conditions.empty()) out << " [" << join(e.conditions, ", ") << "]";
        out << "\n";
        for (const auto& d : e.reasons) out << "  " << d.code << ": " << d.message << "\n";
    }
    return out.str();
}

std::string render_classification_json(const std::vector<Eligibility>& es, const std::string& name) {
    Json j;
    j["problem"] = name;
    Json a = Json::array();
    for (const auto& e : es) {
        Json x;
        x["symbol"] = e.symbol;
        x["eligible"] = e.eligible;
        x["conditions"] = e.conditions;
        Json rs = Json::array();
        for (const auto& d : e.reasons) rs.push_back(diag_json(d));
        x["reasons"] = rs;
        a.push_back(std::move(x));
    }
    j["symbols"] = a;
    return j.dump(2) + "\n";
}

}  // namespace cpo
