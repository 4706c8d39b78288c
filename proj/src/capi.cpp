#include "cpo/cpo.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "cpo/io.hpp"
#include "cpo/search.hpp"

struct cpo_problem {
    cpo::Problem problem;
    std::unique_ptr<cpo::Analysis> analysis;
};

struct cpo_config {
    cpo::EngineConfig cfg;
    bool prune = true;
};

struct cpo_report {
    cpo::Report report;
};

struct cpo_search_result {
    cpo::SearchResult result;
};

namespace {

thread_local std::string g_error;
thread_local cpo::SourcePos g_pos;

cpo_status fail(cpo_status s, std::string msg, cpo::SourcePos pos = {}) {
    g_error = std::move(msg);
    g_pos = pos;
    return s;
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
cpo_status guarded(F&& f) {
    try {
        return f();
    } catch (const cpo::Error& e) {
        if (e.code() == cpo::ErrorCode::SpaceTooLarge) return fail(CPO_SPACE_TOO_LARGE, e.what());
        if (e.code() == cpo::ErrorCode::BudgetExhausted) return fail(CPO_BUDGET_EXHAUSTED, e.what());
        return fail(CPO_PARSE_ERROR, std::string(cpo::error_code_name(e.code())) + ": " + e.what(), e.pos());
    } catch (const std::bad_alloc&) {
        return fail(CPO_INTERNAL_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return fail(CPO_INTERNAL_ERROR, e.what());
    }
}

cpo_status emit(char** out, const std::string& s) {
    *out = dup(s);
    return *out ? CPO_OK : fail(CPO_INTERNAL_ERROR, "out of memory");
}

}  // namespace

extern "C" {

const char* cpo_last_error(void) { return g_error.c_str(); }
int cpo_last_error_line(void) { return g_pos.line; }
int cpo_last_error_column(void) { return g_pos.column; }

void cpo_string_free(char* s) { std::free(s); }

cpo_status cpo_problem_parse(const char* text, cpo_problem** out) {
    if (!text || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto p = std::make_unique<cpo_problem>();
        p->problem = cpo::parse_problem(text);
        p->analysis = std::make_unique<cpo::Analysis>(p->problem);
        *out = p.release();
        return CPO_OK;
    });
}

cpo_status cpo_problem_load(const char* path, cpo_problem** out) {
    if (!path || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(CPO_IO_ERROR, std::string("cannot read ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return cpo_problem_parse(ss.str().c_str(), out);
}

void cpo_problem_free(cpo_problem* p) { delete p; }

size_t cpo_problem_rule_count(const cpo_problem* p) { return p ? p->problem.rules.size() : 0; }

cpo_status cpo_problem_print(const cpo_problem* p, char** out) {
    if (!p || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    return guarded([&] { return emit(out, cpo::print_problem(p->problem)); });
}

cpo_config* cpo_config_new(void) { return new (std::nothrow) cpo_config{}; }
void cpo_config_free(cpo_config* c) { delete c; }

cpo_status cpo_config_set_mode(cpo_config* c, const char* mode) {
    if (!c || !mode) return fail(CPO_INVALID_ARGUMENT, "null argument");
    auto m = cpo::parse_mode(mode);
    if (!m) return fail(CPO_INVALID_ARGUMENT, std::string("unknown mode ") + mode);
    c->cfg.mode = *m;
    return CPO_OK;
}

cpo_status cpo_config_add_relax(cpo_config* c, const char* flag) {
    if (!c || !flag) return fail(CPO_INVALID_ARGUMENT, "null argument");
    auto r = cpo::parse_relax(flag);
    if (!r) return fail(CPO_INVALID_ARGUMENT, std::string("unknown relaxation ") + flag);
    c->cfg.with(*r);
    return CPO_OK;
}

cpo_status cpo_config_set_max_depth(cpo_config* c, int depth) {
    if (!c) return fail(CPO_INVALID_ARGUMENT, "null argument");
    if (depth < 0)
        c->cfg.max_depth.reset();
    else
        c->cfg.max_depth = depth;
    return CPO_OK;
}

cpo_status cpo_config_set_trace(cpo_config* c, int trace) {
    if (!c) return fail(CPO_INVALID_ARGUMENT, "null argument");
    c->cfg.trace = trace != 0;
    return CPO_OK;
}

cpo_status cpo_config_set_prune(cpo_config* c, int prune) {
    if (!c) return fail(CPO_INVALID_ARGUMENT, "null argument");
    c->prune = prune != 0;
    return CPO_OK;
}

cpo_status cpo_check(const cpo_problem* p, const cpo_config* config, cpo_report** out) {
    if (!p || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<cpo_report>();
        r->report = cpo::orient_all(*p->analysis, config ? config->cfg : cpo::EngineConfig{});
        *out = r.release();
        return CPO_OK;
    });
}

void cpo_report_free(cpo_report* r) { delete r; }

int cpo_report_verdict(const cpo_report* r) {
    if (!r || !r->report.valid) return CPO_INVALID_PROBLEM;
    return r->report.terminating() ? CPO_TERMINATING : CPO_NOT_PROVED;
}

size_t cpo_report_rule_count(const cpo_report* r) { return r ? r->report.rules.size() : 0; }

int cpo_report_rule_verdict(const cpo_report* r, size_t index) {
    if (!r || index >= r->report.rules.size()) return -1;
    switch (r->report.rules[index].verdict) {
        case cpo::Verdict::Proved: return CPO_RULE_ORIENTED;
        case cpo::Verdict::Failed: return CPO_RULE_FAILED;
        case cpo::Verdict::Unknown: return CPO_RULE_UNKNOWN;
    }
    return -1;
}

double cpo_report_memo_hit_rate(const cpo_report* r) { return r ? r->report.memo_hit_rate() : 0.0; }
double cpo_report_seconds(const cpo_report* r) { return r ? r->report.seconds : 0.0; }

cpo_status cpo_report_json(const cpo_report* r, const char* name, char** out) {
    if (!r || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    return guarded([&] { return emit(out, cpo::render_json(r->report, {name ? name : "", true})); });
}

cpo_status cpo_report_text(const cpo_report* r, const char* name, int trace, char** out) {
    if (!r || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    return guarded([&] { return emit(out, cpo::render_text(r->report, {name ? name : "", trace != 0})); });
}

cpo_status cpo_validate(const cpo_problem* p, const char* name, int json, int* valid, char** out) {
    if (!p || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto ds = cpo::validate_problem(*p->analysis);
        if (valid) *valid = cpo::has_errors(ds) ? 0 : 1;
        return emit(out, json ? cpo::render_diagnostics_json(ds, name ? name : "") : cpo::render_diagnostics_text(ds));
    });
}

cpo_status cpo_classify(const cpo_problem* p, const char* name, int json, char** out) {
    if (!p || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto es = cpo::classify_small_candidates(p->problem, p->analysis->types());
        return emit(out, json ? cpo::render_classification_json(es, name ? name : "")
                              : cpo::render_classification_text(es));
    });
}

cpo_status cpo_search(const cpo_problem* p, const cpo_config* config, int max_free, double budget_seconds,
                      cpo_search_result** out) {
    if (!p || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        cpo::SearchOptions opt;
        if (max_free >= 0) opt.max_free = max_free;
        opt.budget_seconds = budget_seconds > 0 ? budget_seconds : 0;
        if (config) {
            opt.engine = config->cfg;
            opt.prune = config->prune;
        }
        opt.engine.trace = false;
        auto r = std::make_unique<cpo_search_result>();
        r->result = cpo::search_orientation(p->problem, opt);
        using O = cpo::SearchResult::Outcome;
        if (r->result.outcome == O::SpaceTooLarge) return fail(CPO_SPACE_TOO_LARGE, r->result.message);
        if (r->result.outcome == O::BudgetExhausted) return fail(CPO_BUDGET_EXHAUSTED, r->result.message);
        *out = r.release();
        return CPO_OK;
    });
}

void cpo_search_result_free(cpo_search_result* r) { delete r; }

int cpo_search_outcome(const cpo_search_result* r) {
    return r && r->result.outcome == cpo::SearchResult::Outcome::Found ? CPO_SEARCH_FOUND : CPO_SEARCH_NONE;
}

unsigned long long cpo_search_candidates(const cpo_search_result* r) { return r ? r->result.candidates : 0; }

cpo_status cpo_search_text(const cpo_search_result* r, char** out) {
    if (!r || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto& s = r->result;
        std::string text = std::string("search: ") + cpo::search_outcome_name(s.outcome) + "\n";
        if (s.assignment) text += s.assignment->str();
        if (!s.message.empty()) text += s.message + "\n";
        text += "candidates: " + std::to_string(s.candidates) + ", cached rule outcomes reused: " +
                std::to_string(s.cache_hits) + "\n";
        return emit(out, text);
    });
}

cpo_status cpo_search_problem(const cpo_search_result* r, char** out) {
    if (!r || !out) return fail(CPO_INVALID_ARGUMENT, "null argument");
    if (!r->result.solved) return fail(CPO_INVALID_ARGUMENT, "no witness");
    return guarded([&] { return emit(out, cpo::print_problem(*r->result.solved)); });
}

}  // extern "C"
