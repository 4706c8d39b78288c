#include "cpo/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "cpo/symbol_order.hpp"

namespace cpo {

const char* search_outcome_name(SearchResult::Outcome o) {
    switch (o) {
        case SearchResult::Outcome::Found: return "found";
        case SearchResult::Outcome::None: return "none";
        case SearchResult::Outcome::SpaceTooLarge: return "space-too-large";
        case SearchResult::Outcome::BudgetExhausted: return "budget-exhausted";
    }
    return "none";
}

std::vector<std::vector<int>> ordered_partitions(int n) {
    std::vector<std::vector<int>> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    for (int k = 1; k <= n; ++k) {
        std::vector<int> v(static_cast<std::size_t>(n), 0);
        for (;;) {
            std::vector<bool> hit(static_cast<std::size_t>(k), false);
            for (int x : v) hit[static_cast<std::size_t>(x)] = true;
            if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) out.push_back(v);
            int i = n - 1;
            while (i >= 0 && ++v[static_cast<std::size_t>(i)] == k) v[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
        }
    }
    return out;
}

std::string Assignment::str() const {
    std::string out;
    if (!free_classes.empty()) {
        out += "prec";
        for (std::size_t i = 0; i < free_classes.size(); ++i) {
            if (i) out += " >";
            for (std::size_t j = 0; j < free_classes[i].size(); ++j) out += (j ? " = " : " ") + free_classes[i][j];
        }
        out += "\n";
    }
    for (const auto& [members, opt] : class_options) {
        std::string names;
        for (std::size_t j = 0; j < members.size(); ++j) names += (j ? ", " : "") + members[j];
        out += names + ": " + (opt.size == SizeClass::Small ? "small" : "big") + ", status " + opt.status.str() + "\n";
    }
    return out;
}

SearchSpace::SearchSpace(const Problem& p, Mode mode) : p_(&p), mode_(mode) {
    for (const auto& f : p.symbols)
        if (!p.prec.mentioned(f.name)) free_.push_back(f.name);
    std::sort(free_.begin(), free_.end());
}

std::vector<std::pair<std::vector<std::string>, std::vector<ClassOption>>> SearchSpace::units(
    const std::vector<int>& levels) const {
    std::vector<std::vector<std::string>> classes;
    std::set<std::string> seen;
    for (const auto& f : p_->symbols) {
        if (!p_->prec.mentioned(f.name) || seen.count(f.name)) continue;
        auto c = p_->prec.class_of(f.name);
        seen.insert(c.begin(), c.end());
        classes.push_back(std::move(c));
    }
    int k = levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end()) + 1;
    for (int l = 0; l < k; ++l) {
        std::vector<std::string> c;
        for (std::size_t i = 0; i < free_.size(); ++i)
            if (levels[i] == l) c.push_back(free_[i]);
        classes.push_back(std::move(c));
    }
    std::sort(classes.begin(), classes.end());

    TypeOrder ord(p_->sorts);
    std::vector<std::pair<std::vector<std::string>, std::vector<ClassOption>>> out;
    for (auto& c : classes) {
        std::vector<const SymbolDecl*> ms;
        for (const auto& n : c) ms.push_back(p_->symbol(n));
        std::vector<ClassOption> opts;
        for (SizeClass size : {SizeClass::Big, SizeClass::Small}) {
            if (size == SizeClass::Small && mode_ != Mode::Full) continue;
            bool ok = true;
            for (const auto* f : ms) {
                if (f->size_pinned && f->size != size) ok = false;
                if (ok && size == SizeClass::Small && !f->small()) {
                    SymbolDecl g = *f;
                    g.size = SizeClass::Small;
                    if (!check_small_conditions(g, ord).empty()) ok = false;
                }
            }
            if (!ok) continue;
            std::vector<Status> statuses;
            const SymbolDecl* pinned = nullptr;
            for (const auto* f : ms)
                if (f->status_pinned) pinned = f;
            if (pinned) {
                statuses.push_back(pinned->status);
            } else {
                statuses.push_back(Status::mul());
                if (std::all_of(ms.begin(), ms.end(), [](const SymbolDecl* f) { return f->arity >= 2; }))
                    statuses.push_back(Status::lex());
            }
            for (const auto& st : statuses) {
                bool consistent = std::all_of(ms.begin(), ms.end(), [&](const SymbolDecl* f) {
                    return !f->status_pinned || f->status == st;
                });
                if (consistent) opts.push_back({size, st});
            }
        }
        out.emplace_back(std::move(c), std::move(opts));
    }
    return out;
}

Problem SearchSpace::apply(const Candidate& c) const {
    Problem q = *p_;
    Precedence prec;
    for (const auto& f : q.symbols) prec.add_symbol(f.name);
    for (const auto& [f, g] : p_->prec.eq_edges()) prec.add_eq(f, g);
    for (const auto& [f, g] : p_->prec.gt_edges()) prec.add_gt(f, g);
    int k = c.levels.empty() ? 0 : *std::max_element(c.levels.begin(), c.levels.end()) + 1;
    std::vector<std::string> reps(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < free_.size(); ++i) {
        auto& r = reps[static_cast<std::size_t>(c.levels[i])];
        if (r.empty())
            r = free_[i];
        else
            prec.add_eq(r, free_[i]);
    }
    for (int l = 0; l + 1 < k; ++l) prec.add_gt(reps[static_cast<std::size_t>(l)], reps[static_cast<std::size_t>(l) + 1]);
    prec.close();
    q.prec = std::move(prec);
    auto us = units(c.levels);
    for (std::size_t u = 0; u < us.size(); ++u) {
        const ClassOption& o = us[u].second.at(static_cast<std::size_t>(c.choices.at(u)));
        for (const auto& n : us[u].first) {
            SymbolDecl* f = q.symbol(n);
            if (!f->size_pinned) f->size = o.size;
            if (!f->status_pinned) f->status = o.status;
        }
    }
    q.reindex();
    return q;
}

Assignment SearchSpace::describe(const Candidate& c) const {
    Assignment a;
    int k = c.levels.empty() ? 0 : *std::max_element(c.levels.begin(), c.levels.end()) + 1;
    a.free_classes.resize(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < free_.size(); ++i) a.free_classes[static_cast<std::size_t>(c.levels[i])].push_back(free_[i]);
    auto us = units(c.levels);
    for (std::size_t u = 0; u < us.size(); ++u)
        a.class_options.emplace_back(us[u].first, us[u].second.at(static_cast<std::size_t>(c.choices.at(u))));
    return a;
}

namespace {

void collect_symbols(const TermPtr& t, std::set<std::string>& out) {
    for_each_subterm(t, [&](const TermPtr& u) {
        if (u->is_fun()) out.insert(u->name());
    });
}

/// Everything about a candidate that the orientation of one rule can see.
std::string projection(const Problem& q, const std::vector<std::string>& syms) {
    std::string key;
    for (const auto& f : syms) {
        const SymbolDecl* d = q.symbol(f);
        key += d->small() ? 's' : 'b';
        key += d->status.str();
        key += '|';
        for (const auto& g : syms) key += q.prec.eq(f, g) ? '=' : q.prec.gt(f, g) ? '>' : '.';
        key += '|';
    }
    return key;
}

}  // namespace

SearchResult search_orientation(const Problem& p, const SearchOptions& opt) {
    SearchResult res;
    SearchSpace space(p, opt.engine.mode);
    int nfree = static_cast<int>(space.free_symbols().size());
    if (nfree > opt.max_free) {
        res.outcome = SearchResult::Outcome::SpaceTooLarge;
        res.message = std::to_string(nfree) + " free symbols exceed the bound of " + std::to_string(opt.max_free);
        return res;
    }
    std::vector<std::vector<std::string>> rule_syms;
    for (const auto& r : p.rules) {
        std::set<std::string> s;
        for (const auto& t : r.chain()) collect_symbols(t, s);
        rule_syms.emplace_back(s.begin(), s.end());
    }
    std::vector<std::unordered_map<std::string, bool>> cache(p.rules.size());
    auto start = std::chrono::steady_clock::now();
    std::optional<Candidate> found;
    bool out_of_time = false;

    space.enumerate([&](const Candidate& c) {
        if (opt.budget_seconds > 0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > opt.budget_seconds) {
            out_of_time = true;
            return false;
        }
        ++res.candidates;
        Problem q = space.apply(c);
        Analysis a(q);
        if (has_errors(validate_problem(a))) return true;
        for (std::size_t i = 0; i < q.rules.size(); ++i) {
            std::string key;
            if (opt.prune) {
                key = projection(q, rule_syms[i]);
                auto it = cache[i].find(key);
                if (it != cache[i].end()) {
                    ++res.cache_hits;
                    if (!it->second) return true;
                    continue;
                }
            }
            bool ok = orient_rule(a, q.rules[i], static_cast<int>(i) + 1, opt.engine).verdict == Verdict::Proved;
            if (opt.prune) cache[i].emplace(key, ok);
            if (!ok) return true;
        }
        found = c;
        return false;
    });

    if (found) {
        Problem q = space.apply(*found);
        {
            Analysis a(q);
            if (!orient_all(a, opt.engine).terminating())
                throw std::logic_error("search witness does not re-orient");
        }
        res.outcome = SearchResult::Outcome::Found;
        res.assignment = space.describe(*found);
        res.solved = std::move(q);
    } else if (out_of_time) {
        res.outcome = SearchResult::Outcome::BudgetExhausted;
        res.message = "budget of " + std::to_string(opt.budget_seconds) + " s exhausted after " +
                      std::to_string(res.candidates) + " candidates";
    } else {
        res.outcome = SearchResult::Outcome::None;
        res.message = "no candidate among " + std::to_string(res.candidates) + " orients every rule";
    }
    return res;
}

}  // namespace cpo
