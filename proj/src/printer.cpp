#include "cpo/printer.hpp"

#include <algorithm>
#include <set>

namespace cpo {

namespace {

enum class Ctx { Top, Fn, Arg };

struct Printer {
    std::set<std::string> taken;
    std::vector<std::string> stack;

    std::string bind_name(const std::string& hint) {
        std::string base = hint.empty() ? "x" : hint;
        std::string n = base;
        for (int k = 1; taken.count(n) || std::find(stack.begin(), stack.end(), n) != stack.end(); ++k)
            n = base + std::to_string(k);
        return n;
    }

    void go(const TermPtr& t, Ctx ctx, std::string& out) {
        switch (t->kind()) {
            case TermKind::Var: out += t->name(); return;
            case TermKind::BVar: {
                int i = t->index();
                if (i < static_cast<int>(stack.size()))
                    out += stack[stack.size() - 1 - static_cast<std::size_t>(i)];
                else
                    out += "#" + std::to_string(i);
                return;
            }
            case TermKind::Fun: {
                out += t->name();
                if (t->args().empty()) return;
                out += '(';
                for (std::size_t i = 0; i < t->args().size(); ++i) {
                    if (i) out += ", ";
                    go(t->args()[i], Ctx::Top, out);
                }
                out += ')';
                return;
            }
            case TermKind::App: {
                bool paren = ctx == Ctx::Arg;
                if (paren) out += '(';
                go(t->fn(), Ctx::Fn, out);
                out += ' ';
                go(t->arg(), Ctx::Arg, out);
                if (paren) out += ')';
                return;
            }
            case TermKind::Lam: {
                bool paren = ctx != Ctx::Top;
                if (paren) out += '(';
                std::string n = bind_name(t->name());
                out += '\\' + n + ". ";
                stack.push_back(n);
                go(t->body(), Ctx::Top, out);
                stack.pop_back();
                if (paren) out += ')';
                return;
            }
        }
    }
};

}  // namespace

std::string print_term(const TermPtr& t) {
    Printer p;
    for (const auto& v : free_vars(t)) p.taken.insert(v->name());
    std::string out;
    p.go(t, Ctx::Top, out);
    return out;
}

std::string print_varset(const VarSet& x) {
    std::string out = "{";
    bool first = true;
    for (const auto& v : x) {
        if (!first) out += ", ";
        first = false;
        out += v->name();
    }
    return out + "}";
}

}  // namespace cpo
