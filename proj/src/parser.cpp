#include <cctype>
#include <map>
#include <memory>
#include <set>

#include "cpo/io.hpp"

namespace cpo {

namespace {

enum class Tok { Ident, Int, Arrow, Semi, Colon, Comma, LParen, RParen, LBrace, RBrace, Gt, Eq, Lambda, Dot, End };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
    bool glued = false;  // no whitespace before it
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto adv = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') adv(1);
            continue;
        }
        SourcePos pos{line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
                ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), pos});
            adv(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j - i > 6) throw Error(ErrorCode::Syntax, "integer too large", pos);
            out.push_back({Tok::Int, s.substr(i, j - i), pos});
            adv(j - i);
            continue;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", pos});
            adv(2);
            continue;
        }
        Tok k;
        switch (c) {
            case ';': k = Tok::Semi; break;
            case ':': k = Tok::Colon; break;
            case ',': k = Tok::Comma; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case '>': k = Tok::Gt; break;
            case '=': k = Tok::Eq; break;
            case '\\': k = Tok::Lambda; break;
            case '.': k = Tok::Dot; break;
            case '%': throw Error(ErrorCode::Syntax, "the '%' prefix is reserved for generated names", pos);
            default: throw Error(ErrorCode::Syntax, std::string("unexpected character '") + c + "'", pos);
        }
        bool glued = i > 0 && !std::isspace(static_cast<unsigned char>(s[i - 1]));
        out.push_back({k, std::string(1, c), pos, glued});
        adv(1);
    }
    out.push_back({Tok::End, "end of input", {line, col}});
    return out;
}

// Raw syntax, resolved once every declaration is known.

struct RType {
    std::string sort;
    std::shared_ptr<RType> dom, cod;
    SourcePos pos;
};
using RTypePtr = std::shared_ptr<RType>;

struct RTerm;
using RTermPtr = std::shared_ptr<RTerm>;
struct RTerm {
    enum Kind { Name, Call, App, Lam } kind;
    std::string name;
    std::vector<RTermPtr> args;  // Call args; App fn,arg; Lam body
    SourcePos pos;
};

struct RFun {
    std::vector<std::pair<std::string, SourcePos>> names;
    RTypePtr type;
    int arity = 0;
    std::optional<Status> status;
    std::optional<SizeClass> size;
    std::vector<int> acc;
    SourcePos pos;
};

struct RRule {
    RTermPtr lhs, rhs;
    std::vector<RTermPtr> via;
    SourcePos pos;
};

struct RChain {
    std::vector<std::pair<std::string, SourcePos>> names;
    std::vector<Tok> ops;
    SourcePos pos;
};

struct RProblem {
    std::vector<std::pair<std::string, SourcePos>> sorts;
    std::vector<RChain> sortprecs;
    std::vector<RFun> funs;
    std::vector<RChain> precs;
    std::vector<std::pair<std::vector<std::pair<std::string, SourcePos>>, RTypePtr>> vars;
    std::vector<RRule> rules;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    RProblem run() {
        RProblem p;
        while (peek().kind != Tok::End) {
            const Token& kw = expect(Tok::Ident, "a declaration keyword");
            if (kw.text == "sorts" || kw.text == "sort") {
                for (auto& n : names()) p.sorts.push_back(n);
            } else if (kw.text == "sortprec") {
                p.sortprecs.push_back(chain(kw.pos));
            } else if (kw.text == "fun") {
                p.funs.push_back(fun(kw.pos));
                continue;
            } else if (kw.text == "prec") {
                p.precs.push_back(chain(kw.pos));
            } else if (kw.text == "var") {
                auto ns = names();
                expect(Tok::Colon, "':'");
                p.vars.emplace_back(std::move(ns), type());
            } else if (kw.text == "rule") {
                RRule r;
                r.pos = kw.pos;
                r.lhs = term();
                expect(Tok::Arrow, "'->'");
                r.rhs = term();
                if (accept_word("via")) {
                    r.via.push_back(term());
                    while (accept(Tok::Comma)) r.via.push_back(term());
                }
                p.rules.push_back(std::move(r));
            } else {
                throw Error(ErrorCode::Syntax, "unknown declaration '" + kw.text + "'", kw.pos);
            }
            expect(Tok::Semi, "';'");
        }
        return p;
    }

private:
    const Token& peek(std::size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
    const Token& next() {
        const Token& t = t_[i_];
        if (i_ + 1 < t_.size()) ++i_;
        return t;
    }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        next();
        return true;
    }
    bool accept_word(const char* w) {
        if (peek().kind != Tok::Ident || peek().text != w) return false;
        next();
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k)
            throw Error(ErrorCode::Syntax, std::string("expected ") + what + ", found '" + peek().text + "'",
                        peek().pos);
        return next();
    }
    int integer() {
        const Token& t = expect(Tok::Int, "a number");
        return std::stoi(t.text);
    }

    /// Identifiers; numerals are accepted as symbol names.
    const Token& name(const char* what) {
        if (peek().kind == Tok::Int) return next();
        return expect(Tok::Ident, what);
    }

    std::vector<std::pair<std::string, SourcePos>> names() {
        std::vector<std::pair<std::string, SourcePos>> out;
        do {
            const Token& n = name("a name");
            out.emplace_back(n.text, n.pos);
        } while (accept(Tok::Comma));
        return out;
    }

    RChain chain(SourcePos pos) {
        RChain c;
        c.pos = pos;
        const Token& first = name("a name");
        c.names.emplace_back(first.text, first.pos);
        do {
            Tok op = peek().kind;
            if (op != Tok::Gt && op != Tok::Eq)
                throw Error(ErrorCode::Syntax, "expected '>' or '=', found '" + peek().text + "'", peek().pos);
            next();
            const Token& n = name("a name");
            c.ops.push_back(op);
            c.names.emplace_back(n.text, n.pos);
        } while (peek().kind == Tok::Gt || peek().kind == Tok::Eq);
        return c;
    }

    RTypePtr type() {
        RTypePtr a = type_atom();
        if (!accept(Tok::Arrow)) return a;
        auto t = std::make_shared<RType>();
        t->pos = a->pos;
        t->dom = a;
        t->cod = type();
        return t;
    }

    RTypePtr type_atom() {
        if (peek().kind == Tok::LParen) {
            next();
            RTypePtr t = type();
            expect(Tok::RParen, "')'");
            return t;
        }
        const Token& n = expect(Tok::Ident, "a sort");
        auto t = std::make_shared<RType>();
        t->sort = n.text;
        t->pos = n.pos;
        return t;
    }

    RFun fun(SourcePos pos) {
        RFun f;
        f.pos = pos;
        f.names = names();
        expect(Tok::Colon, "':'");
        f.type = type();
        bool arity = false;
        while (!accept(Tok::Semi)) {
            const Token& w = expect(Tok::Ident, "a symbol attribute or ';'");
            if (w.text == "arity" && !arity) {
                f.arity = integer();
                arity = true;
            } else if (w.text == "status" && !f.status) {
                const Token& s = expect(Tok::Ident, "'mul' or 'lex'");
                if (s.text == "mul") {
                    f.status = Status::mul();
                } else if (s.text == "lex") {
                    int n = 0;
                    if (accept(Tok::LParen)) {
                        n = integer();
                        if (n < 1) throw Error(ErrorCode::InvalidDeclaration, "lex depth must be positive", s.pos);
                        expect(Tok::RParen, "')'");
                    }
                    f.status = Status::lex(n);
                } else {
                    throw Error(ErrorCode::Syntax, "unknown status '" + s.text + "'", s.pos);
                }
            } else if ((w.text == "small" || w.text == "big") && !f.size) {
                f.size = w.text == "small" ? SizeClass::Small : SizeClass::Big;
            } else if (w.text == "acc" && f.acc.empty()) {
                expect(Tok::LBrace, "'{'");
                if (!accept(Tok::RBrace)) {
                    do {
                        int k = integer();
                        if (k < 1) throw Error(ErrorCode::InvalidDeclaration, "accessible indices start at 1", w.pos);
                        f.acc.push_back(k);
                    } while (accept(Tok::Comma));
                    expect(Tok::RBrace, "'}'");
                }
            } else {
                throw Error(ErrorCode::Syntax, "unexpected attribute '" + w.text + "'", w.pos);
            }
        }
        return f;
    }

    RTermPtr term() {
        if (peek().kind == Tok::Lambda) return lambda();
        RTermPtr t = atom();
        while (starts_atom() || peek().kind == Tok::Lambda) {
            RTermPtr a = peek().kind == Tok::Lambda ? lambda() : atom();
            auto app = std::make_shared<RTerm>();
            app->kind = RTerm::App;
            app->pos = t->pos;
            app->args = {t, a};
            t = app;
        }
        return t;
    }

    bool starts_atom() const {
        Tok k = peek().kind;
        if (k == Tok::LParen || k == Tok::Int) return true;
        return k == Tok::Ident && peek().text != "via";
    }

    RTermPtr lambda() {
        SourcePos pos = next().pos;
        std::vector<std::pair<std::string, SourcePos>> binders;
        do {
            const Token& n = expect(Tok::Ident, "a bound variable");
            binders.emplace_back(n.text, n.pos);
        } while (peek().kind == Tok::Ident);
        expect(Tok::Dot, "'.'");
        RTermPtr body = term();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
            auto l = std::make_shared<RTerm>();
            l->kind = RTerm::Lam;
            l->name = it->first;
            l->pos = it == binders.rend() - 1 ? pos : it->second;
            l->args = {body};
            body = l;
        }
        return body;
    }

    RTermPtr atom() {
        if (accept(Tok::LParen)) {
            RTermPtr t = term();
            expect(Tok::RParen, "')'");
            return t;
        }
        const Token& n = name("a term");
        auto t = std::make_shared<RTerm>();
        t->kind = RTerm::Name;
        t->name = n.text;
        t->pos = n.pos;
        if (peek().kind == Tok::LParen && peek().glued) {
            next();
            t->kind = RTerm::Call;
            if (peek().kind != Tok::RParen) {
                t->args.push_back(term());
                while (accept(Tok::Comma)) t->args.push_back(term());
            }
            expect(Tok::RParen, "')'");
        }
        return t;
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
};

class Elaborator {
public:
    Problem run(const RProblem& r) {
        for (const auto& [n, pos] : r.sorts) {
            if (p_.sorts.has_sort(n)) throw Error(ErrorCode::Duplicate, "sort " + n + " declared twice", pos);
            p_.sorts.add_sort(n);
        }
        for (const auto& c : r.sortprecs) {
            for (const auto& [n, pos] : c.names)
                if (!p_.sorts.has_sort(n)) throw Error(ErrorCode::UnknownSort, "unknown sort " + n, pos);
            for (std::size_t k = 0; k < c.ops.size(); ++k)
                if (c.ops[k] == Tok::Eq) p_.sorts.identify(c.names[k].first, c.names[k + 1].first);
        }
        for (const auto& c : r.sortprecs)
            for (std::size_t k = 0; k < c.ops.size(); ++k)
                if (c.ops[k] == Tok::Gt) p_.sorts.add_gt(c.names[k].first, c.names[k + 1].first);
        wrap(c_pos(r.sortprecs), [&] { p_.sorts.close(); });

        for (const auto& f : r.funs) {
            TypePtr ty = type(f.type);
            if (f.arity > ty->arity())
                throw Error(ErrorCode::ArityMismatch,
                            "arity " + std::to_string(f.arity) + " exceeds the " + std::to_string(ty->arity()) +
                                " arguments of type " + ty->str(),
                            f.pos);
            for (const auto& [n, pos] : f.names) {
                if (taken_.count(n)) throw Error(ErrorCode::Duplicate, "name " + n + " declared twice", pos);
                taken_.insert(n);
                SymbolDecl d;
                d.name = n;
                d.type = ty;
                d.arity = f.arity;
                d.status = f.status.value_or(Status::mul());
                d.status_pinned = f.status.has_value();
                d.size = f.size.value_or(SizeClass::Big);
                d.size_pinned = f.size.has_value();
                d.acc = f.acc;
                std::sort(d.acc.begin(), d.acc.end());
                d.acc.erase(std::unique(d.acc.begin(), d.acc.end()), d.acc.end());
                d.pos = pos;
                if (d.status.is_lex() && d.status.n > d.arity)
                    throw Error(ErrorCode::InvalidDeclaration, "lex depth of " + n + " exceeds its arity", f.pos);
                p_.symbols.push_back(std::move(d));
                p_.prec.add_symbol(n);
            }
        }
        p_.reindex();
        for (const auto& c : r.precs) {
            for (const auto& [n, pos] : c.names)
                if (!p_.symbol(n)) throw Error(ErrorCode::UnknownSymbol, "unknown symbol " + n, pos);
            for (std::size_t k = 0; k < c.ops.size(); ++k) {
                if (c.ops[k] == Tok::Eq)
                    p_.prec.add_eq(c.names[k].first, c.names[k + 1].first);
                else
                    p_.prec.add_gt(c.names[k].first, c.names[k + 1].first);
            }
        }
        wrap(c_pos(r.precs), [&] { p_.prec.close(); });

        for (const auto& [ns, rt] : r.vars) {
            TypePtr ty = type(rt);
            for (const auto& [n, pos] : ns) {
                if (taken_.count(n)) throw Error(ErrorCode::Duplicate, "name " + n + " declared twice", pos);
                taken_.insert(n);
                p_.vars.push_back({n, ty});
                vars_[n] = ty;
            }
        }
        for (const auto& rr : r.rules) {
            Rule rule;
            rule.pos = rr.pos;
            std::vector<RTermPtr> all{rr.lhs};
            all.insert(all.end(), rr.via.begin(), rr.via.end());
            all.push_back(rr.rhs);
            check_shadowing(all);
            rule.lhs = term(rr.lhs);
            rule.rhs = term(rr.rhs);
            for (const auto& v : rr.via) rule.via.push_back(term(v));
            p_.rules.push_back(std::move(rule));
        }
        return std::move(p_);
    }

private:
    static SourcePos c_pos(const std::vector<RChain>& cs) { return cs.empty() ? SourcePos{} : cs.front().pos; }

    template <class F>
    static void wrap(SourcePos pos, F&& f) {
        try {
            f();
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), pos);
        }
    }

    TypePtr type(const RTypePtr& t) {
        if (t->dom) return Type::arrow(type(t->dom), type(t->cod));
        if (!p_.sorts.has_sort(t->sort)) throw Error(ErrorCode::UnknownSort, "unknown sort " + t->sort, t->pos);
        return Type::sort(p_.sorts.canonical(t->sort));
    }

    void collect_free(const RTermPtr& t, std::set<std::string>& bound, std::set<std::string>& free) const {
        switch (t->kind) {
            case RTerm::Name:
                if (!bound.count(t->name)) free.insert(t->name);
                break;
            case RTerm::Call:
            case RTerm::App:
                for (const auto& a : t->args) collect_free(a, bound, free);
                break;
            case RTerm::Lam: {
                bool added = bound.insert(t->name).second;
                collect_free(t->args[0], bound, free);
                if (added) bound.erase(t->name);
                break;
            }
        }
    }

    void binders(const RTermPtr& t, std::vector<const RTerm*>& out) const {
        if (t->kind == RTerm::Lam) out.push_back(t.get());
        for (const auto& a : t->args) binders(a, out);
    }

    void nested(const RTermPtr& t, std::set<std::string>& scope) const {
        if (t->kind == RTerm::Lam) {
            if (scope.count(t->name))
                throw Error(ErrorCode::Shadowing, "bound variable " + t->name + " is rebound", t->pos);
            scope.insert(t->name);
            nested(t->args[0], scope);
            scope.erase(t->name);
            return;
        }
        for (const auto& a : t->args) nested(a, scope);
    }

    void check_shadowing(const std::vector<RTermPtr>& terms) const {
        std::set<std::string> free;
        for (const auto& t : terms) {
            std::set<std::string> bound, scope;
            collect_free(t, bound, free);
            nested(t, scope);
        }
        for (const auto& t : terms) {
            std::vector<const RTerm*> bs;
            binders(t, bs);
            for (const RTerm* b : bs)
                if (free.count(b->name))
                    throw Error(ErrorCode::Shadowing,
                                "bound variable " + b->name + " also occurs free in the rule", b->pos);
        }
    }

    TermPtr term(const RTermPtr& t) {
        try {
            return term_at(t);
        } catch (const Error& e) {
            if (e.pos().line) throw;
            throw Error(e.code(), e.what(), t->pos);
        }
    }

    TermPtr term_at(const RTermPtr& t) {
        switch (t->kind) {
            case RTerm::Name: {
                if (auto it = vars_.find(t->name); it != vars_.end()) return Term::var(t->name, it->second);
                const SymbolDecl* f = p_.symbol(t->name);
                if (!f) throw Error(ErrorCode::UnknownVariable, "unknown variable or symbol " + t->name, t->pos);
                if (f->arity != 0)
                    throw Error(ErrorCode::ArityMismatch,
                                f->name + " expects " + std::to_string(f->arity) + " arguments", t->pos);
                return make_fun(*f, {});
            }
            case RTerm::Call: {
                const SymbolDecl* f = p_.symbol(t->name);
                if (!f) {
                    if (auto it = vars_.find(t->name); it != vars_.end()) {
                        // `y (t)` is application to a parenthesised argument.
                        if (t->args.size() != 1)
                            throw Error(ErrorCode::Syntax, "variable " + t->name + " takes arguments by application",
                                        t->pos);
                        try {
                            return Term::app(Term::var(t->name, it->second), term_at(t->args[0]));
                        } catch (const Error& e) {
                            if (e.code() == ErrorCode::Syntax) throw;
                            throw Error(e.code(), e.what(), t->args[0]->pos);
                        }
                    }
                    throw Error(ErrorCode::UnknownSymbol, "unknown symbol " + t->name, t->pos);
                }
                std::vector<TermPtr> args;
                for (const auto& a : t->args) args.push_back(term_at(a));
                if (static_cast<int>(args.size()) != f->arity)
                    throw Error(ErrorCode::ArityMismatch,
                                f->name + " expects " + std::to_string(f->arity) + " arguments, got " +
                                    std::to_string(args.size()),
                                t->pos);
                try {
                    return make_fun(*f, std::move(args));
                } catch (const Error& e) {
                    throw Error(e.code(), e.what(), t->pos);
                }
            }
            case RTerm::App: {
                TermPtr fn = term_at(t->args[0]);
                TermPtr arg = term_at(t->args[1]);
                try {
                    return Term::app(fn, arg);
                } catch (const Error& e) {
                    throw Error(e.code(), e.what(), t->args[1]->pos);
                }
            }
            case RTerm::Lam: {
                auto it = vars_.find(t->name);
                if (it == vars_.end())
                    throw Error(ErrorCode::UnknownVariable, "bound variable " + t->name + " is not declared", t->pos);
                TermPtr x = Term::var(t->name, it->second);
                return Term::lam(x, term_at(t->args[0]));
            }
        }
        return nullptr;
    }

    Problem p_;
    std::set<std::string> taken_;
    std::map<std::string, TypePtr> vars_;
};

}  // namespace

Problem parse_problem(const std::string& text) {
    Parser parser(lex(text));
    RProblem raw = parser.run();
    return Elaborator().run(raw);
}

}  // namespace cpo
