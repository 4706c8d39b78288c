#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpo/accessibility.hpp"
#include "cpo/signature.hpp"
#include "cpo/term.hpp"
#include "cpo/type_order.hpp"

namespace cpo {

enum class Mode { Core, Accessible, Full };

const char* mode_name(Mode m);
std::optional<Mode> parse_mode(const std::string& s);

/// Deliberate weakenings of single rule premises. Unsound; for testing
/// the tightness of the definition only.
enum class Relax : int {
    FbSubAddX,
    FbSubDropType,
    FbEqStatAddX,
    FbEqMulDropType,
    FbEqLexDropType,
    AppSubRightAddX,
    AppSubRightDropType,
    AppEqLeftDropType,
    AppEqRightDropType,
    AppLamAddX,
    LamSubDropType,
    LamNeqAddX,
    LamNeqDropTypeGuard,
    FbAppTransitive,
};
constexpr int kRelaxCount = 14;

const char* relax_name(Relax r);
std::optional<Relax> parse_relax(const std::string& s);

struct EngineConfig {
    Mode mode = Mode::Full;
    std::uint32_t relax = 0;
    bool trace = true;
    std::optional<int> max_depth;

    bool has(Relax r) const { return (relax >> static_cast<int>(r)) & 1u; }
    EngineConfig& with(Relax r) {
        relax |= 1u << static_cast<int>(r);
        return *this;
    }
    std::vector<Relax> relax_list() const;
};

/// Gt is ≻_X, GtTyped additionally requires τ(lhs) ≥ τ(rhs); Ge and
/// GeTyped are their reflexive closures. Plus is (≻_X)+ through strict
/// subterms of the lhs.
enum class Rel { Gt, GtTyped, Ge, GeTyped, Plus };

const char* rel_name(Rel r);

struct Goal {
    VarSet x;
    TermPtr lhs, rhs;
    Rel rel = Rel::Gt;
};

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct StatusEntry {
    enum class Kind { Cancel, Dom, StructDom };
    Kind kind = Kind::Dom;
    int i = 0, j = 0;  // 0-based argument indices of lhs and rhs
    TermPtr w;           // StructDom: the term with t_i ⊐_X w
    StructWitness witness;
    DerivPtr proof;      // Dom: t_i ≻ u_j; StructDom: w ≽τ u_j
};

/// One node of a proof. `rule` names the rule; the choice fields record
/// which alternative was taken so that the premises can be recomputed.
struct Derivation {
    Goal goal;
    std::string rule;
    int index = -1;          // argument index (from 0) for subterm rules
    int branch = 0;          // disjunct selector
    std::vector<int> picks;  // per-premise disjunct selectors for (@=)
    TermPtr u, w;            // accessibility chain for (Fb⊳), middle term for Trans
    TermPtr fresh;           // fresh variable for binder rules
    std::vector<DerivPtr> children;
    std::vector<StatusEntry> pairing;
    std::optional<Relax> relax;
};

enum class Verdict { Proved, Failed, Unknown };

const char* verdict_name(Verdict v);

struct Outcome {
    Verdict verdict = Verdict::Failed;
    DerivPtr proof;
};

struct FrontierEntry {
    std::string rule;
    std::string failed;  // first premise that failed, or the side condition
};

struct EngineStats {
    std::uint64_t calls = 0;
    std::uint64_t memo_hits = 0;
    std::uint64_t memo_size = 0;
    int max_depth_seen = 0;
};

/// Common read-only environment of engine sessions and the checker.
struct EngineEnv {
    const Problem* problem;
    const TypeOrder* types;
    const AccContext* acc;
};

/// One decision session with its own memo table.
class Engine {
public:
    Engine(const EngineEnv& env, EngineConfig cfg);
    ~Engine();
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    Outcome prove(const Goal& g);
    Outcome gt(const VarSet& x, const TermPtr& s, const TermPtr& t) { return prove({x, s, t, Rel::Gt}); }
    Outcome gt_typed(const VarSet& x, const TermPtr& s, const TermPtr& t) { return prove({x, s, t, Rel::GtTyped}); }
    Outcome ge(const VarSet& x, const TermPtr& s, const TermPtr& t) { return prove({x, s, t, Rel::Ge}); }
    Outcome ge_typed(const VarSet& x, const TermPtr& s, const TermPtr& t) { return prove({x, s, t, Rel::GeTyped}); }

    /// Rules tried on `g` with their first failing premise.
    std::vector<FrontierEntry> frontier(const Goal& g);

    const EngineStats& stats() const { return stats_; }
    const EngineConfig& config() const { return cfg_; }

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
    EngineConfig cfg_;
    EngineStats stats_;
};

struct CheckResult {
    bool ok = true;
    std::string path;  // child indices from the root, e.g. "0.1"
    std::string reason;
};

/// Replays a derivation: recomputes every node's premises from its goal and
/// recorded choices and compares them with the children.
CheckResult check_derivation(const EngineEnv& env, const DerivPtr& d, const EngineConfig& cfg);

/// Multiset (Dershowitz-Manna) and lexicographic extensions over a
/// caller-supplied element relation, exposed for direct testing.
using ElemRel = std::function<bool(int i, int j)>;
std::optional<std::vector<StatusEntry>> status_compare(const Status& st, int lex_depth,
                                                       const std::vector<TermPtr>& ts,
                                                       const std::vector<TermPtr>& us, const ElemRel& rel);

}  // namespace cpo
