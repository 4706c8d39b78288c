#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpo/engine.hpp"
#include "cpo/orientation.hpp"
#include "cpo/signature.hpp"

namespace cpo {

struct SearchOptions {
    int max_free = 7;
    double budget_seconds = 0;  // 0: unlimited
    bool prune = true;
    EngineConfig engine;
};

/// One point of the search space. `levels[k]` is the class of the k-th free
/// symbol (0 is the greatest class); `choices[u]` picks the size and status
/// of the u-th adjustable class.
struct Candidate {
    std::vector<int> levels;
    std::vector<int> choices;
};

/// A size/status pair offered to a class.
struct ClassOption {
    SizeClass size = SizeClass::Big;
    Status status;
};

struct Assignment {
    std::vector<std::vector<std::string>> free_classes;  // greatest first
    std::vector<std::pair<std::vector<std::string>, ClassOption>> class_options;
    std::string str() const;
};

struct SearchResult {
    enum class Outcome { Found, None, SpaceTooLarge, BudgetExhausted } outcome = Outcome::None;
    std::optional<Assignment> assignment;
    std::optional<Problem> solved;  // the input with the assignment applied
    std::uint64_t candidates = 0;   // candidates evaluated
    std::uint64_t cache_hits = 0;   // rule outcomes reused
    std::string message;
};

const char* search_outcome_name(SearchResult::Outcome o);

/// The searchable dimensions of a problem.
class SearchSpace {
public:
    explicit SearchSpace(const Problem& p, Mode mode);

    /// Symbols absent from every `prec` declaration, sorted by name.
    const std::vector<std::string>& free_symbols() const { return free_; }

    /// Every candidate, in canonical order: fewer free classes first, then
    /// lexicographically by the class of each free symbol in name order;
    /// within one precedence, class options vary with the first adjustable
    /// class most significant. Stops early when `visit` returns false.
    template <class F>
    void enumerate(F&& visit) const;

    /// The problem with the candidate applied.
    Problem apply(const Candidate& c) const;
    Assignment describe(const Candidate& c) const;

    /// Adjustable classes of a precedence (sorted member lists) with the
    /// options each one offers.
    std::vector<std::pair<std::vector<std::string>, std::vector<ClassOption>>> units(
        const std::vector<int>& levels) const;

private:
    const Problem* p_;
    Mode mode_;
    std::vector<std::string> free_;
};

/// Exhaustive search for a precedence, statuses and size classes orienting
/// every rule. The first success in canonical order is returned.
SearchResult search_orientation(const Problem& p, const SearchOptions& opt);

/// Ordered set partitions of n elements as level vectors, in canonical order.
std::vector<std::vector<int>> ordered_partitions(int n);

// ----------------------------------------------------------------------

template <class F>
void SearchSpace::enumerate(F&& visit) const {
    for (const auto& levels : ordered_partitions(static_cast<int>(free_.size()))) {
        auto us = units(levels);
        std::vector<int> idx(us.size(), 0);
        bool empty = false;
        for (const auto& u : us)
            if (u.second.empty()) empty = true;
        if (empty) continue;
        for (;;) {
            if (!visit(Candidate{levels, idx})) return;
            int k = static_cast<int>(idx.size()) - 1;
            while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == static_cast<int>(us[static_cast<std::size_t>(k)].second.size()))
                idx[static_cast<std::size_t>(k--)] = 0;
            if (k < 0) break;
        }
    }
}

}  // namespace cpo
