// Command-line front end over the C API.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpo/cpo.h"

namespace {

enum Exit { kOriented = 0, kNotOriented = 1, kInvalid = 2, kParse = 3 };

struct Owned {
    char* s = nullptr;
    ~Owned() { cpo_string_free(s); }
};

void print_error(const std::string& file) {
    if (cpo_last_error_line() > 0)
        std::fprintf(stderr, "%s:%d:%d: %s\n", file.c_str(), cpo_last_error_line(), cpo_last_error_column(),
                     cpo_last_error());
    else
        std::fprintf(stderr, "%s: %s\n", file.c_str(), cpo_last_error());
}

cpo_problem* load(const std::string& file) {
    cpo_problem* p = nullptr;
    if (cpo_problem_load(file.c_str(), &p) != CPO_OK) {
        print_error(file);
        return nullptr;
    }
    return p;
}

std::string stem(const std::string& file) { return std::filesystem::path(file).stem().string(); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Termination checking with the computability path ordering"};
    app.require_subcommand(1);

    std::string file;
    std::string mode = "full";
    bool json = false, trace = false, no_prune = false, print_witness = false;
    std::vector<std::string> relax;
    int max_depth = -1, max_free = 7;
    double budget = 0;

    auto* check = app.add_subcommand("check", "Orient every rule of a problem");
    check->add_option("FILE", file, "Problem file")->required();
    check->add_option("--mode", mode, "core, accessible or full")
        ->check(CLI::IsMember({"core", "accessible", "full"}));
    check->add_flag("--json", json, "Machine-readable report");
    check->add_flag("--trace", trace, "Print derivations in the text report");
    check->add_option("--relax", relax, "Enable a relaxation flag (unsound; testing only)");
    check->add_option("--max-depth", max_depth, "Cap the recursion depth; capped goals are reported unknown");

    auto* validate = app.add_subcommand("validate", "Report declaration diagnostics");
    validate->add_option("FILE", file, "Problem file")->required();
    validate->add_flag("--json", json, "Machine-readable output");

    auto* classify = app.add_subcommand("classify", "Report which symbols may be declared small");
    classify->add_option("FILE", file, "Problem file")->required();
    classify->add_flag("--json", json, "Machine-readable output");

    auto* search = app.add_subcommand("search", "Search precedence, statuses and size classes");
    search->add_option("FILE", file, "Problem file")->required();
    search->add_option("--max-free", max_free, "Largest number of free symbols")->check(CLI::NonNegativeNumber);
    search->add_option("--budget", budget, "Time budget in seconds (0: unlimited)")->check(CLI::NonNegativeNumber);
    search->add_option("--mode", mode, "core, accessible or full")
        ->check(CLI::IsMember({"core", "accessible", "full"}));
    search->add_flag("--no-prune", no_prune, "Disable rule outcome caching");
    search->add_flag("--print-problem", print_witness, "Print the problem with the witness applied");

    CLI11_PARSE(app, argc, argv);

    cpo_problem* p = load(file);
    if (!p) return kParse;
    std::string name = stem(file);
    int code = kOriented;

    if (check->parsed()) {
        cpo_config* cfg = cpo_config_new();
        cpo_config_set_mode(cfg, mode.c_str());
        cpo_config_set_max_depth(cfg, max_depth);
        for (const auto& r : relax)
            if (cpo_config_add_relax(cfg, r.c_str()) != CPO_OK) {
                std::fprintf(stderr, "%s\n", cpo_last_error());
                cpo_config_free(cfg);
                cpo_problem_free(p);
                return kInvalid;
            }
        cpo_report* rep = nullptr;
        if (cpo_check(p, cfg, &rep) != CPO_OK) {
            print_error(file);
            code = kNotOriented;
        } else {
            Owned out;
            if (json)
                cpo_report_json(rep, name.c_str(), &out.s);
            else
                cpo_report_text(rep, name.c_str(), trace ? 1 : 0, &out.s);
            std::fputs(out.s, stdout);
            int v = cpo_report_verdict(rep);
            code = v == CPO_TERMINATING ? kOriented : v == CPO_INVALID_PROBLEM ? kInvalid : kNotOriented;
            cpo_report_free(rep);
        }
        cpo_config_free(cfg);
    } else if (validate->parsed()) {
        Owned out;
        int valid = 0;
        if (cpo_validate(p, name.c_str(), json ? 1 : 0, &valid, &out.s) != CPO_OK) {
            print_error(file);
            code = kInvalid;
        } else {
            std::fputs(out.s, stdout);
            if (!json && valid) std::puts("valid");
            code = valid ? kOriented : kInvalid;
        }
    } else if (classify->parsed()) {
        Owned out;
        if (cpo_classify(p, name.c_str(), json ? 1 : 0, &out.s) != CPO_OK) {
            print_error(file);
            code = kInvalid;
        } else {
            std::fputs(out.s, stdout);
        }
    } else if (search->parsed()) {
        cpo_config* cfg = cpo_config_new();
        cpo_config_set_mode(cfg, mode.c_str());
        cpo_search_result* res = nullptr;
        cpo_config_set_prune(cfg, no_prune ? 0 : 1);
        cpo_status st = cpo_search(p, cfg, max_free, budget, &res);
        if (st != CPO_OK) {
            std::printf("search: %s\n%s\n", st == CPO_SPACE_TOO_LARGE    ? "space-too-large"
                                            : st == CPO_BUDGET_EXHAUSTED ? "budget-exhausted"
                                                                         : "error",
                        cpo_last_error());
            code = kNotOriented;
        } else {
            Owned out;
            cpo_search_text(res, &out.s);
            std::fputs(out.s, stdout);
            if (print_witness && cpo_search_outcome(res) == CPO_SEARCH_FOUND) {
                Owned prob;
                cpo_search_problem(res, &prob.s);
                std::fputs(prob.s, stdout);
            }
            code = cpo_search_outcome(res) == CPO_SEARCH_FOUND ? kOriented : kNotOriented;
            cpo_search_result_free(res);
        }
        cpo_config_free(cfg);
    }
    cpo_problem_free(p);
    return code;
}
