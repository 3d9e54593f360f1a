// ksforge: construct and verify GH matrices, S-Hadamard matrices, and
// Kochen-Specker pairs, with exact cyclotomic arithmetic end to end.
//
// Exit codes: 0 success / all checks pass, 1 verification failure (or an
// inconclusive search/coloring result), 2 usage or input error, 3 no recipe
// for the requested order.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "ksforge/ghmat.hpp"
#include "ksforge/ksset.hpp"
#include "ksforge/serialize.hpp"
#include "ksforge/shadamard.hpp"

namespace {

using nlohmann::json;
using namespace ksforge;

constexpr int exit_ok = 0;
constexpr int exit_verify_fail = 1;
constexpr int exit_usage = 2;
constexpr int exit_no_recipe = 3;

struct RunConfig {
    std::uint64_t budget = 10'000'000;
    std::uint32_t max_side = 20;
    std::string format = "json";
    std::string out_path;
    bool seedless = false;  // reserved; search is deterministic with or without it
    bool verbose = false;

    SearchLimits limits() const { return SearchLimits{max_side, budget}; }
};

void note(const RunConfig& cfg, const std::string& message) {
    if (cfg.verbose) std::cerr << "ksforge: " << message << "\n";
}

// stdout carries one JSON document per invocation (or a text rendering);
// --out receives the importable artifact when the command produces one.
void emit(const RunConfig& cfg, const json& doc, const std::string& text) {
    if (cfg.format == "json")
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

void write_artifact(const RunConfig& cfg, const json& artifact) {
    if (!cfg.out_path.empty()) save_json_file(cfg.out_path, artifact);
}

std::string pass_text(bool pass) { return pass ? "PASS" : "FAIL"; }

int finish_object(const RunConfig& cfg, const std::string& command, const json& object,
                  const json& report, bool pass, const std::string& text) {
    emit(cfg, json{{"command", command}, {"object", object}, {"report", report}}, text);
    write_artifact(cfg, object);
    return pass ? exit_ok : exit_verify_fail;
}

int finish_document(const RunConfig& cfg, const json& doc, bool pass, const std::string& text) {
    emit(cfg, doc, text);
    write_artifact(cfg, doc);
    return pass ? exit_ok : exit_verify_fail;
}

// ------------------------------------------------------------------ gh

int run_gh_make_prime(const RunConfig& cfg, std::uint32_t p) {
    const GHMatrix m = gh_cyclic_prime(p);
    const GhReport r = verify_gh(m);
    std::ostringstream text;
    text << "GH(" << p << ",1) multiplication table, side " << m.side() << ": "
         << pass_text(r.pass) << "\n";
    return finish_object(cfg, "gh make-prime", gh_to_json(m), gh_report_to_json(r), r.pass,
                         text.str());
}

int run_gh_search(const RunConfig& cfg, std::uint32_t g, std::uint32_t lambda) {
    const SearchOutcome out = gh_search(g, lambda, cfg.limits());
    note(cfg, "search visited " + std::to_string(out.nodes) + " nodes");
    if (out.status != SearchStatus::found) {
        const char* status = out.status == SearchStatus::exhausted ? "exhausted" : "budget_exceeded";
        const json doc{{"command", "gh search"}, {"status", status}, {"nodes", out.nodes}};
        std::ostringstream text;
        text << "GH(" << g << "," << lambda << "): no matrix (" << status << ", "
             << out.nodes << " nodes)\n";
        emit(cfg, doc, text.str());
        return exit_verify_fail;
    }
    const GhReport r = verify_gh(*out.matrix);
    std::ostringstream text;
    text << "GH(" << g << "," << lambda << ") found, side " << out.matrix->side() << ": "
         << pass_text(r.pass) << "\n";
    return finish_object(cfg, "gh search", gh_to_json(*out.matrix), gh_report_to_json(r), r.pass,
                         text.str());
}

int run_gh_compose(const RunConfig& cfg, const std::string& file_a, const std::string& file_b) {
    const GHMatrix a = gh_from_json(load_json_file(file_a));
    const GHMatrix b = gh_from_json(load_json_file(file_b));
    const GHMatrix c = gh_compose(a, b);
    const GhReport r = verify_gh(c);
    std::ostringstream text;
    text << "composed GH(" << c.g() << "," << c.lambda() << "), side " << c.side() << ": "
         << pass_text(r.pass) << "\n";
    return finish_object(cfg, "gh compose", gh_to_json(c), gh_report_to_json(r), r.pass,
                         text.str());
}

int run_gh_verify(const RunConfig& cfg, const std::string& file) {
    const GhImport in = gh_import_file(file);
    const json doc{{"command", "gh verify"}, {"report", gh_report_to_json(in.report)}};
    std::ostringstream text;
    text << "GH(" << in.matrix.g() << "," << in.matrix.lambda() << "): "
         << pass_text(in.report.pass) << "\n";
    if (!in.report.pass && in.report.witness)
        text << "  rows (" << in.report.witness->row_k << "," << in.report.witness->row_l
             << ") have an unbalanced difference histogram\n";
    return finish_document(cfg, doc, in.report.pass, text.str());
}

int run_gh_reemit(const RunConfig& cfg, const char* command, const std::string& file) {
    const GhImport in = gh_import_file(file);
    std::ostringstream text;
    text << "GH(" << in.matrix.g() << "," << in.matrix.lambda() << ") loaded: "
         << pass_text(in.report.pass) << "\n";
    return finish_object(cfg, command, gh_to_json(in.matrix), gh_report_to_json(in.report),
                         in.report.pass, text.str());
}

// ---------------------------------------------------------------- shad

int run_shad_from_gh(const RunConfig& cfg, const std::string& file) {
    const GhImport in = gh_import_file(file);
    if (!in.report.pass) {
        emit(cfg,
             json{{"command", "shad from-gh"}, {"report", gh_report_to_json(in.report)}},
             "input is not a GH matrix: FAIL\n");
        return exit_verify_fail;
    }
    const SHadamard h = from_gh(in.matrix);
    const ShadReport r = verify_shadamard(h);
    std::ostringstream text;
    text << "S-Hadamard of order " << h.n() << " over Z_" << h.root_order() << ": "
         << pass_text(r.pass) << "\n";
    return finish_object(cfg, "shad from-gh", shad_to_json(h), shad_report_to_json(r), r.pass,
                         text.str());
}

int run_shad_verify(const RunConfig& cfg, const std::string& file) {
    const ShadImport in = shad_import_file(file);
    const json doc{{"command", "shad verify"}, {"report", shad_report_to_json(in.report)}};
    std::ostringstream text;
    text << "S-Hadamard order " << in.matrix.n() << ": " << pass_text(in.report.pass) << "\n";
    for (const ShadViolation& v : in.report.failures)
        text << "  condition " << v.condition << " fails at rows (" << v.row_k << "," << v.row_l
             << ")\n";
    return finish_document(cfg, doc, in.report.pass, text.str());
}

int run_shad_dephase(const RunConfig& cfg, const std::string& file) {
    const SHadamard h = shad_from_json(load_json_file(file));
    const SHadamard d = dephase(h);
    const ShadReport r = verify_shadamard(d);
    std::ostringstream text;
    text << "dephased order " << d.n() << ": " << pass_text(r.pass) << "\n";
    return finish_object(cfg, "shad dephase", shad_to_json(d), shad_report_to_json(r), r.pass,
                         text.str());
}

// ------------------------------------------------------------------ ks

int run_ks_build(const RunConfig& cfg, const std::string& file) {
    const ShadImport in = shad_import_file(file);
    if (!in.report.pass) {
        emit(cfg, json{{"command", "ks build"}, {"report", shad_report_to_json(in.report)}},
             "input is not an S-Hadamard matrix: FAIL\n");
        return exit_verify_fail;
    }
    const KSPair p = build_ks(in.matrix);
    const KsReport r = verify_ks(p);
    const KsStats s = ks_stats(p);
    std::ostringstream text;
    text << "KS pair in C^" << p.n() << ": |V|=" << s.num_vectors << " |B|=" << s.num_bases
         << " " << pass_text(r.pass) << "\n";
    return finish_object(cfg, "ks build", ks_to_json(p), ks_report_to_json(r), r.pass, text.str());
}

int run_ks_verify(const RunConfig& cfg, const std::string& file) {
    const KsImport in = ks_import_file(file);
    const json doc{{"command", "ks verify"}, {"report", ks_report_to_json(in.report)}};
    std::ostringstream text;
    text << "KS pair in C^" << in.pair.n() << ": " << pass_text(in.report.pass) << "\n";
    return finish_document(cfg, doc, in.report.pass, text.str());
}

int run_ks_noncolor(const RunConfig& cfg, const std::string& file) {
    const KsImport in = ks_import_file(file);
    const NoncolorResult r = noncolor_check(in.pair, cfg.budget);
    const json doc{{"command", "ks noncolor"},
                   {"report", ks_report_to_json(in.report)},
                   {"noncolor", noncolor_to_json(r)}};
    std::ostringstream text;
    switch (r.status) {
        case NoncolorStatus::no_valid_coloring:
            text << "no valid coloring exists (" << r.nodes << " nodes)\n";
            break;
        case NoncolorStatus::found_coloring:
            text << "found a coloring: the pair is NOT a KS proof\n";
            break;
        case NoncolorStatus::budget_exceeded:
            text << "budget exceeded after " << r.nodes << " nodes: inconclusive\n";
            break;
    }
    emit(cfg, doc, text.str());
    write_artifact(cfg, doc);
    return r.status == NoncolorStatus::no_valid_coloring ? exit_ok : exit_verify_fail;
}

int run_ks_stats(const RunConfig& cfg, const std::string& file) {
    const KsImport in = ks_import_file(file);
    const KsStats s = ks_stats(in.pair);
    const json doc{{"command", "ks stats"},
                   {"stats", stats_to_json(s)},
                   {"report", ks_report_to_json(in.report)}};
    std::ostringstream text;
    text << "n=" << s.n << " |V|=" << s.num_vectors << " |B|=" << s.num_bases
         << " bound=" << s.vector_bound << " " << pass_text(in.report.pass) << "\n";
    return finish_document(cfg, doc, in.report.pass, text.str());
}

// ---------------------------------------------------------- plan/pipeline

int run_plan(const RunConfig& cfg, std::uint32_t n) {
    PlanContext ctx;
    ctx.limits = cfg.limits();
    const std::optional<Recipe> recipe = plan_order(n, ctx);
    if (!recipe) {
        std::cerr << "ksforge: no recipe reaches order " << n
                  << " with the built-in constructors (no suitable GH matrix is known "
                     "for some even orders, among them 2, 4, and 8)\n";
        return exit_no_recipe;
    }
    const json doc{{"command", "plan"}, {"recipe", recipe_to_json(*recipe)}};
    return finish_document(cfg, doc, true, "plan " + std::to_string(n) + ": " +
                                               recipe_text(*recipe) + "\n");
}

int run_pipeline(const RunConfig& cfg, std::uint32_t n) {
    PlanContext ctx;
    ctx.limits = cfg.limits();
    const std::optional<Recipe> recipe = plan_order(n, ctx);
    if (!recipe) {
        std::cerr << "ksforge: no recipe reaches order " << n
                  << " with the built-in constructors (no suitable GH matrix is known "
                     "for some even orders, among them 2, 4, and 8)\n";
        return exit_no_recipe;
    }
    note(cfg, "recipe: " + recipe_text(*recipe));

    const GHMatrix gh = execute_recipe(*recipe, ctx);
    const GhReport gh_report = verify_gh(gh);
    note(cfg, "gh stage: " + std::string(pass_text(gh_report.pass)));

    json bundle{{"command", "pipeline"}, {"n", n}, {"recipe", recipe_to_json(*recipe)}};
    bundle["gh"] = json{{"object", gh_to_json(gh)}, {"report", gh_report_to_json(gh_report)}};
    std::ostringstream text;
    text << "pipeline " << n << "\n";
    text << "  recipe: " << recipe_text(*recipe) << "\n";
    text << "  gh: GH(" << gh.g() << "," << gh.lambda() << ") " << pass_text(gh_report.pass)
         << "\n";

    bool all_pass = gh_report.pass;
    if (all_pass) {
        const SHadamard h = from_gh(gh);
        const ShadReport shad_report = verify_shadamard(h);
        bundle["shadamard"] =
            json{{"object", shad_to_json(h)}, {"report", shad_report_to_json(shad_report)}};
        text << "  shadamard: order " << h.n() << " " << pass_text(shad_report.pass) << "\n";
        all_pass = all_pass && shad_report.pass;

        if (all_pass) {
            const KSPair p = build_ks(h);
            const KsReport ks_report = verify_ks(p);
            const KsStats s = ks_stats(p);
            bundle["ks"] =
                json{{"object", ks_to_json(p)}, {"report", ks_report_to_json(ks_report)}};
            bundle["stats"] = stats_to_json(s);
            text << "  ks: |V|=" << s.num_vectors << " |B|=" << s.num_bases << " "
                 << pass_text(ks_report.pass) << "\n";
            all_pass = all_pass && ks_report.pass;
        }
    }
    bundle["pass"] = all_pass;
    text << "  " << pass_text(all_pass) << "\n";

    emit(cfg, bundle, text.str());
    write_artifact(cfg, bundle);
    return all_pass ? exit_ok : exit_verify_fail;
}

std::uint64_t budget_from_env() {
    const char* env = std::getenv("KSFORGE_BUDGET");
    if (!env || !*env) return 10'000'000;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
        throw CLI::ValidationError("KSFORGE_BUDGET must be a positive integer");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    CLI::App app{"exact constructor and verifier for generalized Hadamard matrices, "
                 "S-Hadamard matrices, and Kochen-Specker pairs"};
    app.require_subcommand(1);
    app.add_option("--budget", cfg.budget, "search/coloring node budget (env KSFORGE_BUDGET)")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-side", cfg.max_side, "largest side the GH search accepts")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", cfg.out_path, "write the produced artifact to this file");
    app.add_flag("--seedless", cfg.seedless, "reserved; search is already deterministic");
    app.add_flag("-v,--verbose", cfg.verbose, "progress notes on stderr");

    // gh
    auto* gh = app.add_subcommand("gh", "generalized Hadamard matrices over Z_g");
    gh->require_subcommand(1);
    gh->fallthrough();
    std::uint32_t prime_p = 0;
    auto* mk = gh->add_subcommand("make-prime", "GH(p,1) multiplication table");
    mk->add_option("p", prime_p, "prime modulus")->required();
    mk->fallthrough();
    std::uint32_t search_g = 0, search_lambda = 0;
    auto* search = gh->add_subcommand("search", "backtracking search for GH(g,lambda)");
    search->add_option("g", search_g, "group order")->required();
    search->add_option("lambda", search_lambda, "index lambda")->required();
    search->fallthrough();
    std::string compose_a, compose_b;
    auto* compose = gh->add_subcommand("compose", "Kronecker-sum of two GH files over one group");
    compose->add_option("A", compose_a, "left GH json file")->required();
    compose->add_option("B", compose_b, "right GH json file")->required();
    compose->fallthrough();
    std::string gh_file;
    auto* ghv = gh->add_subcommand("verify", "check the GH difference property");
    ghv->add_option("FILE", gh_file, "GH json file")->required();
    ghv->fallthrough();
    std::string gh_imp_file;
    auto* ghi = gh->add_subcommand("import", "load, verify, and re-emit a GH file");
    ghi->add_option("FILE", gh_imp_file, "GH json file")->required();
    ghi->fallthrough();
    std::string gh_exp_file;
    auto* ghe = gh->add_subcommand("export", "canonical re-serialization of a GH file");
    ghe->add_option("FILE", gh_exp_file, "GH json file")->required();
    ghe->fallthrough();

    // shad
    auto* shad = app.add_subcommand("shad", "S-Hadamard matrices");
    shad->require_subcommand(1);
    shad->fallthrough();
    std::string shad_gh_file;
    auto* sfg = shad->add_subcommand("from-gh", "lift a verified GH matrix (g > 2)");
    sfg->add_option("FILE", shad_gh_file, "GH json file")->required();
    sfg->fallthrough();
    std::string shad_file;
    auto* shv = shad->add_subcommand("verify", "check conditions (1)-(3) exactly");
    shv->add_option("FILE", shad_file, "S-Hadamard json file")->required();
    shv->fallthrough();
    std::string shad_dep_file;
    auto* shd = shad->add_subcommand("dephase", "normalize the first row to all ones");
    shd->add_option("FILE", shad_dep_file, "S-Hadamard json file")->required();
    shd->fallthrough();

    // ks
    auto* ks = app.add_subcommand("ks", "Kochen-Specker pairs");
    ks->require_subcommand(1);
    ks->fallthrough();
    std::string ks_shad_file;
    auto* ksb = ks->add_subcommand("build", "assemble the pair from an even-order S-Hadamard");
    ksb->add_option("FILE", ks_shad_file, "S-Hadamard json file")->required();
    ksb->fallthrough();
    std::string ks_file;
    auto* ksv = ks->add_subcommand("verify", "check the KS pair conditions");
    ksv->add_option("FILE", ks_file, "KS pair json file")->required();
    ksv->fallthrough();
    std::string ks_nc_file;
    auto* ksn = ks->add_subcommand("noncolor", "exhaustive exactly-one-per-basis coloring search");
    ksn->add_option("FILE", ks_nc_file, "KS pair json file")->required();
    ksn->fallthrough();
    std::string ks_st_file;
    auto* kss = ks->add_subcommand("stats", "summary counts and histograms");
    kss->add_option("FILE", ks_st_file, "KS pair json file")->required();
    kss->fallthrough();

    // plan / pipeline
    std::uint32_t plan_n = 0;
    auto* plan = app.add_subcommand("plan", "find a construction recipe for an even order");
    plan->add_option("N", plan_n, "target order (even)")->required();
    plan->fallthrough();
    std::uint32_t pipe_n = 0;
    auto* pipe = app.add_subcommand("pipeline", "plan, build, and verify everything for order N");
    pipe->add_option("N", pipe_n, "target order (even)")->required();
    pipe->fallthrough();

    try {
        cfg.budget = budget_from_env();
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (mk->parsed()) return run_gh_make_prime(cfg, prime_p);
        if (search->parsed()) return run_gh_search(cfg, search_g, search_lambda);
        if (compose->parsed()) return run_gh_compose(cfg, compose_a, compose_b);
        if (ghv->parsed()) return run_gh_verify(cfg, gh_file);
        if (ghi->parsed()) return run_gh_reemit(cfg, "gh import", gh_imp_file);
        if (ghe->parsed()) return run_gh_reemit(cfg, "gh export", gh_exp_file);
        if (sfg->parsed()) return run_shad_from_gh(cfg, shad_gh_file);
        if (shv->parsed()) return run_shad_verify(cfg, shad_file);
        if (shd->parsed()) return run_shad_dephase(cfg, shad_dep_file);
        if (ksb->parsed()) return run_ks_build(cfg, ks_shad_file);
        if (ksv->parsed()) return run_ks_verify(cfg, ks_file);
        if (ksn->parsed()) return run_ks_noncolor(cfg, ks_nc_file);
        if (kss->parsed()) return run_ks_stats(cfg, ks_st_file);
        if (plan->parsed()) return run_plan(cfg, plan_n);
        if (pipe->parsed()) return run_pipeline(cfg, pipe_n);
    } catch (const SchemaError& e) {
        std::cerr << "ksforge: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ksforge: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "ksforge: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
