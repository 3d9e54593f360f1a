#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ksforge/ghmat.hpp"
#include "ksforge/serialize.hpp"
#include "oracles.hpp"

using namespace ksforge;

namespace {

GHMatrix mult_table(std::uint32_t n) {
    std::vector<std::uint8_t> e(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) e[i * n + j] = static_cast<std::uint8_t>((i * j) % n);
    return GHMatrix(n, 1, std::move(e));
}

std::vector<std::vector<int>> as_rows(const GHMatrix& m) {
    std::vector<std::vector<int>> rows(m.side(), std::vector<int>(m.side()));
    for (std::uint32_t i = 0; i < m.side(); ++i)
        for (std::uint32_t j = 0; j < m.side(); ++j) rows[i][j] = m.at(i, j);
    return rows;
}

bool naive_pass(const GHMatrix& m) {
    return oracles::naive_gh_ok(as_rows(m), static_cast<int>(m.g()),
                                static_cast<int>(m.lambda()));
}

// The lexicographically least GH(3,2) under first-row/column normalization,
// pinned from the deterministic search and confirmed by the naive verifier.
const std::vector<std::uint8_t> kGh32{
    0, 0, 0, 0, 0, 0,
    0, 0, 1, 1, 2, 2,
    0, 1, 0, 2, 1, 2,
    0, 1, 2, 0, 2, 1,
    0, 2, 1, 2, 0, 1,
    0, 2, 2, 1, 1, 0,
};

}  // namespace

TEST_CASE("GHMatrix construction validates") {
    CHECK_THROWS_AS(GHMatrix(1, 1, {0}), std::invalid_argument);
    CHECK_THROWS_AS(GHMatrix(3, 1, {0, 0, 0}), std::invalid_argument);  // wrong side
    CHECK_THROWS_AS(GHMatrix(3, 1, std::vector<std::uint8_t>(9, 3)), std::invalid_argument);
    CHECK_THROWS_AS(GHMatrix(2, 0, {}), std::invalid_argument);
}

TEST_CASE("verify_gh on multiplication tables") {
    CHECK(verify_gh(mult_table(3)).pass);

    const GhReport bad = verify_gh(mult_table(4));
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.witness.has_value());
    // 2*j mod 4 never hits odd residues: the first failing pair differs by 2
    CHECK(bad.witness->row_l - bad.witness->row_k == 2);
    CHECK(bad.witness->histogram == std::vector<std::uint32_t>{2, 0, 2, 0});
}

TEST_CASE("gh_cyclic_prime") {
    const GHMatrix m3 = gh_cyclic_prime(3);
    CHECK(m3.entries() == std::vector<std::uint8_t>{0, 0, 0, 0, 1, 2, 0, 2, 1});
    CHECK(verify_gh(m3).pass);
    CHECK(verify_gh(gh_cyclic_prime(5)).pass);
    CHECK(verify_gh(gh_cyclic_prime(7)).pass);
    CHECK_THROWS_AS(gh_cyclic_prime(4), std::invalid_argument);
    CHECK_THROWS_AS(gh_cyclic_prime(1), std::invalid_argument);
}

TEST_CASE("gh_search finds the pinned GH(3,2)") {
    const SearchOutcome out = gh_search(3, 2);
    REQUIRE(out.status == SearchStatus::found);
    CHECK(out.matrix->entries() == kGh32);
    CHECK(verify_gh(*out.matrix).pass);
    CHECK(naive_pass(*out.matrix));

    // determinism: bit-identical output and node count on a rerun
    const SearchOutcome again = gh_search(3, 2);
    CHECK(again.matrix->entries() == out.matrix->entries());
    CHECK(again.nodes == out.nodes);
}

TEST_CASE("gh_search corner cases") {
    const SearchOutcome gh21 = gh_search(2, 1);
    REQUIRE(gh21.status == SearchStatus::found);
    CHECK(gh21.matrix->entries() == std::vector<std::uint8_t>{0, 0, 0, 1});

    // the normalized lex-least GH(3,1) is the multiplication table itself
    const SearchOutcome gh31 = gh_search(3, 1);
    REQUIRE(gh31.status == SearchStatus::found);
    CHECK(gh31.matrix->entries() == gh_cyclic_prime(3).entries());

    // GH(4,1) over Z_4 does not exist: full exhaustion, no budget involved
    const SearchOutcome gh41 = gh_search(4, 1);
    CHECK(gh41.status == SearchStatus::exhausted);
    CHECK_FALSE(gh41.matrix.has_value());

    SearchLimits tiny;
    tiny.node_budget = 10;
    CHECK(gh_search(3, 2, tiny).status == SearchStatus::budget_exceeded);

    CHECK_THROWS_AS(gh_search(3, 7), std::invalid_argument);  // side 21 > default max 20
    CHECK_THROWS_AS(gh_search(1, 1), std::invalid_argument);
}

TEST_CASE("gh_compose") {
    const GHMatrix a = gh_cyclic_prime(3);
    const GHMatrix b = *gh_search(3, 2).matrix;

    const GHMatrix aa = gh_compose(a, a);
    CHECK(aa.g() == 3);
    CHECK(aa.lambda() == 3);
    CHECK(aa.side() == 9);
    CHECK(verify_gh(aa).pass);
    CHECK(naive_pass(aa));

    const GHMatrix ba = gh_compose(b, a);
    CHECK(ba.lambda() == 6);
    CHECK(ba.side() == 18);
    CHECK(verify_gh(ba).pass);
    CHECK(naive_pass(ba));

    CHECK_THROWS_AS(gh_compose(a, gh_cyclic_prime(5)), std::invalid_argument);
}

TEST_CASE("compose of GH-passing inputs passes, over the small fleet") {
    const std::vector<GHMatrix> z3{gh_cyclic_prime(3), *gh_search(3, 2).matrix};
    for (const GHMatrix& a : z3)
        for (const GHMatrix& b : z3) CHECK(verify_gh(gh_compose(a, b)).pass);
    const GHMatrix f5 = gh_cyclic_prime(5);
    CHECK(verify_gh(gh_compose(f5, f5)).pass);
}

TEST_CASE("translation and permutation invariance") {
    const GHMatrix base = *gh_search(3, 2).matrix;
    auto gen = oracles::rng(0x6e41);
    std::uniform_int_distribution<std::uint32_t> idx(0, base.side() - 1);
    std::uniform_int_distribution<std::uint32_t> shift(0, base.g() - 1);

    for (int trial = 0; trial < 200; ++trial) {
        auto entries = base.entries();
        const std::uint32_t side = base.side();
        // translate one random row and one random column
        const std::uint32_t r = idx(gen), c = idx(gen);
        const std::uint32_t dr = shift(gen), dc = shift(gen);
        for (std::uint32_t j = 0; j < side; ++j)
            entries[r * side + j] = static_cast<std::uint8_t>((entries[r * side + j] + dr) % 3);
        for (std::uint32_t i = 0; i < side; ++i)
            entries[i * side + c] = static_cast<std::uint8_t>((entries[i * side + c] + dc) % 3);
        const GHMatrix translated(3, 2, entries);
        CHECK(verify_gh(translated).pass);

        // permute rows and columns
        std::vector<std::uint32_t> rp(side), cp(side);
        std::iota(rp.begin(), rp.end(), 0u);
        std::iota(cp.begin(), cp.end(), 0u);
        std::shuffle(rp.begin(), rp.end(), gen);
        std::shuffle(cp.begin(), cp.end(), gen);
        std::vector<std::uint8_t> permuted(entries.size());
        for (std::uint32_t i = 0; i < side; ++i)
            for (std::uint32_t j = 0; j < side; ++j)
                permuted[i * side + j] = entries[rp[i] * side + cp[j]];
        CHECK(verify_gh(GHMatrix(3, 2, permuted)).pass);
    }

    // permutation invariance also holds for failing candidates
    auto gen2 = oracles::rng(0x7731);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> e(0, 2);
        std::vector<std::uint8_t> entries(36);
        for (auto& v : entries) v = static_cast<std::uint8_t>(e(gen2));
        const GHMatrix cand(3, 2, entries);
        const bool verdict = verify_gh(cand).pass;
        std::vector<std::uint32_t> rp(6), cp(6);
        std::iota(rp.begin(), rp.end(), 0u);
        std::iota(cp.begin(), cp.end(), 0u);
        std::shuffle(rp.begin(), rp.end(), gen2);
        std::shuffle(cp.begin(), cp.end(), gen2);
        std::vector<std::uint8_t> permuted(36);
        for (std::uint32_t i = 0; i < 6; ++i)
            for (std::uint32_t j = 0; j < 6; ++j) permuted[i * 6 + j] = entries[rp[i] * 6 + cp[j]];
        CHECK(verify_gh(GHMatrix(3, 2, permuted)).pass == verdict);
    }
}

TEST_CASE("verify_gh agrees with the naive verifier on random candidates") {
    auto gen = oracles::rng(0xabc1);
    std::uniform_int_distribution<std::uint32_t> g_dist(2, 5);
    std::uniform_int_distribution<std::uint32_t> l_dist(1, 3);
    int passing = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::uint32_t g = g_dist(gen);
        const std::uint32_t lambda = l_dist(gen);
        const std::uint32_t side = g * lambda;
        std::uniform_int_distribution<std::uint32_t> e_dist(0, g - 1);
        std::vector<std::uint8_t> entries(static_cast<std::size_t>(side) * side);
        for (auto& v : entries) v = static_cast<std::uint8_t>(e_dist(gen));
        const GHMatrix cand(g, lambda, std::move(entries));
        const bool verdict = verify_gh(cand).pass;
        CHECK(verdict == naive_pass(cand));
        passing += verdict ? 1 : 0;
    }
    CHECK(passing < 100);  // random candidates overwhelmingly fail

    for (const GHMatrix& m :
         {gh_cyclic_prime(3), gh_cyclic_prime(5), *gh_search(3, 2).matrix,
          gh_compose(gh_cyclic_prime(3), gh_cyclic_prime(3))})
        CHECK(verify_gh(m).pass == naive_pass(m));
}

TEST_CASE("plan_order") {
    const auto p6 = plan_order(6);
    REQUIRE(p6.has_value());
    CHECK(recipe_text(*p6) == "search(3,2)");

    const auto p18 = plan_order(18);
    REQUIRE(p18.has_value());
    CHECK(recipe_text(*p18) == "compose(search(3,2), prime(3))");

    CHECK_FALSE(plan_order(2).has_value());
    CHECK_FALSE(plan_order(4).has_value());
    CHECK_FALSE(plan_order(8).has_value());

    CHECK_THROWS_AS(plan_order(7), std::invalid_argument);
    CHECK_THROWS_AS(plan_order(0), std::invalid_argument);
}

TEST_CASE("execute_recipe reproduces the planned order") {
    for (std::uint32_t n : {6u, 18u, 54u}) {
        const auto plan = plan_order(n);
        REQUIRE(plan.has_value());
        const GHMatrix m = execute_recipe(*plan);
        CHECK(m.side() == n);
        CHECK(verify_gh(m).pass);
    }
}

TEST_CASE("plan_order with a registered import") {
    // Register a GH file for an otherwise unreachable order.
    const GHMatrix m = *gh_search(3, 2).matrix;
    const std::string path = "/tmp/ksforge_test_gh32_import.json";
    save_json_file(path, gh_to_json(m));

    PlanContext ctx;
    ctx.imports[6] = path;
    const auto plan = plan_order(6, ctx);
    REQUIRE(plan.has_value());
    CHECK(recipe_text(*plan) == "import(" + path + ")");
    const GHMatrix loaded = execute_recipe(*plan, ctx);
    CHECK(loaded == m);
}

TEST_CASE("gh import/export round trip and schema errors") {
    const GHMatrix m = gh_cyclic_prime(3);
    const nlohmann::json j = gh_to_json(m);
    CHECK(j.at("kind") == "gh");
    CHECK(j.at("g") == 3);
    CHECK(j.at("lambda") == 1);
    CHECK(j.at("entries").size() == 3);

    const GhImport back = gh_import(j);
    CHECK(back.matrix == m);
    CHECK(back.report.pass);

    const GHMatrix searched = *gh_search(3, 2).matrix;
    CHECK(gh_import(gh_to_json(searched)).matrix == searched);

    // entry equal to g is out of range
    nlohmann::json bad = j;
    bad["entries"][0][0] = 3;
    CHECK_THROWS_AS(gh_from_json(bad), SchemaError);

    nlohmann::json wrong_side = j;
    wrong_side["lambda"] = 2;
    CHECK_THROWS_AS(gh_from_json(wrong_side), SchemaError);

    CHECK_THROWS_AS(gh_from_json(nlohmann::json{{"kind", "gh"}}), SchemaError);

    // a failing candidate still imports; the report carries the verdict
    const GHMatrix bad_cand = mult_table(4);
    const GhImport loaded = gh_import(gh_to_json(bad_cand));
    CHECK_FALSE(loaded.report.pass);
    CHECK(loaded.matrix == bad_cand);
}
