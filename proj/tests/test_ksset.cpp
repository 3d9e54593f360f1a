#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ksforge/ksset.hpp"
#include "ksforge/serialize.hpp"
#include "oracles.hpp"

using namespace ksforge;

namespace {

SHadamard order6() { return from_gh(*gh_search(3, 2).matrix); }
SHadamard order18() { return from_gh(gh_compose(*gh_search(3, 2).matrix, gh_cyclic_prime(3))); }

bool vectors_value_equal(const std::vector<CycInt>& a, const std::vector<CycInt>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!value_equal(a[i], b[i])) return false;
    return true;
}

// A structurally fine but definition-violating pair: one orthogonal basis.
KSPair single_basis_pair() {
    const SHadamard h = order6();
    std::vector<KSVector> vectors;
    std::vector<std::uint32_t> basis;
    for (std::uint32_t i = 0; i < 6; ++i) {
        KSVector v;
        v.coords = h.row_values(i);
        v.labels = {{1, i + 2}};
        vectors.push_back(std::move(v));
        basis.push_back(i);
    }
    return KSPair(6, 3, std::move(vectors), {basis});
}

}  // namespace

TEST_CASE("hadamard_product") {
    std::vector<CycInt> ones, x;
    for (int j = 0; j < 4; ++j) {
        ones.push_back(CycInt::integer(6, 1));
        x.push_back(CycInt::root(6, j));
    }
    const auto same = hadamard_product(ones, x);
    for (int j = 0; j < 4; ++j) CHECK(value_equal(same[j], x[j]));

    // on unimodular rows the product adds exponents mod L
    const auto prod = hadamard_product(x, x);
    for (int j = 0; j < 4; ++j) CHECK(value_equal(prod[j], CycInt::root(6, 2 * j)));

    std::vector<CycInt> shorter{CycInt::integer(6, 1)};
    CHECK_THROWS_AS(hadamard_product(x, shorter), std::invalid_argument);
}

TEST_CASE("<z o x, z o y> = <x, y> for unimodular z") {
    auto gen = oracles::rng(0xe91);
    std::uniform_int_distribution<std::uint32_t> L_dist(1, 12);
    std::uniform_int_distribution<std::uint32_t> n_dist(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t L = L_dist(gen);
        const std::uint32_t n = n_dist(gen);
        std::uniform_int_distribution<std::uint32_t> e_dist(0, L - 1);
        std::vector<CycInt> x, y, z;
        for (std::uint32_t j = 0; j < n; ++j) {
            x.push_back(oracles::random_cycint(gen, L, 10));
            y.push_back(oracles::random_cycint(gen, L, 10));
            z.push_back(CycInt::root(L, e_dist(gen)));
        }
        const CycInt lhs = inner_product(hadamard_product(z, x), hadamard_product(z, y));
        const CycInt rhs = inner_product(x, y);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("build_ks on the order-6 matrix reproduces the 21/7 pair") {
    const KSPair p = build_ks(order6());
    CHECK(p.n() == 6);
    CHECK(p.bases().size() == 7);
    CHECK(p.vectors().size() == 21);

    // all 21 vectors pairwise distinct, by exact coordinatewise equality
    for (std::size_t a = 0; a < 21; ++a)
        for (std::size_t b = a + 1; b < 21; ++b)
            CHECK_FALSE(vectors_value_equal(p.vectors()[a].coords, p.vectors()[b].coords));

    // every vector lies in exactly 2 bases and carries exactly 1 label
    for (std::uint32_t c : p.membership_counts()) CHECK(c == 2);
    for (const KSVector& v : p.vectors()) CHECK(v.labels.size() == 1);

    const KsReport r = verify_ks(p);
    CHECK(r.pass);
    CHECK(r.odd_basis_count);
    CHECK(r.orthogonality_failures.empty());
}

TEST_CASE("build_ks accepts an undephased matrix") {
    // translate every column by its own constant: the first row is no longer
    // all-one, but internal dephasing cancels column phases exactly, so the
    // resulting pair is identical to the one from the normalized matrix
    auto entries = gh_search(3, 2).matrix->entries();
    for (std::uint32_t i = 0; i < 6; ++i)
        for (std::uint32_t j = 0; j < 6; ++j)
            entries[i * 6 + j] = static_cast<std::uint8_t>((entries[i * 6 + j] + j) % 3);
    const SHadamard shifted = from_gh(GHMatrix(3, 2, entries));
    CHECK(shifted.at(0, 1) != 0);

    const KSPair p = build_ks(shifted);
    CHECK(verify_ks(p).pass);
    const KSPair q = build_ks(order6());
    REQUIRE(p.vectors().size() == q.vectors().size());
    for (std::size_t i = 0; i < p.vectors().size(); ++i)
        CHECK(vectors_value_equal(p.vectors()[i].coords, q.vectors()[i].coords));
    CHECK(p.bases() == q.bases());

    // a row translation gives a different but still valid pair
    auto row_shifted = gh_search(3, 2).matrix->entries();
    for (std::uint32_t j = 0; j < 6; ++j)
        row_shifted[j] = static_cast<std::uint8_t>((row_shifted[j] + 2) % 3);
    CHECK(verify_ks(build_ks(from_gh(GHMatrix(3, 2, row_shifted)))).pass);
}

TEST_CASE("build_ks on the order-18 matrix") {
    const KSPair p = build_ks(order18());
    CHECK(p.n() == 18);
    CHECK(p.bases().size() == 19);
    CHECK(p.vectors().size() == 63);  // duplicates merged, well under C(19,2) = 171
    CHECK(p.vectors().size() <= 171);

    const auto counts = p.membership_counts();
    for (std::size_t v = 0; v < counts.size(); ++v) {
        CHECK(counts[v] % 2 == 0);
        // the multiplicity claim: membership is exactly twice the label count
        CHECK(counts[v] == 2 * p.vectors()[v].labels.size());
    }
    CHECK(verify_ks(p).pass);
}

TEST_CASE("build_ks rejects odd order and non-S-Hadamard input") {
    CHECK_THROWS_AS(build_ks(from_gh(gh_cyclic_prime(3))), std::invalid_argument);
    // order-4 Fourier matrix is even but fails condition (3)
    std::vector<std::uint8_t> e(16);
    for (std::uint32_t i = 0; i < 4; ++i)
        for (std::uint32_t j = 0; j < 4; ++j) e[i * 4 + j] = static_cast<std::uint8_t>((i * j) % 4);
    CHECK_THROWS_AS(build_ks(SHadamard(4, 4, e)), std::invalid_argument);
}

TEST_CASE("verify_ks detects a dropped basis") {
    const KSPair p = build_ks(order6());
    auto bases = p.bases();
    bases.erase(bases.begin());
    const KSPair damaged(p.n(), p.root_order(), p.vectors(), bases);
    const KsReport r = verify_ks(damaged);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.odd_basis_count);  // |B| = 6
    CHECK(r.parity_failures.size() == 6);  // the six vectors of B_1 now have count 1
    CHECK_FALSE(r.label_mismatches.empty());
}

TEST_CASE("verify_ks detects a scaled duplicate breaking orthogonality") {
    const KSPair p = build_ks(order6());
    auto vectors = p.vectors();
    // replace the second member of B_1 with 2*1, a scaled duplicate of the
    // all-one vector sitting in the same basis; <1, 2*1> = 2n != 0
    const std::uint32_t target = p.bases()[0][1];
    for (CycInt& c : vectors[target].coords) c = CycInt::integer(3, 2);
    const KSPair damaged(p.n(), p.root_order(), vectors, p.bases());
    const KsReport r = verify_ks(damaged);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.orthogonality_failures.empty());
}

TEST_CASE("verify_ks flags duplicate indices inside a basis") {
    const KSPair p = build_ks(order6());
    auto bases = p.bases();
    bases[2][1] = bases[2][0];
    const KSPair damaged(p.n(), p.root_order(), p.vectors(), bases);
    const KsReport r = verify_ks(damaged);
    CHECK_FALSE(r.pass);
    REQUIRE(r.bases_with_duplicates.size() == 1);
    CHECK(r.bases_with_duplicates[0] == 2);
}

TEST_CASE("global phase on one basis leaves the verdict unchanged") {
    const KSPair p = build_ks(order6());
    auto vectors = p.vectors();
    for (std::uint32_t idx : p.bases()[0])
        for (CycInt& c : vectors[idx].coords) c = c * CycInt::root(3, 1);
    const KSPair phased(p.n(), p.root_order(), vectors, p.bases());
    CHECK(verify_ks(phased).pass == verify_ks(p).pass);
}

TEST_CASE("noncolor_check exhausts the n=6 pair") {
    const KSPair p = build_ks(order6());
    const NoncolorResult r = noncolor_check(p);
    CHECK(r.status == NoncolorStatus::no_valid_coloring);
    CHECK_FALSE(r.witness.has_value());
    CHECK(r.nodes > 0);
    CHECK(r.nodes < 100000);

    // deterministic: identical node counts on a rerun
    CHECK(noncolor_check(p).nodes == r.nodes);
}

TEST_CASE("noncolor_check finds a coloring for a single-basis pair") {
    const KSPair p = single_basis_pair();
    CHECK_FALSE(verify_ks(p).pass);  // parity is violated, as designed
    const NoncolorResult r = noncolor_check(p);
    REQUIRE(r.status == NoncolorStatus::found_coloring);
    REQUIRE(r.witness.has_value());
    int marked = 0;
    for (std::uint8_t f : *r.witness) marked += f;
    CHECK(marked == 1);
}

TEST_CASE("noncolor_check reports an exceeded budget honestly") {
    const KSPair p = build_ks(order18());
    const NoncolorResult r = noncolor_check(p, 50);
    CHECK(r.status == NoncolorStatus::budget_exceeded);
    CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("ks_stats") {
    const KsStats s6 = ks_stats(build_ks(order6()));
    CHECK(s6.n == 6);
    CHECK(s6.num_vectors == 21);
    CHECK(s6.num_bases == 7);
    CHECK(s6.vector_bound == 21);
    CHECK(s6.membership_histogram == std::map<std::uint32_t, std::uint32_t>{{2, 21}});
    CHECK(s6.label_histogram == std::map<std::uint32_t, std::uint32_t>{{1, 21}});
    CHECK(s6.scalar_multiple_pairs == 0);

    const KsStats s18 = ks_stats(build_ks(order18()));
    CHECK(s18.num_vectors <= s18.vector_bound);
    CHECK(s18.vector_bound == 171);
    CHECK(s18.membership_histogram ==
          std::map<std::uint32_t, std::uint32_t>{{4, 18}, {6, 45}});
}

TEST_CASE("KSPair structural validation") {
    const KSPair p = build_ks(order6());

    auto zero_vec = p.vectors();
    for (CycInt& c : zero_vec[0].coords) c = CycInt(3);
    CHECK_THROWS_AS(KSPair(6, 3, zero_vec, p.bases()), std::invalid_argument);

    auto no_labels = p.vectors();
    no_labels[0].labels.clear();
    CHECK_THROWS_AS(KSPair(6, 3, no_labels, p.bases()), std::invalid_argument);

    auto bad_label = p.vectors();
    bad_label[0].labels = {{3, 3}};
    CHECK_THROWS_AS(KSPair(6, 3, bad_label, p.bases()), std::invalid_argument);

    auto bad_basis = p.bases();
    bad_basis[0][0] = 999;
    CHECK_THROWS_AS(KSPair(6, 3, p.vectors(), bad_basis), std::invalid_argument);

    auto short_basis = p.bases();
    short_basis[0].pop_back();
    CHECK_THROWS_AS(KSPair(6, 3, p.vectors(), short_basis), std::invalid_argument);
}

TEST_CASE("ks import/export round trip") {
    const KSPair p = build_ks(order6());
    const nlohmann::json j = ks_to_json(p);
    CHECK(j.at("kind") == "ks_pair");

    const KsImport back = ks_import(j);
    CHECK(back.report.pass);
    CHECK(back.pair.bases() == p.bases());
    REQUIRE(back.pair.vectors().size() == p.vectors().size());
    for (std::size_t i = 0; i < p.vectors().size(); ++i) {
        CHECK(back.pair.vectors()[i].labels == p.vectors()[i].labels);
        for (std::size_t c = 0; c < p.n(); ++c)
            CHECK(back.pair.vectors()[i].coords[c].coeffs() == p.vectors()[i].coords[c].coeffs());
    }
    // byte-identical re-serialization
    CHECK(ks_to_json(back.pair).dump(2) == j.dump(2));

    nlohmann::json bad = j;
    bad["bases"][0][0] = 999;
    CHECK_THROWS_AS(ks_from_json(bad), SchemaError);

    nlohmann::json bad_label = j;
    bad_label["vectors"][0]["labels"] = nlohmann::json::array();
    CHECK_THROWS_AS(ks_from_json(bad_label), SchemaError);
}
