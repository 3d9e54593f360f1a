#include "ksforge/ksset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ksforge {

std::vector<CycInt> hadamard_product(std::span<const CycInt> x, std::span<const CycInt> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("hadamard_product: vectors have different lengths");
    std::vector<CycInt> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] * y[i]);
    return out;
}

KSPair::KSPair(std::uint32_t n, std::uint32_t root_order, std::vector<KSVector> vectors,
               std::vector<std::vector<std::uint32_t>> bases)
    : n_(n), root_order_(root_order), vectors_(std::move(vectors)), bases_(std::move(bases)) {
    if (n_ < 1) throw std::invalid_argument("KSPair: dimension must be positive");
    for (const KSVector& v : vectors_) {
        if (v.coords.size() != n_)
            throw std::invalid_argument("KSPair: vector length does not match the dimension");
        for (const CycInt& c : v.coords)
            if (c.order() != root_order_)
                throw std::invalid_argument("KSPair: coordinate order differs from root_order");
        if (std::all_of(v.coords.begin(), v.coords.end(),
                        [](const CycInt& c) { return c.is_zero(); }))
            throw std::invalid_argument("KSPair: the zero vector is not allowed in V");
        if (v.labels.empty()) throw std::invalid_argument("KSPair: vector with no labels");
        for (auto [r, s] : v.labels)
            if (r < 1 || r >= s || s > n_ + 1)
                throw std::invalid_argument("KSPair: label pair out of range (need 1 <= r < s <= n+1)");
    }
    for (const auto& basis : bases_) {
        if (basis.size() != n_)
            throw std::invalid_argument("KSPair: basis does not have exactly n members");
        for (std::uint32_t idx : basis)
            if (idx >= vectors_.size())
                throw std::invalid_argument("KSPair: basis index out of range");
    }
}

std::vector<std::uint32_t> KSPair::membership_counts() const {
    std::vector<std::uint32_t> counts(vectors_.size(), 0);
    for (const auto& basis : bases_)
        for (std::uint32_t idx : basis) counts[idx]++;
    return counts;
}

KSPair build_ks(const SHadamard& input) {
    const std::uint32_t n = input.n();
    if (n % 2 != 0)
        throw std::invalid_argument("build_ks: the construction requires an even order");
    if (!verify_shadamard(input).pass)
        throw std::invalid_argument("build_ks: input matrix is not S-Hadamard");

    const SHadamard h = dephase(input);
    const std::uint32_t L = h.root_order();

    // Everything is assembled in exponent land: the matrix rows are the pure
    // roots zeta^e with e in [0, L), where coordinatewise value equality is
    // exactly exponent equality (zeta^a = zeta^b iff a = b within one period),
    // so merging on exponent keys decides is_zero(difference) per coordinate.
    // The unit tests cross-check this against the value-level comparison.
    auto row_exps = [&](std::uint32_t one_based) {  // h_1 .. h_n
        const auto r = h.row(one_based - 1);
        return std::vector<std::uint8_t>(r.begin(), r.end());
    };
    auto product = [&](const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
        std::vector<std::uint8_t> out(a.size());
        for (std::size_t j = 0; j < a.size(); ++j)
            out[j] = static_cast<std::uint8_t>((a[j] + b[j]) % L);
        return out;
    };

    std::vector<KSVector> vectors;
    std::map<std::vector<std::uint8_t>, std::uint32_t> index_of;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index_of_label;
    std::vector<std::vector<std::uint8_t>> exponent_vectors;

    for (std::uint32_t r = 1; r <= n; ++r) {
        for (std::uint32_t s = r + 1; s <= n + 1; ++s) {
            std::vector<std::uint8_t> vec;
            if (r == 1)
                vec = row_exps(s - 1);
            else if (r == 2)
                vec = product(row_exps(s - 1), row_exps(s - 1));
            else
                vec = product(row_exps(r - 1), row_exps(s - 1));

            auto [it, fresh] = index_of.try_emplace(vec, static_cast<std::uint32_t>(vectors.size()));
            if (fresh) {
                KSVector v;
                v.coords.reserve(n);
                for (std::uint8_t e : vec) v.coords.push_back(CycInt::root(L, e));
                vectors.push_back(std::move(v));
                exponent_vectors.push_back(vec);
            }
            vectors[it->second].labels.emplace_back(r, s);
            index_of_label[{r, s}] = it->second;
        }
    }

    std::vector<std::vector<std::uint32_t>> bases;
    bases.reserve(n + 1);
    for (std::uint32_t r = 1; r <= n + 1; ++r) {
        std::vector<std::uint32_t> basis;
        basis.reserve(n);
        for (std::uint32_t i = 1; i <= n + 1; ++i) {
            if (i == r) continue;
            basis.push_back(index_of_label.at({std::min(r, i), std::max(r, i)}));
        }
        std::set<std::uint32_t> distinct(basis.begin(), basis.end());
        if (distinct.size() != basis.size())
            throw std::logic_error("build_ks: a basis collapsed onto a repeated vector");
        bases.push_back(std::move(basis));
    }

    return KSPair(n, L, std::move(vectors), std::move(bases));
}

KsReport verify_ks(const KSPair& p) {
    KsReport report;
    const auto& vectors = p.vectors();
    const auto& bases = p.bases();

    report.odd_basis_count = bases.size() % 2 == 1;

    for (std::uint32_t b = 0; b < bases.size(); ++b) {
        const auto& basis = bases[b];
        std::set<std::uint32_t> distinct(basis.begin(), basis.end());
        if (distinct.size() != basis.size()) report.bases_with_duplicates.push_back(b);

        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (inner_product(vectors[basis[i]].coords, vectors[basis[i]].coords).is_zero())
                report.self_product_failures.push_back(KsSelfFailure{b, basis[i]});
            for (std::size_t j = i + 1; j < basis.size(); ++j) {
                if (!inner_product(vectors[basis[i]].coords, vectors[basis[j]].coords).is_zero())
                    report.orthogonality_failures.push_back(
                        KsOrthFailure{b, basis[i], basis[j]});
            }
        }
    }

    const std::vector<std::uint32_t> counts = p.membership_counts();
    for (std::uint32_t v = 0; v < counts.size(); ++v) {
        if (counts[v] % 2 != 0) report.parity_failures.push_back(KsCountFailure{v, counts[v], 0});
        const std::uint32_t expected = 2 * static_cast<std::uint32_t>(vectors[v].labels.size());
        if (counts[v] != expected)
            report.label_mismatches.push_back(KsCountFailure{v, counts[v], expected});
    }

    report.pass = report.odd_basis_count && report.bases_with_duplicates.empty() &&
                  report.orthogonality_failures.empty() && report.self_product_failures.empty() &&
                  report.parity_failures.empty() && report.label_mismatches.empty();
    return report;
}

NoncolorResult noncolor_check(const KSPair& p, std::uint64_t node_budget) {
    const std::size_t num_vectors = p.vectors().size();
    const auto& bases = p.bases();

    // Bases touched by each vector, with multiplicity.
    std::vector<std::vector<std::uint32_t>> touched(num_vectors);
    for (std::uint32_t b = 0; b < bases.size(); ++b)
        for (std::uint32_t idx : bases[b]) touched[idx].push_back(b);

    // Highest-degree vectors first: each assignment then constrains as many
    // bases as possible, which is what keeps the n=6 tree tiny.
    std::vector<std::uint32_t> order(num_vectors);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return touched[a].size() > touched[b].size();
    });

    std::vector<std::uint32_t> marked(bases.size(), 0);
    std::vector<std::uint32_t> unassigned(bases.size(), 0);
    for (std::uint32_t b = 0; b < bases.size(); ++b)
        unassigned[b] = static_cast<std::uint32_t>(bases[b].size());

    std::vector<std::uint8_t> assignment(num_vectors, 0);
    NoncolorResult result;
    bool budget_hit = false;

    auto dfs = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == num_vectors) return true;
        const std::uint32_t v = order[pos];
        for (std::uint8_t value : {std::uint8_t{0}, std::uint8_t{1}}) {
            if (++result.nodes > node_budget) {
                budget_hit = true;
                return false;
            }
            bool ok = true;
            std::size_t applied = 0;
            for (; applied < touched[v].size(); ++applied) {
                const std::uint32_t b = touched[v][applied];
                marked[b] += value;
                unassigned[b] -= 1;
                if (marked[b] > 1 || (marked[b] == 0 && unassigned[b] == 0)) {
                    ++applied;
                    ok = false;
                    break;
                }
            }
            if (ok) {
                assignment[v] = value;
                if (self(self, pos + 1)) return true;
            }
            for (std::size_t u = 0; u < applied; ++u) {
                const std::uint32_t b = touched[v][u];
                marked[b] -= value;
                unassigned[b] += 1;
            }
            if (budget_hit) return false;
        }
        return false;
    };

    const bool found = dfs(dfs, 0);
    if (found) {
        result.status = NoncolorStatus::found_coloring;
        result.witness = assignment;
    } else {
        result.status =
            budget_hit ? NoncolorStatus::budget_exceeded : NoncolorStatus::no_valid_coloring;
    }
    return result;
}

KsStats ks_stats(const KSPair& p) {
    KsStats stats;
    stats.n = p.n();
    stats.root_order = p.root_order();
    stats.num_vectors = static_cast<std::uint32_t>(p.vectors().size());
    stats.num_bases = static_cast<std::uint32_t>(p.bases().size());
    stats.vector_bound = (p.n() + 1) * p.n() / 2;

    for (std::uint32_t c : p.membership_counts()) stats.membership_histogram[c]++;
    for (const KSVector& v : p.vectors())
        stats.label_histogram[static_cast<std::uint32_t>(v.labels.size())]++;

    // Scalar-multiple diagnostic via vanishing 2x2 minors: u and v are
    // proportional iff u_i v_j - u_j v_i = 0 for all i < j.
    const auto& vecs = p.vectors();
    for (std::size_t a = 0; a < vecs.size(); ++a) {
        for (std::size_t b = a + 1; b < vecs.size(); ++b) {
            bool proportional = true;
            for (std::size_t i = 0; i < p.n() && proportional; ++i)
                for (std::size_t j = i + 1; j < p.n() && proportional; ++j)
                    if (!(vecs[a].coords[i] * vecs[b].coords[j] -
                          vecs[a].coords[j] * vecs[b].coords[i])
                             .is_zero())
                        proportional = false;
            if (proportional) stats.scalar_multiple_pairs++;
        }
    }
    return stats;
}

}  // namespace ksforge
