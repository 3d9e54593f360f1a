#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ksforge/cyclotomic.hpp"
#include "ksforge/shadamard.hpp"

namespace ksforge {

/// x o y, the entrywise product. Lengths and orders must match.
std::vector<CycInt> hadamard_product(std::span<const CycInt> x, std::span<const CycInt> y);

/// One element of the vector set V: exact coordinates plus the unordered
/// index pairs {r, s} that map to it (several, when the construction's
/// vectors coincide).
struct KSVector {
    std::vector<CycInt> coords;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> labels;  // r < s, 1-based
};

/// A candidate Kochen-Specker pair: a deduplicated vector set V and a list
/// of bases as index lists into V. Construction enforces structural sanity
/// (index ranges, coordinate lengths, nonzero vectors, well-formed labels);
/// the defining conditions of a KS pair are checked by verify_ks.
class KSPair {
public:
    KSPair(std::uint32_t n, std::uint32_t root_order, std::vector<KSVector> vectors,
           std::vector<std::vector<std::uint32_t>> bases);

    std::uint32_t n() const { return n_; }
    std::uint32_t root_order() const { return root_order_; }
    const std::vector<KSVector>& vectors() const { return vectors_; }
    const std::vector<std::vector<std::uint32_t>>& bases() const { return bases_; }

    /// Number of bases containing each vector, counted with multiplicity.
    std::vector<std::uint32_t> membership_counts() const;

private:
    std::uint32_t n_;
    std::uint32_t root_order_;
    std::vector<KSVector> vectors_;
    std::vector<std::vector<std::uint32_t>> bases_;
};

/// From a verified even-order S-Hadamard matrix, build the pair with
/// |B| = n+1 bases and |V| <= C(n+1, 2) vectors
///   v{1,s} = h_{s-1},  v{2,s} = h_{s-1} o h_{s-1},  v{r,s} = h_{r-1} o h_{s-1},
/// bases B_r = { v{r,i} : i != r }, rows taken after dephasing (applied
/// internally, so any verified even-order matrix is accepted). Coinciding
/// vectors are merged with their labels accumulated.
KSPair build_ks(const SHadamard& h);

struct KsOrthFailure {
    std::uint32_t basis = 0;
    std::uint32_t vec_a = 0, vec_b = 0;  // vector indices
};
struct KsSelfFailure {
    std::uint32_t basis = 0;
    std::uint32_t vec = 0;  // <v, v> = 0, i.e. a zero vector slipped in
};
struct KsCountFailure {
    std::uint32_t vec = 0;
    std::uint32_t count = 0;     // basis memberships (with multiplicity)
    std::uint32_t expected = 0;  // only used for label mismatches: 2 * |labels|
};

struct KsReport {
    bool pass = false;
    bool odd_basis_count = false;
    std::vector<std::uint32_t> bases_with_duplicates;
    std::vector<KsOrthFailure> orthogonality_failures;
    std::vector<KsSelfFailure> self_product_failures;
    std::vector<KsCountFailure> parity_failures;  // odd membership count
    std::vector<KsCountFailure> label_mismatches; // membership != 2 * multiplicity
};

/// Exact check of the KS-pair conditions: every basis consists of n pairwise
/// orthogonal nonzero vectors (hence is an orthogonal basis of C^n), the
/// basis list has odd length, every vector lies in an even number of bases,
/// each vector's membership count equals twice its label multiplicity, and
/// no basis repeats an index. Reports all violations; never throws on a
/// structurally valid pair.
KsReport verify_ks(const KSPair& p);

/// 0/1 marking of V, one characteristic bit per vector.
using Coloring = std::vector<std::uint8_t>;

enum class NoncolorStatus { no_valid_coloring, found_coloring, budget_exceeded };

struct NoncolorResult {
    NoncolorStatus status = NoncolorStatus::budget_exceeded;
    std::optional<Coloring> witness;
    std::uint64_t nodes = 0;
};

/// Exhaustive 0/1 coloring search: is there an assignment marking exactly one
/// vector in every basis? Vectors are tried in descending basis-membership
/// order; a basis with two marks, or with no marks and no unassigned members,
/// prunes. For a pair passing verify_ks the answer is NoValidColoring (the
/// parity argument made executable).
NoncolorResult noncolor_check(const KSPair& p, std::uint64_t node_budget = 10'000'000);

struct KsStats {
    std::uint32_t n = 0;
    std::uint32_t root_order = 0;
    std::uint32_t num_vectors = 0;
    std::uint32_t num_bases = 0;
    std::uint32_t vector_bound = 0;  // C(n+1, 2)
    std::map<std::uint32_t, std::uint32_t> membership_histogram;  // count -> #vectors
    std::map<std::uint32_t, std::uint32_t> label_histogram;       // multiplicity -> #vectors
    // Diagnostic only: vector pairs that are scalar multiples of each other.
    // Deduplication is exact equality, never projective, so these can exist.
    std::uint32_t scalar_multiple_pairs = 0;
};

KsStats ks_stats(const KSPair& p);

}  // namespace ksforge
