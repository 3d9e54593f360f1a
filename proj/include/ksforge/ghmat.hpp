#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ksforge {

/// Candidate generalized Hadamard matrix GH(g, lambda) over Z_g: a square
/// matrix of side g*lambda with entries in {0, ..., g-1}. Construction
/// enforces well-formedness only; whether the defining difference property
/// holds is reported by verify_gh, never carried by the type.
class GHMatrix {
public:
    GHMatrix(std::uint32_t g, std::uint32_t lambda, std::vector<std::uint8_t> entries);

    std::uint32_t g() const { return g_; }
    std::uint32_t lambda() const { return lambda_; }
    std::uint32_t side() const { return g_ * lambda_; }

    std::uint8_t at(std::uint32_t i, std::uint32_t j) const { return entries_[i * side() + j]; }
    std::span<const std::uint8_t> row(std::uint32_t i) const {
        return std::span<const std::uint8_t>(entries_).subspan(i * side(), side());
    }
    const std::vector<std::uint8_t>& entries() const { return entries_; }

    bool operator==(const GHMatrix&) const = default;

private:
    std::uint32_t g_;
    std::uint32_t lambda_;
    std::vector<std::uint8_t> entries_;
};

struct GhWitness {
    std::uint32_t row_k = 0;
    std::uint32_t row_l = 0;
    std::vector<std::uint32_t> histogram;  // counts of (m[k][j]-m[l][j]) mod g
};

struct GhReport {
    bool pass = false;
    std::optional<GhWitness> witness;  // first failing row pair, in (k, l) lex order
};

/// Definition check: for every row pair k < l, every residue of Z_g occurs
/// exactly lambda times among the entrywise differences.
GhReport verify_gh(const GHMatrix& m);

/// GH(p, 1) over Z_p with entries i*j mod p. Rejects non-prime p.
GHMatrix gh_cyclic_prime(std::uint32_t p);

/// Kronecker-sum composition: entry at row (i,j), column (k,l) is
/// a[i][k] + b[j][l] mod g, with row-major index pairing. Requires a.g == b.g;
/// the result is a GH(g, g * a.lambda * b.lambda) candidate, and passes
/// verify_gh whenever both inputs do.
GHMatrix gh_compose(const GHMatrix& a, const GHMatrix& b);

struct SearchLimits {
    std::uint32_t max_side = 20;
    std::uint64_t node_budget = 10'000'000;
};

enum class SearchStatus { found, exhausted, budget_exceeded };

struct SearchOutcome {
    SearchStatus status = SearchStatus::exhausted;
    std::optional<GHMatrix> matrix;
    std::uint64_t nodes = 0;
};

/// Deterministic backtracking search for GH(g, lambda) over Z_g, row-major in
/// lexicographic value order, normalized to an all-zero first row and first
/// column. A residue count exceeding lambda against any earlier row prunes.
/// Returns the lexicographically least completion, or distinguishes a fully
/// exhausted tree from a spent node budget.
SearchOutcome gh_search(std::uint32_t g, std::uint32_t lambda, const SearchLimits& limits = {});

/// Construction plan for a GH matrix. Steps form a small program evaluated
/// front to back; compose steps reference the results of earlier steps by
/// index, and the last step leaves the final matrix.
struct RecipeStep {
    enum class Op { prime_base, search, compose, import_file };
    Op op = Op::prime_base;
    std::uint32_t p = 0;                // prime_base
    std::uint32_t g = 0, lambda = 0;    // search
    std::string file;                   // import_file
    int left = -1, right = -1;          // compose operand step indices
};

struct Recipe {
    std::uint32_t target = 0;  // side of the final matrix
    std::vector<RecipeStep> steps;
};

/// Human-readable nested form, e.g. "compose(search(3,2), prime(3))".
std::string recipe_text(const Recipe& recipe);

struct PlanContext {
    SearchLimits limits;
    std::map<std::uint32_t, std::string> imports;  // order -> registered file
};

/// Find a recipe producing a GH matrix of side n (n even) from prime bases,
/// composition, bounded search, and registered imports. Greedy over those
/// rules; returns nullopt when they cannot reach n. Rejects odd n.
std::optional<Recipe> plan_order(std::uint32_t n, const PlanContext& ctx = {});

/// Run a recipe. Throws std::runtime_error if a search step finds nothing,
/// an import fails verification, or the final side differs from the target.
GHMatrix execute_recipe(const Recipe& recipe, const PlanContext& ctx = {});

bool is_prime(std::uint32_t n);

}  // namespace ksforge
