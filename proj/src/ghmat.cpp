#include "ksforge/ghmat.hpp"

#include <algorithm>
#include <stdexcept>

#include "ksforge/kernels.hpp"
#include "ksforge/serialize.hpp"

namespace ksforge {

GHMatrix::GHMatrix(std::uint32_t g, std::uint32_t lambda, std::vector<std::uint8_t> entries)
    : g_(g), lambda_(lambda), entries_(std::move(entries)) {
    if (g < 2) throw std::invalid_argument("GHMatrix: group order must be at least 2");
    if (g > 255) throw std::invalid_argument("GHMatrix: group order above 255 is unsupported");
    if (lambda < 1) throw std::invalid_argument("GHMatrix: lambda must be positive");
    const std::size_t s = static_cast<std::size_t>(g) * lambda;
    if (entries_.size() != s * s)
        throw std::invalid_argument("GHMatrix: entry count does not match side g*lambda");
    for (std::uint8_t e : entries_)
        if (e >= g) throw std::invalid_argument("GHMatrix: entry out of range [0, g)");
}

GhReport verify_gh(const GHMatrix& m) {
    const std::uint32_t side = m.side();
    const std::uint32_t g = m.g();
    std::vector<std::uint32_t> hist(g);
    for (std::uint32_t k = 0; k < side; ++k) {
        for (std::uint32_t l = k + 1; l < side; ++l) {
            std::fill(hist.begin(), hist.end(), 0u);
            kernels::diff_mod_histogram(m.row(k), m.row(l), g, hist);
            const bool ok =
                std::all_of(hist.begin(), hist.end(),
                            [&](std::uint32_t c) { return c == m.lambda(); });
            if (!ok) return GhReport{false, GhWitness{k, l, hist}};
        }
    }
    return GhReport{true, std::nullopt};
}

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

GHMatrix gh_cyclic_prime(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("gh_cyclic_prime: p must be prime");
    if (p > 255) throw std::invalid_argument("gh_cyclic_prime: p above 255 is unsupported");
    std::vector<std::uint8_t> entries(static_cast<std::size_t>(p) * p);
    for (std::uint32_t i = 0; i < p; ++i)
        for (std::uint32_t j = 0; j < p; ++j)
            entries[i * p + j] = static_cast<std::uint8_t>((i * j) % p);
    return GHMatrix(p, 1, std::move(entries));
}

GHMatrix gh_compose(const GHMatrix& a, const GHMatrix& b) {
    if (a.g() != b.g())
        throw std::invalid_argument("gh_compose: operands are over different groups");
    const std::uint32_t g = a.g();
    const std::uint64_t side = static_cast<std::uint64_t>(a.side()) * b.side();
    const std::uint64_t lambda = static_cast<std::uint64_t>(g) * a.lambda() * b.lambda();
    if (side > 4096)
        throw std::invalid_argument("gh_compose: composed side exceeds the supported maximum");

    std::vector<std::uint8_t> entries(side * side);
    const std::uint32_t sa = a.side(), sb = b.side();
    for (std::uint32_t i = 0; i < sa; ++i)
        for (std::uint32_t j = 0; j < sb; ++j)
            for (std::uint32_t k = 0; k < sa; ++k)
                for (std::uint32_t l = 0; l < sb; ++l)
                    entries[(static_cast<std::size_t>(i) * sb + j) * side + (k * sb + l)] =
                        static_cast<std::uint8_t>((a.at(i, k) + b.at(j, l)) % g);
    return GHMatrix(g, static_cast<std::uint32_t>(lambda), std::move(entries));
}

// ---------------------------------------------------------------- gh_search

namespace {

struct Searcher {
    std::uint32_t g, lambda, side;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    std::vector<std::uint8_t> grid;          // row-major, side x side
    std::vector<std::vector<std::uint32_t>> hist;  // hist[k]: diffs of current row vs row k

    Searcher(std::uint32_t g_, std::uint32_t lambda_, std::uint64_t budget_)
        : g(g_), lambda(lambda_), side(g_ * lambda_), budget(budget_),
          grid(static_cast<std::size_t>(side) * side, 0),
          hist(side, std::vector<std::uint32_t>(g_, 0)) {}

    bool fill_row(std::uint32_t r) {
        if (r == side) return true;
        for (std::uint32_t k = 0; k < r; ++k) std::fill(hist[k].begin(), hist[k].end(), 0u);
        return fill_cell(r, 0);
    }

    bool fill_cell(std::uint32_t r, std::uint32_t c) {
        if (c == side) {
            // Row complete: each earlier-row histogram holds g*lambda counts,
            // none above lambda, hence all exactly lambda.
            if (fill_row(r + 1)) return true;
            // Deeper rows reused the histogram storage; restore this row's
            // completed state before continuing the scan.
            for (std::uint32_t k = 0; k < r; ++k) std::fill(hist[k].begin(), hist[k].end(), lambda);
            return false;
        }
        const std::uint32_t vmax = (c == 0) ? 1 : g;  // first column normalized to 0
        for (std::uint32_t v = 0; v < vmax; ++v) {
            if (budget_hit) return false;
            if (++nodes > budget) {
                budget_hit = true;
                return false;
            }
            std::uint32_t k = 0;
            bool ok = true;
            for (; k < r; ++k) {
                const std::uint32_t e = grid[k * side + c];
                const std::uint32_t d = v >= e ? v - e : v + g - e;
                if (++hist[k][d] > lambda) {
                    ++k;  // include this row in the rollback below
                    ok = false;
                    break;
                }
            }
            if (ok) {
                grid[r * side + c] = static_cast<std::uint8_t>(v);
                if (fill_cell(r, c + 1)) return true;
            }
            for (std::uint32_t u = 0; u < k; ++u) {
                const std::uint32_t e = grid[u * side + c];
                const std::uint32_t d = v >= e ? v - e : v + g - e;
                --hist[u][d];
            }
            if (budget_hit) return false;
        }
        return false;
    }
};

}  // namespace

SearchOutcome gh_search(std::uint32_t g, std::uint32_t lambda, const SearchLimits& limits) {
    if (g < 2) throw std::invalid_argument("gh_search: group order must be at least 2");
    if (g > 255) throw std::invalid_argument("gh_search: group order above 255 is unsupported");
    if (lambda < 1) throw std::invalid_argument("gh_search: lambda must be positive");
    if (g * lambda > limits.max_side)
        throw std::invalid_argument("gh_search: side g*lambda exceeds the configured maximum");

    Searcher s(g, lambda, limits.node_budget);
    // Row 0 is fixed all-zero by normalization; the search starts at row 1.
    const bool found = s.fill_row(1);
    SearchOutcome out;
    out.nodes = s.nodes;
    if (found) {
        out.status = SearchStatus::found;
        out.matrix = GHMatrix(g, lambda, std::move(s.grid));
    } else {
        out.status = s.budget_hit ? SearchStatus::budget_exceeded : SearchStatus::exhausted;
    }
    return out;
}

// -------------------------------------------------------------- plan/execute

namespace {

Recipe single_step(std::uint32_t target, RecipeStep step) {
    Recipe r;
    r.target = target;
    r.steps.push_back(std::move(step));
    return r;
}

Recipe merge_compose(const Recipe& left, const Recipe& right, std::uint32_t g,
                     std::uint32_t lambda) {
    Recipe out;
    out.target = g * lambda;
    out.steps = left.steps;
    const int offset = static_cast<int>(out.steps.size());
    for (RecipeStep step : right.steps) {
        if (step.op == RecipeStep::Op::compose) {
            step.left += offset;
            step.right += offset;
        }
        out.steps.push_back(std::move(step));
    }
    RecipeStep c;
    c.op = RecipeStep::Op::compose;
    c.left = offset - 1;
    c.right = static_cast<int>(out.steps.size()) - 1;
    out.steps.push_back(std::move(c));
    return out;
}

using ReachMemo = std::map<std::pair<std::uint32_t, std::uint32_t>, std::optional<Recipe>>;

// Can GH(g, lambda) be produced by the built-in constructors? Rules, in
// order: a prime multiplication table, composition of two reachable pieces
// over the same group, then bounded search.
const std::optional<Recipe>& reach(std::uint32_t g, std::uint32_t lambda, const SearchLimits& limits,
                                   ReachMemo& memo) {
    const auto key = std::make_pair(g, lambda);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    std::optional<Recipe> result;
    if (lambda == 1 && is_prime(g)) {
        RecipeStep step;
        step.op = RecipeStep::Op::prime_base;
        step.p = g;
        result = single_step(g, std::move(step));
    }
    if (!result && lambda % g == 0) {
        const std::uint32_t product = lambda / g;  // lambda1 * lambda2
        for (std::uint32_t l1 = 1; l1 * l1 <= product && !result; ++l1) {
            if (product % l1 != 0) continue;
            const std::uint32_t l2 = product / l1;
            const auto& a = reach(g, l1, limits, memo);
            if (!a) continue;
            const auto& b = reach(g, l2, limits, memo);
            if (!b) continue;
            // larger factor on the left: compose(search(3,2), prime(3)) for GH(3,6)
            result = merge_compose(*b, *a, g, lambda);
        }
    }
    if (!result && static_cast<std::uint64_t>(g) * lambda <= limits.max_side) {
        const SearchOutcome found = gh_search(g, lambda, limits);
        if (found.status == SearchStatus::found) {
            RecipeStep step;
            step.op = RecipeStep::Op::search;
            step.g = g;
            step.lambda = lambda;
            result = single_step(g * lambda, std::move(step));
        }
    }
    return memo.emplace(key, std::move(result)).first->second;
}

}  // namespace

std::optional<Recipe> plan_order(std::uint32_t n, const PlanContext& ctx) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("plan_order: n must be even and at least 2");

    if (auto it = ctx.imports.find(n); it != ctx.imports.end()) {
        RecipeStep step;
        step.op = RecipeStep::Op::import_file;
        step.file = it->second;
        return single_step(n, std::move(step));
    }

    ReachMemo memo;
    for (std::uint32_t g = 3; g <= n && g <= 255; ++g) {
        if (n % g != 0) continue;
        const auto& r = reach(g, n / g, ctx.limits, memo);
        if (r) {
            Recipe out = *r;
            out.target = n;
            return out;
        }
    }
    return std::nullopt;
}

GHMatrix execute_recipe(const Recipe& recipe, const PlanContext& ctx) {
    if (recipe.steps.empty()) throw std::runtime_error("execute_recipe: empty recipe");
    std::vector<GHMatrix> values;
    values.reserve(recipe.steps.size());
    for (const RecipeStep& step : recipe.steps) {
        switch (step.op) {
            case RecipeStep::Op::prime_base:
                values.push_back(gh_cyclic_prime(step.p));
                break;
            case RecipeStep::Op::search: {
                const SearchOutcome out = gh_search(step.g, step.lambda, ctx.limits);
                if (out.status != SearchStatus::found)
                    throw std::runtime_error("execute_recipe: search step found no matrix");
                values.push_back(*out.matrix);
                break;
            }
            case RecipeStep::Op::compose: {
                const int hi = static_cast<int>(values.size());
                if (step.left < 0 || step.right < 0 || step.left >= hi || step.right >= hi)
                    throw std::runtime_error("execute_recipe: compose references a bad step index");
                values.push_back(gh_compose(values[static_cast<std::size_t>(step.left)],
                                            values[static_cast<std::size_t>(step.right)]));
                break;
            }
            case RecipeStep::Op::import_file: {
                GhImport in = gh_import_file(step.file);
                if (!in.report.pass)
                    throw std::runtime_error("execute_recipe: imported matrix fails verification");
                values.push_back(std::move(in.matrix));
                break;
            }
        }
    }
    const GHMatrix& last = values.back();
    if (last.side() != recipe.target)
        throw std::runtime_error("execute_recipe: produced side does not match the recipe target");
    return last;
}

std::string recipe_text(const Recipe& recipe) {
    std::vector<std::string> texts;
    texts.reserve(recipe.steps.size());
    for (const RecipeStep& step : recipe.steps) {
        switch (step.op) {
            case RecipeStep::Op::prime_base:
                texts.push_back("prime(" + std::to_string(step.p) + ")");
                break;
            case RecipeStep::Op::search:
                texts.push_back("search(" + std::to_string(step.g) + "," +
                                std::to_string(step.lambda) + ")");
                break;
            case RecipeStep::Op::import_file:
                texts.push_back("import(" + step.file + ")");
                break;
            case RecipeStep::Op::compose:
                texts.push_back("compose(" + texts[static_cast<std::size_t>(step.left)] + ", " +
                                texts[static_cast<std::size_t>(step.right)] + ")");
                break;
        }
    }
    return texts.back();
}

}  // namespace ksforge
