#include "ksforge/serialize.hpp"

#include <fstream>

namespace ksforge {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string(what) + ": missing field \"" + key + "\"");
    return j.at(key);
}

std::uint32_t require_uint(const json& j, const char* key, const char* what) {
    const json& f = require_field(j, key, what);
    if (!f.is_number_unsigned())
        throw SchemaError(std::string(what) + ": field \"" + key + "\" must be a non-negative integer");
    const auto v = f.get<std::uint64_t>();
    if (v > 0xffffffffull)
        throw SchemaError(std::string(what) + ": field \"" + key + "\" out of range");
    return static_cast<std::uint32_t>(v);
}

void require_kind(const json& j, const char* kind, const char* what) {
    const json& f = require_field(j, "kind", what);
    if (!f.is_string() || f.get<std::string>() != kind)
        throw SchemaError(std::string(what) + ": expected kind \"" + kind + "\"");
}

// side x side (or rows x cols) matrix of small residues below `bound`
std::vector<std::uint8_t> residue_matrix(const json& j, std::size_t rows, std::size_t cols,
                                         std::uint32_t bound, const char* what) {
    if (!j.is_array() || j.size() != rows)
        throw SchemaError(std::string(what) + ": wrong number of rows");
    std::vector<std::uint8_t> out;
    out.reserve(rows * cols);
    for (const json& row : j) {
        if (!row.is_array() || row.size() != cols)
            throw SchemaError(std::string(what) + ": wrong number of columns");
        for (const json& e : row) {
            if (!e.is_number_unsigned() || e.get<std::uint64_t>() >= bound)
                throw SchemaError(std::string(what) + ": entry out of range [0, " +
                                  std::to_string(bound) + ")");
            out.push_back(static_cast<std::uint8_t>(e.get<std::uint64_t>()));
        }
    }
    return out;
}

json matrix_rows(const std::vector<std::uint8_t>& entries, std::size_t rows, std::size_t cols) {
    json out = json::array();
    for (std::size_t i = 0; i < rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < cols; ++j) row.push_back(entries[i * cols + j]);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

// -------------------------------------------------------------------- CycInt

json cyc_to_json(const CycInt& a) {
    return json{{"order", a.order()}, {"coeffs", a.coeffs()}};
}

CycInt cyc_from_json(const json& j) {
    const std::uint32_t order = require_uint(j, "order", "CycInt");
    const json& coeffs = require_field(j, "coeffs", "CycInt");
    if (!coeffs.is_array() || coeffs.size() != order)
        throw SchemaError("CycInt: coeffs must be an array of exactly `order` integers");
    std::vector<std::int64_t> c;
    c.reserve(order);
    for (const json& e : coeffs) {
        if (!e.is_number_integer()) throw SchemaError("CycInt: coefficients must be integers");
        c.push_back(e.get<std::int64_t>());
    }
    return CycInt(order, std::move(c));
}

// ------------------------------------------------------------------------ GH

json gh_to_json(const GHMatrix& m) {
    return json{{"kind", "gh"},
                {"g", m.g()},
                {"lambda", m.lambda()},
                {"entries", matrix_rows(m.entries(), m.side(), m.side())}};
}

GHMatrix gh_from_json(const json& j) {
    require_kind(j, "gh", "GH matrix");
    const std::uint32_t g = require_uint(j, "g", "GH matrix");
    const std::uint32_t lambda = require_uint(j, "lambda", "GH matrix");
    if (g < 2 || g > 255) throw SchemaError("GH matrix: g must be in [2, 255]");
    if (lambda < 1) throw SchemaError("GH matrix: lambda must be positive");
    const std::size_t side = static_cast<std::size_t>(g) * lambda;
    auto entries =
        residue_matrix(require_field(j, "entries", "GH matrix"), side, side, g, "GH matrix");
    return GHMatrix(g, lambda, std::move(entries));
}

json gh_report_to_json(const GhReport& r) {
    json out{{"pass", r.pass}};
    if (r.witness) {
        out["witness"] = json{{"rows", {r.witness->row_k, r.witness->row_l}},
                              {"histogram", r.witness->histogram}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

GhImport gh_import(const json& j) {
    GHMatrix m = gh_from_json(j);
    GhReport r = verify_gh(m);
    return GhImport{std::move(m), std::move(r)};
}

GhImport gh_import_file(const std::string& path) { return gh_import(load_json_file(path)); }

// ----------------------------------------------------------------- SHadamard

json shad_to_json(const SHadamard& h) {
    return json{{"kind", "shadamard"},
                {"n", h.n()},
                {"root_order", h.root_order()},
                {"exponents", matrix_rows(h.exponents(), h.n(), h.n())}};
}

SHadamard shad_from_json(const json& j) {
    require_kind(j, "shadamard", "S-Hadamard matrix");
    const std::uint32_t n = require_uint(j, "n", "S-Hadamard matrix");
    const std::uint32_t L = require_uint(j, "root_order", "S-Hadamard matrix");
    if (n < 1) throw SchemaError("S-Hadamard matrix: n must be positive");
    if (L < 1 || L > 255) throw SchemaError("S-Hadamard matrix: root_order must be in [1, 255]");
    auto exps = residue_matrix(require_field(j, "exponents", "S-Hadamard matrix"), n, n, L,
                               "S-Hadamard matrix");
    return SHadamard(n, L, std::move(exps));
}

json shad_report_to_json(const ShadReport& r) {
    json failures = json::array();
    for (const ShadViolation& v : r.failures)
        failures.push_back(json{{"condition", v.condition}, {"rows", {v.row_k, v.row_l}}});
    return json{{"pass", r.pass},
                {"condition2", r.condition2_structural ? "structural" : "violated"},
                {"failures", std::move(failures)}};
}

ShadImport shad_import(const json& j) {
    SHadamard h = shad_from_json(j);
    ShadReport r = verify_shadamard(h);
    return ShadImport{std::move(h), std::move(r)};
}

ShadImport shad_import_file(const std::string& path) { return shad_import(load_json_file(path)); }

// ------------------------------------------------------------------- KS pair

json ks_to_json(const KSPair& p) {
    json vectors = json::array();
    for (const KSVector& v : p.vectors()) {
        json coords = json::array();
        for (const CycInt& c : v.coords) coords.push_back(cyc_to_json(c));
        json labels = json::array();
        for (auto [r, s] : v.labels) labels.push_back(json::array({r, s}));
        vectors.push_back(json{{"coords", std::move(coords)}, {"labels", std::move(labels)}});
    }
    return json{{"kind", "ks_pair"},
                {"n", p.n()},
                {"root_order", p.root_order()},
                {"vectors", std::move(vectors)},
                {"bases", p.bases()}};
}

KSPair ks_from_json(const json& j) {
    require_kind(j, "ks_pair", "KS pair");
    const std::uint32_t n = require_uint(j, "n", "KS pair");
    const std::uint32_t L = require_uint(j, "root_order", "KS pair");

    const json& jvectors = require_field(j, "vectors", "KS pair");
    if (!jvectors.is_array()) throw SchemaError("KS pair: vectors must be an array");
    std::vector<KSVector> vectors;
    vectors.reserve(jvectors.size());
    for (const json& jv : jvectors) {
        KSVector v;
        const json& coords = require_field(jv, "coords", "KS vector");
        if (!coords.is_array()) throw SchemaError("KS vector: coords must be an array");
        for (const json& c : coords) v.coords.push_back(cyc_from_json(c));
        const json& labels = require_field(jv, "labels", "KS vector");
        if (!labels.is_array() || labels.empty())
            throw SchemaError("KS vector: labels must be a nonempty array");
        for (const json& l : labels) {
            if (!l.is_array() || l.size() != 2 || !l[0].is_number_unsigned() ||
                !l[1].is_number_unsigned())
                throw SchemaError("KS vector: each label must be a pair [r, s]");
            v.labels.emplace_back(l[0].get<std::uint32_t>(), l[1].get<std::uint32_t>());
        }
        vectors.push_back(std::move(v));
    }

    const json& jbases = require_field(j, "bases", "KS pair");
    if (!jbases.is_array()) throw SchemaError("KS pair: bases must be an array");
    std::vector<std::vector<std::uint32_t>> bases;
    bases.reserve(jbases.size());
    for (const json& jb : jbases) {
        if (!jb.is_array()) throw SchemaError("KS pair: each basis must be an index array");
        std::vector<std::uint32_t> basis;
        for (const json& e : jb) {
            if (!e.is_number_unsigned()) throw SchemaError("KS pair: basis indices must be integers");
            basis.push_back(e.get<std::uint32_t>());
        }
        bases.push_back(std::move(basis));
    }

    try {
        return KSPair(n, L, std::move(vectors), std::move(bases));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("KS pair: ") + e.what());
    }
}

json ks_report_to_json(const KsReport& r) {
    json orth = json::array();
    for (const KsOrthFailure& f : r.orthogonality_failures)
        orth.push_back(json{{"basis", f.basis}, {"vectors", {f.vec_a, f.vec_b}}});
    json self = json::array();
    for (const KsSelfFailure& f : r.self_product_failures)
        self.push_back(json{{"basis", f.basis}, {"vector", f.vec}});
    json parity = json::array();
    for (const KsCountFailure& f : r.parity_failures)
        parity.push_back(json{{"vector", f.vec}, {"count", f.count}});
    json labels = json::array();
    for (const KsCountFailure& f : r.label_mismatches)
        labels.push_back(json{{"vector", f.vec}, {"count", f.count}, {"expected", f.expected}});
    return json{{"pass", r.pass},
                {"odd_basis_count", r.odd_basis_count},
                {"bases_with_duplicates", r.bases_with_duplicates},
                {"orthogonality_failures", std::move(orth)},
                {"self_product_failures", std::move(self)},
                {"parity_failures", std::move(parity)},
                {"label_mismatches", std::move(labels)}};
}

KsImport ks_import(const json& j) {
    KSPair p = ks_from_json(j);
    KsReport r = verify_ks(p);
    return KsImport{std::move(p), std::move(r)};
}

KsImport ks_import_file(const std::string& path) { return ks_import(load_json_file(path)); }

// -------------------------------------------------------------------- others

json recipe_to_json(const Recipe& recipe) {
    json steps = json::array();
    for (const RecipeStep& s : recipe.steps) {
        switch (s.op) {
            case RecipeStep::Op::prime_base:
                steps.push_back(json{{"op", "prime"}, {"p", s.p}});
                break;
            case RecipeStep::Op::search:
                steps.push_back(json{{"op", "search"}, {"g", s.g}, {"lambda", s.lambda}});
                break;
            case RecipeStep::Op::compose:
                steps.push_back(json{{"op", "compose"}, {"left", s.left}, {"right", s.right}});
                break;
            case RecipeStep::Op::import_file:
                steps.push_back(json{{"op", "import"}, {"file", s.file}});
                break;
        }
    }
    return json{{"target", recipe.target}, {"steps", std::move(steps)}, {"text", recipe_text(recipe)}};
}

json stats_to_json(const KsStats& s) {
    json memb = json::object();
    for (auto [count, vectors] : s.membership_histogram) memb[std::to_string(count)] = vectors;
    json labels = json::object();
    for (auto [mult, vectors] : s.label_histogram) labels[std::to_string(mult)] = vectors;
    return json{{"n", s.n},
                {"root_order", s.root_order},
                {"num_vectors", s.num_vectors},
                {"num_bases", s.num_bases},
                {"vector_bound", s.vector_bound},
                {"membership_histogram", std::move(memb)},
                {"label_histogram", std::move(labels)},
                {"scalar_multiple_pairs", s.scalar_multiple_pairs}};
}

json noncolor_to_json(const NoncolorResult& r) {
    json out;
    switch (r.status) {
        case NoncolorStatus::no_valid_coloring: out["status"] = "no_valid_coloring"; break;
        case NoncolorStatus::found_coloring: out["status"] = "found_coloring"; break;
        case NoncolorStatus::budget_exceeded: out["status"] = "budget_exceeded"; break;
    }
    out["nodes"] = r.nodes;
    if (r.witness) {
        json marked = json::array();
        for (std::size_t i = 0; i < r.witness->size(); ++i)
            if ((*r.witness)[i]) marked.push_back(i);
        out["witness"] = std::move(marked);
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot open file for writing: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace ksforge
