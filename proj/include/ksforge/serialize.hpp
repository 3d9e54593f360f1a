#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ksforge/cyclotomic.hpp"
#include "ksforge/ghmat.hpp"
#include "ksforge/ksset.hpp"
#include "ksforge/shadamard.hpp"

namespace ksforge {

/// Malformed or out-of-range input document.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// CycInt <-> {"order": L, "coeffs": [c0, ..., c_{L-1}]}
nlohmann::json cyc_to_json(const CycInt& a);
CycInt cyc_from_json(const nlohmann::json& j);

// GH matrix <-> {"kind":"gh","g":...,"lambda":...,"entries":[[...],...]}
nlohmann::json gh_to_json(const GHMatrix& m);
GHMatrix gh_from_json(const nlohmann::json& j);
nlohmann::json gh_report_to_json(const GhReport& r);

struct GhImport {
    GHMatrix matrix;
    GhReport report;
};
/// Parse and always verify; a failing matrix still loads, with the verdict
/// recorded in the report.
GhImport gh_import(const nlohmann::json& j);
GhImport gh_import_file(const std::string& path);

// S-Hadamard <-> {"kind":"shadamard","n":...,"root_order":...,"exponents":[[...],...]}
nlohmann::json shad_to_json(const SHadamard& h);
SHadamard shad_from_json(const nlohmann::json& j);
nlohmann::json shad_report_to_json(const ShadReport& r);

struct ShadImport {
    SHadamard matrix;
    ShadReport report;
};
ShadImport shad_import(const nlohmann::json& j);
ShadImport shad_import_file(const std::string& path);

// KS pair <-> {"kind":"ks_pair","n":...,"root_order":...,"vectors":[...],"bases":[...]}
nlohmann::json ks_to_json(const KSPair& p);
KSPair ks_from_json(const nlohmann::json& j);
nlohmann::json ks_report_to_json(const KsReport& r);

struct KsImport {
    KSPair pair;
    KsReport report;
};
KsImport ks_import(const nlohmann::json& j);
KsImport ks_import_file(const std::string& path);

nlohmann::json recipe_to_json(const Recipe& recipe);
nlohmann::json stats_to_json(const KsStats& stats);
nlohmann::json noncolor_to_json(const NoncolorResult& result);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace ksforge
