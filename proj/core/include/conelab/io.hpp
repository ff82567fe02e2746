#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "conelab/bounds.hpp"
#include "conelab/construct.hpp"
#include "conelab/counting.hpp"
#include "conelab/metrical.hpp"

namespace conelab {

/// Key order is kept as written so identical runs serialize byte-identically.
using ojson = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "conelab-1";

// ---- real vectors -------------------------------------------------------
// file format: {"n": int, "precision_bits": int, "coords": [coord...]}
// coord kinds: {"kind":"rational","p":"...","q":"..."}
//              {"kind":"decimal","value":"3.14"}
//              {"kind":"algebraic","poly":["c0","c1",...],"lo":"p/q","hi":"p/q"}
//              {"kind":"series","w_target":"4"}
RealVector vector_from_json(const ojson& j);
RealVector load_vector_file(const std::string& path);
ojson vector_to_json(const RealVector& v);

// ---- reports ------------------------------------------------------------
ojson to_json(const ConeRecord& r);
ojson to_json(const ExponentReport& rep);
ojson to_json(const CountReport& rep);
ojson to_json(const TrialReport& rep);
ojson to_json(const BoundsReport& rep);
ojson to_json(const ConstructionState& st);
ConstructionState construction_from_json(const ojson& j);
ojson to_json(const BodyPoint& pt);

// ---- CSV ----------------------------------------------------------------
/// columns: h, x (semicolon-joined), err_lo, err_hi, ratio
std::string records_csv(const std::vector<ConeRecord>& recs);
/// columns: N, pn_exact, pn_moebius, ratio_to_pow, moebius_sum
std::string count_csv(const CountReport& rep);
/// columns: n_max, hit_fraction
std::string sweep_csv(const std::vector<std::pair<long, double>>& rows);

// ---- plumbing -----------------------------------------------------------
std::string dump_json(const ojson& j);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// Minimal structural validator for the shipped schema files: checks
/// "type", "required" and "properties"/"items" recursively.
void check_schema(const ojson& doc, const ojson& schema, const std::string& where = "$");

std::string interval_to_string(const Interval& iv, const char* which);  // "lo"/"hi"

}  // namespace conelab
