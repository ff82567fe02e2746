#include "conelab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "conelab/errors.hpp"

namespace conelab {

namespace {

std::string mpz_str(const mpz_class& z) { return z.get_str(); }
std::string mpq_str(const mpq_class& q) { return q.get_str(); }

mpz_class mpz_from(const std::string& s) {
    try {
        return mpz_class(s);
    } catch (const std::invalid_argument&) {
        throw ValidationError("bad integer literal: " + s);
    }
}

mpq_class mpq_from(const std::string& s) {
    try {
        mpq_class q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ValidationError("bad rational literal: " + s);
    }
}

std::string fixed17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string interval_to_string(const Interval& iv, const char* which) {
    char* s = nullptr;
    bool lo = std::string(which) == "lo";
    mpfr_asprintf(&s, "%.24Re", lo ? iv.lo() : iv.hi());
    std::string out = s;
    mpfr_free_str(s);
    return out;
}

RealVector vector_from_json(const ojson& j) {
    if (!j.contains("n") || !j.contains("coords"))
        throw ValidationError("vector file needs n and coords");
    int n = j.at("n").get<int>();
    int bits = j.value("precision_bits", 192);
    if (bits < 16 || bits > 1 << 20) throw ValidationError("unreasonable precision_bits");
    const auto& coords = j.at("coords");
    if (!coords.is_array() || static_cast<int>(coords.size()) != n)
        throw ValidationError("coords must be an array of length n");
    std::vector<PrecisionReal> out;
    for (const auto& c : coords) {
        std::string kind = c.at("kind").get<std::string>();
        if (kind == "rational") {
            mpz_class p = mpz_from(c.at("p").get<std::string>());
            mpz_class q = mpz_from(c.at("q").get<std::string>());
            if (q == 0) throw ValidationError("rational coord with q = 0");
            mpq_class v(p, q);
            v.canonicalize();
            out.push_back(PrecisionReal::from_rational(v, bits));
        } else if (kind == "decimal") {
            out.push_back(PrecisionReal::from_decimal(c.at("value").get<std::string>(), bits));
        } else if (kind == "algebraic") {
            std::vector<mpz_class> poly;
            for (const auto& coe : c.at("poly")) poly.push_back(mpz_from(coe.get<std::string>()));
            mpq_class lo = mpq_from(c.at("lo").get<std::string>());
            mpq_class hi = mpq_from(c.at("hi").get<std::string>());
            out.push_back(PrecisionReal::from_algebraic(std::move(poly), lo, hi, bits));
        } else if (kind == "series") {
            mpq_class w = mpq_from(c.at("w_target").get<std::string>());
            out.push_back(PrecisionReal::gap_series(w, bits));
        } else {
            throw ValidationError("unknown coord kind: " + kind);
        }
    }
    return RealVector(std::move(out));
}

RealVector load_vector_file(const std::string& path) {
    ojson j;
    try {
        j = ojson::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("cannot parse vector file: ") + e.what());
    }
    return vector_from_json(j);
}

ojson vector_to_json(const RealVector& v) {
    ojson coords = ojson::array();
    for (const auto& c : v.coords) {
        ojson o;
        switch (c.origin()) {
            case OriginKind::rational:
                o["kind"] = "rational";
                o["p"] = mpz_str(c.exact_value()->get_num());
                o["q"] = mpz_str(c.exact_value()->get_den());
                break;
            case OriginKind::decimal:
                o["kind"] = "decimal";
                o["value"] = c.decimal_text();
                break;
            case OriginKind::algebraic: {
                o["kind"] = "algebraic";
                ojson poly = ojson::array();
                for (const auto& coe : c.algebraic_poly()) poly.push_back(mpz_str(coe));
                o["poly"] = poly;
                auto iso = c.algebraic_isolation();
                o["lo"] = mpq_str(iso.first);
                o["hi"] = mpq_str(iso.second);
                break;
            }
            case OriginKind::series:
                o["kind"] = "series";
                o["w_target"] = mpq_str(c.series_w_target());
                break;
            case OriginKind::derived:
                throw ValidationError("derived values cannot be serialized as inputs");
        }
        coords.push_back(std::move(o));
    }
    ojson j;
    j["n"] = v.n();
    j["precision_bits"] = v.precision_bits();
    j["coords"] = std::move(coords);
    return j;
}

ojson to_json(const ConeRecord& r) {
    ojson o;
    o["h"] = r.h;
    ojson xs = ojson::array();
    for (const auto& e : r.x.entries) xs.push_back(mpz_str(e));
    o["x"] = std::move(xs);
    o["err_lo"] = interval_to_string(r.err, "lo");
    o["err_hi"] = interval_to_string(r.err, "hi");
    if (r.exact_err) o["err_exact"] = mpq_str(*r.exact_err);
    if (r.ratio) {
        o["ratio"] = fixed17(*r.ratio);
        o["ratio_lo"] = fixed17(r.ratio_lo);
        o["ratio_hi"] = fixed17(r.ratio_hi);
    }
    return o;
}

ojson to_json(const ExponentReport& rep) {
    ojson o;
    o["schema_version"] = kSchemaVersion;
    o["kind"] = exponent_kind_name(rep.kind);
    o["n"] = rep.n;
    o["ell"] = rep.ell;
    o["estimate"] = fixed17(rep.estimate);
    o["burn_in_height"] = rep.burn_in_height;
    o["truncation_height"] = rep.truncation_height;
    o["unresolved_count"] = rep.unresolved_count;
    ojson recs = ojson::array();
    for (const auto& r : rep.records) recs.push_back(to_json(r));
    o["records"] = std::move(recs);
    if (!rep.grid_points.empty()) {
        ojson gps = ojson::array();
        for (const auto& g : rep.grid_points) {
            ojson gp;
            gp["X"] = g.X;
            gp["best_err_lo"] = fixed17(g.best_err_lo);
            gp["best_err_hi"] = fixed17(g.best_err_hi);
            gp["ratio"] = fixed17(g.ratio);
            gp["dirichlet_ok"] = g.dirichlet_ok;
            gps.push_back(std::move(gp));
        }
        o["grid"] = std::move(gps);
    }
    return o;
}

ojson to_json(const CountReport& rep) {
    ojson o;
    o["schema_version"] = kSchemaVersion;
    o["n"] = rep.n;
    o["ell"] = rep.ell;
    o["N_lo"] = rep.N_lo;
    o["N_hi"] = rep.N_hi;
    ojson rows = ojson::array();
    for (size_t i = 0; i < rep.Ns.size(); ++i) {
        ojson row;
        row["N"] = rep.Ns[i];
        row["pn_exact"] = rep.pn_exact[i];
        row["pn_moebius"] = rep.pn_moebius[i];
        if (!rep.moebius_sums.empty()) row["moebius_sum"] = mpq_str(rep.moebius_sums[i]);
        row["totient_sum"] = rep.totient_sums[i];
        rows.push_back(std::move(row));
    }
    o["rows"] = std::move(rows);
    o["corridor_violations"] = rep.corridor_violations;
    o["ratio_min"] = fixed17(rep.ratio_min);
    o["ratio_max"] = fixed17(rep.ratio_max);
    return o;
}

ojson to_json(const TrialReport& rep) {
    ojson o;
    o["schema_version"] = kSchemaVersion;
    o["n"] = rep.n;
    o["ell"] = rep.ell;
    o["psi_w"] = mpq_str(rep.psi.w);
    o["psi_log_exp"] = mpq_str(rep.psi.log_exp);
    o["psi_monotone_from"] = rep.psi.monotone_from;
    o["n_max"] = rep.n_max;
    o["trials"] = rep.trials;
    o["seed"] = rep.seed;
    o["hits"] = rep.hits;
    o["hit_fraction"] = fixed17(rep.hit_fraction);
    o["stderr_binomial"] = fixed17(rep.stderr_binomial);
    o["precision_exhausted_trials"] = rep.precision_exhausted_trials;
    o["per_trial_witness_count"] = rep.per_trial_witness_count;
    o["per_trial_first_hit"] = rep.per_trial_first_hit;
    ojson wins = ojson::array();
    for (size_t i = 0; i < rep.window_lo.size(); ++i) {
        ojson w;
        w["lo"] = rep.window_lo[i];
        w["hi"] = rep.window_hi[i];
        w["hit_trials"] = rep.window_hit_trials[i];
        wins.push_back(std::move(w));
    }
    o["windows"] = std::move(wins);
    o["tail_half_hit_trials"] = rep.tail_half_hit_trials;
    o["tail_quarter_hit_trials"] = rep.tail_quarter_hit_trials;
    return o;
}

ojson to_json(const BoundsReport& rep) {
    ojson o;
    o["schema_version"] = kSchemaVersion;
    o["n"] = rep.n;
    o["ell"] = rep.ell;
    o["n_max"] = rep.n_max;
    o["w_hat_estimate"] = fixed17(rep.w_hat_estimate);
    o["w_estimate"] = fixed17(rep.w_estimate);
    o["mu_estimate"] = fixed17(rep.mu_estimate);
    o["mu_full_estimate"] = fixed17(rep.mu_full_estimate);
    o["eq5_at_estimates"] = fixed17(rep.eq5_at_estimates);
    o["thurnheer_at_estimates"] = fixed17(rep.thurnheer_at_estimates);
    o["golden"] = fixed17(rep.golden);
    ojson ver = ojson::array();
    for (double v : rep.veronese) ver.push_back(fixed17(v));
    o["veronese"] = std::move(ver);
    ojson vex = ojson::array();
    for (int l = 1; l < rep.n; ++l) vex.push_back(bound_veronese_exact(rep.n, l).get_str());
    o["veronese_exact"] = std::move(vex);
    o["tautology_violated"] = rep.tautology_violated;
    o["notes"] = rep.notes;
    return o;
}

ojson to_json(const ConstructionState& st) {
    ojson o;
    o["schema_version"] = kSchemaVersion;
    ojson par;
    par["n"] = st.params.n;
    ojson tg = ojson::array();
    for (const auto& t : st.params.targets) tg.push_back(mpq_str(t));
    par["targets"] = std::move(tg);
    par["chi"] = mpq_str(st.params.chi);
    par["g_cap"] = mpz_str(st.params.g_cap);
    par["hard_cap"] = mpz_str(st.params.hard_cap);
    par["candidate_budget"] = st.params.candidate_budget;
    par["enlarge_retries"] = st.params.enlarge_retries;
    ojson lam = ojson::array();
    for (const auto& l : st.params.lambda) lam.push_back(mpq_str(l));
    par["lambda"] = std::move(lam);
    par["warnings"] = st.params.warnings;
    o["params"] = std::move(par);

    ojson steps = ojson::array();
    for (const auto& s : st.steps) {
        ojson e;
        e["j"] = s.j;
        e["ell"] = s.ell;
        e["c"] = mpz_str(s.c);
        e["g"] = mpz_str(s.g);
        ojson P = ojson::array(), Q = ojson::array();
        for (const auto& co : s.P) P.push_back(mpz_str(co));
        for (const auto& co : s.Q) Q.push_back(mpz_str(co));
        e["P"] = std::move(P);
        e["Q"] = std::move(Q);
        e["gamma_lo"] = mpq_str(s.gamma_lo);
        e["gamma_hi"] = mpq_str(s.gamma_hi);
        e["xi_lo"] = mpq_str(s.xi_lo);
        e["xi_hi"] = mpq_str(s.xi_hi);
        e["HQ"] = mpz_str(s.HQ);
        e["nu"] = mpq_str(s.nu);
        steps.push_back(std::move(e));
    }
    o["steps"] = std::move(steps);
    return o;
}

ConstructionState construction_from_json(const ojson& j) {
    const ojson& par = j.at("params");
    std::vector<mpq_class> targets;
    for (const auto& t : par.at("targets")) targets.push_back(mpq_from(t.get<std::string>()));
    ConstructionParams p = ConstructionParams::make(par.at("n").get<int>(), targets,
                                                    mpq_from(par.at("chi").get<std::string>()));
    p.g_cap = mpz_from(par.at("g_cap").get<std::string>());
    p.hard_cap = mpz_from(par.at("hard_cap").get<std::string>());
    p.candidate_budget = par.at("candidate_budget").get<long>();
    p.enlarge_retries = par.at("enlarge_retries").get<int>();
    ConstructionState st = construction_begin(std::move(p));
    for (const auto& e : j.at("steps")) {
        ConstructionStep s;
        s.j = e.at("j").get<long>();
        s.ell = e.at("ell").get<int>();
        s.c = mpz_from(e.at("c").get<std::string>());
        s.g = mpz_from(e.at("g").get<std::string>());
        for (const auto& co : e.at("P")) s.P.push_back(mpz_from(co.get<std::string>()));
        for (const auto& co : e.at("Q")) s.Q.push_back(mpz_from(co.get<std::string>()));
        s.gamma_lo = mpq_from(e.at("gamma_lo").get<std::string>());
        s.gamma_hi = mpq_from(e.at("gamma_hi").get<std::string>());
        s.xi_lo = mpq_from(e.at("xi_lo").get<std::string>());
        s.xi_hi = mpq_from(e.at("xi_hi").get<std::string>());
        s.HQ = mpz_from(e.at("HQ").get<std::string>());
        s.nu = mpq_from(e.at("nu").get<std::string>());
        st.steps.push_back(std::move(s));
    }
    return st;
}

ojson to_json(const BodyPoint& pt) {
    ojson o;
    o["schema_version"] = kSchemaVersion;
    o["x0"] = mpz_str(pt.x0);
    ojson xs = ojson::array();
    for (const auto& e : pt.x.entries) xs.push_back(mpz_str(e));
    o["x"] = std::move(xs);
    o["form_lo"] = interval_to_string(pt.form_value, "lo");
    o["form_hi"] = interval_to_string(pt.form_value, "hi");
    o["head_bound"] = mpz_str(pt.head_bound);
    return o;
}

std::string records_csv(const std::vector<ConeRecord>& recs) {
    std::ostringstream out;
    out << "h,x,err_lo,err_hi,ratio\n";
    for (const auto& r : recs) {
        out << r.h << ',';
        for (size_t i = 0; i < r.x.entries.size(); ++i) {
            if (i) out << ';';
            out << r.x.entries[i].get_str();
        }
        out << ',' << interval_to_string(r.err, "lo") << ','
            << interval_to_string(r.err, "hi") << ',';
        if (r.ratio) out << fixed17(*r.ratio);
        out << '\n';
    }
    return out.str();
}

std::string count_csv(const CountReport& rep) {
    std::ostringstream out;
    out << "N,pn_exact,pn_moebius,ratio_to_pow,moebius_sum\n";
    for (size_t i = 0; i < rep.Ns.size(); ++i) {
        double ratio = static_cast<double>(rep.pn_exact[i]);
        for (int k = 0; k < rep.n - 1; ++k) ratio /= static_cast<double>(rep.Ns[i]);
        out << rep.Ns[i] << ',' << rep.pn_exact[i] << ',' << rep.pn_moebius[i] << ','
            << fixed17(ratio) << ',';
        if (!rep.moebius_sums.empty()) out << rep.moebius_sums[i].get_str();
        out << '\n';
    }
    return out.str();
}

std::string sweep_csv(const std::vector<std::pair<long, double>>& rows) {
    std::ostringstream out;
    out << "n_max,hit_fraction\n";
    for (const auto& [n, f] : rows) out << n << ',' << fixed17(f) << '\n';
    return out.str();
}

std::string dump_json(const ojson& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_schema(const ojson& doc, const ojson& schema, const std::string& where) {
    if (schema.contains("type")) {
        std::string t = schema.at("type").get<std::string>();
        bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
                  (t == "string" && doc.is_string()) ||
                  (t == "integer" && doc.is_number_integer()) ||
                  (t == "number" && doc.is_number()) || (t == "boolean" && doc.is_boolean());
        if (!ok) throw ValidationError("schema: " + where + " is not a " + t);
    }
    if (schema.contains("required"))
        for (const auto& k : schema.at("required")) {
            std::string key = k.get<std::string>();
            if (!doc.contains(key))
                throw ValidationError("schema: " + where + " missing key " + key);
        }
    if (schema.contains("properties") && doc.is_object())
        for (const auto& [key, sub] : schema.at("properties").items())
            if (doc.contains(key)) check_schema(doc.at(key), sub, where + "." + key);
    if (schema.contains("items") && doc.is_array())
        for (size_t i = 0; i < doc.size(); ++i)
            check_schema(doc[i], schema.at("items"), where + "[" + std::to_string(i) + "]");
}

}  // namespace conelab
