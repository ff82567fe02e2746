// conelab: cone-restricted Diophantine approximation laboratory.
//
// Subcommands: estimate, count, metrical, construct, bounds. Every run
// embeds its configuration and a schema version in the JSON artifact and is
// byte-reproducible for identical inputs and seeds.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "conelab/errors.hpp"
#include "conelab/io.hpp"

using namespace conelab;

namespace {

struct CommonOut {
    std::string json_path;
    std::string csv_path;
};

void emit(const ojson& doc, const CommonOut& out) {
    std::string text = dump_json(doc);
    if (out.json_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_file(out.json_path, text);
}

ojson config_echo(const CLI::App* cmd) {
    ojson cfg;
    for (const CLI::Option* opt : cmd->get_options()) {
        if (opt->get_name().empty() || opt->count() == 0) continue;
        std::string name = opt->get_name();
        if (name.rfind("--", 0) == 0) name = name.substr(2);
        ojson vals = ojson::array();
        for (const auto& v : opt->results()) vals.push_back(v);
        cfg[name] = vals.size() == 1 ? vals[0] : vals;
    }
    return cfg;
}

std::vector<mpq_class> parse_targets(const std::string& csv) {
    std::vector<mpq_class> out;
    std::string cur;
    std::istringstream ss(csv);
    while (std::getline(ss, cur, ',')) {
        if (cur.empty()) continue;
        if (cur.find('.') != std::string::npos) {
            // decimal literal
            out.push_back(*PrecisionReal::from_decimal(cur, 64).exact_value());
        } else {
            mpq_class q(cur);
            q.canonicalize();
            out.push_back(q);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cone-restricted Diophantine exponent laboratory"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker thread cap (modules decide usage)")
        ->check(CLI::Range(1, 256));

    // ---- estimate ----------------------------------------------------
    auto* est = app.add_subcommand("estimate", "record scans and exponent estimates");
    std::string est_alpha, est_kind = "mu";
    long est_nmax = 1000, est_burn = 10;
    int est_ell = 1, est_axis = 0;
    CommonOut est_out;
    est->add_option("--alpha", est_alpha, "vector input JSON file")->required();
    est->add_option("--kind", est_kind, "mu | w | w_hat | nu_tilde")
        ->check(CLI::IsMember({"mu", "w", "w_hat", "nu_tilde"}));
    est->add_option("--ell", est_ell, "cone head length");
    est->add_option("--nmax", est_nmax, "truncation height")->required();
    est->add_option("--burn-in", est_burn, "burn-in height (>= 2)");
    est->add_option("--axis", est_axis, "restrict the scan to one coordinate axis");
    est->add_option("--out", est_out.json_path, "JSON report path");
    est->add_option("--csv", est_out.csv_path, "records CSV path");

    // ---- count ---------------------------------------------------------
    auto* cnt = app.add_subcommand("count", "primitive cone point counts and sums");
    int cnt_n = 3, cnt_ell = 1;
    long cnt_lo = 1, cnt_hi = 100;
    CommonOut cnt_out;
    cnt->add_option("--n", cnt_n, "dimension")->required();
    cnt->add_option("--ell", cnt_ell, "cone head length")->required();
    cnt->add_option("--N-lo", cnt_lo, "first height");
    cnt->add_option("--N-hi", cnt_hi, "last height")->required();
    cnt->add_option("--out", cnt_out.json_path, "JSON report path");
    cnt->add_option("--csv", cnt_out.csv_path, "CSV path");

    // ---- metrical -------------------------------------------------------
    auto* met = app.add_subcommand("metrical", "Monte Carlo zero-one law experiments");
    int met_n = 2, met_ell = 1;
    long met_nmax = 10000, met_trials = 100;
    uint64_t met_seed = 1;
    std::string met_w = "2", met_logexp = "0";
    std::string met_sweep;
    CommonOut met_out;
    met->add_option("--n", met_n, "dimension");
    met->add_option("--ell", met_ell, "cone head length");
    met->add_option("--psi-w", met_w, "power exponent w of psi(h) = h^-w (log h)^c");
    met->add_option("--psi-log-exp", met_logexp, "log exponent c");
    met->add_option("--nmax", met_nmax, "truncation height");
    met->add_option("--trials", met_trials, "number of sampled points");
    met->add_option("--seed", met_seed, "PRNG seed");
    met->add_option("--sweep", met_sweep, "CSV of hit_fraction over dyadic N_max");
    met->add_option("--out", met_out.json_path, "JSON report path");

    // ---- construct -------------------------------------------------------
    auto* con = app.add_subcommand("construct", "prescribed-exponent construction");
    int con_n = 3;
    long con_steps = 2;
    std::string con_targets, con_resume, con_chi;
    bool con_audit = false;
    long con_lb = 0;
    CommonOut con_out;
    con->add_option("--n", con_n, "degree / dimension");
    con->add_option("--targets", con_targets, "comma-separated mu_1..mu_n");
    con->add_option("--chi", con_chi, "Gelfond exponent chi (> G(n))");
    con->add_option("--steps", con_steps, "steps to run");
    con->add_option("--resume", con_resume, "resume from a state JSON");
    con->add_flag("--audit", con_audit, "audit each completed step");
    con->add_option("--audit-lower-bound", con_lb, "scan height cap B for the Q-scan");
    con->add_option("--out", con_out.json_path, "state JSON path")->required();

    // ---- bounds ----------------------------------------------------------
    auto* bnd = app.add_subcommand("bounds", "closed-form bounds and the body search");
    std::string bnd_alpha;
    int bnd_ell = 1;
    long bnd_nmax = 1000, bnd_N = 0;
    std::string bnd_eta = "2";
    CommonOut bnd_out;
    bnd->add_option("--alpha", bnd_alpha, "vector input JSON file")->required();
    bnd->add_option("--ell", bnd_ell, "cone head length");
    bnd->add_option("--nmax", bnd_nmax, "truncation height for the estimates");
    bnd->add_option("--minkowski-N", bnd_N, "run the convex-body search at this N");
    bnd->add_option("--eta", bnd_eta, "body stretch eta >= 1 (rational)");
    bnd->add_option("--out", bnd_out.json_path, "JSON report path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (est->parsed()) {
            RealVector alpha = load_vector_file(est_alpha);
            ExponentReport rep;
            ScanStats st;
            if (est_axis > 0) {
                auto recs = axis_record_scan(alpha, est_axis, est_nmax, &st);
                rep = estimate_mu(std::move(recs), est_burn, alpha.n(), est_ell, est_nmax,
                                  st.unresolved);
            } else if (est_kind == "mu") {
                rep = estimate_mu(alpha, ConeSpec::cone(est_ell), est_nmax, est_burn);
            } else if (est_kind == "w") {
                rep = estimate_w(alpha, est_nmax, est_burn);
            } else if (est_kind == "w_hat") {
                rep = estimate_w_hat(alpha, est_nmax);
            } else {
                rep = estimate_nu_tilde(alpha, est_ell, est_nmax, est_burn);
            }
            ojson doc = to_json(rep);
            doc["config"] = config_echo(est);
            emit(doc, est_out);
            if (!est_out.csv_path.empty()) write_file(est_out.csv_path, records_csv(rep.records));
        } else if (cnt->parsed()) {
            CountReport rep = make_count_report(cnt_n, cnt_ell, cnt_lo, cnt_hi);
            ojson doc = to_json(rep);
            doc["config"] = config_echo(cnt);
            emit(doc, cnt_out);
            if (!cnt_out.csv_path.empty()) write_file(cnt_out.csv_path, count_csv(rep));
            if (!rep.corridor_violations.empty()) return 3;
        } else if (met->parsed()) {
            ApproxFunction psi = ApproxFunction::power_log(mpq_class(met_w), mpq_class(met_logexp));
            TrialReport rep = sample_experiment(met_n, met_ell, psi, met_nmax,
                                                met_trials, met_seed, threads);
            ojson doc = to_json(rep);
            doc["config"] = config_echo(met);
            emit(doc, met_out);
            if (!met_sweep.empty()) {
                std::vector<std::pair<long, double>> rows;
                for (long nm = 16; nm <= met_nmax; nm *= 2) {
                    TrialReport r = sample_experiment(met_n, met_ell, psi, nm,
                                                      met_trials, met_seed, threads);
                    rows.emplace_back(nm, r.hit_fraction);
                }
                write_file(met_sweep, sweep_csv(rows));
            }
        } else if (con->parsed()) {
            ConstructionState state =
                !con_resume.empty()
                    ? construction_from_json(ojson::parse(read_file(con_resume)))
                    : construction_begin(ConstructionParams::make(
                          con_n, parse_targets(con_targets),
                          con_chi.empty() ? std::nullopt
                                          : std::optional<mpq_class>(mpq_class(con_chi))));
            std::string failure;
            try {
                while (static_cast<long>(state.steps.size()) < con_steps) next_step(state);
            } catch (const SearchExhausted& e) {
                failure = e.what();
            }
            ojson doc = to_json(state);
            doc["config"] = config_echo(con);
            if (!failure.empty()) doc["search_exhausted"] = failure;
            if (con_audit && !state.steps.empty()) {
                ojson audits = ojson::array();
                for (long j = 1; j <= static_cast<long>(state.steps.size()); ++j) {
                    StepAudit a = audit_step(state, j);
                    ojson ao;
                    ao["j"] = a.j;
                    ao["ell"] = a.ell;
                    ao["resolved"] = a.resolved;
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.6f", a.log_ratio);
                    ao["log_ratio"] = buf;
                    std::snprintf(buf, sizeof buf, "%.6f", a.target);
                    ao["target"] = buf;
                    std::snprintf(buf, sizeof buf, "%.6f", a.deviation);
                    ao["deviation"] = buf;
                    audits.push_back(std::move(ao));
                }
                doc["audits"] = std::move(audits);
            }
            if (con_lb > 0 && !state.steps.empty()) {
                LowerBoundAudit lb = audit_lower_bound(state, state.params.n, con_lb);
                ojson lo;
                lo["height_cap"] = con_lb;
                lo["scanned"] = lb.scanned;
                lo["positive"] = lb.positive;
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.6f", lb.lambda_hat_log2);
                lo["lambda_hat_log2"] = buf;
                doc["lower_bound_audit"] = std::move(lo);
            }
            emit(doc, con_out);
            if (!failure.empty()) return 1;
        } else if (bnd->parsed()) {
            RealVector alpha = load_vector_file(bnd_alpha);
            ojson doc;
            if (bnd_N > 0) {
                BodySpec spec{alpha, bnd_N, mpq_class(bnd_eta), bnd_ell};
                BodyPoint pt = minkowski_body_search(spec);
                doc = to_json(pt);
            } else {
                doc = to_json(bounds_report(alpha, bnd_ell, bnd_nmax));
            }
            doc["config"] = config_echo(bnd);
            emit(doc, bnd_out);
        }
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const CorridorViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const SearchBudgetExceeded& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
