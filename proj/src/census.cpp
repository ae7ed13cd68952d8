#include "cycov/census.hpp"

#include <numeric>

#include "cycov/cover.hpp"
#include "cycov/errors.hpp"
#include "cycov/recovery.hpp"

namespace cycov {

namespace {

ordered_json repro_bundle(const CensusParams& params, int trial_index, const std::string& poly,
                          const std::string& stage, const std::string& detail) {
    ordered_json b;
    b["field"] = params.field_spec;
    b["d"] = params.d;
    b["n"] = params.n;
    b["seed"] = params.seed;
    b["trial_index"] = trial_index;
    b["poly"] = poly;
    b["stage"] = stage;
    b["detail"] = detail;
    return b;
}

}  // namespace

ordered_json CensusReport::to_json() const {
    ordered_json j;
    j["params"] = {{"field", params.field_spec}, {"d", params.d},     {"n", params.n},
                   {"trials", params.trials},    {"seed", params.seed},
                   {"ext_max", params.ext_max},  {"point_cap", params.point_cap},
                   {"gl_cap", params.gl_cap}};
    j["retained"] = retained;
    j["round_trip_pass"] = round_trip_pass;
    j["round_trip_twist"] = round_trip_twist;
    j["round_trip_unresolved"] = round_trip_unresolved;
    ordered_json hist = ordered_json::object();
    for (const auto& [delta, count] : delta_histogram) hist[std::to_string(delta)] = count;
    j["delta_histogram"] = hist;
    j["outside_theorem_scope"] = outside_theorem_scope;
    ordered_json ts = ordered_json::array();
    for (const auto& t : trials) {
        ordered_json tj;
        tj["index"] = t.index;
        tj["poly"] = t.poly;
        tj["retained"] = t.retained;
        if (!t.retained) {
            tj["reject_reason"] = t.reject_reason;
        } else {
            tj["delta"] = t.delta;
            tj["galois_points"] = t.galois_points;
            tj["g_matrix"] = t.g_matrix;
            tj["recovered_poly"] = t.recovered_poly;
            tj["round_trip_pass"] = t.round_trip_pass;
            if (t.round_trip_twist) {
                tj["round_trip_twist"] = true;
                tj["twist_scalar"] = t.twist_scalar;
                tj["twist_certificate"] = t.twist_certificate;
            }
            if (t.round_trip_unresolved) {
                tj["round_trip_unresolved"] = true;
                tj["unresolved_reason"] = t.unresolved_reason;
            }
        }
        ts.push_back(tj);
    }
    j["trials"] = ts;
    ordered_json notes = ordered_json::array();
    notes.push_back(kFiniteFieldTestbedNote);
    if (round_trip_twist > 0)
        notes.push_back(
            "twisted round trips: the recovered branch differs from the original by a "
            "non-d-th-power scalar twist, which is invisible over an algebraically closed "
            "field; certificates are attached to the affected trials");
    j["notes"] = notes;
    return j;
}

CensusReport run_census(const CensusParams& params) {
    FieldRef field = Field::parse_spec(params.field_spec);
    if (!field->finite()) throw InfiniteField("census needs a finite field");
    if (std::gcd(field->characteristic(), (std::uint64_t)params.d) != 1)
        throw CharDividesDegree("characteristic divides d");
    if (params.d < 2) throw Error("census needs d >= 2");
    if (params.n < 1) throw Error("census needs n >= 1");

    int base_vars = params.n + 2;  // branch hypersurface in P^{n+1}
    auto monomials = monomials_of_degree(base_vars, params.d);
    std::uint64_t q = field->order().get_ui();

    CensusReport report;
    report.params = params;
    report.outside_theorem_scope = params.n < 2;

    SplitMix64 rng(params.seed);
    for (int trial = 0; trial < params.trials; ++trial) {
        CensusTrial rec;
        rec.index = trial;

        Polynomial::TermMap terms;
        for (const auto& m : monomials) {
            FieldElement c = field->element_at(rng.below(q));
            if (!c.is_zero()) terms.emplace(m, c);
        }
        if (terms.empty()) {
            rec.poly = "0";
            rec.reject_reason = "zero polynomial";
            report.trials.push_back(std::move(rec));
            continue;
        }
        Polynomial f =
            Polynomial::from_terms(field, base_vars, params.d, std::move(terms));
        rec.poly = f.to_text();
        Hypersurface y(f);

        SmoothnessCertificate cert = smoothness_certificate(y, params.ext_max, params.point_cap);
        if (!cert.clean()) {
            rec.reject_reason = "singular point found at extension degree " +
                                std::to_string(cert.singular.front().first);
            report.trials.push_back(std::move(rec));
            continue;
        }

        rec.retained = true;
        ++report.retained;

        GaloisReport galois = enumerate_galois(y, params.ext_max, params.point_cap);
        if (galois.bound_violated) {
            std::string msg = "outer Galois point count " +
                              std::to_string(galois.delta_lower_bound) +
                              " exceeds the bound " + std::to_string(galois.bound) +
                              " on a certificate-clean hypersurface";
            ordered_json bundle = repro_bundle(params, trial, rec.poly, "galois_bound", msg);
            throw FalsificationError(msg, bundle.dump());
        }
        rec.delta = galois.delta_lower_bound;
        for (const auto& [k, p] : galois.points) rec.galois_points.push_back(p.to_string());
        report.delta_histogram[galois.delta_lower_bound] += 1;
        report.retained_instances.push_back(RetainedInstance{y, galois.rational_points()});

        // round trip: transform the cover by a random g, recover, compare
        Hypersurface cov = cyclic_cover(y);
        Matrix mg = random_invertible_matrix(field, base_vars + 1, rng);
        rec.g_matrix = matrix_to_json(mg);
        Hypersurface moved(cov.equation().apply_linear(mg));
        try {
            RecoveryResult recov = recover_branch(moved, std::nullopt, 1, params.point_cap);
            rec.recovered_poly = recov.base.equation().to_text();
            ProjectiveTransform t =
                close_round_trip(y, mg, recov, params.gl_cap, params.point_cap);
            rec.round_trip_pass = verify_equivalence(y, recov.base, t);
        } catch (const RoundTripTwist& e) {
            rec.round_trip_twist = true;
            rec.twist_scalar = e.twist_scalar;
            rec.twist_certificate = ordered_json::parse(e.certificate_json);
        } catch (const CapExceeded& e) {
            rec.round_trip_unresolved = true;
            rec.unresolved_reason = e.what();
        } catch (const FalsificationError&) {
            throw;
        } catch (const Error& e) {
            ordered_json bundle = repro_bundle(params, trial, rec.poly, "round_trip", e.what());
            throw FalsificationError(std::string("round trip failed: ") + e.what(),
                                     bundle.dump());
        }
        if (rec.round_trip_twist) {
            ++report.round_trip_twist;
        } else if (rec.round_trip_unresolved) {
            ++report.round_trip_unresolved;
        } else if (rec.round_trip_pass) {
            ++report.round_trip_pass;
        } else {
            ordered_json bundle = repro_bundle(params, trial, rec.poly, "round_trip",
                                               "witness failed the substitution check");
            throw FalsificationError("round trip produced an unverified witness",
                                     bundle.dump());
        }
        report.trials.push_back(std::move(rec));
    }
    return report;
}

}  // namespace cycov
