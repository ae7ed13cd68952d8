#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cycov/census.hpp"
#include "cycov/cover.hpp"
#include "cycov/equiv.hpp"
#include "cycov/errors.hpp"
#include "cycov/json_io.hpp"
#include "cycov/recovery.hpp"

using namespace cycov;

namespace {

std::string read_poly_arg(const std::string& poly, const std::string& poly_file) {
    if (!poly_file.empty()) {
        std::ifstream in(poly_file);
        if (!in) throw Error("cannot open " + poly_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    if (poly.empty()) throw Error("--poly or --poly-file required");
    return poly;
}

int infer_nvars(const std::string& text) {
    int max_idx = -1;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] == 'x' && std::isdigit((unsigned char)text[i + 1])) {
            int idx = 0;
            std::size_t j = i + 1;
            while (j < text.size() && std::isdigit((unsigned char)text[j]))
                idx = idx * 10 + (text[j++] - '0');
            max_idx = std::max(max_idx, idx);
        }
    }
    return max_idx + 1;
}

Polynomial parse_poly(const std::string& text, int nvars, FieldRef field) {
    int nv = nvars > 0 ? nvars : infer_nvars(text);
    if (nv < 1) throw Error("cannot infer variable count; pass --nvars");
    return Polynomial::parse(text, nv, field);
}

ProjectivePoint parse_point(const std::string& text, FieldRef field) {
    // comma-separated coordinates, e.g. "0,0,0,1"
    std::vector<FieldElement> coords;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string part =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        coords.push_back(field->from_string(part));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return ProjectivePoint(std::move(coords));
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclic covers, outer Galois points, and branch-locus recovery "
                 "over exact fields"};
    app.require_subcommand(1);

    std::string field_spec = "p:13";
    std::string poly_text, poly_file;
    int nvars = 0;
    bool json_flag = true;
    app.add_option("--field", field_spec, "field spec: p:7, ext:7^2, or Q")->capture_default_str();
    app.add_flag("--json,!--no-json", json_flag, "JSON output on stdout (default)");

    auto add_poly_opts = [&](CLI::App* cmd) {
        cmd->add_option("--poly", poly_text, "polynomial text, e.g. x0^3+x1^3+x2^3");
        cmd->add_option("--poly-file", poly_file, "file containing the polynomial text");
        cmd->add_option("--nvars", nvars, "variable count (default: inferred)");
    };

    // parse
    auto* cmd_parse = app.add_subcommand("parse", "parse and canonicalize a polynomial");
    add_poly_opts(cmd_parse);

    // cover
    auto* cmd_cover = app.add_subcommand("cover", "cyclic d-fold cover of V(F)");
    add_poly_opts(cmd_cover);

    // galois
    unsigned ext_max = 1;
    std::uint64_t point_cap = kDefaultPointCap;
    std::uint64_t gl_cap = kDefaultGlCap;
    auto* cmd_galois = app.add_subcommand("galois", "enumerate outer Galois points");
    add_poly_opts(cmd_galois);
    cmd_galois->add_option("--ext-max", ext_max, "search extensions up to this degree");
    cmd_galois->add_option("--cap", point_cap, "point enumeration cap");

    // normalize
    auto* cmd_norm = app.add_subcommand("normalize", "Fermat-block structure normal form");
    add_poly_opts(cmd_norm);
    cmd_norm->add_option("--ext-max", ext_max, "Galois search extension bound");
    cmd_norm->add_option("--cap", point_cap, "point enumeration cap");

    // smooth
    unsigned k_max = 2;
    auto* cmd_smooth = app.add_subcommand("smooth", "bounded smoothness certificate");
    add_poly_opts(cmd_smooth);
    cmd_smooth->add_option("--k-max", k_max, "largest searched extension degree");
    cmd_smooth->add_option("--cap", point_cap, "point enumeration cap");

    // recover
    std::string hint_text;
    auto* cmd_recover = app.add_subcommand("recover", "recover the branch hypersurface");
    add_poly_opts(cmd_recover);
    cmd_recover->add_option("--hint", hint_text, "Galois point hint, e.g. 0,0,0,1");
    cmd_recover->add_option("--ext-max", ext_max, "Galois search extension bound");
    cmd_recover->add_option("--cap", point_cap, "point enumeration cap");

    // equiv
    std::string poly1, poly2, mode = "structured";
    auto* cmd_equiv = app.add_subcommand("equiv", "projective equivalence decision");
    cmd_equiv->add_option("--poly1", poly1, "first polynomial")->required();
    cmd_equiv->add_option("--poly2", poly2, "second polynomial")->required();
    cmd_equiv->add_option("--nvars", nvars, "variable count (default: inferred)");
    cmd_equiv->add_option("--mode", mode, "brute | structured")->capture_default_str();
    cmd_equiv->add_option("--cap", gl_cap, "GL scan cap");

    // census
    CensusParams census;
    auto* cmd_census = app.add_subcommand("census", "seeded random round-trip harness");
    cmd_census->add_option("--d", census.d, "degree")->capture_default_str();
    cmd_census->add_option("--n", census.n, "branch dimension (X in P^{n+1})")
        ->capture_default_str();
    cmd_census->add_option("--trials", census.trials, "number of trials")->required();
    cmd_census->add_option("--seed", census.seed, "PRNG seed")->capture_default_str();
    cmd_census->add_option("--ext-max", census.ext_max, "extension search bound");
    cmd_census->add_option("--cap", census.point_cap, "point enumeration cap");
    cmd_census->add_option("--gl-cap", census.gl_cap, "GL scan cap");

    CLI11_PARSE(app, argc, argv);

    try {
        FieldRef field = Field::parse_spec(field_spec);

        if (cmd_parse->parsed()) {
            Polynomial p = parse_poly(read_poly_arg(poly_text, poly_file), nvars, field);
            ordered_json j;
            j["field"] = field->spec_text();
            j["nvars"] = p.nvars();
            j["degree"] = p.degree();
            j["poly"] = p.to_text();
            j["terms"] = p.term_count();
            emit(j);
        } else if (cmd_cover->parsed()) {
            Polynomial p = parse_poly(read_poly_arg(poly_text, poly_file), nvars, field);
            Hypersurface y(p);
            Hypersurface cov = cyclic_cover(y);
            ordered_json j;
            j["cover_poly"] = cov.equation().to_text();
            j["new_var"] = cov.nvars() - 1;
            try {
                ProjectiveTransform deck = deck_transform(cov, (unsigned)cov.degree());
                j["deck"] = matrix_to_json(deck.matrix());
            } catch (const NoRootOfUnity& e) {
                j["deck"] = nullptr;
                j["deck_unavailable_reason"] = e.what();
                j["deck_minimal_extension_degree"] = e.minimal_extension_degree;
            }
            emit(j);
        } else if (cmd_galois->parsed()) {
            Polynomial p = parse_poly(read_poly_arg(poly_text, poly_file), nvars, field);
            Hypersurface x(p);
            GaloisReport r = enumerate_galois(x, ext_max, point_cap);
            emit(galois_report_to_json(r));
        } else if (cmd_norm->parsed()) {
            Polynomial p = parse_poly(read_poly_arg(poly_text, poly_file), nvars, field);
            Hypersurface x(p);
            GaloisReport r = enumerate_galois(x, ext_max, point_cap);
            auto rational = r.rational_points();
            if (rational.empty()) throw NoGaloisPointFound("no rational outer Galois points");
            StructureNormalForm nf = structure_normalize(x, rational);
            ordered_json j;
            j["matrix"] = matrix_to_json(nf.transform.matrix());
            j["r"] = nf.r;
            j["G"] = nf.tail.to_text();
            j["normal_form"] = nf.normal_form.to_text();
            ordered_json bc = ordered_json::array();
            for (const auto& c : nf.block_coefficients) bc.push_back(c.to_string());
            j["block_coefficients"] = bc;
            j["unit_block"] = nf.unit_block();
            emit(j);
        } else if (cmd_smooth->parsed()) {
            Polynomial p = parse_poly(read_poly_arg(poly_text, poly_file), nvars, field);
            Hypersurface x(p);
            if (field->kind() == FieldKind::Rational) {
                auto reports = smoothness_mod_primes(x, k_max);
                ordered_json j = ordered_json::array();
                for (const auto& [prime, cert] : reports) {
                    ordered_json entry;
                    entry["mod_prime"] = prime;
                    entry["certificate"] = certificate_to_json(cert);
                    j.push_back(entry);
                }
                emit(j);
            } else {
                emit(certificate_to_json(smoothness_certificate(x, k_max, point_cap)));
            }
        } else if (cmd_recover->parsed()) {
            Polynomial p = parse_poly(read_poly_arg(poly_text, poly_file), nvars, field);
            Hypersurface h(p);
            std::optional<ProjectivePoint> hint;
            if (!hint_text.empty()) hint = parse_point(hint_text, field);
            RecoveryResult r = recover_branch(h, hint, ext_max, point_cap);
            ordered_json j;
            j["base_poly"] = r.base.equation().to_text();
            j["witness_matrix"] = matrix_to_json(r.witness.matrix());
            j["galois_point_used"] = point_to_json(r.galois_point);
            emit(j);
        } else if (cmd_equiv->parsed()) {
            int nv = nvars > 0 ? nvars : std::max(infer_nvars(poly1), infer_nvars(poly2));
            Hypersurface f1{Polynomial::parse(poly1, nv, field)};
            Hypersurface f2{Polynomial::parse(poly2, nv, field)};
            ordered_json j;
            if (mode == "brute") {
                auto w = equivalent_bruteforce(f1, f2, gl_cap);
                j["verdict"] = w ? "equivalent" : "inequivalent";
                if (w) j["witness"] = matrix_to_json(w->matrix());
                j["scanned"] = "complete";
            } else if (mode == "structured") {
                EquivalenceVerdict v = equivalent_structured(f1, f2, gl_cap, point_cap);
                j["verdict"] = v.outcome == EquivalenceOutcome::Equivalent     ? "equivalent"
                               : v.outcome == EquivalenceOutcome::Inequivalent ? "inequivalent"
                                                                               : "inconclusive";
                if (v.witness) j["witness"] = matrix_to_json(v.witness->matrix());
                j["reason"] = v.reason;
                ordered_json inv = ordered_json::object();
                for (const auto& [k, val] : v.invariants) inv[k] = val;
                j["invariants"] = inv;
                j["scanned"] = v.scanned;
            } else {
                throw Error("unknown mode " + mode);
            }
            emit(j);
        } else if (cmd_census->parsed()) {
            census.field_spec = field_spec;
            CensusReport r = run_census(census);
            emit(r.to_json());
            std::cerr << "census: " << r.retained << "/" << census.trials
                      << " retained, round trips " << r.round_trip_pass << "/" << r.retained
                      << (r.outside_theorem_scope ? " (n=1: outside theorem scope)" : "")
                      << "\n";
        }
        return 0;
    } catch (const FalsificationError& e) {
        ordered_json j;
        j["falsification"] = e.what();
        j["bundle"] = ordered_json::parse(e.bundle_json);
        std::cout << j.dump(2) << "\n";
        std::cerr << "FALSIFICATION: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
