#ifndef CYCOV_CENSUS_HPP
#define CYCOV_CENSUS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cycov/equiv.hpp"
#include "cycov/json_io.hpp"

namespace cycov {

struct CensusParams {
    std::string field_spec = "p:13";
    int d = 3;
    int n = 1;       // branch hypersurfaces live in P^{n+1}
    int trials = 0;
    std::uint64_t seed = 0;
    unsigned ext_max = 1;
    std::uint64_t point_cap = kDefaultPointCap;
    std::uint64_t gl_cap = kDefaultGlCap;
};

struct CensusTrial {
    int index = 0;
    std::string poly;
    bool retained = false;
    std::string reject_reason;  // empty when retained
    int delta = 0;
    std::vector<std::string> galois_points;
    ordered_json g_matrix;
    std::string recovered_poly;
    bool round_trip_pass = false;
    /// Round trip closed only up to a d-th-power twist of the branch: the
    /// recovered branch is inequivalent over the working field but carries
    /// an exact twist certificate.  A finite-field artifact, not a theorem
    /// violation.
    bool round_trip_twist = false;
    /// Residual comparison exceeded the configured search caps; recorded,
    /// never silently dropped.
    bool round_trip_unresolved = false;
    std::string unresolved_reason;
    std::string twist_scalar;
    ordered_json twist_certificate;
};

/// Retained trial data, kept out of the JSON so downstream checks (e.g. the
/// normal-form pass) can reuse the instances without replaying the run.
struct RetainedInstance {
    Hypersurface hypersurface;
    std::vector<ProjectivePoint> galois_points;
};

struct CensusReport {
    CensusParams params;
    int retained = 0;
    int round_trip_pass = 0;
    int round_trip_twist = 0;       // closed only up to a d-th-power twist
    int round_trip_unresolved = 0;  // residual search capped out
    std::map<int, int> delta_histogram;
    std::vector<CensusTrial> trials;
    std::vector<RetainedInstance> retained_instances;  // not serialized
    bool outside_theorem_scope = false;                // n < 2

    ordered_json to_json() const;
};

/// Seeded random-hypersurface harness: draw, filter by smoothness
/// certificate, count Galois points against the bound, round-trip through
/// cover construction, random transform, recovery, and base equivalence.
/// Any bound violation, block-structure violation, or round-trip failure
/// raises FalsificationError with a reproduction bundle.
CensusReport run_census(const CensusParams& params);

}  // namespace cycov

#endif
