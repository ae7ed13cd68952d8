#include "cycov/json_io.hpp"

#include <cmath>

#include "cycov/errors.hpp"

namespace cycov {

const char* kFiniteFieldTestbedNote =
    "finite-field testbed: counts are lower bounds relative to an algebraically "
    "closed base field and carry no claim beyond the searched extensions";

ordered_json matrix_to_json(const Matrix& m) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) a.push_back(m.at(i, j).to_string());
    return a;
}

Matrix matrix_from_json(const ordered_json& j, FieldRef field) {
    if (!j.is_array()) throw Error("matrix JSON must be an array");
    auto n = (std::size_t)std::llround(std::sqrt((double)j.size()));
    if (n * n != j.size()) throw Error("matrix JSON length is not a perfect square");
    Matrix m(field, (int)n);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = 0; jj < n; ++jj)
            m.at((int)i, (int)jj) = field->from_string(j[idx++].get<std::string>());
    return m;
}

ordered_json point_to_json(const ProjectivePoint& p) {
    ordered_json a = ordered_json::array();
    for (const auto& c : p.coords()) a.push_back(c.to_string());
    return a;
}

ordered_json certificate_to_json(const SmoothnessCertificate& c) {
    ordered_json j;
    j["k_max"] = c.k_max;
    ordered_json sing = ordered_json::array();
    for (const auto& [k, p] : c.singular) {
        ordered_json entry;
        entry["k"] = k;
        entry["point"] = point_to_json(p);
        sing.push_back(entry);
    }
    j["singular"] = sing;
    return j;
}

ordered_json galois_report_to_json(const GaloisReport& r) {
    ordered_json j;
    ordered_json pts = ordered_json::array();
    for (const auto& [k, p] : r.points) {
        ordered_json entry;
        entry["k"] = k;
        entry["point"] = point_to_json(p);
        pts.push_back(entry);
    }
    j["points"] = pts;
    j["search_extension_max"] = r.search_extension_max;
    j["search_complete_over_searched_fields"] = r.search_complete_over_searched_fields;
    j["delta_lower_bound"] = r.delta_lower_bound;
    j["bound"] = r.bound;
    j["bound_violated"] = r.bound_violated;
    j["group_structure_note"] = r.group_structure_note;
    j["structure_theorem_applies"] = r.structure_theorem_applies;
    j["notes"] = ordered_json::array({kFiniteFieldTestbedNote});
    return j;
}

}  // namespace cycov
