#ifndef CYCOV_JSON_IO_HPP
#define CYCOV_JSON_IO_HPP

#include <json.hpp>

#include "cycov/galois.hpp"
#include "cycov/hypersurface.hpp"
#include "cycov/projlin.hpp"

namespace cycov {

using ordered_json = nlohmann::ordered_json;

/// Row-major array of field-element strings.
ordered_json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const ordered_json& j, FieldRef field);

ordered_json point_to_json(const ProjectivePoint& p);

ordered_json certificate_to_json(const SmoothnessCertificate& c);

ordered_json galois_report_to_json(const GaloisReport& r);

/// Caveat attached to every report: finite fields stand in for the
/// algebraically closed characteristic-0 base field.
extern const char* kFiniteFieldTestbedNote;

}  // namespace cycov

#endif
