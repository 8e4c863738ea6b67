#pragma once

#include <string>

namespace qscatter {

enum class Method { plane_wave, exact_integral, series, kinematic, tdse };

std::string to_string(Method m);

/// Paired reflection/transmission probabilities with a method tag and a
/// numerical error estimate (quadrature or truncation bound; 0 for closed
/// forms).
struct ScatteringResult {
    double R = 0.0;
    double T = 0.0;
    Method method = Method::plane_wave;
    double err_estimate = 0.0;
};

/// Validating constructor: clamps roundoff-level excursions outside [0, 1]
/// and rejects anything beyond err_estimate + 1e-9.
ScatteringResult make_result(double R, double T, Method method, double err_estimate);

}  // namespace qscatter
