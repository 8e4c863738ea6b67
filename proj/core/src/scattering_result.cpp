#include "qscatter/scattering_result.hpp"

#include <cmath>
#include <stdexcept>

namespace qscatter {

std::string to_string(Method m) {
    switch (m) {
        case Method::plane_wave: return "plane-wave";
        case Method::exact_integral: return "exact-integral";
        case Method::series: return "series";
        case Method::kinematic: return "kinematic";
        case Method::tdse: return "tdse";
    }
    return "unknown";
}

ScatteringResult make_result(double R, double T, Method method, double err_estimate) {
    if (!std::isfinite(R) || !std::isfinite(T)) {
        throw std::runtime_error("ScatteringResult: non-finite probability");
    }
    const double slack = 1e-9 + err_estimate;
    if (R < -slack || R > 1.0 + slack || T < -slack || T > 1.0 + slack) {
        throw std::runtime_error("ScatteringResult: probability outside [0,1] beyond tolerance");
    }
    ScatteringResult res;
    res.R = std::fmin(1.0, std::fmax(0.0, R));
    res.T = std::fmin(1.0, std::fmax(0.0, T));
    res.method = method;
    res.err_estimate = err_estimate;
    return res;
}

}  // namespace qscatter
