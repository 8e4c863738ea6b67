#include "qscatter/potential.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qscatter {

PiecewisePotential::PiecewisePotential(std::vector<double> boundaries,
                                       std::vector<double> values)
    : boundaries_(std::move(boundaries)), values_(std::move(values)) {
    if (values_.size() != boundaries_.size() + 1) {
        throw std::invalid_argument(
            "PiecewisePotential: values must have exactly one more entry than boundaries");
    }
    for (std::size_t i = 1; i < boundaries_.size(); ++i) {
        if (!(boundaries_[i - 1] < boundaries_[i])) {
            throw std::invalid_argument("PiecewisePotential: boundaries must be strictly increasing");
        }
    }
    // Normalize so the incident (left) tail sits at zero.
    const double shift = values_.front();
    if (shift != 0.0) {
        for (double& v : values_) v -= shift;
    }
}

double PiecewisePotential::evaluate(double x) const {
    // Half-open regions [x_i, x_{i+1}): a boundary point belongs to the right.
    const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), x);
    return values_[static_cast<std::size_t>(it - boundaries_.begin())];
}

std::string PiecewisePotential::to_record() const {
    std::string out;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", values_.front());
    out += buf;
    for (std::size_t i = 0; i < boundaries_.size(); ++i) {
        std::snprintf(buf, sizeof buf, " %.17g:%.17g", boundaries_[i], values_[i + 1]);
        out += buf;
    }
    return out;
}

PiecewisePotential PiecewisePotential::from_record(const std::string& record) {
    std::istringstream in(record);
    std::string tok;
    if (!(in >> tok)) throw std::invalid_argument("potential record: empty");

    std::vector<double> boundaries;
    std::vector<double> values;
    std::size_t pos = 0;
    values.push_back(std::stod(tok, &pos));
    if (pos != tok.size()) throw std::invalid_argument("potential record: bad leading value '" + tok + "'");

    while (in >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("potential record: expected boundary:value, got '" + tok + "'");
        }
        const std::string bs = tok.substr(0, colon);
        const std::string vs = tok.substr(colon + 1);
        boundaries.push_back(std::stod(bs, &pos));
        if (pos != bs.size()) throw std::invalid_argument("potential record: bad boundary '" + bs + "'");
        values.push_back(std::stod(vs, &pos));
        if (pos != vs.size()) throw std::invalid_argument("potential record: bad value '" + vs + "'");
    }
    return PiecewisePotential(std::move(boundaries), std::move(values));
}

PiecewisePotential make_step(double v0) {
    return PiecewisePotential({0.0}, {0.0, v0});
}

PiecewisePotential make_barrier(double v0, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("make_barrier: width a must be positive");
    return PiecewisePotential({0.0, a}, {0.0, v0, 0.0});
}

}  // namespace qscatter
