#pragma once

#include <string>
#include <vector>

namespace qscatter {

/// Piecewise-constant 1-D potential with semi-infinite outer regions.
///
/// Region layout (half-open on the right):
///   values[0]  on (-inf, boundaries[0])
///   values[i]  on [boundaries[i-1], boundaries[i])
///   values[n]  on [boundaries[n-1], +inf)
///
/// The left tail is the incident side and is normalized to zero at
/// construction: all values are shifted by -values[0].
class PiecewisePotential {
public:
    /// Free particle, V = 0 everywhere.
    PiecewisePotential() = default;

    /// boundaries must be strictly increasing; values needs exactly one more
    /// entry than boundaries.
    PiecewisePotential(std::vector<double> boundaries, std::vector<double> values);

    double evaluate(double x) const;

    const std::vector<double>& boundaries() const { return boundaries_; }
    const std::vector<double>& values() const { return values_; }

    /// First/last boundary of the scattering region; both 0 when there are
    /// no boundaries (the scatterer degenerates to the point x = 0).
    double left_edge() const { return boundaries_.empty() ? 0.0 : boundaries_.front(); }
    double right_edge() const { return boundaries_.empty() ? 0.0 : boundaries_.back(); }

    double left_value() const { return values_.front(); }   // always 0
    double right_value() const { return values_.back(); }

    /// Width of the scattering region (0 for a step or a free potential).
    double scatterer_width() const { return right_edge() - left_edge(); }

    /// Plain text record: leading value followed by boundary:value pairs,
    /// e.g. "0 0:1.5" (step) or "0 0:1 100:0" (barrier).
    std::string to_record() const;
    static PiecewisePotential from_record(const std::string& record);

private:
    std::vector<double> boundaries_;
    std::vector<double> values_{0.0};
};

/// Step of height v0 at x = 0. v0 may be negative (step down).
PiecewisePotential make_step(double v0);

/// Rectangular barrier of height v0 on [0, a], a > 0. Negative v0 gives a well.
PiecewisePotential make_barrier(double v0, double a);

}  // namespace qscatter
