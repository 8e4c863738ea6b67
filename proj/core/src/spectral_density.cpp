#include "qscatter/spectral_density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qscatter {

SpectralDensity::SpectralDensity(std::function<double(double)> pdf, double lo, double hi,
                                 std::vector<double> breakpoints)
    : pdf_(std::move(pdf)), lo_(lo), hi_(hi), breakpoints_(std::move(breakpoints)) {
    if (!(lo_ < hi_)) throw std::invalid_argument("SpectralDensity: empty support");
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(
        std::remove_if(breakpoints_.begin(), breakpoints_.end(),
                       [this](double b) { return b <= lo_ || b >= hi_; }),
        breakpoints_.end());
}

SpectralDensity SpectralDensity::from_packet(const GaussianPacket& p) {
    const double k0 = p.k0();
    const double sigma = p.sigma();
    auto pdf = [k0, sigma](double k) {
        const double dk = k - k0;
        return (sigma / std::sqrt(M_PI)) * std::exp(-dk * dk * sigma * sigma);
    };
    return SpectralDensity(pdf, p.support_lo(), p.support_hi(), {k0});
}

SpectralDensity SpectralDensity::from_samples(const std::vector<double>& k,
                                              const std::vector<double>& p) {
    if (k.size() != p.size() || k.size() < 2) {
        throw std::invalid_argument("SpectralDensity: need matching k/p samples, at least two");
    }
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i > 0 && !(k[i - 1] < k[i])) {
            throw std::invalid_argument("SpectralDensity: k samples must be strictly increasing");
        }
        if (!(p[i] >= 0.0) || !std::isfinite(p[i])) {
            throw std::invalid_argument("SpectralDensity: density samples must be finite and >= 0");
        }
    }
    auto ks = k;
    auto ps = p;
    auto pdf = [ks, ps](double x) {
        if (x <= ks.front()) return ps.front();
        if (x >= ks.back()) return ps.back();
        const auto it = std::upper_bound(ks.begin(), ks.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - ks.begin());
        const double w = (x - ks[i - 1]) / (ks[i] - ks[i - 1]);
        return ps[i - 1] + w * (ps[i] - ps[i - 1]);
    };
    return SpectralDensity(pdf, k.front(), k.back(), k);
}

SpectralDensity SpectralDensity::from_function(std::function<double(double)> pdf,
                                               double lo, double hi,
                                               std::vector<double> breakpoints) {
    return SpectralDensity(std::move(pdf), lo, hi, std::move(breakpoints));
}

}  // namespace qscatter
