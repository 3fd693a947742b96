#include "churate/channel.hpp"

#include <cmath>
#include <complex>

#include "churate/errors.hpp"

namespace churate {

double channel_gain(const SystemConfig& cfg, double f) {
    if (!(f > 0)) throw DomainError("channel_gain: frequency must be positive");
    const double r = cfg.constants.c / (4.0 * kPi * f * cfg.distance_m);
    return cfg.gain_tx * cfg.gain_rx * r * r;
}

NoiseDensities noise_densities(const SystemConfig& cfg) {
    if (!(cfg.noise_factor >= 1)) throw ConfigError("noise_factor must be >= 1");
    if (!(cfg.temperature_k > 0)) throw ConfigError("temperature_k must be positive");
    const double n0 = cfg.constants.kb * cfg.temperature_k;
    return {n0, n0 * (cfg.noise_factor - 1.0)};
}

double transmit_psd(const SystemConfig& cfg, double f) {
    return cfg.in_band(f) ? cfg.emax_w_per_hz : 0.0;
}

UnilateralCheck unilateral_check(const SystemConfig& cfg, double f, double threshold) {
    using cd = std::complex<double>;
    constexpr double r1 = 1.0;
    constexpr double r2 = 1.0;
    const double c = cfg.constants.c;
    const double a = cfg.radius_m;
    const double g = std::sqrt(cfg.gain_tx * cfg.gain_rx);
    const cd s(0.0, 2.0 * kPi * f);
    const double friis = c / (4.0 * kPi * f * cfg.distance_m);

    const cd sa = s * a;
    const cd den = sa * sa * (r2 * r2) + (c * r2) * (c * r2) + sa * c * (r2 * r2);
    const cd y11 = (den - 4.0 * friis * friis * sa * c * (r2 * r2) * g) / (den * r1);
    const cd y12 = -2.0 * c * g * sa * sa / (4.0 * kPi * f * cfg.distance_m * den) *
                   std::sqrt(r2 * r2 * r2 / r1);
    const double ratio = std::abs(y12) / std::abs(y11);
    return {ratio, ratio < threshold};
}

Link::Link(const SystemConfig& cfg, double extra_noise_psd) {
    cfg.validate();
    const NoiseDensities nd = noise_densities(cfg);
    band_lo = cfg.band_low();
    band_hi = cfg.band_high();
    emax = cfg.emax_w_per_hz;
    const double r = cfg.constants.c / (4.0 * kPi * cfg.distance_m);
    friis_coeff = cfg.gain_tx * cfg.gain_rx * r * r;
    n0 = nd.n0 + extra_noise_psd;
    n_lna = nd.n_lna;
    c = cfg.constants.c;
    radius = cfg.radius_m;
}

}  // namespace churate
