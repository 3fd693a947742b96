#pragma once

#include "churate/model.hpp"

namespace churate {

/// Free-space Friis power gain Gt*Gr*(c/(4*pi*f*d))^2. Throws DomainError for f <= 0.
double channel_gain(const SystemConfig& cfg, double f);

struct NoiseDensities {
    double n0;     // thermal background, W/Hz
    double n_lna;  // amplifier-referred, W/Hz
};

/// N0 = kb*T and N_LNA = kb*T*(Nf - 1). The LNA gain and input resistance cancel out of
/// the rate expression and are not modelled.
NoiseDensities noise_densities(const SystemConfig& cfg);

/// Flat allocation: emax inside the signalling band, zero elsewhere.
double transmit_psd(const SystemConfig& cfg, double f);

struct UnilateralCheck {
    double ratio12_11;
    bool ok;
};

/// |Y12|/|Y11| of the full two-antenna admittance matrix at s = j*2*pi*f, with both port
/// resistances normalised to 1 ohm. `ok` when the ratio is below `threshold`.
UnilateralCheck unilateral_check(const SystemConfig& cfg, double f, double threshold = 1e-3);

/// Pre-evaluated link quantities used in the inner loops of the optimiser and the rate
/// integrals. `extra_noise_psd` is added to N0 (homogeneous interference).
struct Link {
    double band_lo = 0.0;
    double band_hi = 0.0;
    double emax = 0.0;
    double friis_coeff = 0.0;  // |H(f)|^2 * f^2
    double n0 = 0.0;
    double n_lna = 0.0;
    double c = 0.0;
    double radius = 0.0;

    Link() = default;
    explicit Link(const SystemConfig& cfg, double extra_noise_psd = 0.0);

    double bandwidth() const { return band_hi - band_lo; }
    bool in_band(double f) const { return f >= band_lo && f <= band_hi; }
    double psd(double f) const { return in_band(f) ? emax : 0.0; }
    double gain(double f) const { return friis_coeff / (f * f); }
    /// Received signal density P*_t(f)|H(f)|^2.
    double signal(double f) const { return psd(f) * gain(f); }
    Link with_extra_noise(double extra_noise_psd) const {
        Link l = *this;
        l.n0 += extra_noise_psd;
        return l;
    }
};

}  // namespace churate
