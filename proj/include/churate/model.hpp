#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace churate {

inline constexpr double kPi = std::numbers::pi;

/// Lower clip applied to the signalling band; the Friis gain diverges at DC.
inline constexpr double kMinBandEdgeHz = 1.0e3;

struct PhysicalConstants {
    double c = 3.0e8;               // m/s
    double kb = 1.380649e-23;       // J/K
    double mu0 = 1.25663706212e-6;  // H/m
    double eps0 = 8.8541878128e-12; // F/m

    /// c = 3e8, the default.
    static PhysicalConstants rounded() { return {}; }
    static PhysicalConstants codata() {
        PhysicalConstants k;
        k.c = 299792458.0;
        return k;
    }
    void validate() const;
};

/// Link-level parameters of the single-antenna system. The transmit power is stored as
/// the flat spectral density `emax_w_per_hz`; use set_total_power() to enter it as total
/// power over the band.
struct SystemConfig {
    double fc_hz = 600.0e6;
    double bw_hz = 120.0e6;
    double emax_w_per_hz = 4.0 / 120.0e6;
    double distance_m = 1000.0;
    double gain_tx = 1.5;
    double gain_rx = 1.5;
    double temperature_k = 300.0;
    double noise_factor = 2.0;
    double radius_m = 0.025;
    PhysicalConstants constants{};

    double wavelength() const { return constants.c / fc_hz; }
    double lambda_over_a() const { return wavelength() / radius_m; }
    void set_lambda_over_a(double ratio);

    void set_total_power(double watts) { emax_w_per_hz = watts / bw_hz; }
    double total_power() const { return emax_w_per_hz * bw_hz; }

    /// Nominal band [fc - bw/2, fc + bw/2] with the lower edge clipped to kMinBandEdgeHz.
    double band_low() const;
    double band_high() const { return fc_hz + 0.5 * bw_hz; }
    bool in_band(double f) const { return f >= band_low() && f <= band_high(); }

    /// Throws ConfigError on the first violated invariant.
    void validate() const;
};

enum class GridScheme { uniform, log, quadrature_nodes };

struct FrequencyGrid {
    std::vector<double> samples;
    GridScheme scheme = GridScheme::uniform;

    static FrequencyGrid uniform(double lo, double hi, std::size_t n);
    static FrequencyGrid logarithmic(double lo, double hi, std::size_t n);

    /// Strictly increasing and positive; throws ConfigError otherwise.
    void validate() const;
};

/// Reads the flat key-value config document (fc_hz, bw_hz, power_w | emax_w_per_hz,
/// distance_m, gain_tx, gain_rx, temperature_k, noise_factor, radius_m | lambda_over_a,
/// exact_c). Keys absent from the document keep the value in `base`. `power_w` wins over
/// `emax_w_per_hz`; `radius_m` wins over `lambda_over_a`. Unknown keys are rejected
/// unless listed in `extra_keys`.
SystemConfig config_from_json(const nlohmann::json& doc, SystemConfig base = {},
                              const std::vector<std::string>& extra_keys = {});
nlohmann::json config_to_json(const SystemConfig& cfg);

}  // namespace churate
