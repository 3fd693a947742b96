#include "churate/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "churate/errors.hpp"

namespace churate {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw ConfigError(msg);
}

}  // namespace

void PhysicalConstants::validate() const {
    require(c > 0 && kb > 0 && mu0 > 0 && eps0 > 0, "physical constants must be positive");
}

void SystemConfig::set_lambda_over_a(double ratio) {
    require(ratio > 0 && std::isfinite(ratio), "lambda_over_a must be positive");
    radius_m = wavelength() / ratio;
}

double SystemConfig::band_low() const {
    return std::max(fc_hz - 0.5 * bw_hz, kMinBandEdgeHz);
}

void SystemConfig::validate() const {
    constants.validate();
    require(std::isfinite(fc_hz) && fc_hz > 0, "fc_hz must be positive");
    require(std::isfinite(bw_hz) && bw_hz > 0, "bw_hz must be positive");
    require(band_high() > kMinBandEdgeHz, "signalling band lies below the minimum band edge");
    require(std::isfinite(emax_w_per_hz) && emax_w_per_hz >= 0, "emax_w_per_hz must be non-negative");
    require(std::isfinite(distance_m) && distance_m > 0, "distance_m must be positive");
    require(gain_tx > 0 && gain_rx > 0, "antenna gains must be positive");
    require(std::isfinite(temperature_k) && temperature_k > 0, "temperature_k must be positive");
    require(std::isfinite(noise_factor) && noise_factor >= 1, "noise_factor must be >= 1");
    require(std::isfinite(radius_m) && radius_m > 0, "radius_m must be positive");
}

FrequencyGrid FrequencyGrid::uniform(double lo, double hi, std::size_t n) {
    require(n >= 2 && lo < hi, "uniform grid needs n >= 2 and lo < hi");
    FrequencyGrid g;
    g.scheme = GridScheme::uniform;
    g.samples.resize(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g.samples[i] = lo + step * static_cast<double>(i);
    g.samples.back() = hi;
    g.validate();
    return g;
}

FrequencyGrid FrequencyGrid::logarithmic(double lo, double hi, std::size_t n) {
    require(n >= 2 && lo > 0 && lo < hi, "log grid needs n >= 2 and 0 < lo < hi");
    FrequencyGrid g;
    g.scheme = GridScheme::log;
    g.samples.resize(n);
    const double l0 = std::log(lo);
    const double step = (std::log(hi) - l0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g.samples[i] = std::exp(l0 + step * static_cast<double>(i));
    g.samples.front() = lo;
    g.samples.back() = hi;
    g.validate();
    return g;
}

void FrequencyGrid::validate() const {
    require(!samples.empty(), "frequency grid is empty");
    require(samples.front() > 0, "frequency grid must be positive");
    for (std::size_t i = 1; i < samples.size(); ++i)
        require(samples[i] > samples[i - 1], "frequency grid must be strictly increasing");
}

SystemConfig config_from_json(const nlohmann::json& doc, SystemConfig base,
                              const std::vector<std::string>& extra_keys) {
    require(doc.is_object(), "config document must be a JSON object");
    static const std::set<std::string> known = {
        "fc_hz",       "bw_hz",         "power_w",      "emax_w_per_hz", "distance_m",
        "gain_tx",     "gain_rx",       "temperature_k", "noise_factor", "radius_m",
        "lambda_over_a", "exact_c"};
    for (const auto& [key, _] : doc.items()) {
        const bool extra = std::find(extra_keys.begin(), extra_keys.end(), key) != extra_keys.end();
        require(known.count(key) || extra, "unknown config key: " + key);
    }

    auto number = [&](const char* key, double& dst) {
        if (!doc.contains(key)) return;
        require(doc[key].is_number(), std::string("config key must be numeric: ") + key);
        dst = doc[key].get<double>();
    };

    SystemConfig cfg = base;
    if (doc.contains("exact_c")) {
        require(doc["exact_c"].is_boolean(), "exact_c must be a boolean");
        cfg.constants.c = doc["exact_c"].get<bool>() ? PhysicalConstants::codata().c
                                                    : PhysicalConstants::rounded().c;
    }
    number("fc_hz", cfg.fc_hz);
    number("bw_hz", cfg.bw_hz);
    number("distance_m", cfg.distance_m);
    number("gain_tx", cfg.gain_tx);
    number("gain_rx", cfg.gain_rx);
    number("temperature_k", cfg.temperature_k);
    number("noise_factor", cfg.noise_factor);

    if (doc.contains("power_w")) {
        double p = 0;
        number("power_w", p);
        require(p >= 0, "power_w must be non-negative");
        cfg.set_total_power(p);
    } else {
        number("emax_w_per_hz", cfg.emax_w_per_hz);
    }

    if (doc.contains("radius_m")) {
        number("radius_m", cfg.radius_m);
    } else if (doc.contains("lambda_over_a")) {
        double ratio = 0;
        number("lambda_over_a", ratio);
        cfg.set_lambda_over_a(ratio);
    }
    cfg.validate();
    return cfg;
}

nlohmann::json config_to_json(const SystemConfig& cfg) {
    return {{"fc_hz", cfg.fc_hz},
            {"bw_hz", cfg.bw_hz},
            {"emax_w_per_hz", cfg.emax_w_per_hz},
            {"distance_m", cfg.distance_m},
            {"gain_tx", cfg.gain_tx},
            {"gain_rx", cfg.gain_rx},
            {"temperature_k", cfg.temperature_k},
            {"noise_factor", cfg.noise_factor},
            {"radius_m", cfg.radius_m},
            {"exact_c", cfg.constants.c == PhysicalConstants::codata().c}};
}

}  // namespace churate
