#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <nlohmann/json.hpp>

#include "churate/channel.hpp"
#include "churate/errors.hpp"
#include "churate/model.hpp"

using namespace churate;

namespace {

SystemConfig desk() {
    SystemConfig cfg;
    cfg.fc_hz = 5e9;
    cfg.bw_hz = 1e9;
    cfg.set_total_power(4.0);
    cfg.radius_m = 0.006;
    return cfg;
}

}  // namespace

TEST_CASE("channel gain") {
    SystemConfig cfg = desk();
    // long double substitution, frozen to 4 digits below
    const long double pi = 3.141592653589793238462643383279502884L;
    const long double r = 3.0e8L / (4.0L * pi * 5.0e9L * 1000.0L);
    const long double oracle = 2.25L * r * r;
    CHECK(channel_gain(cfg, 5e9) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-14));
    CHECK(channel_gain(cfg, 5e9) == doctest::Approx(5.129e-11).epsilon(1e-4));

    cfg.gain_tx = cfg.gain_rx = 1.0;
    CHECK(channel_gain(cfg, cfg.constants.c / (4 * kPi * cfg.distance_m)) == doctest::Approx(1.0).epsilon(1e-15));

    SystemConfig far = cfg;
    far.distance_m *= 2;
    for (double f : {1e6, 6e8, 5e9, 6e10})
        CHECK(channel_gain(far, f) == doctest::Approx(channel_gain(cfg, f) / 4).epsilon(1e-15));

    CHECK_THROWS_AS(channel_gain(cfg, 0.0), DomainError);
    CHECK_THROWS_AS(channel_gain(cfg, -1.0), DomainError);
}

TEST_CASE("channel gain is strictly decreasing in f and d") {
    SystemConfig cfg = desk();
    double prev = channel_gain(cfg, 1e6);
    for (double f = 2e6; f < 1e11; f *= 1.7) {
        const double g = channel_gain(cfg, f);
        CHECK(g < prev);
        prev = g;
    }
    prev = channel_gain(cfg, 5e9);
    for (double d = 2000; d < 1e6; d *= 1.9) {
        cfg.distance_m = d;
        const double g = channel_gain(cfg, 5e9);
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("noise densities") {
    SystemConfig cfg;
    auto nd = noise_densities(cfg);
    CHECK(nd.n0 == doctest::Approx(4.14e-21).epsilon(1e-3));
    CHECK(nd.n_lna == doctest::Approx(4.14e-21).epsilon(1e-3));
    CHECK(nd.n_lna / nd.n0 == cfg.noise_factor - 1.0);

    cfg.noise_factor = 1.0;
    CHECK(noise_densities(cfg).n_lna == 0.0);

    cfg.noise_factor = 3.5;
    nd = noise_densities(cfg);
    CHECK(nd.n_lna / nd.n0 == doctest::Approx(2.5).epsilon(1e-15));

    SystemConfig hot;
    hot.temperature_k = 600;
    CHECK(noise_densities(hot).n0 == doctest::Approx(2 * noise_densities(SystemConfig{}).n0).epsilon(1e-15));

    cfg.noise_factor = 0.5;
    CHECK_THROWS_AS(noise_densities(cfg), ConfigError);
}

TEST_CASE("transmit psd") {
    SystemConfig cfg;
    cfg.bw_hz = 1.2e8;
    cfg.set_total_power(4.0);
    CHECK(cfg.emax_w_per_hz == doctest::Approx(3.333e-8).epsilon(1e-4));
    CHECK(transmit_psd(cfg, cfg.fc_hz) == cfg.emax_w_per_hz);
    CHECK(transmit_psd(cfg, cfg.fc_hz + cfg.bw_hz) == 0.0);
    CHECK(transmit_psd(cfg, cfg.fc_hz - cfg.bw_hz) == 0.0);

    // independent quadrature over a window wider than the band, split at the edges
    using boost::math::quadrature::gauss_kronrod;
    auto psd = [&](double f) { return transmit_psd(cfg, f); };
    double total = 0;
    total += gauss_kronrod<double, 31>::integrate(psd, 4e8, cfg.band_low(), 0, 1e-12);
    total += gauss_kronrod<double, 31>::integrate(psd, cfg.band_low(), cfg.band_high(), 0, 1e-12);
    total += gauss_kronrod<double, 31>::integrate(psd, cfg.band_high(), 8e8, 0, 1e-12);
    CHECK(total == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("unilateral check") {
    SystemConfig cfg = desk();
    CHECK(unilateral_check(cfg, 5e9).ok);

    double prev = unilateral_check(cfg, 5e9).ratio12_11;
    for (double d : {1e4, 1e5, 1e6, 1e8}) {
        cfg.distance_m = d;
        const double r = unilateral_check(cfg, 5e9).ratio12_11;
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev < 1e-6);

    SystemConfig near;
    near.distance_m = 0.01;
    CHECK_FALSE(unilateral_check(near, 600e6).ok);
}

TEST_CASE("band edges") {
    SystemConfig cfg;
    CHECK(cfg.band_low() == doctest::Approx(540e6));
    CHECK(cfg.band_high() == doctest::Approx(660e6));
    CHECK(cfg.in_band(600e6));
    CHECK_FALSE(cfg.in_band(700e6));

    cfg.fc_hz = 60e9;
    cfg.bw_hz = 120e9;
    CHECK(cfg.band_low() == kMinBandEdgeHz);
    CHECK(cfg.band_high() == 120e9);
}

TEST_CASE("config validation") {
    SystemConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    auto bad = [](auto mutate) {
        SystemConfig c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(bad([](SystemConfig& c) { c.fc_hz = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](SystemConfig& c) { c.bw_hz = -1; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](SystemConfig& c) { c.distance_m = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](SystemConfig& c) { c.radius_m = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](SystemConfig& c) { c.noise_factor = 0.9; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](SystemConfig& c) { c.constants.c = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(cfg.set_lambda_over_a(0.0), ConfigError);
}

TEST_CASE("lambda over a") {
    SystemConfig cfg;
    cfg.set_lambda_over_a(20);
    CHECK(cfg.radius_m == doctest::Approx(0.5 / 20));
    CHECK(cfg.lambda_over_a() == doctest::Approx(20));
    CHECK(PhysicalConstants::codata().c == 299792458.0);
}

TEST_CASE("config json") {
    const auto doc = nlohmann::json::parse(R"({"fc_hz": 5e9, "bw_hz": 1e9, "power_w": 4,
        "emax_w_per_hz": 1.0, "lambda_over_a": 10, "distance_m": 500})");
    const SystemConfig cfg = config_from_json(doc);
    CHECK(cfg.fc_hz == 5e9);
    CHECK(cfg.emax_w_per_hz == doctest::Approx(4e-9));
    CHECK(cfg.radius_m == doctest::Approx(0.006));
    CHECK(cfg.distance_m == 500);
    CHECK(cfg.temperature_k == 300);

    const auto both = nlohmann::json::parse(R"({"radius_m": 0.01, "lambda_over_a": 10})");
    CHECK(config_from_json(both).radius_m == 0.01);

    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"fc": 1})")), ConfigError);
    CHECK_NOTHROW(config_from_json(nlohmann::json::parse(R"({"fc": 1})"), {}, {"fc"}));
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"fc_hz": -1})")), ConfigError);

    SystemConfig exact = config_from_json(nlohmann::json::parse(R"({"exact_c": true})"));
    CHECK(exact.constants.c == 299792458.0);

    const SystemConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.fc_hz == cfg.fc_hz);
    CHECK(back.radius_m == cfg.radius_m);
    CHECK(back.emax_w_per_hz == doctest::Approx(cfg.emax_w_per_hz).epsilon(1e-15));
}

TEST_CASE("frequency grid") {
    const auto u = FrequencyGrid::uniform(1.0, 2.0, 11);
    CHECK(u.samples.size() == 11);
    CHECK(u.samples.back() == 2.0);
    const auto l = FrequencyGrid::logarithmic(1.0, 1e4, 5);
    CHECK(l.samples[2] == doctest::Approx(100.0));
    FrequencyGrid g;
    g.samples = {1.0, 1.0};
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g.samples = {0.0, 1.0};
    CHECK_THROWS_AS(g.validate(), ConfigError);
    CHECK_THROWS_AS(FrequencyGrid::uniform(2.0, 1.0, 4), ConfigError);
}

TEST_CASE("link") {
    SystemConfig cfg = desk();
    const Link link(cfg);
    for (double f : {4.6e9, 5e9, 5.4e9})
        CHECK(link.signal(f) == doctest::Approx(transmit_psd(cfg, f) * channel_gain(cfg, f)).epsilon(1e-14));
    CHECK(link.signal(6e9) == 0.0);
    CHECK(link.with_extra_noise(1e-20).n0 == doctest::Approx(link.n0 + 1e-20));
}
