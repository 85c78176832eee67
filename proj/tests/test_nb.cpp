#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coexsim/channel.hpp"
#include "coexsim/metrics.hpp"
#include "coexsim/nb.hpp"
#include "coexsim/rng.hpp"

using namespace coexsim;

namespace {

constexpr double kRate = 5e6;

std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
    return bits;
}

}  // namespace

TEST_CASE("table parameters give 90 us symbols, 450 samples") {
    const NbConfig cfg;
    CHECK(cfg.symbol_period() == doctest::Approx(90e-6));
    CHECK(cfg.samples_per_symbol(kRate) == 450);
}

TEST_CASE("single unit symbol reproduces the pulse") {
    const NbConfig cfg;
    const cplx b0(1.0, 0.0);
    const SampleBuffer sig = nb_modulate(std::span<const cplx>(&b0, 1), cfg, kRate, 0.0);
    const auto taps = rrc_taps(cfg.alpha, cfg.tx_span, 450);
    REQUIRE(sig.samples.size() >= taps.size());
    for (std::size_t i = 0; i < taps.size(); ++i)
        CHECK(sig.samples[i].real() == doctest::Approx(taps[i]).epsilon(1e-9));
}

TEST_CASE("stream power approximates sigma_b2 R / rate") {
    const NbConfig cfg;
    const auto bits = random_bits(4000 * 2, 21);
    const SampleBuffer sig = nb_modulate(nb_map_bits(bits, cfg.sigma_b2), cfg, kRate, 0.0);
    const double expected = cfg.sigma_b2 * cfg.symbol_rate() / kRate;
    CHECK(measure_power(sig) == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("timing offset preserves power") {
    const NbConfig cfg;
    const auto bits = random_bits(500 * 2, 22);
    const auto syms = nb_map_bits(bits, 1.0);
    const SampleBuffer a = nb_modulate(syms, cfg, kRate, 0.0);
    const SampleBuffer b = nb_modulate(syms, cfg, kRate, cfg.symbol_period() / 2.0);
    CHECK(measure_power(a) == doctest::Approx(measure_power(b)).epsilon(1e-3));
}

TEST_CASE("loopback at high snr with fractional timing") {
    const NbConfig cfg;
    for (double xi_frac : {0.0, 0.31, 0.5, 0.93}) {
        const double xi = xi_frac * cfg.symbol_period();
        const auto bits = random_bits(200 * 2, 23);
        const SampleBuffer sig = nb_modulate(nb_map_bits(bits, cfg.sigma_b2), cfg, kRate, xi);
        const auto rx = nb_receive(sig, cfg, xi, cplx(1.0, 0.0), 200);
        CHECK(std::equal(bits.begin(), bits.end(), rx.begin()));
    }
    CHECK_THROWS(nb_receive(SampleBuffer{{}, kRate}, NbConfig{}, 0.0, cplx(0.0, 0.0), 1));
}

TEST_CASE("matched-filter loopback is isi free") {
    const NbConfig cfg;  // span 16
    std::vector<cplx> syms(33, cplx(0.0, 0.0));
    syms[16] = cplx(1.0, 0.0);
    const SampleBuffer sig = nb_modulate(syms, cfg, kRate, 0.0);
    const auto dec = nb_decision_points(sig, cfg, 0.0, 33);
    CHECK(std::abs(dec[16]) == doctest::Approx(1.0).epsilon(1e-3));
    for (int k = 0; k < 33; ++k)
        if (k != 16) CHECK(std::abs(dec[static_cast<std::size_t>(k)]) < 1e-3 * std::abs(dec[16]));
}

TEST_CASE("mf output power matches the closed form across roll-offs") {
    // hold the symbol rate fixed so the sample grid stays integral
    for (double alpha : {0.2, 0.35, 0.5, 1.0}) {
        NbConfig cfg;
        cfg.alpha = alpha;
        cfg.bw_n = (1.0 + alpha) / 90e-6;
        const auto bits = random_bits(20000 * 2, 31);
        const SampleBuffer tx = nb_modulate(nb_map_bits(bits, cfg.sigma_b2), cfg, kRate, 0.0);
        const SampleBuffer mf = nb_matched_filter(tx, cfg);
        const std::size_t edge = static_cast<std::size_t>(cfg.rx_span) * 450;
        const double measured = measure_power(
            std::span<const cplx>(mf.samples.data() + edge, mf.samples.size() - 2 * edge));
        CHECK(measured == doctest::Approx(nb_mf_power_theory(cfg)).epsilon(0.01));
    }
}

TEST_CASE("closed form theory values") {
    NbConfig a;
    a.alpha = 0.35;
    CHECK(nb_mf_power_theory(a) == doctest::Approx(0.9125));
    a.sigma_b2 = 2.0;
    CHECK(nb_mf_power_theory(a) == doctest::Approx(1.825));
}

TEST_CASE("awgn ber matches theory at 4 dB") {
    const NbConfig cfg;
    const double gamma = std::pow(10.0, 0.4);
    const double noise_var = cfg.sigma_b2 / (2.0 * gamma);
    Rng rng(404);
    BerEstimate est;
    for (int trial = 0; trial < 40; ++trial) {
        const auto bits = random_bits(500 * 2, 1000 + static_cast<std::uint64_t>(trial));
        const double xi = rng.uniform() * cfg.symbol_period();
        SampleBuffer sig = nb_modulate(nb_map_bits(bits, cfg.sigma_b2), cfg, kRate, xi);
        add_awgn_var(sig.samples, noise_var, rng);
        const auto rx = nb_receive(sig, cfg, xi, cplx(1.0, 0.0), 500);
        est = ber_accumulate(est, bits, rx);
    }
    const double theory = qpsk_awgn_ber_theory(gamma);
    CHECK(est.ci_low <= theory);
    CHECK(theory <= est.ci_high);
}
