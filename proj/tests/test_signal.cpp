#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "coexsim/rng.hpp"
#include "coexsim/signal.hpp"

using namespace coexsim;

namespace {

SampleBuffer tone(double freq, double rate, std::size_t n, double amp = 1.0) {
    SampleBuffer b;
    b.sample_rate = rate;
    b.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = 2.0 * std::numbers::pi * freq * static_cast<double>(i) / rate;
        b.samples[i] = amp * cplx(std::cos(ph), std::sin(ph));
    }
    return b;
}

}  // namespace

TEST_CASE("raised cosine window branch values") {
    const WindowSpec ws{0.15, 1.0};
    CHECK(raised_cosine_window(0.0, ws) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(raised_cosine_window(0.15, ws) == doctest::Approx(1.0));
    CHECK(raised_cosine_window(0.075, ws) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(raised_cosine_window(0.5, ws) == doctest::Approx(1.0));
    // continuity at branch boundaries
    CHECK(raised_cosine_window(0.15 - 1e-9, ws) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(raised_cosine_window(1.0, ws) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(raised_cosine_window(-0.01, ws), std::domain_error);
    CHECK_THROWS_AS(raised_cosine_window(1.15, ws), std::domain_error);
}

TEST_CASE("window partition of unity on the rise region") {
    for (double beta : {0.1, 0.15, 0.3, 0.5}) {
        const WindowSpec ws{beta, 1.0};
        for (int i = 0; i < 200; ++i) {
            const double t = beta * (i / 200.0);
            CHECK(raised_cosine_window(t, ws) + raised_cosine_window(t + 1.0, ws) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("rrc taps: energy, symmetry, singular points") {
    for (double alpha : {0.2, 0.25, 0.35, 0.5, 1.0}) {
        const auto taps = rrc_taps(alpha, 16, 8);
        CHECK(taps.size() == 16 * 8 + 1);
        double e = 0.0;
        for (double v : taps) e += v * v;
        CHECK(e == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t k = 0; k < taps.size(); ++k)
            CHECK(taps[k] == doctest::Approx(taps[taps.size() - 1 - k]).epsilon(1e-12));
        for (double v : taps) CHECK(std::isfinite(v));
    }
    CHECK_THROWS(rrc_taps(0.0, 16, 8));
    CHECK_THROWS(rrc_taps(0.35, 4, 8));
    CHECK_THROWS(rrc_taps(0.35, 16, 1));
}

TEST_CASE("rrc matched pair is Nyquist") {
    for (int span : {12, 16}) {
        const int sps = 8;
        const auto p = rrc_taps(0.35, span, sps);
        // p (*) p sampled at symbol instants
        std::vector<double> g(2 * p.size() - 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j) g[i + j] += p[i] * p[j];
        const std::size_t center = p.size() - 1;
        const double peak = g[center];
        CHECK(peak == doctest::Approx(1.0).epsilon(1e-3));
        for (int m = 1; m <= span - 1; ++m) {
            CHECK(std::abs(g[center + static_cast<std::size_t>(m) * sps]) < 1e-3 * peak);
            CHECK(std::abs(g[center - static_cast<std::size_t>(m) * sps]) < 1e-3 * peak);
        }
    }
}

TEST_CASE("frequency shift basics") {
    const SampleBuffer sig = tone(1e3, 48e3, 4096, 0.7);
    SUBCASE("zero shift is identity") {
        const SampleBuffer out = frequency_shift(sig, 0.0);
        for (std::size_t i = 0; i < sig.samples.size(); ++i)
            CHECK(std::abs(out.samples[i] - sig.samples[i]) < 1e-12);
    }
    SUBCASE("power is invariant") {
        const SampleBuffer out = frequency_shift(sig, 7123.0);
        CHECK(measure_power(out) ==
              doctest::Approx(measure_power(sig)).epsilon(1e-12));
    }
    SUBCASE("shift then unshift recovers the input") {
        const SampleBuffer out = frequency_shift(frequency_shift(sig, 9000.0), -9000.0);
        for (std::size_t i = 0; i < sig.samples.size(); ++i)
            CHECK(std::abs(out.samples[i] - sig.samples[i]) < 1e-9);
    }
    SUBCASE("nyquist bound enforced") {
        CHECK_THROWS_AS(frequency_shift(sig, 24e3), std::domain_error);
    }
}

TEST_CASE("measure power") {
    SampleBuffer b;
    b.sample_rate = 1.0;
    CHECK(measure_power(b) == 0.0);
    b.samples.assign(100, cplx(1.0, 0.0));
    CHECK(measure_power(b) == doctest::Approx(1.0));
    for (cplx& s : b.samples) s *= 3.0;
    CHECK(measure_power(b) == doctest::Approx(9.0));
    CHECK(measure_power(tone(997.0, 48e3, 9600)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("resample: identity and round trip") {
    const SampleBuffer sig = tone(1.2e3, 48e3, 8192);
    CHECK(resample(sig, 48e3).samples.size() == sig.samples.size());

    // x2 up then x2 down, compare the interior
    const SampleBuffer up = resample(sig, 96e3);
    const SampleBuffer back = resample(up, 48e3);
    double err = 0.0, ref = 0.0;
    const std::size_t guard = 200;
    for (std::size_t i = guard; i + guard < std::min(back.samples.size(), sig.samples.size()); ++i) {
        err += std::norm(back.samples[i] - sig.samples[i]);
        ref += std::norm(sig.samples[i]);
    }
    CHECK(10.0 * std::log10(err / ref) < -60.0);
}

TEST_CASE("resample: tone stays put, power preserved within 0.1 dB") {
    const double f0 = 4.8e3;  // 0.1 * rate
    const SampleBuffer sig = tone(f0, 48e3, 8192);
    const SampleBuffer up = resample(sig, 192e3);
    CHECK(up.sample_rate == doctest::Approx(192e3));
    // correlate against the expected tone at the same absolute frequency
    const std::size_t guard = 800;
    cplx acc(0.0, 0.0);
    double pw = 0.0;
    for (std::size_t i = guard; i + guard < up.samples.size(); ++i) {
        const double ph = 2.0 * std::numbers::pi * f0 * static_cast<double>(i) / 192e3;
        acc += up.samples[i] * cplx(std::cos(ph), -std::sin(ph));
        pw += std::norm(up.samples[i]);
    }
    const std::size_t n = up.samples.size() - 2 * guard;
    pw /= static_cast<double>(n);
    const double coherent = std::norm(acc / static_cast<double>(n));
    CHECK(10.0 * std::log10(pw) == doctest::Approx(0.0).epsilon(0.024));  // 0.1 dB
    CHECK(coherent / pw > 0.999);  // all power at the original frequency
    CHECK_THROWS(resample(sig, std::sqrt(2.0) * 48e3));
}

TEST_CASE("rng determinism and gaussian moments") {
    Rng a = Rng::for_trial(42, 1, 2, 3);
    Rng b = Rng::for_trial(42, 1, 2, 3);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(7);
    double m = 0.0, v = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = c.gaussian();
        m += x;
        v += x * x;
    }
    m /= n;
    v /= n;
    CHECK(std::abs(m) < 0.01);
    CHECK(v == doctest::Approx(1.0).epsilon(0.02));
}
