#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coexsim/channel.hpp"

using namespace coexsim;

TEST_CASE("exponential pdp profile") {
    const PdpProfile p1 = exp_pdp_profile(1, 0.7);
    CHECK(p1.avg_powers.size() == 1);
    CHECK(p1.avg_powers[0] == doctest::Approx(1.0));

    const PdpProfile p = exp_pdp_profile(5, 0.2);
    double sum = 0.0;
    for (double v : p.avg_powers) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 0; j + 1 < 5; ++j)
        CHECK(p.avg_powers[j + 1] / p.avg_powers[j] ==
              doctest::Approx(std::exp(-0.2)).epsilon(1e-12));
    CHECK_THROWS(exp_pdp_profile(0, 0.2));
}

TEST_CASE("tap statistics over many draws") {
    const PdpProfile p = exp_pdp_profile(5, 0.2);
    Rng rng(1234);
    const int n = 100000;
    std::vector<double> mean_pw(5, 0.0);
    cplx cross(0.0, 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const ChannelRealization ch = draw_realization(p, 8e-7, rng);
        for (int j = 0; j < 5; ++j) {
            mean_pw[j] += std::norm(ch.taps[j]);
            total += std::norm(ch.taps[j]);
        }
        cross += ch.taps[0] * std::conj(ch.taps[1]);
    }
    for (int j = 0; j < 5; ++j)
        CHECK(mean_pw[j] / n == doctest::Approx(p.avg_powers[j]).epsilon(0.02));
    CHECK(total / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(cross) / n < 0.01);
}

TEST_CASE("flat rayleigh moments and determinism") {
    Rng rng(99);
    const int n = 100000;
    cplx mean(0.0, 0.0);
    double pw = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx h = flat_rayleigh(rng);
        mean += h;
        pw += std::norm(h);
    }
    CHECK(std::abs(mean) / n < 0.01);
    CHECK(pw / n == doctest::Approx(1.0).epsilon(0.02));

    Rng a(7), b(7);
    for (int i = 0; i < 16; ++i) CHECK(flat_rayleigh(a) == flat_rayleigh(b));
    PdpProfile p = exp_pdp_profile(5, 0.2);
    Rng c(8), d(8);
    const ChannelRealization r1 = draw_realization(p, 8e-7, c);
    const ChannelRealization r2 = draw_realization(p, 8e-7, d);
    for (int j = 0; j < 5; ++j) CHECK(r1.taps[j] == r2.taps[j]);
}

TEST_CASE("multipath application") {
    SampleBuffer sig;
    sig.sample_rate = 1.0;
    Rng rng(4);
    sig.samples.resize(100);
    for (auto& s : sig.samples) s = rng.cn01();

    SUBCASE("single unit tap is identity") {
        ChannelRealization ch{{cplx(1.0, 0.0)}, 1.0};
        const SampleBuffer out = apply_multipath(sig, ch);
        for (std::size_t i = 0; i < sig.samples.size(); ++i)
            CHECK(out.samples[i] == sig.samples[i]);
    }
    SUBCASE("single gain scales power") {
        ChannelRealization ch{{cplx(0.0, 2.0)}, 1.0};
        const SampleBuffer out = apply_multipath(sig, ch);
        CHECK(measure_power(out) == doctest::Approx(4.0 * measure_power(sig)).epsilon(1e-12));
    }
    SUBCASE("two taps agree with the brute-force oracle bit-exactly") {
        ChannelRealization ch{{cplx(0.7, -0.2), cplx(-0.1, 0.4)}, 3.0};
        const SampleBuffer out = apply_multipath(sig, ch);
        for (std::size_t n = 0; n < sig.samples.size(); ++n) {
            cplx expect = ch.taps[0] * sig.samples[n];
            if (n >= 3) expect += ch.taps[1] * sig.samples[n - 3];
            CHECK(out.samples[n] == expect);
        }
    }
    SUBCASE("linearity is exact") {
        ChannelRealization ch{{cplx(0.7, -0.2), cplx(-0.1, 0.4)}, 2.0};
        SampleBuffer x = sig, y = sig;
        Rng r2(5);
        for (auto& s : y.samples) s = r2.cn01();
        SampleBuffer sum = sig;
        for (std::size_t i = 0; i < sum.samples.size(); ++i)
            sum.samples[i] = 2.0 * x.samples[i] + 3.0 * y.samples[i];
        const SampleBuffer lhs = apply_multipath(sum, ch);
        const SampleBuffer ax = apply_multipath(x, ch), ay = apply_multipath(y, ch);
        for (std::size_t i = 0; i < sum.samples.size(); ++i) {
            const cplx rhs = 2.0 * ax.samples[i] + 3.0 * ay.samples[i];
            CHECK(std::abs(lhs.samples[i] - rhs) < 1e-12);
        }
    }
    SUBCASE("off-grid delay rejected") {
        ChannelRealization ch{{cplx(1.0, 0.0), cplx(0.5, 0.0)}, 0.5};
        CHECK_THROWS(apply_multipath(sig, ch));
    }
}

TEST_CASE("awgn injection") {
    SampleBuffer zero;
    zero.sample_rate = 1e6;
    zero.samples.assign(1000000, cplx(0.0, 0.0));
    Rng rng(6);
    SampleBuffer out = zero;
    add_awgn_var(out.samples, 0.0, rng);
    for (std::size_t i = 0; i < 100; ++i) CHECK(out.samples[i] == cplx(0.0, 0.0));

    out = zero;
    add_awgn_var(out.samples, 0.37, rng);
    CHECK(measure_power(out) == doctest::Approx(0.37).epsilon(0.02));

    SampleBuffer a = zero, b = zero;
    Rng r1(42), r2(42);
    add_awgn_var(a.samples, 1.0, r1);
    add_awgn_var(b.samples, 1.0, r2);
    for (std::size_t i = 0; i < 100; ++i) CHECK(a.samples[i] == b.samples[i]);

    CHECK_THROWS(apply_awgn(zero, -1.0, rng));
    // psd convention: variance = psd * rate
    out = apply_awgn(zero, 2.5e-7, rng);
    CHECK(measure_power(out) == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("frequency response of a realization") {
    ChannelRealization ch{{cplx(1.0, 0.0), cplx(0.5, 0.0)}, 1.0};
    // H(f) = 1 + 0.5 e^{-j2pi f}
    const cplx h0 = channel_freq_response(ch, 0.0);
    CHECK(h0.real() == doctest::Approx(1.5));
    const cplx hh = channel_freq_response(ch, 0.5);
    CHECK(hh.real() == doctest::Approx(0.5));
}
