#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coexsim/config.hpp"

using namespace coexsim;

TEST_CASE("minimal config applies documented defaults") {
    const SweepSpec spec = parse_config(
        "[scenario]\n"
        "victim = nb\n"
        "[sweep]\n"
        "axis = f_n\n"
        "grid = 0,2,4\n");
    CHECK(spec.scenario.victim == SystemKind::nb);
    CHECK(spec.scenario.interferer == SystemKind::ofdm);
    CHECK(spec.scenario.ofdm.n_total == 128);
    CHECK(spec.scenario.ofdm.delta_f == doctest::Approx(9765.625));
    CHECK(spec.scenario.nb.bw_n == doctest::Approx(15e3));
    CHECK(spec.scenario.nb.alpha == doctest::Approx(0.35));
    CHECK(spec.stop.min_errors == 100);
    CHECK(spec.stop.bit_budget == 20000000);
    CHECK(spec.grid.size() == 3);
}

TEST_CASE("negative sir values are legal") {
    const SweepSpec spec = parse_config(
        "[scenario]\nsir_db = -7.5\n[sweep]\naxis = f_n\ngrid = 1,2\n");
    CHECK(spec.scenario.sir_db == doctest::Approx(-7.5));
}

TEST_CASE("beta bound violations name the bound") {
    try {
        parse_config("[scenario]\nofdm_beta = 1.5\n[sweep]\naxis = f_n\ngrid = 1,2\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("0 <= beta < 1") != std::string::npos);
        CHECK(msg.find("ofdm_beta") != std::string::npos);
    }
}

TEST_CASE("unknown keys are hard errors with line context") {
    try {
        parse_config("[scenario]\nvictim = nb\nofdm_bandwith = 1e6\n[sweep]\naxis = f_n\ngrid = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("ofdm_bandwith") != std::string::npos);
        CHECK(msg.find("unknown key") != std::string::npos);
    }
}

TEST_CASE("range grid syntax") {
    const SweepSpec spec = parse_config(
        "[scenario]\nvictim = nb\n[sweep]\naxis = f_n\ngrid = 0:0.5:2\n");
    REQUIRE(spec.grid.size() == 5);
    CHECK(spec.grid[3] == doctest::Approx(1.5));
}

TEST_CASE("sweep parameters and comments") {
    const SweepSpec spec = parse_config(
        "# comment line\n"
        "[scenario]\n"
        "victim = ofdm\n"
        "interferer = ofdm\n"
        "ofdm2_n = 64   # trailing comment\n"
        "sir_db = 10\n"
        "[sweep]\n"
        "axis = nulled_count\n"
        "grid = 0,1,2,3\n"
        "seed = 99\n"
        "min_errors = 50\n"
        "bit_budget = 1000000\n"
        "target_ber = 1e-3\n"
        "name = demo\n");
    CHECK(spec.scenario.ofdm2.n_total == 64);
    CHECK(spec.seed == 99);
    CHECK(spec.stop.min_errors == 50);
    CHECK(spec.target_ber == doctest::Approx(1e-3));
    CHECK(spec.name == "demo");
}

TEST_CASE("render round trip") {
    SweepSpec spec = parse_config(
        "[scenario]\nvictim = nb\nsir_db = 5\nf_n = 3\n[sweep]\naxis = f_n\ngrid = 0,1,2\nseed = 7\n");
    const SweepSpec back = parse_config(render_config(spec));
    CHECK(back.scenario.sir_db == doctest::Approx(5.0));
    CHECK(back.scenario.f_n == doctest::Approx(3.0));
    CHECK(back.seed == 7);
    CHECK(back.grid.size() == 3);
}

TEST_CASE("validation failures surface as config errors") {
    CHECK_THROWS_AS(
        parse_config("[scenario]\nvictim = nb\n[sweep]\naxis = f_n\ngrid = 2,1\n"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config("[scenario]\nvictim = nb\nnb_alpha = 1.5\n[sweep]\naxis = f_n\ngrid = 1\n"),
        ConfigError);
}
