#include "coexsim/recipes.hpp"

#include <stdexcept>

namespace coexsim {

namespace {

std::vector<double> grid_range(double a, double step, double b) {
    std::vector<double> g;
    for (double x = a; x <= b + 1e-9; x += step) g.push_back(x);
    return g;
}

std::vector<double> grid_fn_dense() {
    // 0..4 in half steps, then unit steps to 24
    std::vector<double> g = grid_range(0.0, 0.5, 4.0);
    for (double x = 5.0; x <= 24.0; x += 1.0) g.push_back(x);
    return g;
}

SweepSpec base_spec(const char* name, ScenarioConfig scn, SweepAxis axis,
                    std::vector<double> grid) {
    SweepSpec s;
    s.name = name;
    s.scenario = std::move(scn);
    s.axis = axis;
    s.grid = std::move(grid);
    s.seed = 1;
    return s;
}

}  // namespace

ScenarioConfig scenario_nb_victim() {
    ScenarioConfig scn;
    scn.victim = SystemKind::nb;
    scn.interferer = SystemKind::ofdm;
    scn.nb = NbConfig{};
    scn.ofdm = make_ofdm_config(128, 1.25e6, 0.25, 0.0, Modulation::qpsk, 1.0, 4);
    scn.eb_no_db = 10.0;
    scn.sir_db = 0.0;
    return scn;
}

ScenarioConfig scenario_ofdm_victim() {
    ScenarioConfig scn;
    scn.victim = SystemKind::ofdm;
    scn.interferer = SystemKind::nb;
    scn.nb = NbConfig{};
    scn.ofdm = make_ofdm_config(128, 1.25e6, 0.25, 0.0, Modulation::qpsk, 1.0, 4);
    scn.eb_no_db = 10.0;
    return scn;
}

ScenarioConfig scenario_ofdm_ofdm() {
    ScenarioConfig scn;
    scn.victim = SystemKind::ofdm;
    scn.interferer = SystemKind::ofdm;
    scn.ofdm = make_ofdm_config(128, 1.25e6, 0.25, 0.0, Modulation::qpsk, 1.0, 4);
    scn.ofdm2 = scn.ofdm;
    scn.eb_no_db = 10.0;
    return scn;
}

std::vector<std::string> recipe_names() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

std::vector<SweepSpec> recipe(const std::string& name) {
    std::vector<SweepSpec> out;
    if (name == "fig2") {
        for (double sir : {0.0, 10.0}) {
            ScenarioConfig scn = scenario_nb_victim();
            scn.sir_db = sir;
            out.push_back(base_spec(sir == 0.0 ? "fig2_sir0" : "fig2_sir10", scn,
                                    SweepAxis::f_n, grid_fn_dense()));
        }
        return out;
    }
    if (name == "fig3") {
        for (double sir : {24.0, 44.0}) {
            ScenarioConfig scn = scenario_ofdm_victim();
            scn.sir_db = sir;
            out.push_back(base_spec(sir == 24.0 ? "fig3_sir24" : "fig3_sir44", scn,
                                    SweepAxis::f_n, grid_fn_dense()));
        }
        return out;
    }
    if (name == "fig4") {
        for (double sir : {30.0, 20.0}) {
            ScenarioConfig scn = scenario_nb_victim();
            scn.channel = ChannelKind::fading;
            scn.eb_no_db = 35.0;
            scn.sir_db = sir;
            out.push_back(base_spec(sir == 30.0 ? "fig4_sir30" : "fig4_sir20", scn,
                                    SweepAxis::f_n, grid_range(0.0, 1.0, 30.0)));
        }
        return out;
    }
    if (name == "fig5") {
        for (double sir : {0.0, 10.0}) {
            ScenarioConfig scn = scenario_ofdm_ofdm();
            scn.sir_db = sir;
            out.push_back(base_spec(sir == 0.0 ? "fig5_sir0" : "fig5_sir10", scn,
                                    SweepAxis::f_n, grid_range(0.0, 1.0, 26.0)));
        }
        return out;
    }
    if (name == "fig6") {
        // min separation per CU subcarrier count, plus the fixed-F_n trend
        for (int n : {64, 128, 256}) {
            ScenarioConfig scn = scenario_ofdm_ofdm();
            scn.sir_db = 0.0;
            scn.ofdm2 = make_ofdm_config(n, 1.25e6, 0.25, 0.0, Modulation::qpsk, 1.0, 4);
            SweepSpec s = base_spec(("fig6_minsep_n" + std::to_string(n)).c_str(), scn,
                                    SweepAxis::f_n, grid_range(0.0, 1.0, 34.0));
            out.push_back(std::move(s));
        }
        {
            ScenarioConfig scn = scenario_ofdm_ofdm();
            scn.sir_db = 0.0;
            scn.f_n = 18.0;
            out.push_back(base_spec("fig6_trend_fn18", scn, SweepAxis::cu_subcarriers,
                                    {64.0, 128.0, 256.0}));
        }
        return out;
    }
    if (name == "fig7") {
        for (double fn : {0.0, 2.0}) {
            ScenarioConfig scn = scenario_nb_victim();
            scn.sir_db = 0.0;
            scn.f_n = fn;
            out.push_back(base_spec(fn == 0.0 ? "fig7_fn0" : "fig7_fn2", scn,
                                    SweepAxis::beta, grid_range(0.0, 0.05, 0.5)));
        }
        return out;
    }
    if (name == "fig8") {
        for (double fn : {0.0, 2.0}) {
            ScenarioConfig scn = scenario_nb_victim();
            scn.sir_db = 0.0;
            scn.f_n = fn;
            out.push_back(base_spec(fn == 0.0 ? "fig8_fn0" : "fig8_fn2", scn,
                                    SweepAxis::nulled_count, grid_range(0.0, 1.0, 8.0)));
        }
        return out;
    }
    throw std::invalid_argument("unknown recipe '" + name + "' (fig2..fig8)");
}

}  // namespace coexsim
