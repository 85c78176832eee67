// Experiment runner: sweeps, threshold searches, PSD dumps and SIR
// cross-checks over the coexistence scenarios.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "coexsim/config.hpp"
#include "coexsim/recipes.hpp"
#include "coexsim/sweep.hpp"

namespace fs = std::filesystem;
using namespace coexsim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void apply_overrides(SweepSpec& spec, std::uint64_t seed, bool seed_set,
                     std::uint64_t bit_budget, bool budget_set) {
    if (seed_set) spec.seed = seed;
    if (budget_set) spec.stop.bit_budget = bit_budget;
}

void run_one(const SweepSpec& spec, const fs::path& out_dir, int threads, bool search_mode,
             bool nulled_mode) {
    fs::create_directories(out_dir);
    std::vector<PointResult> results;
    if (search_mode) {
        const SearchResult sr = nulled_mode ? find_min_nulled(spec, threads)
                                            : find_min_separation(spec, threads);
        results = sr.full_curve;
        if (sr.found)
            std::cout << spec.name << ": threshold " << axis_name(spec.axis) << " = "
                      << sr.threshold_value << " (ber " << sr.ber_at_threshold.ber << ")\n";
        else
            std::cout << spec.name << ": target not reachable on grid\n";
    } else {
        results = run_ber_sweep(spec, threads);
    }
    const fs::path csv = out_dir / (spec.name + ".csv");
    std::ofstream cf(csv);
    write_sweep_csv(cf, spec, results);
    std::ofstream mf(out_dir / (spec.name + ".manifest.txt"));
    write_manifest(mf, spec);
    std::cout << "wrote " << csv.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"link-level OFDM/NB coexistence simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", recipe_name;
    std::uint64_t seed = 0, bit_budget = 0;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;

    app.add_option("--threads", threads, "worker threads");
    app.add_option("--out", out_dir, "output directory");
    auto* seed_opt = app.add_option("--seed", seed, "master seed override");
    auto* budget_opt = app.add_option("--bit-budget", bit_budget, "bit budget override");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a BER sweep from a config file");
    sweep_cmd->add_option("--config", config_path, "config file")->required();

    auto* minsep_cmd = app.add_subcommand("min-sep", "minimum frequency separation search");
    minsep_cmd->add_option("--config", config_path, "config file (axis f_n)")->required();

    auto* minnull_cmd = app.add_subcommand("min-null", "minimum nulled-subcarrier search");
    minnull_cmd->add_option("--config", config_path, "config file (axis nulled_count)")->required();

    auto* psd_cmd = app.add_subcommand("psd", "emit an averaged periodogram CSV");
    std::string psd_system = "ofdm";
    double psd_beta = 0.0;
    int psd_nulled = 0, psd_avg = 100;
    psd_cmd->add_option("--system", psd_system, "ofdm or nb");
    psd_cmd->add_option("--beta", psd_beta, "OFDM window roll-off");
    psd_cmd->add_option("--nulled", psd_nulled, "nulled high-edge subcarriers");
    psd_cmd->add_option("--averaging", psd_avg, "symbols to average");

    auto* sir_cmd = app.add_subcommand("sir-calc", "closed-form SIR values and measured checks");
    sir_cmd->add_option("--config", config_path, "config file")->required();

    auto* recipe_cmd = app.add_subcommand("recipe", "run a named figure recipe (fig2..fig8)");
    recipe_cmd->add_option("name", recipe_name, "recipe name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep_cmd || *minsep_cmd || *minnull_cmd) {
            SweepSpec spec = parse_config(slurp(config_path));
            apply_overrides(spec, seed, !seed_opt->empty(), bit_budget, !budget_opt->empty());
            run_one(spec, out_dir, threads, !*sweep_cmd, static_cast<bool>(*minnull_cmd));
        } else if (*psd_cmd) {
            PsdEstimate psd;
            if (psd_system == "ofdm") {
                OfdmConfig cfg =
                    make_ofdm_config(128, 1.25e6, 0.25, psd_beta, Modulation::qpsk, 1.0, 4);
                if (psd_nulled > 0) cfg = null_edge_subcarriers(cfg, psd_nulled, Edge::high);
                psd = emit_psd_ofdm(cfg, psd_avg);
            } else if (psd_system == "nb") {
                psd = emit_psd_nb(NbConfig{}, 5e6, psd_avg);
            } else {
                throw std::runtime_error("psd: --system must be ofdm or nb");
            }
            fs::create_directories(out_dir);
            const fs::path csv = fs::path(out_dir) / ("psd_" + psd_system + ".csv");
            std::ofstream f(csv);
            write_psd_csv(f, psd);
            std::cout << "wrote " << csv.string() << "\n";
        } else if (*sir_cmd) {
            SweepSpec spec = parse_config(slurp(config_path));
            const ScenarioConfig& scn = spec.scenario;
            const SirBreakdown sb = sir_breakdown(scn);
            std::cout << "victim_power_measured    = " << sb.victim_power_measured << "\n";
            std::cout << "interferer_power_measured= " << sb.interferer_power_measured << "\n";
            std::cout << "sir_measured_db          = " << sb.sir_measured_db << "\n";
            std::cout << "sir_theory_db            = " << sb.sir_theory_db << "\n";
            if (sb.c_constant) std::cout << "c_constant               = " << *sb.c_constant << "\n";
            std::cout << "nb_mf_power_theory       = " << nb_mf_power_theory(scn.nb) << "\n";
            std::cout << "ofdm_mean_power_theory   = " << ofdm_mean_power_theory(scn.ofdm) << "\n";
            if (scn.victim == SystemKind::ofdm && scn.interferer == SystemKind::ofdm)
                std::cout << "sir_ofdm_ofdm_theory_db  = "
                          << 10.0 * std::log10(sir_ofdm_ofdm_theory(scn.ofdm2, scn.ofdm)) << "\n";
        } else if (*recipe_cmd) {
            for (SweepSpec spec : recipe(recipe_name)) {
                apply_overrides(spec, seed, !seed_opt->empty(), bit_budget, !budget_opt->empty());
                const bool search = spec.axis == SweepAxis::f_n || spec.axis == SweepAxis::nulled_count;
                run_one(spec, out_dir, threads, search, spec.axis == SweepAxis::nulled_count);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
