#pragma once

#include <iosfwd>
#include <string>

#include "coexsim/coexist.hpp"
#include "coexsim/metrics.hpp"

namespace coexsim {

enum class SweepAxis { f_n, sir_db, beta, nulled_count, cu_subcarriers, eb_no_db };

const char* axis_name(SweepAxis axis);

struct StopRule {
    std::uint64_t min_errors = 100;
    std::uint64_t bit_budget = 20'000'000;
};

struct SweepSpec {
    std::string name = "sweep";
    ScenarioConfig scenario;
    SweepAxis axis = SweepAxis::f_n;
    std::vector<double> grid;
    std::uint64_t seed = 1;
    StopRule stop;
    double target_ber = 1e-4;

    void validate() const;
};

struct PointResult {
    double axis_value = 0.0;
    BerEstimate ber;
    bool feasible = true;
    std::string error;
};

/// Scenario with the axis value applied (mitigation axes act on the CU-role
/// OFDM system; cu_subcarriers rebuilds it at fixed bandwidth).
ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value);

/// Deterministic parallel sweep: batches of trials merged in index order, so
/// output is identical for any thread count.
std::vector<PointResult> run_ber_sweep(const SweepSpec& spec, int threads);

/// Single point (axis already applied).
PointResult run_ber_point(const ScenarioConfig& scn, const StopRule& stop,
                          std::uint64_t seed, std::uint64_t point_index, int threads);

struct SearchResult {
    bool found = false;
    double threshold_value = 0.0;
    BerEstimate ber_at_threshold;
    std::vector<PointResult> full_curve;
};

/// First grid value whose estimate passes the target test.
SearchResult find_min_separation(const SweepSpec& spec, int threads);
SearchResult find_min_nulled(const SweepSpec& spec, int threads);

void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     const std::vector<PointResult>& results);
void write_manifest(std::ostream& os, const SweepSpec& spec);

std::string version_string();

/// Welch-averaged periodogram of a buffer: (frequency Hz, relative dB),
/// normalized to 0 dB at the peak.  Frequencies span (-rate/2, rate/2].
struct PsdEstimate {
    std::vector<double> freq_hz;
    std::vector<double> power_db;
};
PsdEstimate welch_psd(const SampleBuffer& sig, int nfft);

/// Averaged PSD of a synthesized OFDM or NB waveform.
PsdEstimate emit_psd_ofdm(const OfdmConfig& cfg, int averaging);
PsdEstimate emit_psd_nb(const NbConfig& cfg, double sample_rate, int averaging);

void write_psd_csv(std::ostream& os, const PsdEstimate& psd);

}  // namespace coexsim
