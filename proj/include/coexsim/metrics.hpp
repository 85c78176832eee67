#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace coexsim {

/// Bit-error statistics with a 95% Wilson interval.
struct BerEstimate {
    std::uint64_t bits_total = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;

    void add_counts(std::uint64_t bits, std::uint64_t errors);
};

/// Wilson score interval for errors/bits at confidence z (1.96 -> 95%).
void wilson_interval(std::uint64_t errors, std::uint64_t bits, double z,
                     double& low, double& high);

/// Accumulate a tx/rx comparison into est (lengths must match).
BerEstimate ber_accumulate(BerEstimate est, std::span<const std::uint8_t> tx_bits,
                           std::span<const std::uint8_t> rx_bits);

/// Target-BER decision: point estimate <= target and the one-sided 95% lower
/// bound does not exclude it.
bool meets_target(const BerEstimate& est, double target_ber);

/// Q(sqrt(2*gamma)) via erfc.
double qpsk_awgn_ber_theory(double eb_no_linear);

/// 0.5*(1 - sqrt(g/(g+1))) flat-Rayleigh average.
double qpsk_rayleigh_ber_theory(double eb_no_linear);

struct PaprCcdf {
    std::vector<double> thresholds_db;
    std::vector<double> exceedance_prob;
};

PaprCcdf papr_ccdf(std::span<const double> papr_linear, std::span<const double> grid_db);

double median(std::vector<double> values);

}  // namespace coexsim
