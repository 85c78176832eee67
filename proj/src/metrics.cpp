#include "coexsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coexsim {

void wilson_interval(std::uint64_t errors, std::uint64_t bits, double z,
                     double& low, double& high) {
    if (bits == 0) {
        low = 0.0;
        high = 1.0;
        return;
    }
    const double n = static_cast<double>(bits);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double rad = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    low = std::max(0.0, center - rad);
    high = std::min(1.0, center + rad);
}

void BerEstimate::add_counts(std::uint64_t bits, std::uint64_t errors) {
    bits_total += bits;
    bit_errors += errors;
    ber = bits_total ? static_cast<double>(bit_errors) / static_cast<double>(bits_total) : 0.0;
    wilson_interval(bit_errors, bits_total, 1.959963984540054, ci_low, ci_high);
}

BerEstimate ber_accumulate(BerEstimate est, std::span<const std::uint8_t> tx_bits,
                           std::span<const std::uint8_t> rx_bits) {
    if (tx_bits.size() != rx_bits.size())
        throw std::invalid_argument("ber_accumulate: length mismatch");
    std::uint64_t errs = 0;
    for (std::size_t i = 0; i < tx_bits.size(); ++i) errs += tx_bits[i] != rx_bits[i];
    est.add_counts(tx_bits.size(), errs);
    return est;
}

bool meets_target(const BerEstimate& est, double target_ber) {
    if (est.bits_total == 0) return false;
    if (est.ber > target_ber) return false;
    double lo, hi;
    wilson_interval(est.bit_errors, est.bits_total, 1.6448536269514722, lo, hi);  // one-sided 95%
    return lo <= target_ber;
}

double qpsk_awgn_ber_theory(double eb_no_linear) {
    if (eb_no_linear < 0.0) throw std::invalid_argument("qpsk_awgn_ber_theory: eb_no >= 0");
    return 0.5 * std::erfc(std::sqrt(eb_no_linear));
}

double qpsk_rayleigh_ber_theory(double eb_no_linear) {
    if (eb_no_linear < 0.0) throw std::invalid_argument("qpsk_rayleigh_ber_theory: eb_no >= 0");
    return 0.5 * (1.0 - std::sqrt(eb_no_linear / (eb_no_linear + 1.0)));
}

PaprCcdf papr_ccdf(std::span<const double> papr_linear, std::span<const double> grid_db) {
    if (papr_linear.empty()) throw std::invalid_argument("papr_ccdf: empty input");
    PaprCcdf out;
    out.thresholds_db.assign(grid_db.begin(), grid_db.end());
    out.exceedance_prob.resize(grid_db.size());
    for (std::size_t i = 0; i < grid_db.size(); ++i) {
        const double thr = std::pow(10.0, grid_db[i] / 10.0);
        std::size_t count = 0;
        for (double v : papr_linear) count += v > thr;
        out.exceedance_prob[i] = static_cast<double>(count) / static_cast<double>(papr_linear.size());
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double m = values[mid];
    if (values.size() % 2 == 0) {
        std::nth_element(values.begin(), values.begin() + mid - 1, values.begin() + mid);
        m = 0.5 * (m + values[mid - 1]);
    }
    return m;
}

}  // namespace coexsim
