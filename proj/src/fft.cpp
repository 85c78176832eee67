#include "coexsim/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coexsim {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

void transform(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

void fft_forward(std::vector<cplx>& data) { transform(data, false); }
void fft_inverse(std::vector<cplx>& data) { transform(data, true); }

std::vector<cplx> fft_convolve(const std::vector<cplx>& x, const std::vector<double>& h) {
    const std::size_t ny = x.size() + h.size() - 1;
    std::size_t n = 1;
    while (n < ny) n <<= 1;
    std::vector<cplx> xa(n), ha(n);
    for (std::size_t i = 0; i < x.size(); ++i) xa[i] = x[i];
    for (std::size_t i = 0; i < h.size(); ++i) ha[i] = h[i];
    fft_forward(xa);
    fft_forward(ha);
    for (std::size_t i = 0; i < n; ++i) xa[i] *= ha[i];
    fft_inverse(xa);
    const double scale = 1.0 / static_cast<double>(n);
    std::vector<cplx> y(ny);
    for (std::size_t i = 0; i < ny; ++i) y[i] = xa[i] * scale;
    return y;
}

}  // namespace coexsim
