#pragma once

#include <complex>
#include <vector>

namespace coexsim {

using cplx = std::complex<double>;

/// In-place radix-2 DIT transform. Size must be a power of two.
/// No normalization on either direction; inverse(forward(x)) == n * x.
void fft_forward(std::vector<cplx>& data);
void fft_inverse(std::vector<cplx>& data);

bool is_pow2(std::size_t n);

/// Linear convolution of x with real taps h; y has length x.size()+h.size()-1.
std::vector<cplx> fft_convolve(const std::vector<cplx>& x, const std::vector<double>& h);

}  // namespace coexsim
