#pragma once

#include <complex>
#include <vector>

namespace scat1d {

// Complex DFT, FFTW-backed.  sign = -1: sum_j a_j e^{-2pi i jk/N} (forward),
// sign = +1: inverse sign convention, unnormalized.
void dft(std::vector<std::complex<double>>& data, int sign);

// Unitary-free helper: inverse DFT including the 1/N factor.
void idft_normalized(std::vector<std::complex<double>>& data);

// FFT frequencies for an N-point transform with sample spacing dx:
// k_j = 2*pi*j/(N*dx) for j < N/2, negative branch after.
std::vector<double> fft_freqs(std::size_t n, double dx);

std::size_t next_pow2(std::size_t n);

}  // namespace scat1d
