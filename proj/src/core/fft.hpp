#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace riesz {

// In-place radix-2 transform of a power-of-two sized vector.
// sign = -1: X_k = sum_j x_j exp(-2*pi*i*j*k/N)  (forward DFT)
// sign = +1: X_k = sum_j x_j exp(+2*pi*i*j*k/N)  (unnormalized inverse)
void fft(std::vector<std::complex<double>>& data, int sign);

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace riesz
