#include "core/fft.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace riesz {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void fft(std::vector<std::complex<double>>& data, int sign) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) fail(Error::Code::invalid_argument, "fft size must be a power of two");
  if (n == 1) return;

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  // Twiddle table from direct angles; stage `len` strides it by n/len.
  std::vector<std::complex<double>> twiddle(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) {
    twiddle[j] = std::polar(1.0, sign * kTwoPi * static_cast<double>(j) / static_cast<double>(n));
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w = twiddle[k * stride];
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace riesz
