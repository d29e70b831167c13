#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace orlab::fft {

using cplx = std::complex<double>;

/// In-place unnormalized forward DFT (sign -1).
void forward(std::span<cplx> data);

/// In-place inverse DFT, normalized by 1/n.
void inverse(std::span<cplx> data);

/// Signed DFT frequency index of bin k for a transform of length n.
inline long frequency_index(std::size_t k, std::size_t n) {
  return k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

/// Linear (non-circular) convolution of equal-length sequences, result of
/// length a.size() + b.size() - 1.
std::vector<cplx> linear_convolve(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace orlab::fft
