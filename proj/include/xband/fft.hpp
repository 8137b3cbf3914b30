// fft.hpp - thin FFTW wrapper with a process-wide plan cache

#pragma once

#include "xband/ofdm.hpp"

#include <span>

namespace xband {

/// Unnormalized forward DFT (exponent sign -1), out-of-place, size = in.size().
void fft_forward(std::span<const Complex> in, std::span<Complex> out);
/// Unnormalized inverse DFT (exponent sign +1).
void fft_backward(std::span<const Complex> in, std::span<Complex> out);

}  // namespace xband
