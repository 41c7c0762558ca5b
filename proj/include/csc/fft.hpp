#ifndef CSC_FFT_HPP
#define CSC_FFT_HPP

#include <complex>
#include <vector>

namespace csc {

using cvec = std::vector<std::complex<double>>;

/// Forward DFT, X[k] = sum_t x[t] exp(-2*pi*i*k*t/n). Any length n >= 1.
cvec fft(const cvec& x);
cvec fft(const std::vector<double>& x);

/// Inverse DFT including the 1/n factor.
cvec ifft(const cvec& x);

/// Real part of ifft; for spectra of real signals the imaginary part is
/// roundoff only.
std::vector<double> ifft_real(const cvec& x);

/// Circular convolution of two real length-n vectors via the FFT.
std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b);

}  // namespace csc

#endif
