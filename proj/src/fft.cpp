#include "csc/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace csc {

namespace {

// FFTW plan creation is not thread safe; execution via the new-array
// interface is. Plans are cached per (length, direction) and created with
// FFTW_UNALIGNED so they can run on plain std::vector storage.
std::mutex g_plan_mutex;
std::map<std::pair<int, int>, fftw_plan>& plan_cache() {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  return cache;
}

fftw_plan get_plan(int n, int sign) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;
  cvec scratch(static_cast<std::size_t>(n));
  fftw_plan plan = fftw_plan_dft_1d(
      n, reinterpret_cast<fftw_complex*>(scratch.data()),
      reinterpret_cast<fftw_complex*>(scratch.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(std::make_pair(n, sign), plan);
  return plan;
}

cvec transform(const cvec& x, int sign) {
  if (x.empty()) throw std::invalid_argument("fft: empty input");
  cvec out(x.size());
  fftw_plan plan = get_plan(static_cast<int>(x.size()), sign);
  // in-place would alias the const input; FFTW allows distinct new arrays
  cvec in = x;
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

cvec fft(const cvec& x) { return transform(x, FFTW_FORWARD); }

cvec fft(const std::vector<double>& x) {
  cvec cx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) cx[i] = x[i];
  return transform(cx, FFTW_FORWARD);
}

cvec ifft(const cvec& x) {
  cvec out = transform(x, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> ifft_real(const cvec& x) {
  cvec full = ifft(x);
  std::vector<double> out(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) out[i] = full[i].real();
  return out;
}

std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("circular_convolve: length mismatch");
  cvec fa = fft(a);
  cvec fb = fft(b);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  return ifft_real(fa);
}

}  // namespace csc
