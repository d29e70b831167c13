#include "orlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace orlab::fft {
namespace {

// fftw planning is not thread-safe; execution with new-array is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_for(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  std::lock_guard lock(planner_mutex());
  auto key = std::make_pair(n, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<cplx> scratch(n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign, FFTW_ESTIMATE);
  cache.emplace(key, plan);
  return plan;
}

void execute(std::span<cplx> data, int sign) {
  if (data.empty()) return;
  fftw_plan plan = plan_for(data.size(), sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace

void forward(std::span<cplx> data) { execute(data, FFTW_FORWARD); }

void inverse(std::span<cplx> data) {
  execute(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

std::vector<cplx> linear_convolve(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < out) n <<= 1;
  std::vector<cplx> fa(n), fb(n);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  forward(fa);
  forward(fb);
  for (std::size_t k = 0; k < n; ++k) fa[k] *= fb[k];
  inverse(fa);
  fa.resize(out);
  return fa;
}

}  // namespace orlab::fft
