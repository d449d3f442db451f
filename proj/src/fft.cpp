#include "scat1d/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <numbers>

namespace scat1d {
namespace {

// One aligned in-place buffer + plan pair per (size, sign); single-threaded.
struct PlanSlot {
  fftw_complex* buf = nullptr;
  fftw_plan plan = nullptr;
};

PlanSlot& slot_for(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, PlanSlot> cache;
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  PlanSlot s;
  s.buf = fftw_alloc_complex(n);
  s.plan = fftw_plan_dft_1d(static_cast<int>(n), s.buf, s.buf,
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  return cache.emplace(key, s).first->second;
}

}  // namespace

void dft(std::vector<std::complex<double>>& data, int sign) {
  if (data.empty()) return;
  PlanSlot& s = slot_for(data.size(), sign);
  std::memcpy(static_cast<void*>(s.buf), static_cast<const void*>(data.data()), data.size() * sizeof(fftw_complex));
  fftw_execute(s.plan);
  std::memcpy(static_cast<void*>(data.data()), static_cast<const void*>(s.buf), data.size() * sizeof(fftw_complex));
}

void idft_normalized(std::vector<std::complex<double>>& data) {
  dft(data, +1);
  const double s = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= s;
}

std::vector<double> fft_freqs(std::size_t n, double dx) {
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  for (std::size_t j = 0; j < n; ++j) {
    const auto sj = static_cast<long>(j);
    const long half = static_cast<long>(n) / 2;
    k[j] = dk * static_cast<double>(sj < half ? sj : sj - static_cast<long>(n));
  }
  return k;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace scat1d
