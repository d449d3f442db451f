#include "scat1d/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace scat1d::kern {
namespace {

const Ops* select_from_name(std::string_view name) {
  if (name == "scalar") return &scalar_ops();
  if (name == "avx2") {
    const Ops* t = avx2_ops();
    if (!t) throw std::runtime_error("kernels: avx2 variant unavailable");
#if defined(SCAT1D_HAVE_AVX2)
    if (!__builtin_cpu_supports("avx2"))
      throw std::runtime_error("kernels: cpu lacks avx2");
#endif
    return t;
  }
  throw std::invalid_argument("kernels: unknown isa '" + std::string(name) + "'");
}

const Ops* auto_select() {
  if (const char* env = std::getenv("SCAT1D_SIMD")) return select_from_name(env);
#if defined(SCAT1D_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2"))
    if (const Ops* t = avx2_ops()) return t;
#endif
  return &scalar_ops();
}

const Ops*& active_slot() {
  static const Ops* active = auto_select();
  return active;
}

}  // namespace

const Ops& ops() { return *active_slot(); }

std::string_view active_isa() { return ops().name; }

void force_isa(std::string_view name) { active_slot() = select_from_name(name); }

}  // namespace scat1d::kern
