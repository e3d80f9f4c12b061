#include <atomic>

#include "eegsel/common.hpp"
#include "eegsel/kernels.hpp"

namespace eegsel::kernels {

bool cpu_supports_avx2() {
#if defined(EEGSEL_AVX2_TU) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable* detect() {
#if defined(EEGSEL_AVX2_TU)
  if (cpu_supports_avx2()) return &detail::avx2_table;
#endif
  return &detail::scalar_table;
}

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* resolve() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (!t) {
    t = detect();
    g_active.store(t, std::memory_order_release);
  }
  return t;
}

}  // namespace

const KernelTable& active() { return *resolve(); }

Backend active_backend() {
#if defined(EEGSEL_AVX2_TU)
  if (resolve() == &detail::avx2_table) return Backend::avx2;
#endif
  return Backend::scalar;
}

const KernelTable& table_for(Backend b) {
  if (b == Backend::scalar) return detail::scalar_table;
#if defined(EEGSEL_AVX2_TU)
  if (cpu_supports_avx2()) return detail::avx2_table;
#endif
  throw config_error("avx2 kernel backend not available on this host");
}

void force_backend(Backend b) {
  g_active.store(&table_for(b), std::memory_order_release);
}

void reset_backend() { g_active.store(detect(), std::memory_order_release); }

}  // namespace eegsel::kernels
