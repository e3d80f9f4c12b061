#include "eegsel/slbp.hpp"

#include "eegsel/kernels.hpp"

namespace eegsel {

namespace {

void check_config(const SlbpConfig& cfg) {
  if (cfg.half_width < 1 || cfg.half_width > 15)
    throw config_error("slbp: half_width must be in [1, 15]");
}

}  // namespace

int slbp_code(std::span<const double> signal, std::size_t n, const SlbpConfig& cfg) {
  check_config(cfg);
  const std::size_t L = static_cast<std::size_t>(cfg.half_width);
  if (n < L || n + L >= signal.size())
    throw data_error("slbp: center index outside the valid coding range");
  const double center = signal[n];
  int code = 0;
  for (std::size_t m = 0; m < L; ++m)
    if (signal[n + m - L] >= center)
      code += 1 << (static_cast<int>(L) - 1 - static_cast<int>(m));
  for (std::size_t m = 0; m < L; ++m)
    if (signal[n + m + 1] >= center) code += 1 << static_cast<int>(m);
  return code;
}

SlbpHistogram slbp_histogram(std::span<const double> signal, const SlbpConfig& cfg) {
  check_config(cfg);
  const std::size_t L = static_cast<std::size_t>(cfg.half_width);
  if (signal.size() < 2 * L + 1)
    throw data_error("slbp: signal shorter than 2L + 1 samples");
  const std::size_t n_codes = signal.size() - 2 * L;
  std::vector<std::int32_t> codes(n_codes);
  kernels::slbp_codes(signal.data(), signal.size(), cfg.half_width, codes.data());
  SlbpHistogram h;
  h.counts.assign(static_cast<std::size_t>(slbp_code_max(cfg)) + 1, 0);
  h.n_coded = n_codes;
  for (const std::int32_t c : codes) ++h.counts[static_cast<std::size_t>(c)];
  return h;
}

}  // namespace eegsel
