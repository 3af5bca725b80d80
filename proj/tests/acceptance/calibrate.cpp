// Prints the raw numbers the acceptance windows were frozen from.

#include <cmath>
#include <cstdio>
#include <vector>

#include "analyze/analyze.hpp"
#include "construct/construct.hpp"
#include "verify/verify.hpp"

using namespace majcirc;

// Same seed as the acceptance suite.
constexpr std::uint64_t kSeed = 20240601;

int main() {
  verify::VerifyOptions opts;
  opts.workers = 8;

  const auto params = construct::default_block_params(4096, 3.0);
  std::printf("block n=%u p=%u window_t=%u\n", params.n, params.p, params.window_t);
  for (std::uint32_t t : {params.p / 8, params.p / 4, params.p / 2, params.p, params.window_t}) {
    const auto c = construct::build_block_circuit({4096, params.p, t});
    const auto r = verify::verify_minmax(c, {false, 100000, kSeed}, opts);
    std::printf("  window_t=%u errors=%llu checked=%llu fraction=%.6g\n", t, (unsigned long long)r.errors,
                (unsigned long long)r.total_checked, double(r.errors) / double(r.total_checked));
  }

  const std::uint32_t n = 1001;
  const auto root = static_cast<std::uint32_t>(std::ceil(std::sqrt(double(n))));
  for (std::uint32_t factor : {2, 4, 6, 8, 10, 12, 16, 20, 24, 31}) {
    const std::uint32_t k = std::min(n, factor * root);
    const auto c = construct::build_correlation({n, k, kSeed});
    const auto r = verify::estimate_agreement(c, 100000, kSeed, opts);
    std::printf("correlation factor=%u k=%u agreement=%.6f ci=%.6f\n", factor, k, r.agreement_value(), *r.ci_halfwidth);
  }

  for (const auto& row : analyze::pmf_scaling_probe({16, 64, 256, 1024, 4096}, 0.5, 4, 8))
    std::printf("scaling kk=%u m=%u t=%u argmax=%u normalized=%.6f\n", row.kk, row.m, row.t_draws, row.argmax_l,
                row.normalized);

  for (const auto& row : analyze::binomial_mid_check({32, 64, 128, 256, 512}, 0.5))
    std::printf("binomial n=%u offset_index=%u center=%.6f offset=%.6f\n", row.n, row.offset_index,
                row.center_normalized, row.offset_normalized);
  return 0;
}
