#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "analyze/analyze.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"

namespace majcirc::analyze {

namespace {

std::size_t bit_length(const BigInt& x) { return x == 0 ? 0 : boost::multiprecision::msb(x) + 1; }

/// Exact-integer Pascal rows up to `max_n`.
std::vector<std::vector<BigInt>> pascal(std::uint32_t max_n) {
  std::vector<std::vector<BigInt>> c(max_n + 1);
  for (std::uint32_t n = 0; n <= max_n; ++n) {
    c[n].assign(n + 1, 1);
    for (std::uint32_t k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
  }
  return c;
}

}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

double to_double(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (num == 0) return 0.0;
  const bool neg = num < 0;
  if (neg) num = -num;
  const long shift = 64 + static_cast<long>(bit_length(den)) - static_cast<long>(bit_length(num));
  BigInt q = shift >= 0 ? BigInt(num << shift) / den : num / BigInt(den << -shift);
  const double v = std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
  return neg ? -v : v;
}

std::string to_string(const Rational& r) {
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

void HypergeomParams::validate() const {
  if (kk > m) throw Error(ErrorKind::invalid_argument, "hypergeometric: marked count kk exceeds population m");
  if (t_draws > m) throw Error(ErrorKind::invalid_argument, "hypergeometric: draws t exceed population m");
}

Rational hypergeom_pmf(const HypergeomParams& p, std::uint32_t l) {
  p.validate();
  if (l > p.kk || l > p.t_draws || p.t_draws - l > p.m - p.kk) return 0;
  return Rational(binomial(p.kk, l) * binomial(p.m - p.kk, p.t_draws - l), binomial(p.m, p.t_draws));
}

TailCheck hypergeom_tail_check(const HypergeomParams& p, std::uint32_t l) {
  p.validate();
  TailCheck out;
  out.tail = 0;
  for (std::uint32_t j = l; j <= p.kk; ++j) out.tail += hypergeom_pmf(p, j);
  if (p.m == 0) {
    out.bound = 1;
  } else {
    BigInt num = 1, den = 1;
    for (std::uint32_t i = 0; i < l; ++i) {
      num *= static_cast<std::uint64_t>(p.t_draws) * p.kk;
      den *= p.m;
    }
    out.bound = Rational(num, den);
  }
  out.holds = out.tail <= out.bound;
  return out;
}

TailSweep hypergeom_sweep(std::uint32_t m_max, unsigned workers) {
  const auto c = pascal(m_max);
  std::vector<TailSweep> parts(m_max + 1);
  parallel_for(m_max + 1, workers, [&](std::size_t mi) {
    const auto m = static_cast<std::uint32_t>(mi);
    auto& part = parts[m];
    for (std::uint32_t kk = 0; 2 * kk <= m; ++kk) {
      for (std::uint32_t t = 0; t <= m; ++t) {
        if (!(4 * t > m && 4 * t < 3 * m)) continue;
        const BigInt& total = c[m][t];
        // Tail numerators, accumulated from l = kk downward.
        std::vector<BigInt> tail(kk + 2, 0);
        for (std::uint32_t l = kk + 1; l-- > 0;) {
          BigInt term = 0;
          if (l <= t && t - l <= m - kk) term = c[kk][l] * c[m - kk][t - l];
          tail[l] = tail[l + 1] + term;
        }
        BigInt mp = 1, bp = 1;   // m^l, (t kk)^l
        for (std::uint32_t l = 0; l <= kk; ++l) {
          // tail/total <= bp/mp  <=>  tail * mp <= bp * total
          const BigInt lhs = tail[l] * mp;
          const BigInt rhs = bp * total;
          ++part.checked;
          if (lhs > rhs) {
            ++part.violations;
            part.violation_rows.push_back(std::to_string(m) + "," + std::to_string(kk) + "," + std::to_string(t) + "," +
                                          std::to_string(l));
          }
          if (rhs != 0) {
            const double ratio = to_double(Rational(lhs, rhs));
            if (ratio > part.max_ratio) {
              part.max_ratio = ratio;
              part.worst = {m, kk, t};
              part.worst_l = l;
            }
          }
          mp *= m;
          bp *= static_cast<std::uint64_t>(t) * kk;
        }
      }
    }
  });
  TailSweep out;
  for (auto& p : parts) {
    out.checked += p.checked;
    out.violations += p.violations;
    out.violation_rows.insert(out.violation_rows.end(), p.violation_rows.begin(), p.violation_rows.end());
    if (p.max_ratio > out.max_ratio) {
      out.max_ratio = p.max_ratio;
      out.worst = p.worst;
      out.worst_l = p.worst_l;
    }
  }
  return out;
}

std::vector<ScalingRow> pmf_scaling_probe(const std::vector<std::uint32_t>& k_grid, double c, std::uint32_t m_factor,
                                          unsigned workers) {
  if (k_grid.empty()) throw Error(ErrorKind::invalid_argument, "scaling probe: empty grid");
  if (!(c > 0.0 && c < 1.0)) throw Error(ErrorKind::invalid_argument, "scaling probe: c must lie in (0, 1)");
  std::vector<ScalingRow> rows(k_grid.size());
  parallel_for(k_grid.size(), workers, [&](std::size_t i) {
    const std::uint32_t kk = k_grid[i];
    if (kk < 1) throw Error(ErrorKind::invalid_argument, "scaling probe: kk must be positive");
    const std::uint32_t m = m_factor * kk;
    const auto t = static_cast<std::uint32_t>(std::llround(c * m));
    const std::uint32_t lo = t > m - kk ? t - (m - kk) : 0;
    const std::uint32_t hi = std::min(kk, t);
    // a_l = C(kk, l) C(m - kk, t - l), stepped by its exact ratio.
    BigInt a = binomial(kk, lo) * binomial(m - kk, t - lo);
    BigInt best = a;
    std::uint32_t arg = lo;
    for (std::uint32_t l = lo; l < hi; ++l) {
      a *= static_cast<std::uint64_t>(kk - l) * (t - l);
      a /= static_cast<std::uint64_t>(l + 1) * (m - kk - t + l + 1);
      if (a > best) {
        best = a;
        arg = l + 1;
      }
    }
    ScalingRow r;
    r.kk = kk;
    r.m = m;
    r.t_draws = t;
    r.argmax_l = arg;
    r.max_pmf = Rational(best, binomial(m, t));
    r.normalized = to_double(r.max_pmf) * std::sqrt(static_cast<double>(kk));
    rows[i] = std::move(r);
  });
  return rows;
}

Rational antichain_prob(const HypergeomParams& p, const std::vector<std::vector<std::uint32_t>>& family) {
  p.validate();
  std::vector<std::vector<std::uint32_t>> sets;
  for (const auto& member : family) {
    auto s = member;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw Error(ErrorKind::invalid_argument, "antichain: member lists an element twice");
    for (auto e : s)
      if (e < 1 || e > p.kk) throw Error(ErrorKind::invalid_argument, "antichain: members must be subsets of {1..kk}");
    sets.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j)
      if (i != j && std::includes(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end()))
        throw Error(ErrorKind::invalid_argument, "family is not an antichain: member " + std::to_string(i + 1) +
                                                     " contains member " + std::to_string(j + 1));
  BigInt num = 0;
  for (const auto& s : sets) {
    const auto r = static_cast<std::uint32_t>(s.size());
    if (r <= p.t_draws) num += binomial(p.m - p.kk, p.t_draws - r);
  }
  return Rational(num, binomial(p.m, p.t_draws));
}

std::vector<BinomialMidRow> binomial_mid_check(const std::vector<std::uint32_t>& n_grid, double c) {
  if (!(c > 0.0 && c < 1.0)) throw Error(ErrorKind::invalid_argument, "binomial check: c must lie in (0, 1)");
  std::vector<BinomialMidRow> rows;
  for (auto n : n_grid) {
    if (n < 1) throw Error(ErrorKind::invalid_argument, "binomial check: n must be positive");
    BinomialMidRow r;
    r.n = n;
    const BigInt pow2 = BigInt(1) << n;
    const double shift = c * std::sqrt(n * std::log(static_cast<double>(n))) / 2.0;
    r.offset_index = std::min<std::uint32_t>(n, static_cast<std::uint32_t>(std::floor(n / 2.0 + shift)));
    r.center = Rational(binomial(n, n / 2), pow2);
    r.offset = Rational(binomial(n, r.offset_index), pow2);
    r.center_normalized = to_double(r.center) * std::sqrt(static_cast<double>(n));
    r.offset_normalized = to_double(r.offset) * std::pow(static_cast<double>(n), 0.5 + c * c / 2.0);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace majcirc::analyze
