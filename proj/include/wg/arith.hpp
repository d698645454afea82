#pragma once
// Exact modular/number-theoretic primitives: lifting exponents, the k-th
// power congruence modulus, root-count sigma, segmented prime sieving over
// short windows, and the empirical lower-density estimator for primes in
// arithmetic progressions over short intervals.

#include <fstream>
#include <map>
#include <numeric>
#include <optional>

#include "wg/common.hpp"

namespace wg {

// ---------------------------------------------------------------- primality

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) d >>= 1, ++r;
  // Deterministic for all 64-bit inputs with this base set.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace detail {
inline u64 pollard_rho(u64 n, rng64& rng) {
  if ((n & 1) == 0) return 2;
  while (true) {
    u64 c = rng.below(n - 1) + 1;
    auto step = [&](u64 v) { return (mulmod_u64(v, v, n) + c) % n; };
    u64 x = rng.below(n), y = x, d = 1;
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}
}  // namespace detail

// Sorted (prime, exponent) pairs.
using Factorization = std::vector<std::pair<u64, unsigned>>;

inline Factorization factor_u64(u64 n) {
  std::map<u64, unsigned> acc;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (n % p == 0) ++acc[p], n /= p;
  }
  rng64 rng(0xfac70);
  std::vector<u64> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    u64 m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (is_prime_u64(m)) {
      ++acc[m];
      continue;
    }
    u64 d = detail::pollard_rho(m, rng);
    stack.push_back(d);
    stack.push_back(m / d);
  }
  return {acc.begin(), acc.end()};
}

inline u64 phi_u64(u64 n) {
  u64 r = n;
  for (auto [p, e] : factor_u64(n)) r -= r / p;
  return r;
}

inline int mobius_u64(u64 n) {
  auto f = factor_u64(n);
  for (auto [p, e] : f)
    if (e > 1) return 0;
  return (f.size() % 2 == 0) ? 1 : -1;
}

// Chinese remainder for coprime moduli; result in [0, m1*m2).
inline u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2) {
  u64 m = m1 * m2;
  u64 inv = invmod_u64(m1 % m2, m2);
  u64 diff = (r2 + m2 - r1 % m2) % m2;
  return (r1 + m1 * mulmod_u64(diff, inv, m2)) % m;
}

// -------------------------------------------------------- lifting exponents

// p-adic valuation of k.
inline unsigned tau_of(u64 k, u64 p) {
  unsigned t = 0;
  while (k % p == 0) k /= p, ++t;
  return t;
}

// Lifting threshold for k-th power residues mod p^t; defined for every prime.
inline unsigned eta_lift(u64 k, u64 p) {
  unsigned tau = tau_of(k, p);
  if (p == 2 && tau > 0) return tau + 2;
  return tau + 1;
}

inline unsigned eta_exponent(u64 k, u64 p) {
  if (k == 0) throw domain_error("eta_exponent needs k >= 1");
  if (!is_prime_u64(p)) throw domain_error("eta_exponent needs p prime");
  if (k % (p - 1) != 0) throw domain_error("eta_exponent needs (p-1) | k");
  return eta_lift(k, p);
}

struct HuaModulus {
  unsigned k = 0;
  Factorization factors;  // (p, eta(k,p)) for every prime with (p-1) | k
  u64 value = 1;
};

inline HuaModulus hua_modulus(unsigned k) {
  if (k < 1 || k > 64) throw domain_error("hua_modulus supports 1 <= k <= 64");
  HuaModulus h;
  h.k = k;
  for (u64 d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    u64 p = d + 1;
    if (!is_prime_u64(p)) continue;
    unsigned e = eta_lift(k, p);
    h.factors.push_back({p, e});
    h.value *= ipow_u64(p, e);
  }
  return h;
}

// ----------------------------------------------------------- sigma = #roots

namespace detail {
inline u64 sigma_prime_power(u64 q, u64 b, u64 k) {
  if (q > 10000000) throw scale_error("sigma: prime power exceeds enumeration bound");
  u64 count = 0;
  for (u64 z = 0; z < q; ++z)
    if (powmod_u64(z, k, q) == b % q) ++count;
  return count;
}
}  // namespace detail

// #{z in [W] : z^k = b (mod W)}, multiplicative across prime powers.
inline u64 sigma(u64 W, u64 b, u64 k) {
  if (W < 1) throw domain_error("sigma needs W >= 1");
  if (k < 1) throw domain_error("sigma needs k >= 1");
  b %= W;
  u64 out = 1;
  for (auto [p, e] : factor_u64(W)) out *= detail::sigma_prime_power(ipow_u64(p, e), b, k);
  return out;
}

// The residues z mod W with z^k = b (mod W), by direct scan.
inline std::vector<u64> sigma_witnesses(u64 W, u64 b, u64 k) {
  if (W < 1 || k < 1) throw domain_error("sigma_witnesses needs W, k >= 1");
  if (W > 10000000) throw scale_error("sigma_witnesses: modulus exceeds enumeration bound");
  b %= W;
  std::vector<u64> out;
  for (u64 z = 0; z < W; ++z)
    if (powmod_u64(z, k, W) == b) out.push_back(z);
  return out;
}

// --------------------------------------------------------------- prime sieve

struct PrimeWindow {
  u64 lo = 0, hi = 0;
  std::vector<u64> primes;
};

// Primes up to n (inclusive), simple sieve.
inline std::vector<u64> small_primes_upto(u64 n) {
  if (n > 60000000) throw scale_error("base sieve bound too large");
  std::vector<bool> comp(n + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= n; ++i) {
    if (!comp[i]) {
      out.push_back(i);
      for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
  }
  return out;
}

// Segmented Eratosthenes, odd-only storage.  Tested ceiling: hi <= 1e12.
inline PrimeWindow primes_in(u64 lo, u64 hi) {
  if (hi < lo) throw domain_error("primes_in needs lo <= hi");
  if (lo < 2) throw domain_error("primes_in needs lo >= 2");
  if (hi > 1000000000000ull) throw scale_error("primes_in ceiling is 1e12");
  if (hi - lo > 2000000000ull) throw scale_error("primes_in window wider than 2e9");
  PrimeWindow w;
  w.lo = lo;
  w.hi = hi;
  u64 root = u64(iroot_floor(Int(hi), 2).convert_to<u64>());
  auto base = small_primes_upto(std::max<u64>(root, 3));
  if (lo <= 2 && 2 <= hi) w.primes.push_back(2);
  u64 first = std::max<u64>(lo, 3);
  if (first % 2 == 0) ++first;
  if (first > hi) return w;
  // Index i represents the odd number first + 2i.
  u64 span = (hi - first) / 2 + 1;
  std::vector<bool> comp(span, false);
  for (u64 p : base) {
    if (p == 2) continue;
    if (p * p > hi) break;
    u64 start = std::max(p * p, ((first + p - 1) / p) * p);
    if (start % 2 == 0) start += p;
    for (u64 m = start; m <= hi; m += 2 * p) comp[(m - first) / 2] = true;
  }
  for (u64 i = 0; i < span; ++i)
    if (!comp[i]) w.primes.push_back(first + 2 * i);
  return w;
}

// -------------------------------------------------- PrimeWindow binary cache

namespace detail {
inline void put_u64_le(std::string& s, u64 v) {
  for (int i = 0; i < 8; ++i) s += char(u8(v >> (8 * i)));
}
inline u64 get_u64_le(const std::string& s, size_t& off) {
  if (off + 8 > s.size()) throw io_error("prime cache truncated");
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= u64(u8(s[off + i])) << (8 * i);
  off += 8;
  return v;
}
inline void put_varint(std::string& s, u64 v) {
  while (v >= 0x80) {
    s += char(u8(v) | 0x80);
    v >>= 7;
  }
  s += char(u8(v));
}
inline u64 get_varint(const std::string& s, size_t& off) {
  u64 v = 0;
  unsigned shift = 0;
  while (true) {
    if (off >= s.size()) throw io_error("prime cache truncated");
    u8 b = u8(s[off++]);
    v |= u64(b & 0x7f) << shift;
    if (!(b & 0x80)) return v;
    shift += 7;
    if (shift > 63) throw io_error("prime cache varint overflow");
  }
}
}  // namespace detail

inline std::string prime_window_encode(const PrimeWindow& w) {
  std::string s = "WGPW1";
  detail::put_u64_le(s, w.lo);
  detail::put_u64_le(s, w.hi);
  detail::put_u64_le(s, w.primes.size());
  u64 prev = w.lo;
  for (u64 p : w.primes) {
    detail::put_varint(s, p - prev);
    prev = p;
  }
  return s;
}

inline PrimeWindow prime_window_decode(const std::string& s) {
  if (s.size() < 5 || s.compare(0, 5, "WGPW1") != 0) throw io_error("bad prime cache magic");
  size_t off = 5;
  PrimeWindow w;
  w.lo = detail::get_u64_le(s, off);
  w.hi = detail::get_u64_le(s, off);
  u64 count = detail::get_u64_le(s, off);
  w.primes.reserve(count);
  u64 prev = w.lo;
  for (u64 i = 0; i < count; ++i) {
    prev += detail::get_varint(s, off);
    w.primes.push_back(prev);
  }
  return w;
}

inline void prime_window_save(const PrimeWindow& w, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot write " + path);
  auto s = prime_window_encode(w);
  f.write(s.data(), std::streamsize(s.size()));
}

inline PrimeWindow prime_window_load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot read " + path);
  std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return prime_window_decode(s);
}

// ------------------------------------------------ short-interval AP density

struct AlphaMinusReport {
  u64 x = 0;
  Rat theta, eps;
  u64 d_max = 1;
  u64 window_len = 0;   // fixed-length relaxation, recorded for consumers
  u64 stride = 0;
  u64 num_windows = 0;
  Rat ratio_min;        // min over windows and (c,d) of phi(d) * count / |I|
  double value = 0.0;   // ratio_min * log(x)
  u64 argmin_start = 0, argmin_c = 0, argmin_d = 1;
};

// Empirical lower-density witness: scans fixed-length windows inside
// [x, x + x^(theta+eps)] on a 4x-overlapping grid and every residue class
// d <= d_max, gcd(c,d)=1, returning the worst normalized prime count.
inline AlphaMinusReport alpha_minus_estimate(u64 x, const Rat& theta, const Rat& eps, u64 d_max) {
  if (x < 1000) throw domain_error("alpha_minus_estimate needs x >= 1e3");
  if (!(theta > Rat(1, 2) && theta < 1)) throw domain_error("theta must lie in (1/2, 1)");
  if (d_max < 1 || double(d_max) > std::log(double(x)) + 1e-9)
    throw domain_error("alpha_minus_estimate needs 1 <= d_max <= log x");
  AlphaMinusReport rep;
  rep.x = x;
  rep.theta = theta;
  rep.eps = eps;
  rep.d_max = d_max;

  Int span = floor_pow_rat(Int(x), theta + eps);
  if (Int(x) + span > Int(1000000000000ull))
    throw scale_error("alpha_minus window exceeds the sieving ceiling");
  Rat lexp = theta - eps;
  if (!(lexp > 0)) throw domain_error("alpha_minus_estimate needs eps < theta");
  Int len_i = floor_pow_rat(Int(x), lexp);
  u64 L = to_u64(len_i, "window length");
  // ceil(x^(theta-eps)): bump unless the rational power is exact.
  if (ipow(len_i, unsigned(to_u64(rat_den(lexp)))) != ipow(Int(x), unsigned(to_u64(rat_num(lexp)))))
    ++L;
  u64 span_u = to_u64(span, "scan span");
  if (span_u < L) span_u = L;
  u64 stride = (L + 3) / 4;
  rep.window_len = L;
  rep.stride = stride;

  u64 lo = x, hi = x + span_u;
  PrimeWindow pw = primes_in(lo, hi);

  bool first_entry = true;
  Rat best;
  for (u64 start = lo; start + L - 1 <= hi; start += stride) {
    ++rep.num_windows;
    u64 end = start + L - 1;
    auto it_lo = std::lower_bound(pw.primes.begin(), pw.primes.end(), start);
    auto it_hi = std::upper_bound(pw.primes.begin(), pw.primes.end(), end);
    for (u64 d = 1; d <= d_max; ++d) {
      std::vector<u64> cnt(d, 0);
      for (auto it = it_lo; it != it_hi; ++it) ++cnt[*it % d];
      for (u64 c = 1; c <= d; ++c) {
        if (std::gcd(c, d) != 1) continue;
        Rat ratio = Rat(Int(phi_u64(d)) * Int(cnt[c % d]), Int(L));
        if (first_entry || ratio < best) {
          first_entry = false;
          best = ratio;
          rep.argmin_start = start;
          rep.argmin_c = c;
          rep.argmin_d = d;
        }
      }
    }
    if (start > hi - stride) break;  // u64 wrap guard
  }
  if (first_entry) throw domain_error("alpha_minus_estimate scanned no windows");
  rep.ratio_min = best;
  rep.value = to_double(best) * std::log(double(x));
  return rep;
}

}  // namespace wg
