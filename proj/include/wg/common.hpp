#pragma once
// Shared numeric plumbing: exact big integers/rationals, checked casts,
// compensated summation, hashing, deterministic RNG, tiny thread pool.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wg {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

// Parameter outside the contract's domain (maps to CLI exit 2).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};
// Request is valid but exceeds a guarded resource bound (CLI exit 1).
struct scale_error : std::runtime_error {
  explicit scale_error(const std::string& m) : std::runtime_error(m) {}
};
// Malformed or unreadable artifact (CLI exit 1).
struct io_error : std::runtime_error {
  explicit io_error(const std::string& m) : std::runtime_error(m) {}
};

inline u64 to_u64(const Int& x, const char* what = "value") {
  if (x < 0 || x > Int(std::numeric_limits<u64>::max()))
    throw scale_error(std::string(what) + " does not fit in 64 bits");
  return x.convert_to<u64>();
}

// Natural log of a nonnegative big integer, safe past double range.
inline double log_big(const Int& x) {
  if (x <= 0) throw domain_error("log of nonpositive integer");
  unsigned bits = boost::multiprecision::msb(x);
  if (bits <= 900) return std::log(x.convert_to<double>());
  unsigned shift = bits - 900;
  Int hi = x >> shift;
  return std::log(hi.convert_to<double>()) + double(shift) * std::log(2.0);
}

inline double to_double(const Int& x) {
  unsigned sign = (x < 0);
  Int a = sign ? Int(-x) : x;
  if (a == 0) return 0.0;
  double d = (boost::multiprecision::msb(a) <= 1000)
                 ? a.convert_to<double>()
                 : std::exp(log_big(a));
  return sign ? -d : d;
}

inline double to_double(const Rat& r) {
  return to_double(Int(boost::multiprecision::numerator(r))) /
         to_double(Int(boost::multiprecision::denominator(r)));
}

inline Int rat_num(const Rat& r) { return Int(boost::multiprecision::numerator(r)); }
inline Int rat_den(const Rat& r) { return Int(boost::multiprecision::denominator(r)); }

inline Int floor_rat(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

inline Int ceil_rat(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int q = n / d;
  if (n > 0 && q * d != n) ++q;
  return q;
}

// Accepts "123", "-0.525", "9/10", "1e6", "2.5e3".
inline Rat rat_from_string(const std::string& s0) {
  std::string s = s0;
  if (s.empty()) throw domain_error("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw domain_error("zero denominator in " + s0);
    return Rat(n, d);
  }
  long expo = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    expo = std::stol(s.substr(epos + 1));
    s = s.substr(0, epos);
  }
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  auto dot = s.find('.');
  std::string digits = s;
  long frac = 0;
  if (dot != std::string::npos) {
    frac = long(s.size() - dot - 1);
    digits = s.substr(0, dot) + s.substr(dot + 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw domain_error("bad rational literal: " + s0);
  Rat r{Int(digits), 1};
  long net = expo - frac;
  Int p10 = 1;
  for (long i = 0; i < std::abs(net); ++i) p10 *= 10;
  if (net >= 0) r *= Rat(p10);
  else r /= Rat(p10);
  return neg ? Rat(-r) : r;
}

// Fixed-point decimal rendering, round toward zero; exact when digits suffice.
inline std::string rat_to_decimal(const Rat& r, unsigned digits = 15) {
  Int n = rat_num(r), d = rat_den(r);
  bool neg = n < 0;
  if (neg) n = -n;
  Int ip = n / d, rem = n % d;
  std::string out = ip.convert_to<std::string>();
  if (digits > 0 && rem != 0) {
    out += '.';
    for (unsigned i = 0; i < digits && rem != 0; ++i) {
      rem *= 10;
      out += char('0' + (rem / d).convert_to<int>());
      rem %= d;
    }
  }
  return (neg && (n != 0)) ? "-" + out : out;
}

inline Int ipow(Int base, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline u64 ipow_u64(u64 base, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > std::numeric_limits<u64>::max() / base)
      throw scale_error("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

// Largest r with r^k <= x.  Newton with exact correction.
inline Int iroot_floor(const Int& x, unsigned k) {
  if (x < 0) throw domain_error("root of negative integer");
  if (x == 0 || k == 1) return x;
  unsigned bits = boost::multiprecision::msb(x) + 1;
  Int r;
  if (k >= 4 && bits > 64 && bits / k <= 50) {
    // A 53-bit mantissa puts the seed within a couple of units of the root;
    // from the bit-length seed Newton needs Theta(k log overshoot) steps.
    unsigned drop = bits - 53;
    double mant = double((x >> drop).convert_to<u64>());
    double ln_x = std::log(mant) + double(drop) * 0.69314718055994530942;
    r = Int(u64(std::exp(ln_x / double(k)))) + 2;
  } else {
    r = Int(1) << (bits / k + 1);
  }
  while (true) {
    Int rk1 = ipow(r, k - 1);
    Int nr = ((k - 1) * r * rk1 + x) / (k * rk1);
    if (nr >= r) break;
    r = nr;
  }
  while (ipow(r, k) > x) --r;
  while (ipow(r + 1, k) <= x) ++r;
  return r;
}

// Largest D >= 0 with D^q <= X^p, i.e. floor(X^(p/q)) for exact X, p/q > 0.
inline Int floor_pow_rat(const Int& X, const Rat& e) {
  if (X <= 0) throw domain_error("floor_pow_rat needs X > 0");
  if (e <= 0) throw domain_error("floor_pow_rat needs a positive exponent");
  u64 p = to_u64(rat_num(e), "exponent numerator");
  u64 q = to_u64(rat_den(e), "exponent denominator");
  if (p > 100000 || q > 100000) throw scale_error("exponent too wild");
  Int xp = ipow(X, unsigned(p));
  return iroot_floor(xp, unsigned(q));
}

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return u64((u128(a) * b) % m); }

inline u64 powmod_u64(u64 b, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of a mod m, gcd(a,m)=1 required.
inline u64 invmod_u64(u64 a, u64 m) {
  i64 t = 0, nt = 1;
  i64 r = i64(m), nr = i64(a % m);
  while (nr != 0) {
    i64 q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw domain_error("invmod of noninvertible element");
  return u64(t < 0 ? t + i64(m) : t);
}

// Compensated accumulator; stable for > 1e6-term oscillating sums.
struct kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

struct kahan_cplx {
  kahan re, im;
  void add(cplx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

// e(x) = exp(2*pi*i*x) for x given as an exact fraction num/den in [0,1).
inline cplx unit_phase(u64 num, u64 den) {
  constexpr double tau = 6.283185307179586476925286766559;
  double t = double(num) / double(den);
  return {std::cos(tau * t), std::sin(tau * t)};
}

struct rng64 {
  std::mt19937_64 eng;
  explicit rng64(u64 seed) : eng(seed ^ 0x9e3779b97f4a7c15ULL) {}
  u64 next() { return eng(); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng); }
  u64 below(u64 n) { return std::uniform_int_distribution<u64>(0, n - 1)(eng); }
};

// Static partition; fn must be safe to run concurrently on disjoint indices.
inline void parallel_for(u64 count, unsigned threads, const std::function<void(u64)>& fn) {
  if (threads <= 1 || count < 2) {
    for (u64 i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<u64> next{0};
  auto worker = [&] {
    while (true) {
      u64 i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::min<u64>(threads, count);
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

// SHA-256, FIPS 180-4.  Used for artifact digests and cache keys.
struct sha256 {
  u32 h[8] = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
              0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
  u64 total = 0;
  u8 buf[64];
  unsigned fill = 0;

  static u32 rotr(u32 x, unsigned n) { return (x >> n) | (x << (32 - n)); }

  void block(const u8* p) {
    static const u32 K[64] = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
        0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
        0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
        0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
        0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
        0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
        0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
        0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
        0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
        0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
        0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
    u32 w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = u32(p[4 * i]) << 24 | u32(p[4 * i + 1]) << 16 | u32(p[4 * i + 2]) << 8 |
             u32(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      u32 s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      u32 s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    u32 a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      u32 S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      u32 ch = (e & f) ^ (~e & g);
      u32 t1 = hh + S1 + ch + K[i] + w[i];
      u32 S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      u32 mj = (a & b) ^ (a & c) ^ (b & c);
      u32 t2 = S0 + mj;
      hh = g; g = f; f = e; e = d + t1;
      d = c; c = b; b = a; a = t1 + t2;
    }
    h[0] += a; h[1] += b; h[2] += c; h[3] += d;
    h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
  }

  void update(const void* data, size_t len) {
    const u8* p = static_cast<const u8*>(data);
    total += len;
    while (len) {
      size_t take = std::min<size_t>(len, 64 - fill);
      std::memcpy(buf + fill, p, take);
      fill += unsigned(take);
      p += take;
      len -= take;
      if (fill == 64) {
        block(buf);
        fill = 0;
      }
    }
  }

  std::string hex() {
    u64 bits = total * 8;
    u8 pad = 0x80;
    update(&pad, 1);
    u8 z = 0;
    while (fill != 56) update(&z, 1);
    u8 lenb[8];
    for (int i = 0; i < 8; ++i) lenb[i] = u8(bits >> (56 - 8 * i));
    update(lenb, 8);
    static const char* d = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (u32 word : h)
      for (int i = 3; i >= 0; --i) {
        u8 b = u8(word >> (8 * i));
        out += d[b >> 4];
        out += d[b & 15];
      }
    return out;
  }
};

inline std::string sha256_hex(const std::string& s) {
  sha256 h;
  h.update(s.data(), s.size());
  return h.hex();
}

}  // namespace wg
