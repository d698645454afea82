#pragma once
// Dense Fourier transforms: iterative power-of-two FFT, Bluestein resampling
// for arbitrary lengths, and real linear convolution on top of them.

#include "wg/common.hpp"

namespace wg {

// sign = -1 gives X_k = sum_n x_n e(-nk/M), sign = +1 the conjugate kernel.
// Power-of-two length, in place, no normalization.
inline void fft_pow2(std::vector<cplx>& a, int sign) {
  size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw domain_error("fft_pow2 needs a power-of-two length");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    std::vector<cplx> tw(len / 2);
    for (size_t j = 0; j < len / 2; ++j) {
      cplx w = unit_phase(j, len);
      tw[j] = sign < 0 ? std::conj(w) : w;
    }
    for (size_t i = 0; i < n; i += len) {
      for (size_t j = 0; j < len / 2; ++j) {
        cplx u = a[i + j];
        cplx v = a[i + j + len / 2] * tw[j];
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

inline size_t fft_size_at_least(size_t n) {
  size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// Quadratic-time reference transform, any length.
inline std::vector<cplx> dft_direct(const std::vector<cplx>& x, int sign) {
  size_t m = x.size();
  std::vector<cplx> out(m);
  for (size_t k = 0; k < m; ++k) {
    kahan_cplx acc;
    for (size_t n = 0; n < m; ++n) {
      u64 e = mulmod_u64(n % m, k % m, m);
      cplx w = unit_phase(e, m);
      acc.add(x[n] * (sign < 0 ? std::conj(w) : w));
    }
    out[k] = acc.value();
  }
  return out;
}

// Arbitrary-length transform via the chirp factorization nk = (n^2+k^2-(k-n)^2)/2.
// Chirp exponents are reduced mod 2M as integers so large indices lose no phase.
inline std::vector<cplx> dft_any(const std::vector<cplx>& x, int sign) {
  size_t m = x.size();
  if (m == 0) throw domain_error("dft_any needs a nonempty input");
  if ((m & (m - 1)) == 0) {
    std::vector<cplx> a = x;
    fft_pow2(a, sign);
    return a;
  }
  u64 mm = 2 * u64(m);
  auto chirp = [&](u64 idx) {
    u64 e = mulmod_u64(idx % mm, idx % mm, mm);
    cplx w = unit_phase(e, mm);  // e(idx^2 / 2M)
    return sign < 0 ? std::conj(w) : w;
  };
  size_t L = fft_size_at_least(2 * m - 1);
  std::vector<cplx> a(L, cplx{0, 0}), b(L, cplx{0, 0});
  for (size_t n = 0; n < m; ++n) a[n] = x[n] * chirp(n);
  for (size_t n = 0; n < m; ++n) {
    cplx c = std::conj(chirp(n));
    b[n] = c;
    if (n > 0) b[L - n] = c;
  }
  fft_pow2(a, -1);
  fft_pow2(b, -1);
  for (size_t i = 0; i < L; ++i) a[i] *= b[i];
  fft_pow2(a, +1);
  std::vector<cplx> out(m);
  for (size_t k = 0; k < m; ++k) out[k] = a[k] / double(L) * chirp(k);
  return out;
}

// Linear convolution of real arrays, exact up to roundoff.
inline std::vector<double> linear_convolve(const std::vector<double>& f,
                                           const std::vector<double>& g) {
  if (f.empty() || g.empty()) return {};
  size_t out_len = f.size() + g.size() - 1;
  size_t L = fft_size_at_least(out_len);
  std::vector<cplx> a(L, cplx{0, 0}), b(L, cplx{0, 0});
  for (size_t i = 0; i < f.size(); ++i) a[i] = f[i];
  for (size_t i = 0; i < g.size(); ++i) b[i] = g[i];
  fft_pow2(a, -1);
  fft_pow2(b, -1);
  for (size_t i = 0; i < L; ++i) a[i] *= b[i];
  fft_pow2(a, +1);
  std::vector<double> out(out_len);
  for (size_t i = 0; i < out_len; ++i) out[i] = a[i].real() / double(L);
  return out;
}

inline std::vector<double> convolve_direct_pair(const std::vector<double>& f,
                                                const std::vector<double>& g) {
  if (f.empty() || g.empty()) return {};
  std::vector<double> out(f.size() + g.size() - 1, 0.0);
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
  return out;
}

}  // namespace wg
