#pragma once
// Exact-rational admissibility thresholds for (k, s, theta), representation
// search over prime k-th powers in a short window (meet-in-the-middle with a
// shared half-sum table), ordered-tuple counting, and the tight-interval gap
// demonstration at toy scale.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "wg/arith.hpp"
#include "wg/common.hpp"

namespace wg {

// ------------------------------------------------------------- thresholds

enum class BindingConstraint { minor_arc, major_arc, restriction };

struct ThresholdResult {
  unsigned k = 0;
  unsigned s = 0;
  BindingConstraint binding_constraint = BindingConstraint::restriction;
  Rat theta_bound;        // infimum of admissible exponents for this (k, s)
  Rat alpha_minus_used;   // density constant of the regime just above the bound
};

namespace detail {

// Least integer strictly greater than b (b >= 0).
inline Int least_above(const Rat& b) { return floor_rat(b) + 1; }

}  // namespace detail

// Infimum of exponents theta for which s summands are admissible.  The
// density constant is piecewise: 99/100 strictly above 11/20, 9/100 on
// (21/40, 11/20].  When neither arc constraint reaches past a regime
// boundary the boundary itself is the infimum and the binding constraint
// is reported as the restriction edge.
inline ThresholdResult theta_threshold(unsigned k, unsigned s) {
  if (k < 2) throw domain_error("theta_threshold needs k >= 2");
  u64 box = u64(k) * k + k;
  if (u64(s) <= box)
    throw domain_error("restriction constraint requires s > k*k + k");

  const Rat strong(99, 100), weak(9, 100);
  const Rat regime_edge(11, 20), exponent_floor(21, 40);
  auto minor_bound = [&](const Rat& a) { return Rat(1, 2) + Rat(1) / (a * s); };
  auto major_bound = [&](const Rat& a) { return Rat(u64(k) + 2) / (a * s); };

  ThresholdResult r;
  r.k = k;
  r.s = s;

  Rat m1 = minor_bound(strong), m2 = major_bound(strong);
  Rat strong_need = std::max(m1, m2);
  if (strong_need > regime_edge) {
    r.theta_bound = strong_need;
    r.alpha_minus_used = strong;
    r.binding_constraint =
        (m1 >= m2) ? BindingConstraint::minor_arc : BindingConstraint::major_arc;
    return r;
  }

  Rat w1 = minor_bound(weak), w2 = major_bound(weak);
  Rat weak_need = std::max(w1, w2);
  if (weak_need > regime_edge) {
    // Only the strong regime admits s; its lower edge is the infimum.
    r.theta_bound = regime_edge;
    r.alpha_minus_used = strong;
    r.binding_constraint = BindingConstraint::restriction;
    return r;
  }
  if (weak_need > exponent_floor) {
    r.theta_bound = weak_need;
    r.alpha_minus_used = weak;
    r.binding_constraint =
        (w1 >= w2) ? BindingConstraint::minor_arc : BindingConstraint::major_arc;
    return r;
  }
  r.theta_bound = exponent_floor;
  r.alpha_minus_used = weak;
  r.binding_constraint = BindingConstraint::restriction;
  return r;
}

// Least s strictly above every rational bound at exponent theta.
inline u64 s_min(unsigned k, const Rat& theta) {
  if (k < 2) throw domain_error("s_min needs k >= 2");
  if (theta <= Rat(1, 2) || theta >= 1)
    throw domain_error("s_min needs theta in (1/2, 1)");
  if (theta <= Rat(21, 40))
    throw domain_error("no density regime admits exponents at or below 21/40");
  Rat alpha = (theta > Rat(11, 20)) ? Rat(99, 100) : Rat(9, 100);
  Int best = detail::least_above(Rat(2) / (alpha * (2 * theta - 1)));
  Int from_major = detail::least_above(Rat(u64(k) + 2) / (alpha * theta));
  if (from_major > best) best = from_major;
  Int from_box = Int(u64(k) * k + k) + 1;
  if (from_box > best) best = from_box;
  return to_u64(best, "s_min");
}

// ---------------------------------------------------- representation search

enum class RepMethod { meet_in_middle, exhaustive };

struct RepresentationRecord {
  Int n;
  unsigned k = 0;
  unsigned s = 0;
  u64 lo = 0, hi = 0;
  std::vector<u64> primes;  // nondecreasing witness, empty unless found
  bool found = false;
  RepMethod method = RepMethod::meet_in_middle;
};

namespace detail {

inline u128 pow_u128(u64 base, unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > ~u128(0) / base)
      throw scale_error("power exceeds 128 bits");
    r *= base;
  }
  return r;
}

inline Int int_from_u128(u128 v) {
  Int r = u64(v >> 64);
  r <<= 64;
  r += u64(v);
  return r;
}

inline u128 u128_from_int(const Int& v) {
  if (v < 0) throw domain_error("expected a nonnegative integer");
  if ((v >> 128) != 0) throw scale_error("value exceeds 128 bits");
  u128 hi = u64((v >> 64).convert_to<u64>());
  return (hi << 64) | u64((v & Int(0xFFFFFFFFFFFFFFFFull)).convert_to<u64>());
}

// Number of nondecreasing w-tuples over p values, saturating at 1e18.
inline double multiset_count(u64 p, unsigned w) {
  double c = 1.0;
  for (unsigned i = 0; i < w; ++i) {
    c = c * double(p + w - 1 - i) / double(i + 1);
    if (c > 1e18) return 1e18;
  }
  return c;
}

// All w-fold sums of pows over nondecreasing index tuples, sorted by
// (sum, tuple lex).  order holds the sorting permutation.
struct HalfSumTable {
  unsigned width = 0;
  std::vector<u128> sums;
  std::vector<u32> tuples;  // stride = width
  std::vector<u32> order;
};

inline HalfSumTable build_half_table(const std::vector<u128>& pows, unsigned w) {
  HalfSumTable t;
  t.width = w;
  u64 p = pows.size();
  if (p == 0) return t;
  if (multiset_count(p, w) > 2000000.0)
    throw scale_error("half-sum table exceeds the memory cap; shrink the prime window");
  std::vector<u32> idx(w, 0);
  while (true) {
    u128 s = 0;
    for (unsigned j = 0; j < w; ++j) s += pows[idx[j]];
    t.sums.push_back(s);
    t.tuples.insert(t.tuples.end(), idx.begin(), idx.end());
    int j = int(w) - 1;
    while (j >= 0 && idx[size_t(j)] == p - 1) --j;
    if (j < 0) break;
    u32 v = idx[size_t(j)] + 1;
    for (unsigned q = unsigned(j); q < w; ++q) idx[q] = v;
  }
  t.order.resize(t.sums.size());
  std::iota(t.order.begin(), t.order.end(), 0u);
  std::sort(t.order.begin(), t.order.end(), [&](u32 x, u32 y) {
    if (t.sums[x] != t.sums[y]) return t.sums[x] < t.sums[y];
    const u32* a = &t.tuples[size_t(x) * w];
    const u32* b = &t.tuples[size_t(y) * w];
    return std::lexicographical_compare(a, a + w, b, b + w);
  });
  return t;
}

// Depth-first scan over nondecreasing index tuples in lexicographic order;
// fills pick with the least tuple of length slots summing to rem, values
// drawn from pows[min_idx..].  Requires pows ascending, slots >= 1, and
// pows.back() * (slots + extra headroom) free of 128-bit overflow.
inline bool dfs_all(const std::vector<u128>& pows, u128 rem, unsigned slots,
                    u32 min_idx, std::vector<u32>& pick) {
  u64 p = pows.size();
  if (min_idx >= p) return false;
  if (slots == 1) {
    auto it = std::lower_bound(pows.begin() + min_idx, pows.end(), rem);
    if (it == pows.end() || *it != rem) return false;
    pick.push_back(u32(it - pows.begin()));
    return true;
  }
  u128 pmax = pows[p - 1];
  for (u64 i = min_idx; i < p; ++i) {
    u128 v = pows[i];
    if (v * slots > rem) break;
    if (v + pmax * (slots - 1) < rem) continue;
    pick.push_back(u32(i));
    if (dfs_all(pows, rem - v, slots - 1, u32(i), pick)) return true;
    pick.pop_back();
  }
  return false;
}

// Prefix half of the split: after the prefix is placed, the suffix is read
// off the table.  Entries with equal sums are visited in tuple-lex order, so
// the first suffix whose lead index clears the prefix tail is the least one.
inline bool dfs_prefix(const std::vector<u128>& pows, const HalfSumTable& half,
                       u128 rem, unsigned slots, u32 min_idx,
                       std::vector<u32>& pick) {
  unsigned b = half.width;
  if (slots == 0) {
    auto it = std::lower_bound(
        half.order.begin(), half.order.end(), rem,
        [&](u32 e, u128 v) { return half.sums[e] < v; });
    for (; it != half.order.end() && half.sums[*it] == rem; ++it) {
      const u32* t = &half.tuples[size_t(*it) * b];
      if (t[0] >= min_idx) {
        pick.insert(pick.end(), t, t + b);
        return true;
      }
    }
    return false;
  }
  u64 p = pows.size();
  if (min_idx >= p) return false;
  u128 pmax = pows[p - 1];
  for (u64 i = min_idx; i < p; ++i) {
    u128 v = pows[i];
    if (v * (slots + b) > rem) break;
    if (v + pmax * (slots - 1 + b) < rem) continue;
    pick.push_back(u32(i));
    if (dfs_prefix(pows, half, rem - v, slots - 1, u32(i), pick)) return true;
    pick.pop_back();
  }
  return false;
}

}  // namespace detail

// Searches each target for a representation as s prime k-th powers with all
// primes in the window.  The half-sum table is built once per window and
// shared read-only across targets, so batches parallelize over targets.
// Witnesses are lexicographically least and re-verified in big integers.
// Callers already holding the window's primes pass them straight in.
inline std::vector<RepresentationRecord> find_representation_batch(
    const std::vector<Int>& targets, unsigned k, unsigned s,
    const PrimeWindow& pw, unsigned threads = 1) {
  if (k < 1) throw domain_error("representation search needs k >= 1");
  if (s < 2) throw domain_error("representation search needs s >= 2");
  for (const Int& n : targets)
    if (n <= 0) throw domain_error("representation targets must be positive");

  u64 p = pw.primes.size();

  std::vector<RepresentationRecord> out(targets.size());
  for (size_t i = 0; i < targets.size(); ++i) {
    out[i].n = targets[i];
    out[i].k = k;
    out[i].s = s;
    out[i].lo = pw.lo;
    out[i].hi = pw.hi;
  }
  if (p == 0) return out;

  std::vector<u128> pows(p);
  for (u64 i = 0; i < p; ++i) pows[i] = detail::pow_u128(pw.primes[i], k);
  if (pows.back() > ~u128(0) / (2 * u128(s) + 2))
    throw scale_error("window powers too large for 128-bit sums");
  u128 reach = pows.back() * s;

  bool exhaustive = detail::multiset_count(p, s) <= 200000.0;
  detail::HalfSumTable half;
  unsigned suffix_w = s / 2, prefix_w = s - suffix_w;
  if (!exhaustive) half = detail::build_half_table(pows, suffix_w);

  parallel_for(targets.size(), threads, [&](u64 i) {
    RepresentationRecord& rec = out[i];
    rec.method = exhaustive ? RepMethod::exhaustive : RepMethod::meet_in_middle;
    if (rec.n > detail::int_from_u128(reach)) return;
    u128 n128 = detail::u128_from_int(rec.n);
    if (n128 < pows[0] * s) return;
    std::vector<u32> pick;
    bool ok = exhaustive
                  ? detail::dfs_all(pows, n128, s, 0, pick)
                  : detail::dfs_prefix(pows, half, n128, prefix_w, 0, pick);
    if (!ok) return;
    rec.primes.reserve(s);
    Int check = 0;
    for (u32 idx : pick) {
      rec.primes.push_back(pw.primes[idx]);
      Int q = pw.primes[idx];
      for (unsigned e = 1; e < k; ++e) q *= pw.primes[idx];
      check += q;
    }
    if (check != rec.n)
      throw std::logic_error("representation witness failed verification");
    rec.found = true;
  });
  return out;
}

inline std::vector<RepresentationRecord> find_representation_batch(
    const std::vector<Int>& targets, unsigned k, unsigned s, u64 lo, u64 hi,
    unsigned threads = 1) {
  return find_representation_batch(targets, k, s, primes_in(lo, hi), threads);
}

inline RepresentationRecord find_representation(const Int& n, unsigned k,
                                                unsigned s, u64 lo, u64 hi) {
  return find_representation_batch({n}, k, s, lo, hi, 1).front();
}

// Exact number of ordered s-tuples of primes in [lo, hi] whose k-th powers
// sum to n.  Dense table over [0, n], so n is capped; equals the s-fold
// convolution coefficient of the prime-power indicator.
inline u64 count_representations(const Int& n, unsigned k, unsigned s, u64 lo,
                                 u64 hi) {
  if (k < 1) throw domain_error("representation count needs k >= 1");
  if (s < 1) throw domain_error("representation count needs s >= 1");
  if (n < 0) throw domain_error("representation count needs n >= 0");
  u64 nu = to_u64(n, "count target");
  if (nu > 4000000) throw scale_error("exact counting table capped at 4e6");

  PrimeWindow pw = primes_in(lo, hi);
  std::vector<u64> pows;
  for (u64 q : pw.primes) {
    u128 v = detail::pow_u128(q, k);
    if (v <= nu) pows.push_back(u64(v));
  }
  if (std::pow(double(pows.size()) + 1.0, double(s)) > 9e18)
    throw scale_error("ordered count may overflow 64 bits");

  std::vector<u64> cur(nu + 1, 0), nxt(nu + 1, 0);
  cur[0] = 1;
  for (unsigned step = 0; step < s; ++step) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (u64 q : pows)
      for (u64 m = q; m <= nu; ++m) nxt[m] += cur[m - q];
    cur.swap(nxt);
  }
  return cur[nu];
}

// --------------------------------------------------------------- gap demo

struct GapDemoReport {
  unsigned k = 0;
  unsigned s = 0;
  u64 m_base = 0;
  Rat theta;
  unsigned u_radius = 0;
  Int center;               // s * (m^k + k m^(k-1))
  u64 tested = 0;
  std::vector<Int> missed;  // targets with no representation in their window
  bool scale_too_small = false;
};

// Sweeps targets n = center + u over u in [-u_radius, u_radius] and checks
// each for a sum of s k-th powers of integers in [x - x^theta, x + x^theta],
// x = (n/s)^(1/k).  The window half-width constant is fixed at one.  Small
// exponents leave the window too sparse to cover the sweep; the missed
// targets exhibit that.
inline GapDemoReport wright_gap_demo(unsigned k, unsigned s, u64 m_base,
                                     const Rat& theta, unsigned u_radius = 20) {
  if (k < 2) throw domain_error("gap demo needs k >= 2");
  if (s < 2) throw domain_error("gap demo needs s >= 2");
  if (m_base < 2) throw domain_error("gap demo needs m_base >= 2");
  if (theta <= 0 || theta >= 1)
    throw domain_error("gap demo needs theta in (0, 1)");

  GapDemoReport rep;
  rep.k = k;
  rep.s = s;
  rep.m_base = m_base;
  rep.theta = theta;
  rep.u_radius = u_radius;
  rep.scale_too_small = m_base < 10;
  Int mk = 1;
  for (unsigned e = 0; e + 1 < k; ++e) mk *= m_base;
  rep.center = Int(s) * (mk * m_base + Int(k) * mk);

  double theta_d = to_double(theta);
  for (long long u = -(long long)(u_radius); u <= (long long)(u_radius); ++u) {
    Int n = rep.center + u;
    if (n <= 0) continue;
    ++rep.tested;
    double x = std::pow(to_double(n) / double(s), 1.0 / double(k));
    double half = std::pow(x, theta_d);
    long long lo = std::max<long long>(1, (long long)(std::ceil(x - half)));
    long long hi = (long long)(std::floor(x + half));
    if (hi < lo) {
      rep.missed.push_back(n);
      continue;
    }
    if (hi - lo > 4000)
      throw scale_error("gap demo runs at toy scale; lower theta or m_base");
    std::vector<u128> pows;
    pows.reserve(size_t(hi - lo + 1));
    for (long long v = lo; v <= hi; ++v)
      pows.push_back(detail::pow_u128(u64(v), k));
    if (pows.back() > ~u128(0) / (2 * u128(s) + 2))
      throw scale_error("gap demo powers too large for 128-bit sums");
    u128 n128 = detail::u128_from_int(n);
    std::vector<u32> pick;
    bool hit = n128 >= pows.front() * s && n128 <= pows.back() * s &&
               detail::dfs_all(pows, n128, s, 0, pick);
    if (!hit) rep.missed.push_back(n);
  }
  return rep;
}

}  // namespace wg
