#pragma once

// Frequency-side toolkit: arc decomposition of [0,1), the root-counting
// exponential sum and its complete-sum local models, the smooth comparison
// sum, grid transforms, restriction moments, and Vinogradov system counts.

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "transfer.hpp"

namespace wg {

// ---------------------------------------------------------------------------
// Arc geometry.

struct ArcParameters {
  Int Q;  // largest admissible denominator
  Rat T;  // inverse arc half-width
};

// Integer-rounded cutoffs: Q = floor(X^{k(delta+rho)}), T = Y / floor(X^rho).
// Rounding only narrows the arcs, so disjointness is preserved.
inline ArcParameters arc_parameters(const WaringContext& ctx) {
  ArcParameters p;
  p.Q = floor_pow_rat(ctx.X, Rat(ctx.k) * (ctx.delta + ctx.rho));
  p.T = Rat(ctx.Y, floor_pow_rat(ctx.X, ctx.rho));
  return p;
}

struct ArcPoint {
  Rat alpha;
  bool major = false;
  u64 q = 0, a = 0;  // meaningful only when major
  Int Q;
  Rat T;
};

// Major iff |alpha - a/q| <= 1/T for some q <= Q with gcd(a, q) = 1.  Given
// T > 2Q^2, any such a/q sits within 1/(2q^2) of alpha and is therefore a
// convergent, so walking the continued fraction of alpha is exhaustive; the
// same inequality makes the arcs disjoint, so the first hit is the only one.
// Boundary ties (distance exactly 1/T) count as major.
inline ArcPoint classify(const Rat& alpha, const Int& Q, const Rat& T) {
  if (alpha < 0 || alpha >= 1) throw domain_error("classify needs alpha in [0, 1)");
  if (Q < 1) throw domain_error("classify needs Q >= 1");
  if (T <= 2 * Q * Q) throw domain_error("classify: arcs overlap, need T > 2 Q^2");

  ArcPoint pt;
  pt.alpha = alpha;
  pt.Q = Q;
  pt.T = T;

  Rat width = Rat(denominator(T), numerator(T));
  Int num = numerator(alpha), den = denominator(alpha);
  Int h1 = 1, h0 = 0;  // convergent numerators, one step apart
  Int k1 = 0, k0 = 1;  // convergent denominators
  while (den != 0) {
    Int a = num / den;
    Int h = a * h1 + h0;
    Int k = a * k1 + k0;
    if (k > Q) break;
    Rat diff = alpha - Rat(h, k);
    if (diff < 0) diff = -diff;
    if (diff <= width) {
      pt.major = true;
      pt.q = to_u64(k, "arc denominator");
      pt.a = to_u64(h, "arc numerator");
      return pt;
    }
    h0 = h1; h1 = h;
    k0 = k1; k1 = k;
    Int r = num % den;
    num = den;
    den = r;
  }
  return pt;
}

inline ArcPoint classify(const WaringContext& ctx, const Rat& alpha) {
  ArcParameters p = arc_parameters(ctx);
  return classify(alpha, p.Q, p.T);
}

// ---------------------------------------------------------------------------
// The root exponential sum f(b, d, alpha).

struct GenFnValue {
  cplx value{0.0, 0.0};
  u64 terms = 0;            // admissible r actually summed
  bool empty_range = false;  // the r-interval was empty
  bool coprime = true;       // gcd(d, W) = 1 held
};

// Sum of e(d^k r^k alpha / W) over r with X^{1/k} < d r <= (X+Y)^{1/k} and
// (d r)^k = b (mod W).  Phases are reduced exactly modulo W * den(alpha), so
// no precision is lost to the size of the roots.
inline GenFnValue gen_fn(const WaringContext& ctx, const Int& b, u64 d, const Rat& alpha) {
  if (d < 1) throw domain_error("gen_fn needs d >= 1");
  if (alpha < 0 || alpha >= 1) throw domain_error("gen_fn needs alpha in [0, 1)");
  u64 w_mod = to_u64(ctx.W, "W");
  u64 b_mod = to_u64(((b % ctx.W) + ctx.W) % ctx.W, "b");

  GenFnValue out;
  out.coprime = gcd_u64(d % w_mod, w_mod) == 1;

  Int A_int = iroot_floor(ctx.X, ctx.k) + 1;
  Int B_int = iroot_floor(ctx.X + ctx.Y, ctx.k);
  Int lo_i = (A_int + d - 1) / d;
  Int hi_i = B_int / d;
  if (lo_i > hi_i) {
    out.empty_range = true;
    return out;
  }
  u64 lo = to_u64(lo_i, "range start");
  u64 hi = to_u64(hi_i, "range end");
  if (hi - lo > 50000000) throw scale_error("gen_fn: root window wider than 5e7");

  std::vector<u8> admissible(w_mod, 0);
  for (u64 y = 0; y < w_mod; ++y)
    admissible[y] = powmod_u64(mulmod_u64(d % w_mod, y, w_mod), ctx.k, w_mod) == b_mod;

  Int mod_i = ctx.W * denominator(alpha);
  u64 m = to_u64(mod_i, "phase modulus");
  u64 p = to_u64(numerator(alpha) % mod_i, "phase numerator");
  u64 coef = mulmod_u64(powmod_u64(d % m, ctx.k, m), p, m);

  kahan_cplx acc;
  u64 cnt = 0;
  for (u64 r = lo; r <= hi; ++r) {
    if (!admissible[r % w_mod]) continue;
    u64 e = mulmod_u64(coef, powmod_u64(r % m, ctx.k, m), m);
    acc.add(unit_phase(e, m));
    ++cnt;
  }
  out.value = acc.value();
  out.terms = cnt;
  return out;
}

// ---------------------------------------------------------------------------
// Complete sums.

// S_q(a, z, c) = sum over r mod q of e_q(a * P(r) + c r) where P collects the
// binomial expansion sum_{i=1..k} C(k,i) W^{i-1} z^{k-i} r^i.
inline cplx complete_sum_S(u64 q, u64 a, u64 z, u64 c, unsigned k, u64 W) {
  if (q < 1) throw domain_error("complete_sum_S needs q >= 1");
  if (k < 1 || W < 1) throw domain_error("complete_sum_S needs k >= 1 and W >= 1");
  if (k > 20) throw scale_error("complete_sum_S: binomial coefficients exceed 64 bits");
  if (q > 2000000) throw scale_error("complete_sum_S: q beyond direct evaluation");

  // coef[i] = a * C(k,i) * W^{i-1} * z^{k-i}  (mod q), i = 1..k
  std::vector<u64> coef(k + 1, 0);
  u64 binom = 1;
  for (unsigned i = 1; i <= k; ++i) {
    binom = binom * (k - i + 1) / i;
    u64 t = mulmod_u64(a % q, binom % q, q);
    t = mulmod_u64(t, powmod_u64(W % q, i - 1, q), q);
    coef[i] = mulmod_u64(t, powmod_u64(z % q, k - i, q), q);
  }

  kahan_cplx acc;
  for (u64 r = 0; r < q; ++r) {
    u64 e = coef[k];
    for (unsigned i = k; i-- > 1;) e = (mulmod_u64(e, r, q) + coef[i]) % q;
    e = mulmod_u64(e, r, q);
    e = (e + mulmod_u64(c % q, r, q)) % q;
    acc.add(unit_phase(e, q));
  }
  return acc.value();
}

// V_q(a, b, d, c) = double sum over z in [0, W) with (z d)^k = b (mod W) and
// r mod q of e_{Wq}(a (z + W r)^k + c (z + W r)).
inline cplx complete_sum_V(u64 q, u64 a, u64 b, u64 d, u64 c, unsigned k, u64 W) {
  if (q < 1 || W < 1) throw domain_error("complete_sum_V needs q >= 1 and W >= 1");
  if (k < 1 || d < 1) throw domain_error("complete_sum_V needs k >= 1 and d >= 1");
  if (u128(W) * q > 1000000000) throw scale_error("complete_sum_V: W*q beyond direct evaluation");
  u64 m = W * q;

  kahan_cplx acc;
  for (u64 z = 0; z < W; ++z) {
    if (powmod_u64(mulmod_u64(z, d % W, W), k, W) != b % W) continue;
    for (u64 r = 0; r < q; ++r) {
      u64 u = z + W * r;
      u64 e = (mulmod_u64(a % m, powmod_u64(u, k, m), m) + mulmod_u64(c % m, u, m)) % m;
      acc.add(unit_phase(e, m));
    }
  }
  return acc.value();
}

// Closed form of V_q(a d^k, b, d, 0).  Split q = q1 q2 with q1 the w-smooth
// part; the value vanishes unless q = 1, or q1 divides k and q > w.  In the
// surviving cases it factors as q1 times a degree-k Gauss-type sum mod q2
// times a twisted count of the residue classes z with (z gcd(d,q))^k = b.
inline cplx v_q_closed_form(u64 q, u64 a, u64 b, u64 d, unsigned k, u64 W, u64 w) {
  if (q < 1 || W < 1 || d < 1 || w < 1) throw domain_error("v_q_closed_form needs q, W, d, w >= 1");
  if (k < 2) throw domain_error("v_q_closed_form needs k >= 2");
  if (gcd_u64(a % q, q) != 1) throw domain_error("v_q_closed_form needs (a, q) = 1");
  if (gcd_u64(b % W, W) != 1) throw domain_error("v_q_closed_form needs (b, W) = 1");
  if (gcd_u64(d % W, W) != 1) throw domain_error("v_q_closed_form needs (d, W) = 1");
  if (u128(W) * q > 1000000000) throw scale_error("v_q_closed_form: W*q beyond evaluation range");

  Factorization qf = factor_u64(q);
  u64 q1 = 1, q2 = q;
  for (auto [p, e] : qf) {
    if (p > w) continue;
    for (unsigned i = 0; i < e; ++i) {
      q1 *= p;
      q2 /= p;
    }
  }
  if (gcd_u64(q2 % W, W) != 1)
    throw domain_error("v_q_closed_form: rough part shares a factor with W; raise w");

  bool alive = (q == 1) || (q1 <= u64(k) && u64(k) % q1 == 0 && q > w);
  if (!alive) return {0.0, 0.0};

  u64 t = gcd_u64(d, q);
  u64 psi = 1, rest = d;  // product of the prime powers of d supported on q
  for (auto [p, e] : qf) {
    (void)e;
    while (rest % p == 0) {
      rest /= p;
      psi *= p;
    }
  }

  u64 inv = 0;
  cplx r_sum{1.0, 0.0};
  if (q2 > 1) {
    inv = invmod_u64(mulmod_u64(q1 % q2, W % q2, q2), q2);
    u64 coef = mulmod_u64(mulmod_u64(a % q2, powmod_u64(psi % q2, k, q2), q2), inv, q2);
    kahan_cplx s;
    for (u64 r = 0; r < q2; ++r) s.add(unit_phase(mulmod_u64(coef, powmod_u64(r, k, q2), q2), q2));
    r_sum = s.value();
  }

  u64 m = W * q;
  kahan_cplx z_sum;
  for (u64 z = 0; z < W; ++z) {
    if (powmod_u64(mulmod_u64(z, t % W, W), k, W) != b % W) continue;
    cplx chi = unit_phase(mulmod_u64(a % m, powmod_u64(mulmod_u64(t % m, z, m), k, m), m), m);
    if (q2 > 1) {
      u64 s2 = mulmod_u64(mulmod_u64(a % q2, powmod_u64(mulmod_u64(t % q2, z % q2, q2), k, q2), q2), inv, q2);
      chi *= unit_phase((q2 - s2) % q2, q2);
    }
    z_sum.add(chi);
  }
  return double(q1) * r_sum * z_sum.value();
}

// ---------------------------------------------------------------------------
// The smooth comparison sum nu(b, beta).

struct SmoothSum {
  cplx value{0.0, 0.0};          // sum of (1/k) t^{1/k-1} e_W(beta t)
  cplx integral_form{0.0, 0.0};  // (1/W) integral of (1/k) tau^{1/k-1} e_W(beta tau)
  double residual = 0.0;         // |value - integral_form|
  u64 terms = 0;
};

// Direct sum over t in (X, X+Y] with t = b (mod W).  The phase advances by the
// fixed rotation e(beta) per step and is re-anchored to an exactly reduced
// fraction every 2^16 terms, so drift stays below 1e-11 at a billion terms.
inline SmoothSum smooth_sum_nu(const WaringContext& ctx, const Int& b, const Rat& beta) {
  if (beta < Rat(-1, 2) || beta > Rat(1, 2)) throw domain_error("smooth_sum_nu needs beta in [-1/2, 1/2]");
  u64 w_mod = to_u64(ctx.W, "W");

  Int first = ctx.X + 1;
  Int shift = ((b - first) % ctx.W + ctx.W) % ctx.W;
  first += shift;
  Int last_i = ctx.X + ctx.Y;
  SmoothSum out;
  if (first > last_i) return out;
  Int count_i = (last_i - first) / ctx.W + 1;
  if (count_i > 2200000000) throw scale_error("smooth_sum_nu: more than 2.2e9 terms");
  u64 count = to_u64(count_i, "term count");
  u64 t0 = to_u64(first, "first term");

  Int num = numerator(beta), den_i = denominator(beta);
  u64 den = to_u64(den_i, "beta denominator");
  u64 md = to_u64(den_i * ctx.W, "phase modulus");
  u64 p0 = to_u64(((num * t0) % md + md) % md, "anchor phase");
  u64 ps = to_u64(((num % den_i) + den_i) % den_i, "step phase");
  cplx step = unit_phase(ps, den);

  double inv_k = 1.0 / double(ctx.k);
  double expo = inv_k - 1.0;
  bool square_root = ctx.k == 2;

  kahan_cplx acc;
  cplx phase = unit_phase(p0, md);
  u64 t = t0;
  for (u64 j = 0; j < count; ++j, t += w_mod) {
    if ((j & 0xFFFF) == 0 && j != 0) {
      u64 pj = (p0 + mulmod_u64(ps, j % den, den) * w_mod) % md;
      phase = unit_phase(pj, md);
    }
    double td = double(t);
    double amp = square_root ? inv_k / std::sqrt(td) : inv_k * std::pow(td, expo);
    acc.add(amp * phase);
    phase *= step;
  }
  out.value = acc.value();
  out.terms = count;

  // Companion integral over (X, X+Y], anchored at the exact phase of X so the
  // floating-point angle only carries the bounded sweep beta * u / W.
  double bd = to_double(beta);
  double yd = to_double(Rat(ctx.Y, 1));
  double cycles = std::abs(bd) * yd / double(w_mod);
  u64 panels = 2 * u64(std::max(500.0, std::min(1.0e6, 40.0 * (cycles + 1.0))));
  u64 pX = to_u64(((num * ctx.X) % md + md) % md, "integral anchor");
  cplx lead = unit_phase(pX, md);
  double h = yd / double(panels);
  constexpr double tau_circ = 6.283185307179586476925286766559;
  double xd = to_double(Rat(ctx.X, 1));
  auto integrand = [&](double u) {
    double amp = square_root ? inv_k / std::sqrt(xd + u) : inv_k * std::pow(xd + u, expo);
    double ang = tau_circ * bd * u / double(w_mod);
    return amp * cplx{std::cos(ang), std::sin(ang)};
  };
  kahan_cplx simpson;
  simpson.add(integrand(0.0));
  simpson.add(integrand(yd));
  for (u64 i = 1; i < panels; ++i) simpson.add((i % 2 ? 4.0 : 2.0) * integrand(double(i) * h));
  out.integral_form = lead * simpson.value() * (h / 3.0) / double(w_mod);
  out.residual = std::abs(out.value - out.integral_form);
  return out;
}

// ---------------------------------------------------------------------------
// Major-arc approximation residual.

// |f(b, d, alpha) - V_q(a d^k, b, d, 0) nu(b, beta) / (q d)| with
// beta = alpha - a/q.  The main term is the local factor times the smooth
// sum; alpha must genuinely classify into the arc around a/q.
inline double major_arc_residual(const WaringContext& ctx, const SievePlan& plan, const Int& b,
                                 u64 d, u64 q, u64 a, const Rat& alpha) {
  if (gcd_u64(d % to_u64(ctx.W, "W"), to_u64(ctx.W, "W")) != 1)
    throw domain_error("major_arc_residual needs (d, W) = 1");
  if (!std::binary_search(plan.dplus.begin(), plan.dplus.end(), d))
    throw domain_error("major_arc_residual: d is outside the sieve support set");
  ArcPoint pt = classify(ctx, alpha);
  if (!pt.major || pt.q != q || pt.a != a)
    throw domain_error("major_arc_residual: alpha does not classify into the claimed arc");

  cplx lhs = gen_fn(ctx, b, d, alpha).value;

  u64 w_mod = to_u64(ctx.W, "W");
  u64 m = w_mod * q;
  u64 adk = mulmod_u64(a % m, powmod_u64(d % m, ctx.k, m), m);
  cplx local = complete_sum_V(q, adk, to_u64(((b % ctx.W) + ctx.W) % ctx.W, "b"), d, 0, ctx.k, w_mod);

  Rat beta = alpha - Rat(a, q);
  cplx smooth = smooth_sum_nu(ctx, b, beta).value;
  cplx rhs = local * smooth / (double(q) * double(d));
  return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Grid transforms and moments.

// Exact DFT values hat f(j/M) = sum f(n) e(-n j / M), zero-padded to M.
inline std::vector<cplx> fourier_grid(const WeightedSequence& seq, u64 M) {
  u64 N = to_u64(seq.length, "N");
  if (M < N + 1) throw domain_error("fourier_grid: grid must exceed the sequence length (aliasing)");
  if (M > (u64(1) << 24)) throw scale_error("fourier_grid: grid too large to materialize");
  std::vector<cplx> a(size_t(M), cplx{0.0, 0.0});
  for (size_t i = 0; i < seq.support_n.size(); ++i)
    a[size_t(seq.support_n[i])] = cplx{seq.support_v[i], 0.0};
  return dft_any(a, -1);
}

struct MomentNorm {
  double value = 0.0;  // (1/M) sum_j |hat f(j/M)|^{2t}
  double ratio = 0.0;  // value / N^{2t-1}
  u64 grid = 0;
  unsigned order = 0;
};

// Even moment of the grid transform.  For M > tN this equals the f-weighted
// count of solutions of n_1 + ... + n_t = n_{t+1} + ... + n_{2t} exactly.
inline MomentNorm moment_norm(const WeightedSequence& seq, unsigned u_even, u64 M = 0) {
  if (u_even < 2 || u_even % 2 != 0) throw domain_error("moment_norm needs a positive even order");
  unsigned t = u_even / 2;
  u64 N = to_u64(seq.length, "N");
  if (M == 0) M = fft_size_at_least(size_t(8 * N));
  if (M <= u64(t) * N) throw domain_error("moment_norm: grid must exceed t*N (aliasing)");

  std::vector<cplx> grid = fourier_grid(seq, M);
  kahan acc;
  for (const cplx& zv : grid) {
    double p = std::norm(zv);
    double term = p;
    for (unsigned i = 1; i < t; ++i) term *= p;
    acc.add(term);
  }
  MomentNorm out;
  out.value = acc.value() / double(M);
  out.ratio = out.value / std::pow(double(N), 2.0 * t - 1.0);
  out.grid = M;
  out.order = u_even;
  return out;
}

// ---------------------------------------------------------------------------
// Pseudorandomness scan.

namespace detail {

// sum_{j=0}^{J-1} e(u j / v), evaluated through the Dirichlet kernel with the
// angle split into an exact integer part (sign flips) and a reduced fraction,
// so the result keeps full relative precision at any magnitude of u, v, J.
inline cplx dirichlet_sum(u64 u, u64 v, u64 J) {
  if (v == 0) throw domain_error("dirichlet_sum needs v >= 1");
  u %= v;
  if (u == 0 || J == 0) return {double(J), 0.0};
  auto split = [&](u64 n) {
    u64 r = mulmod_u64(u, n % v, v);
    u128 ip = (u128(u) * n - r) / v;
    return std::pair<int, double>(int(ip & 1), double(r) / double(v));
  };
  constexpr double pi = 3.14159265358979323846264338328;
  auto [parJ, fracJ] = split(J);
  auto [par1, frac1] = split(1);
  auto [parE, fracE] = split(J - 1);
  double sJ = std::sin(pi * fracJ) * (parJ ? -1.0 : 1.0);
  double s1 = std::sin(pi * frac1) * (par1 ? -1.0 : 1.0);
  cplx rot{std::cos(pi * fracE), std::sin(pi * fracE)};
  if (parE) rot = -rot;
  return (sJ / s1) * rot;
}

}  // namespace detail

// hat 1_[N](alpha) = sum_{n=1}^{N} e(-n alpha), in closed form.
inline cplx box_transform(u64 N, const Rat& alpha) {
  u64 den = to_u64(denominator(alpha), "denominator");
  u64 num = to_u64(((numerator(alpha) % den) + den) % den, "numerator");
  return std::conj(detail::dirichlet_sum(num, den, N + 1) - cplx{1.0, 0.0});
}

// hat nu_b(alpha) = sum_n nu_b(n) e(-n alpha) without materializing the
// sequence: each root t contributes e(-alpha t^k / W) times its sieve weight,
// and grouping roots by their level-d divisors turns the sum into a signed
// combination of gen_fn values with a single exact carry phase e(alpha X / W).
inline cplx nu_hat_point(const WaringContext& ctx, const SievePlan& plan, const Int& b,
                         double normalizer, const Rat& alpha) {
  kahan_cplx acc;
  for (size_t i = 0; i < plan.dplus.size(); ++i) {
    u64 d = plan.dplus[i];
    if (boost::multiprecision::gcd(Int(d), ctx.W) != 1) continue;
    double mu = double(plan.mu[i]);
    cplx f = gen_fn(ctx, b, d, alpha).value;
    acc.add(mu * std::conj(f));
  }
  Int md_i = denominator(alpha) * ctx.W;
  u64 md = to_u64(md_i, "carry modulus");
  u64 pe = to_u64(((numerator(alpha) * ctx.X) % md_i + md_i) % md_i, "carry phase");
  return unit_phase(pe, md) * normalizer * acc.value();
}

struct ArcScanRow {
  u64 j = 0;
  bool major = false;
  u64 q = 0, a = 0;
  double discrepancy = 0.0;  // |hat nu_b - hat 1_[N]| / N
};

struct ArcScanReport {
  u64 M = 0;
  Int N;
  Int Q;
  Rat T;
  double gap_at_zero = 0.0;
  double sup_minor = 0.0;
  double sup_major_qgt1 = 0.0;
  u64 sup_minor_j = 0, sup_major_j = 0;
  u64 minor_points = 0, major_points = 0;
  std::vector<ArcScanRow> rows;  // ascending in j
};

// Sampled sup-norm scan of |hat nu_b - hat 1_[N]| / N over the frequency grid
// j/M.  Every point is classified exactly; alongside uniformly random minor
// samples, the scan probes the grid points nearest each fraction a/q with
// q <= major_q_cap, since blind sampling would almost never land on an arc.
inline ArcScanReport pseudorandomness_report(const WaringContext& ctx, const SievePlan& plan,
                                             const Int& b, u64 M = 0, u64 minor_samples = 4096,
                                             u64 major_q_cap = 40, u64 seed = 1234) {
  u64 N = to_u64(ctx.N, "N");
  if (M == 0) M = fft_size_at_least(size_t(8 * N));
  if (M < 4 * N) throw domain_error("pseudorandomness_report needs M >= 4N");
  ArcParameters arcs = arc_parameters(ctx);
  double normalizer = sequence_normalizer(ctx, plan, b);

  std::set<u64> js;
  js.insert(0);
  u64 q_cap = arcs.Q < major_q_cap ? to_u64(arcs.Q, "Q") : major_q_cap;
  for (u64 q = 2; q <= q_cap; ++q) {
    for (u64 a = 1; a < q; ++a) {
      if (gcd_u64(a, q) != 1) continue;
      u64 base = to_u64(Int(M) * a / q, "grid index");
      for (u64 off = 0; off <= 2; ++off) {
        u64 j = base + off;
        if (j >= 1 && j < M) js.insert(j);
        if (base >= off + 1) {
          j = base - off - 1;
          if (j >= 1) js.insert(j);
        }
      }
    }
  }
  rng64 rng(seed);
  while (js.size() < minor_samples) js.insert(1 + rng.below(M - 1));

  ArcScanReport rep;
  rep.M = M;
  rep.N = ctx.N;
  rep.Q = arcs.Q;
  rep.T = arcs.T;
  rep.rows.reserve(js.size());
  double nd = double(N);
  for (u64 j : js) {
    Rat alpha(j, M);
    ArcPoint pt = classify(alpha, arcs.Q, arcs.T);
    cplx nh = nu_hat_point(ctx, plan, b, normalizer, alpha);
    cplx bx = box_transform(N, alpha);
    ArcScanRow row;
    row.j = j;
    row.major = pt.major;
    row.q = pt.q;
    row.a = pt.a;
    row.discrepancy = std::abs(nh - bx) / nd;
    if (j == 0) rep.gap_at_zero = row.discrepancy;
    if (pt.major) {
      ++rep.major_points;
      if (pt.q > 1 && row.discrepancy >= rep.sup_major_qgt1) {
        rep.sup_major_qgt1 = row.discrepancy;
        rep.sup_major_j = j;
      }
    } else {
      ++rep.minor_points;
      if (row.discrepancy >= rep.sup_minor) {
        rep.sup_minor = row.discrepancy;
        rep.sup_minor_j = j;
      }
    }
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Vinogradov system counts.

// J_t^(k)(H): ordered 2t-tuples from [1, H] whose first and second halves
// share all power sums up to degree k.  Both halves range over the same H^t
// tuples, so bucketing the power-sum vectors and summing squared bucket
// sizes meets the two halves in the middle.
inline u64 vinogradov_count(unsigned k, unsigned t, u64 H) {
  if (k < 1 || t < 1 || H < 1) throw domain_error("vinogradov_count needs k, t, H >= 1");
  if (H > 8 || t > 3 || k > 3)
    throw scale_error("vinogradov_count: outside the meet-in-the-middle enumeration range");

  std::unordered_map<u64, u64> buckets;
  std::vector<u64> x(t, 1);
  while (true) {
    u64 key = 0;
    for (unsigned i = 1; i <= k; ++i) {
      u64 s = 0;
      for (u64 v : x) s += ipow_u64(v, i);
      key = (key << 21) | s;
    }
    ++buckets[key];
    unsigned pos = 0;
    while (pos < t && x[pos] == H) x[pos++] = 1;
    if (pos == t) break;
    ++x[pos];
  }
  u64 total = 0;
  for (auto& [key, c] : buckets) {
    (void)key;
    total += c * c;
  }
  return total;
}

}  // namespace wg
