#pragma once
// Upper-bound linear sieve support: membership in the truncated divisor set,
// the weights rho_plus, the normalizer alpha_plus, and constrained signed
// reciprocal sums over the support set.

#include "wg/context.hpp"

namespace wg {

struct SievePlan {
  u64 D = 0;
  Rat delta;                                    // D = floor(X^delta) when context-built
  std::vector<u64> primes;                      // primes < D
  std::vector<u64> dplus;                       // sorted support set members, all < D
  std::vector<std::vector<u64>> dplus_factors;  // decreasing prime lists, parallel
  std::vector<int> mu;                          // parallel Moebius values
  std::optional<double> alpha_plus_value;       // filled when built for a context
};

// True iff the decreasing prime list satisfies every odd-prefix cut
// p_1...p_m * p_m^2 < D.  Primes at or above D never divide P(D).
inline bool dplus_member(const std::vector<u64>& d_factors, u64 D) {
  u64 prev = 0;
  for (size_t i = 0; i < d_factors.size(); ++i) {
    u64 p = d_factors[i];
    if (!is_prime_u64(p)) throw domain_error("dplus_member: factor is not prime");
    if (i > 0 && p >= prev) throw domain_error("dplus_member: factors not strictly decreasing");
    prev = p;
  }
  u128 prod = 1;
  for (size_t i = 0; i < d_factors.size(); ++i) {
    u64 p = d_factors[i];
    if (p >= D) return false;
    prod *= p;
    if (i % 2 == 0) {  // odd prefix length
      if (prod * p * p >= D) return false;
    }
  }
  return true;
}

namespace detail {

inline void dplus_enumerate_rec(const std::vector<u64>& desc, size_t start, u64 prod,
                                std::vector<u64>& factors, SievePlan& plan, u64 D) {
  plan.dplus.push_back(prod);
  plan.dplus_factors.push_back(factors);
  plan.mu.push_back(factors.size() % 2 == 0 ? 1 : -1);
  if (plan.dplus.size() > 5000000) throw scale_error("support set enumeration too large");
  for (size_t i = start; i < desc.size(); ++i) {
    u64 p = desc[i];
    if (factors.size() % 2 == 0) {  // p would sit at an odd position
      if (u128(prod) * p * p * p >= D) continue;
    }
    factors.push_back(p);
    dplus_enumerate_rec(desc, i + 1, prod * p, factors, plan, D);
    factors.pop_back();
  }
}

}  // namespace detail

inline SievePlan build_plan(u64 D, const Rat& delta = Rat(0)) {
  if (D < 1) throw domain_error("build_plan needs D >= 1");
  if (D > 1000000) throw scale_error("support set enumeration capped at D <= 1e6");
  SievePlan plan;
  plan.D = D;
  plan.delta = delta;
  if (D > 2) plan.primes = small_primes_upto(D - 1);
  std::vector<u64> desc(plan.primes.rbegin(), plan.primes.rend());
  std::vector<u64> factors;
  detail::dplus_enumerate_rec(desc, 0, 1, factors, plan, D);
  // Sort the three parallel arrays by member value.
  std::vector<size_t> order(plan.dplus.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return plan.dplus[a] < plan.dplus[b]; });
  SievePlan out;
  out.D = plan.D;
  out.delta = plan.delta;
  out.primes = std::move(plan.primes);
  out.dplus.reserve(order.size());
  for (size_t i : order) {
    out.dplus.push_back(plan.dplus[i]);
    out.dplus_factors.push_back(std::move(plan.dplus_factors[i]));
    out.mu.push_back(plan.mu[i]);
  }
  return out;
}

// Signed count of support-set divisors of n.
inline int rho_plus(u64 n, const SievePlan& plan) {
  if (n < 1) throw domain_error("rho_plus needs n >= 1");
  // Distinct prime factors of n below D, descending.
  std::vector<u64> fac;
  u64 rem = n;
  for (u64 p : plan.primes) {
    if (u128(p) * p > rem) break;  // remainder is now 1 or prime
    if (rem % p == 0) {
      fac.push_back(p);
      while (rem % p == 0) rem /= p;
    }
  }
  if (rem > 1 && rem < plan.D) fac.push_back(rem);
  std::sort(fac.rbegin(), fac.rend());
  // DFS over decreasing subsequences with the odd-prefix cut.
  int total = 0;
  auto rec = [&](auto&& self, size_t start, u64 prod, unsigned len) -> void {
    total += (len % 2 == 0) ? 1 : -1;
    for (size_t i = start; i < fac.size(); ++i) {
      u64 p = fac[i];
      if (len % 2 == 0 && u128(prod) * p * p * p >= plan.D) continue;
      self(self, i + 1, prod * p, len + 1);
    }
  };
  rec(rec, 0, 1, 0);
  return total;
}

// rho_plus across [lo, hi] by block factoring; matches rho_plus pointwise.
inline std::vector<int> rho_plus_range(u64 lo, u64 hi, const SievePlan& plan) {
  if (lo < 1 || hi < lo) throw domain_error("rho_plus_range needs 1 <= lo <= hi");
  if (hi - lo > 50000000) throw scale_error("rho_plus_range window too wide");
  u64 n = hi - lo + 1;
  std::vector<std::vector<u64>> fac(n);
  for (u64 p : plan.primes) {
    for (u64 m = ((lo + p - 1) / p) * p; m <= hi; m += p) fac[m - lo].push_back(p);
  }
  std::vector<int> out(n);
  for (u64 i = 0; i < n; ++i) {
    auto& f = fac[i];
    std::sort(f.rbegin(), f.rend());
    int total = 0;
    auto rec = [&](auto&& self, size_t start, u64 prod, unsigned len) -> void {
      total += (len % 2 == 0) ? 1 : -1;
      for (size_t j = start; j < f.size(); ++j) {
        u64 p = f[j];
        if (len % 2 == 0 && u128(prod) * p * p * p >= plan.D) continue;
        self(self, j + 1, prod * p, len + 1);
      }
    };
    rec(rec, 0, 1, 0);
    out[i] = total;
  }
  return out;
}

// Exact Moebius-over-support sum with a coprimality filter.
inline Rat dplus_mobius_sum(const SievePlan& plan, const Int& coprime_to) {
  Rat sum = 0;
  for (size_t i = 0; i < plan.dplus.size(); ++i) {
    if (boost::multiprecision::gcd(Int(plan.dplus[i]), coprime_to) != 1) continue;
    sum += Rat(plan.mu[i], plan.dplus[i]);
  }
  return sum;
}

struct AlphaPlus {
  double value = 0.0;
  Rat mobius_sum;   // exact sum of mu(d)/d over (d, W) = 1
  Rat unit_factor;  // exact phi(W) / (k W)
};

inline AlphaPlus alpha_plus_parts(const Int& W, unsigned k, const Int& X, const SievePlan& plan) {
  if (plan.D < 2) throw domain_error("alpha_plus: degenerate plan (D < 2)");
  if (W < 1 || k < 1 || X < 3) throw domain_error("alpha_plus: bad parameters");
  AlphaPlus out;
  out.mobius_sum = dplus_mobius_sum(plan, W);
  Rat phi_over_w = 1;
  for (auto [p, e] : factor_u64(to_u64(W, "W"))) phi_over_w *= Rat(p - 1, p);
  out.unit_factor = phi_over_w / k;
  out.value = to_double(out.unit_factor * out.mobius_sum) * log_big(X);
  return out;
}

inline double alpha_plus(const WaringContext& ctx, const SievePlan& plan) {
  if (plan.delta == ctx.delta) {
    Int expect = floor_pow_rat(ctx.X, ctx.delta);
    if (Int(plan.D) != expect)
      throw domain_error("alpha_plus: plan level does not match the context");
  }
  return alpha_plus_parts(ctx.W, ctx.k, ctx.X, plan).value;
}

// Plan derived from a context: D = floor(X^delta), alpha_plus cached.
inline SievePlan plan_for_context(const WaringContext& ctx) {
  Int D = floor_pow_rat(ctx.X, ctx.delta);
  if (D < 2) throw domain_error("context yields a degenerate sieve level (D < 2)");
  SievePlan plan = build_plan(to_u64(D, "D"), ctx.delta);
  plan.alpha_plus_value = alpha_plus_parts(ctx.W, ctx.k, ctx.X, plan).value;
  return plan;
}

// Sum of mu(d)/d over d in the support set with t | d and (d, a q / t) = 1.
inline Rat sieve_sum_constrained(u64 D, u64 a, u64 q, u64 t) {
  if (t < 1 || q < 1 || a < 1) throw domain_error("sieve_sum_constrained needs a, q, t >= 1");
  if (q % t != 0) throw domain_error("sieve_sum_constrained needs t | q");
  if (mobius_u64(t) == 0) throw domain_error("sieve_sum_constrained needs t squarefree");
  SievePlan plan = build_plan(D);
  u128 filter = u128(a) * (q / t);
  Rat sum = 0;
  for (size_t i = 0; i < plan.dplus.size(); ++i) {
    u64 d = plan.dplus[i];
    if (d % t != 0) continue;
    if (gcd_u64(u64(filter % d), d) != 1) continue;
    sum += Rat(plan.mu[i], d);
  }
  return sum;
}

}  // namespace wg
