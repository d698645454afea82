#pragma once
// Local solubility over units: unit exponential sums, exact counts of unit
// k-th power representations mod q via multiplicativity and p-power lifting,
// deterministic witness tuples, and the residue-vector selection built on
// those witnesses.

#include "wg/arith.hpp"

namespace wg {

struct LocalCount {
  u64 q = 1;
  u64 m = 0;
  unsigned k = 1;
  unsigned s = 1;
  Int count;
  std::optional<std::vector<u64>> witness;  // units y_i with sum y_i^k = m (mod q)
};

// S(q, a) = sum over units x mod q of e_q(a x^k).
inline cplx unit_gauss_sum(u64 q, u64 a, u64 k) {
  if (q < 1) throw domain_error("unit_gauss_sum needs q >= 1");
  if (q > 10000000) throw scale_error("unit_gauss_sum modulus above 1e7");
  kahan_cplx acc;
  a %= q;
  for (u64 x = 0; x < q; ++x) {
    if (std::gcd(x, q) != 1 && q != 1) continue;
    u64 e = mulmod_u64(a, powmod_u64(x, k, q), q);
    acc.add(unit_phase(e, q));
  }
  if (q == 1) return {1.0, 0.0};
  return acc.value();
}

namespace detail {

// Layered counting DP over Z_B: layers[j][r] = #{(y_1..y_j) units mod B with
// sum y_i^k = r}.  Counter C is u128 or Int depending on overflow headroom.
inline std::vector<std::pair<u64, u64>> unit_power_image(u64 B, unsigned k) {
  std::vector<u64> mult(B, 0);
  for (u64 z = 0; z < B; ++z)
    if (B == 1 || std::gcd(z, B) == 1) ++mult[powmod_u64(z, k, B)];
  std::vector<std::pair<u64, u64>> image;
  for (u64 u = 0; u < B; ++u)
    if (mult[u]) image.push_back({u, mult[u]});
  return image;
}

template <class C>
struct unit_power_dp {
  u64 B;
  std::vector<std::pair<u64, u64>> image;  // (u, multiplicity) of z -> z^k
  std::vector<std::vector<C>> layers;

  unit_power_dp(u64 B_, unsigned s, std::vector<std::pair<u64, u64>> img)
      : B(B_), image(std::move(img)) {
    layers.resize(s + 1, std::vector<C>(B, C(0)));
    layers[0][0] = C(1);
    for (unsigned j = 1; j <= s; ++j) {
      for (u64 r = 0; r < B; ++r) {
        C v = layers[j - 1][r];
        if (v == C(0)) continue;
        for (auto [u, mlt] : image) layers[j][(r + u) % B] += v * C(mlt);
      }
    }
  }

  // Lexicographically least unit tuple summing to m, or empty if none.
  std::vector<u64> backtrack(u64 m, unsigned k, unsigned s) const {
    if (layers[s][m % B] == C(0)) return {};
    std::vector<u64> out;
    u64 r = m % B;
    for (unsigned i = 0; i < s; ++i) {
      unsigned rem = s - i - 1;
      bool found = false;
      for (u64 y = (B == 1 ? 0 : 1); y < std::max<u64>(B, 1); ++y) {
        if (B != 1 && std::gcd(y, B) != 1) continue;
        u64 u = powmod_u64(y, k, B);
        u64 need = (r + B - u % B) % B;
        if (layers[rem][need] != C(0)) {
          out.push_back(y);
          r = need;
          found = true;
          break;
        }
        if (B == 1) break;
      }
      if (!found) return {};  // unreachable when the top layer is positive
    }
    return out;
  }
};

struct prime_power_count {
  Int count;
  std::vector<u64> witness;  // empty when count = 0 or witness not requested
};

// Hensel refinement: given z^k = u (mod p^j) with unit z and j at least the
// bootstrap level, push the root up to p^t.
inline u64 hensel_root(u64 z, u64 u, u64 p, unsigned t, unsigned k, unsigned j) {
  unsigned tau = tau_of(k, p);
  u64 pt = ipow_u64(p, t);
  u64 pj = ipow_u64(p, j);
  while (j < t) {
    u64 diff = (u % pt + pt - powmod_u64(z, k, pt)) % pt;
    if (diff % pj != 0) throw domain_error("hensel_root: not a root at current level");
    u64 r = (diff / pj) % p;
    u64 denom = (u64(k) / ipow_u64(p, tau)) % p;
    denom = mulmod_u64(denom, powmod_u64(z, k - 1, p), p);
    u64 c = mulmod_u64(r, invmod_u64(denom, p), p);
    u64 step = ipow_u64(p, j - tau);
    z = (z + mulmod_u64(c % pt, step % pt, pt)) % pt;
    j += 1;
    if (j < t) pj *= p;
  }
  return z;
}

// Smallest unit k-th root of u mod p^j by direct scan.
inline std::optional<u64> scan_root(u64 u, u64 p, unsigned j, unsigned k) {
  u64 pj = ipow_u64(p, j);
  for (u64 z = 1; z < pj; ++z) {
    if (z % p == 0) continue;
    if (powmod_u64(z, k, pj) == u % pj) return z;
  }
  if (pj == 1) return 0;
  return std::nullopt;
}

inline prime_power_count count_prime_power(u64 p, unsigned t, u64 m, unsigned k, unsigned s,
                                           bool want_witness) {
  u64 pt = ipow_u64(p, t);
  unsigned eta = eta_lift(k, p);
  // Direct enumeration level: full modulus when small, else the lifting floor.
  unsigned e = (pt <= 10000) ? t : std::min(t, eta);
  u64 B = ipow_u64(p, e);
  if (B > 2000000) throw scale_error("local count: prime power base exceeds enumeration bound");

  auto image = unit_power_image(B, k);
  double bits = double(s) * std::log2(double(std::max<u64>(phi_u64(B), 2)));
  double cost = double(B) * double(image.size()) * double(s);
  Int count;
  std::vector<u64> base_witness;
  if (bits < 120) {
    if (cost > 2e9) throw scale_error("local count: DP too large at this modulus");
    unit_power_dp<u128> dp(B, s, std::move(image));
    u128 c = dp.layers[s][m % B];
    count = Int(u64(c >> 64)) << 64 | Int(u64(c));
    if (want_witness && c != 0) base_witness = dp.backtrack(m, k, s);
  } else {
    if (cost > 5e7) throw scale_error("local count: DP too large at this modulus");
    unit_power_dp<Int> dp(B, s, std::move(image));
    count = dp.layers[s][m % B];
    if (want_witness && count != 0) base_witness = dp.backtrack(m, k, s);
  }

  prime_power_count out;
  if (e < t) count *= ipow(Int(p), (s - 1) * (t - e));
  out.count = count;
  if (!want_witness || count == 0) return out;

  if (e == t) {
    out.witness = base_witness;
    return out;
  }
  // Lift: keep coordinates 2..s, absorb the correction into the first one.
  // The first coordinate's target stays a k-th power residue because it
  // matches y_1^k mod p^eta and units congruent to a k-th power mod p^eta
  // are k-th powers mod every higher level.
  std::vector<u64> w(base_witness);
  u64 acc = 0;
  for (unsigned i = 1; i < s; ++i) acc = (acc + powmod_u64(w[i], k, pt)) % pt;
  u64 u1 = (m % pt + pt - acc) % pt;
  unsigned tau = tau_of(k, p);
  unsigned boot = std::max(eta, (p == 2) ? (2 * tau + 2) : (2 * tau + 1));
  boot = std::min(boot, t);
  auto z0 = scan_root(u1, p, boot, k);
  if (!z0) throw domain_error("local count: lift bootstrap found no root");
  u64 z = hensel_root(*z0, u1, p, t, k, boot);
  if (powmod_u64(z, k, pt) != u1 % pt) throw domain_error("local count: lifted root invalid");
  w[0] = z;
  u64 check = 0;
  for (unsigned i = 0; i < s; ++i) check = (check + powmod_u64(w[i], k, pt)) % pt;
  if (check != m % pt) throw domain_error("local count: lifted witness invalid");
  out.witness = w;
  return out;
}

}  // namespace detail

inline LocalCount count_solutions(u64 q, u64 m, unsigned k, unsigned s, bool want_witness) {
  if (q < 1) throw domain_error("count_solutions needs q >= 1");
  if (k < 1) throw domain_error("count_solutions needs k >= 1");
  if (s < 1 || s > 200) throw domain_error("count_solutions needs 1 <= s <= 200");
  LocalCount lc;
  lc.q = q;
  lc.m = m % q;
  lc.k = k;
  lc.s = s;
  if (q == 1) {
    lc.count = 1;
    if (want_witness) lc.witness = std::vector<u64>(s, 0);
    return lc;
  }
  lc.count = 1;
  std::vector<u64> wit(s, 0);
  u64 mod_so_far = 1;
  for (auto [p, t] : factor_u64(q)) {
    auto pp = detail::count_prime_power(p, t, lc.m, k, s, want_witness);
    lc.count *= pp.count;
    if (lc.count == 0) return lc;
    if (want_witness) {
      u64 pt = ipow_u64(p, t);
      for (unsigned i = 0; i < s; ++i)
        wit[i] = (mod_so_far == 1) ? pp.witness[i] : crt_pair(wit[i], mod_so_far, pp.witness[i], pt);
      mod_so_far *= pt;
    }
  }
  if (want_witness) {
    u64 check = 0;
    for (u64 y : wit) {
      if (std::gcd(y, q) != 1) throw domain_error("count_solutions: non-unit witness");
      check = (check + powmod_u64(y, k, q)) % q;
    }
    if (check != lc.m) throw domain_error("count_solutions: witness does not verify");
    lc.witness = wit;
  }
  return lc;
}

// Sufficient condition: s >= 3k and m = s (mod gcd(q, R_k)).
inline bool solvable_guarantee(u64 q, u64 m, unsigned k, unsigned s) {
  if (q < 1 || k < 1) return false;
  if (s < 3 * k) return false;
  u64 g = std::gcd(q, hua_modulus(k).value);
  return (m % g) == (u64(s) % g);
}

// Unit k-th power residues b_1..b_s mod W with sum = n0 (mod W), built from
// the deterministic witness.
inline std::vector<u64> choose_b_vector(u64 W, u64 n0, unsigned k, unsigned s) {
  if (W == 1) return std::vector<u64>(s, 0);
  auto lc = count_solutions(W, n0 % W, k, s, true);
  if (lc.count == 0) {
    u64 g = std::gcd(W, hua_modulus(k).value);
    throw domain_error("choose_b_vector: no unit representation; need n0 = s (mod " +
                       std::to_string(g) + "), got n0 = " + std::to_string(n0 % g) +
                       ", s = " + std::to_string(s % g));
  }
  std::vector<u64> b(s);
  for (unsigned i = 0; i < s; ++i) b[i] = powmod_u64((*lc.witness)[i], k, W);
  return b;
}

}  // namespace wg
