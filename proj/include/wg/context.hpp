#pragma once
// Parameter bundle for the smoothed short-interval setup: the modulus W built
// from the degree, the density parameter, and a small-prime cutoff; the exact
// offsets m, X and the window length N, Y; and the sieve/arc exponents used
// downstream.  All fields are exact integers or rationals.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <json.hpp>

#include "wg/arith.hpp"

namespace wg {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

struct WaringContext {
  unsigned k = 2;      // degree
  unsigned s = 3;      // summand count
  Rat theta;           // window exponent, in (1/2, 1)
  Rat eta;             // density parameter, in (0, 1]
  Rat epsilon;         // tolerance for the Y-vs-X relation check
  u64 w = 1;           // small-prime cutoff in W
  bool w_auto = true;  // cutoff derived from m rather than overridden
  Int c_eta;           // (ceil(1/eta)!)^2
  Int W;               // 2 k^2 c_eta prod_{p <= w} p
  Int b;               // residue class, gcd(b, W) = 1
  Int x;               // requested base scale
  Int m;               // floor((x - x^theta/s)^k / W)
  Int X;               // W m + b
  Int N;               // window length in the n variable
  Int Y;               // W N
  Rat delta;           // sieve exponent
  Rat rho;             // arc exponent
  u64 sigma_w_b = 0;   // root count sigma_W(b); 0 flags a degenerate residue
};

namespace detail {

inline BigFloat bf_pow(const BigFloat& base, const Rat& e) {
  BigFloat num(rat_num(e).convert_to<std::string>());
  BigFloat den(rat_den(e).convert_to<std::string>());
  return exp(num / den * log(base));
}

// floor of a positive high-precision value, guarded against knife-edge ties.
inline Int bf_floor(const BigFloat& v, const char* what) {
  if (v < 0) throw domain_error(std::string(what) + " is negative");
  BigFloat f = floor(v);
  BigFloat frac = v - f;
  static const BigFloat tie("1e-40");
  if (frac < tie || frac > 1 - tie)
    throw scale_error(std::string(what) + " floor is numerically ambiguous");
  return f.convert_to<Int>();
}

inline Int factorial_int(u64 n) {
  Int r = 1;
  for (u64 i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Int primorial_upto(u64 w) {
  Int r = 1;
  if (w >= 2)
    for (u64 p : small_primes_upto(w)) r *= p;
  return r;
}

struct window_edges {
  Int m, N;
};

// m = floor((x - x^theta/s)^k / W), N = floor(((x + x^theta - W)^k - (x - x^theta/s)^k) / W).
inline window_edges compute_edges(const Int& x, const Rat& theta, unsigned k, unsigned s,
                                  const Int& W) {
  BigFloat xf(x.convert_to<std::string>());
  BigFloat Wf(W.convert_to<std::string>());
  BigFloat xth = bf_pow(xf, theta);
  BigFloat lo = xf - xth / s;
  if (lo <= 1) throw domain_error("x too small: left endpoint collapses");
  BigFloat hi = xf + xth - Wf;
  if (hi <= lo) throw scale_error("x too small: window is empty");
  BigFloat lok = pow(lo, int(k)), hik = pow(hi, int(k));
  window_edges e;
  e.m = bf_floor(lok / Wf, "m");
  e.N = bf_floor((hik - lok) / Wf, "N");
  return e;
}

}  // namespace detail

inline Rat delta_cap(unsigned k, const Rat& theta) {
  Rat minor = (2 * theta - 1) / k;
  Rat major = theta / (Rat(k) * (Rat(k, 2) + 1));
  return std::min(minor, major);
}

inline void validate_context(const WaringContext& c) {
  if (c.k < 2) throw domain_error("k must be >= 2");
  if (c.s < 3) throw domain_error("s must be >= 3");
  if (!(c.theta > Rat(1, 2) && c.theta < 1)) throw domain_error("theta must lie in (1/2, 1)");
  if (!(c.eta > 0 && c.eta <= 1)) throw domain_error("eta must lie in (0, 1]");
  if (!(c.epsilon > 0)) throw domain_error("epsilon must be positive");
  Int expect_W = 2 * Int(c.k) * Int(c.k) * c.c_eta * detail::primorial_upto(c.w);
  if (c.W != expect_W) throw domain_error("W does not match its definition");
  if (boost::multiprecision::gcd(c.b, c.W) != 1) throw domain_error("b must be a unit mod W");
  if (!(c.b >= 1 && c.b < c.W)) throw domain_error("b must lie in [1, W)");
  if (c.X != c.W * c.m + c.b) throw domain_error("X != W m + b");
  if (c.Y != c.W * c.N) throw domain_error("Y != W N");
  if (c.N < 16) throw scale_error("window too small: N < 16");
  if (!(c.delta > 0 && c.delta < delta_cap(c.k, c.theta)))
    throw domain_error("delta outside the admissible cap");
  if (!(c.rho > 0)) throw domain_error("rho must be positive");
  // Y tracks ((k s + k)/s) X^(1 - 1/k + theta/k) within the context tolerance.
  double logX = log_big(c.X);
  double target = std::log(double(c.k) * (1.0 + 1.0 / c.s)) +
                  (1.0 - 1.0 / c.k + to_double(c.theta) / c.k) * logX;
  double ratio = std::exp(log_big(c.Y) - target);
  double eps = to_double(c.epsilon);
  if (!(ratio >= 1 - eps && ratio <= 1 + eps))
    throw domain_error("Y deviates from the X relation beyond epsilon (ratio " +
                       std::to_string(ratio) + ")");
}

struct ContextOptions {
  std::optional<u64> w_override;
  std::optional<Int> b_override;
  Rat epsilon = Rat(1, 2);
  std::optional<Rat> delta_override;
  std::optional<Rat> rho_override;
};

inline WaringContext build_context(unsigned k, unsigned s, const Rat& theta, const Rat& eta,
                                   const Int& target_x, const ContextOptions& opt = {}) {
  if (k < 2) throw domain_error("k must be >= 2");
  if (s < 3) throw domain_error("s must be >= 3");
  if (!(theta > Rat(1, 2) && theta < 1)) throw domain_error("theta must lie in (1/2, 1)");
  if (!(eta > 0 && eta <= 1)) throw domain_error("eta must lie in (0, 1]");
  if (target_x < 16) throw domain_error("target_x too small");

  WaringContext c;
  c.k = k;
  c.s = s;
  c.theta = theta;
  c.eta = eta;
  c.epsilon = opt.epsilon;
  c.x = target_x;
  c.c_eta = detail::factorial_int(to_u64(ceil_rat(Rat(1) / eta)));
  c.c_eta *= c.c_eta;

  // The cutoff w = log log log m degenerates to 1 at any feasible scale; the
  // fixpoint loop keeps the definition honest if m is ever astronomically big.
  c.w_auto = !opt.w_override.has_value();
  c.w = opt.w_override.value_or(1);
  for (int pass = 0; pass < 4; ++pass) {
    c.W = 2 * Int(k) * Int(k) * c.c_eta * detail::primorial_upto(c.w);
    auto e = detail::compute_edges(target_x, theta, k, s, c.W);
    c.m = e.m;
    c.N = e.N;
    if (!c.w_auto) break;
    double lm = log_big(std::max(c.m, Int(3)));
    u64 w_next = 1;
    if (lm > std::exp(1.0)) {
      double lll = std::log(std::log(lm));
      if (lll >= 2.0) w_next = u64(lll);
    }
    if (w_next == c.w) break;
    c.w = w_next;
  }

  c.b = opt.b_override.value_or(Int(1));
  if (boost::multiprecision::gcd(c.b, c.W) != 1)
    throw domain_error("requested b is not a unit mod W");
  if (!(c.b >= 1 && c.b < c.W)) throw domain_error("requested b outside [1, W)");
  c.X = c.W * c.m + c.b;
  c.Y = c.W * c.N;
  c.sigma_w_b = sigma(to_u64(c.W, "W"), to_u64(c.b, "b"), k);

  Rat cap = delta_cap(k, theta);
  c.delta = opt.delta_override.value_or(cap * Rat(9, 10));
  c.rho = opt.rho_override.value_or(c.delta / 10);
  validate_context(c);
  return c;
}

// ------------------------------------------------------------- serialization

inline nlohmann::json context_to_json(const WaringContext& c) {
  nlohmann::json j;
  auto rat = [](const Rat& r) {
    return rat_num(r).convert_to<std::string>() + "/" + rat_den(r).convert_to<std::string>();
  };
  j["k"] = std::to_string(c.k);
  j["s"] = std::to_string(c.s);
  j["theta"] = rat(c.theta);
  j["eta"] = rat(c.eta);
  j["epsilon"] = rat(c.epsilon);
  j["w"] = std::to_string(c.w);
  j["w_auto"] = c.w_auto ? "1" : "0";
  j["c_eta"] = c.c_eta.convert_to<std::string>();
  j["W"] = c.W.convert_to<std::string>();
  j["b"] = c.b.convert_to<std::string>();
  j["x"] = c.x.convert_to<std::string>();
  j["m"] = c.m.convert_to<std::string>();
  j["X"] = c.X.convert_to<std::string>();
  j["N"] = c.N.convert_to<std::string>();
  j["Y"] = c.Y.convert_to<std::string>();
  j["delta"] = rat(c.delta);
  j["rho"] = rat(c.rho);
  j["sigma_w_b"] = std::to_string(c.sigma_w_b);
  return j;
}

inline WaringContext context_from_json(const nlohmann::json& j) {
  WaringContext c;
  auto geti = [&](const char* key) { return Int(j.at(key).get<std::string>()); };
  auto getr = [&](const char* key) { return rat_from_string(j.at(key).get<std::string>()); };
  c.k = unsigned(std::stoul(j.at("k").get<std::string>()));
  c.s = unsigned(std::stoul(j.at("s").get<std::string>()));
  c.theta = getr("theta");
  c.eta = getr("eta");
  c.epsilon = getr("epsilon");
  c.w = std::stoull(j.at("w").get<std::string>());
  c.w_auto = j.at("w_auto").get<std::string>() == "1";
  c.c_eta = geti("c_eta");
  c.W = geti("W");
  c.b = geti("b");
  c.x = geti("x");
  c.m = geti("m");
  c.X = geti("X");
  c.N = geti("N");
  c.Y = geti("Y");
  c.delta = getr("delta");
  c.rho = getr("rho");
  c.sigma_w_b = std::stoull(j.at("sigma_w_b").get<std::string>());
  validate_context(c);
  return c;
}

// Cache key prefix for downstream artifacts.
inline std::string context_hash(const WaringContext& c) {
  return sha256_hex(context_to_json(c).dump());
}

}  // namespace wg
