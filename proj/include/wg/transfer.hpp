#pragma once
// Finite transference objects: the weighted indicator of k-th powers shifted
// into [N], its sieve majorant, progression means, s-fold convolutions, the
// thresholded sumset, a U^2 norm, and an empirical positivity checker for
// dense model functions.

#include <limits>
#include <optional>

#include "wg/fft.hpp"
#include "wg/sieve.hpp"

namespace wg {

enum class SeqKind { f_b, nu_b };

struct WeightedSequence {
  WaringContext ctx;
  SeqKind kind = SeqKind::f_b;
  Int b;
  u64 sieve_level = 0;
  double normalizer = 0.0;  // phi(W) X^{1-1/k} log X / (alpha_plus W sigma_W(b))
  Int length;               // N
  // Support triples, ascending in n; zero weights are not stored.
  std::vector<u64> support_n;
  std::vector<u64> support_t;
  std::vector<double> support_v;

  size_t support_size() const { return support_n.size(); }

  double value_at(u64 n) const {
    auto it = std::lower_bound(support_n.begin(), support_n.end(), n);
    if (it == support_n.end() || *it != n) return 0.0;
    return support_v[size_t(it - support_n.begin())];
  }

  double sum() const {
    kahan acc;
    for (double v : support_v) acc.add(v);
    return acc.value();
  }

  // Full array, index i holding the value at n = i + 1.
  std::vector<double> dense() const {
    if (length > (Int(1) << 24)) throw scale_error("sequence too long to materialize");
    std::vector<double> out(size_t(to_u64(length, "N")), 0.0);
    for (size_t i = 0; i < support_n.size(); ++i) out[support_n[i] - 1] = support_v[i];
    return out;
  }
};

// phi(W) X^{1-1/k} log X / (alpha_plus W sigma_W(b)): the scaling that puts the
// sieve-weighted sequences at unit average density on [N].
inline double sequence_normalizer(const WaringContext& ctx, const SievePlan& plan, const Int& b) {
  if (b < 1 || b >= ctx.W) throw domain_error("sequence_normalizer needs 1 <= b < W");
  if (boost::multiprecision::gcd(b, ctx.W) != 1)
    throw domain_error("sequence_normalizer needs (b, W) = 1");
  u64 w_mod = to_u64(ctx.W, "W");
  u64 b_mod = to_u64(b, "b");
  u64 sig = (b == ctx.b) ? ctx.sigma_w_b : sigma(w_mod, b_mod, ctx.k);
  if (sig == 0) throw domain_error("sequence_normalizer: no k-th power residue class, empty support");
  double ap = alpha_plus(ctx, plan);  // also checks the plan matches the context
  if (!(ap > 0)) throw domain_error("sequence_normalizer needs a positive density estimate");
  double xd = std::exp((1.0 - 1.0 / double(ctx.k)) * log_big(ctx.X));
  return to_double(Rat(phi_u64(w_mod), w_mod)) * xd * log_big(ctx.X) / (ap * double(sig));
}

inline WeightedSequence build_sequence(const WaringContext& ctx, const SievePlan& plan,
                                       const Int& b, SeqKind kind) {
  double norm = sequence_normalizer(ctx, plan, b);  // validates b and the plan
  u64 w_mod = to_u64(ctx.W, "W");
  u64 b_mod = to_u64(b, "b");

  Int A_int = iroot_floor(ctx.X, ctx.k) + 1;
  Int B_int = iroot_floor(ctx.X + ctx.Y, ctx.k);
  if (B_int < A_int) throw scale_error("build_sequence: empty root window");
  u64 A = to_u64(A_int, "window start");
  u64 B = to_u64(B_int, "window end");
  if (B - A > 50000000) throw scale_error("build_sequence: root window wider than 5e7");
  if (A <= plan.D)
    throw domain_error("build_sequence: window start at or below the sieve level breaks majorization");

  WeightedSequence seq;
  seq.ctx = ctx;
  seq.kind = kind;
  seq.b = b;
  seq.sieve_level = plan.D;
  seq.length = ctx.N;
  seq.normalizer = norm;

  // Candidate roots: the admissible residue classes mod W inside [A, B].
  std::vector<u64> roots;
  for (u64 y : sigma_witnesses(w_mod, b_mod, ctx.k)) {
    u64 t = A + ((y + w_mod - A % w_mod) % w_mod);
    for (; t <= B; t += w_mod) roots.push_back(t);
  }
  std::sort(roots.begin(), roots.end());

  std::vector<u8> is_prime_flag;
  std::vector<int> rho;
  if (kind == SeqKind::f_b) {
    is_prime_flag.assign(size_t(B - A + 1), 0);
    for (u64 p : primes_in(A, B).primes) is_prime_flag[size_t(p - A)] = 1;
  } else {
    rho = rho_plus_range(A, B, plan);
  }

  for (u64 t : roots) {
    double v;
    if (kind == SeqKind::f_b) {
      if (!is_prime_flag[size_t(t - A)]) continue;
      v = seq.normalizer;
    } else {
      int r = rho[size_t(t - A)];
      if (r < 0) throw domain_error("build_sequence: majorant weight went negative");
      if (r == 0) continue;
      v = seq.normalizer * double(r);
    }
    Int n = (ipow(Int(t), ctx.k) - b) / ctx.W - ctx.m;
    seq.support_n.push_back(to_u64(n, "support index"));
    seq.support_t.push_back(t);
    seq.support_v.push_back(v);
  }
  return seq;
}

inline WeightedSequence build_sequence(const WaringContext& ctx, const SievePlan& plan,
                                       SeqKind kind) {
  return build_sequence(ctx, plan, ctx.b, kind);
}

// Mean over {n in [1, N] : n = a (mod q)}; the progression must hold at least
// min_frac of the full index set.
inline double mean_over_progression(const WeightedSequence& seq, u64 q, u64 a, double min_frac) {
  if (q < 1) throw domain_error("mean_over_progression needs q >= 1");
  a %= q;
  const Int& N = seq.length;
  Int count = (a == 0) ? N / q : (a <= N ? (N - a) / q + 1 : Int(0));
  if (count == 0 || to_double(Rat(count, N)) < min_frac)
    throw domain_error("mean_over_progression: progression below the density floor");
  kahan acc;
  for (size_t i = 0; i < seq.support_n.size(); ++i)
    if (seq.support_n[i] % q == a) acc.add(seq.support_v[i]);
  return acc.value() / to_double(Rat(count, 1));
}

// s-fold linear convolution of dense arrays indexed 1..N; out[n] is the sum
// over tuples with n_1 + ... + n_s = n, so out has indices 0..sN with zeros
// below s.
inline std::vector<double> convolve(const std::vector<std::vector<double>>& seqs) {
  if (seqs.size() < 2) throw domain_error("convolve needs at least two sequences");
  size_t N = seqs[0].size();
  if (N == 0) throw domain_error("convolve needs nonempty sequences");
  for (const auto& s : seqs)
    if (s.size() != N) throw domain_error("convolve needs equal lengths");
  if (N * seqs.size() > (1u << 24)) throw scale_error("convolution output too long");
  std::vector<double> acc = seqs[0];
  for (size_t i = 1; i < seqs.size(); ++i) acc = linear_convolve(acc, seqs[i]);
  // acc[j] corresponds to n = j + s.
  std::vector<double> out(N * seqs.size() + 1, 0.0);
  for (size_t j = 0; j < acc.size(); ++j) out[j + seqs.size()] = acc[j];
  return out;
}

// Schoolbook reference for convolve, same indexing.
inline std::vector<double> convolve_direct(const std::vector<std::vector<double>>& seqs) {
  if (seqs.size() < 2) throw domain_error("convolve needs at least two sequences");
  size_t N = seqs[0].size();
  if (N == 0) throw domain_error("convolve needs nonempty sequences");
  if (N > 4096) throw scale_error("direct convolution capped at N <= 4096");
  for (const auto& s : seqs)
    if (s.size() != N) throw domain_error("convolve needs equal lengths");
  std::vector<double> acc = seqs[0];
  for (size_t i = 1; i < seqs.size(); ++i) acc = convolve_direct_pair(acc, seqs[i]);
  std::vector<double> out(N * seqs.size() + 1, 0.0);
  for (size_t j = 0; j < acc.size(); ++j) out[j + seqs.size()] = acc[j];
  return out;
}

// {n : 1_A * 1_B(n) >= eta N} for A, B subsets of [1, N].
inline std::vector<u64> sumset_s_eta(const std::vector<u64>& A, const std::vector<u64>& B,
                                     double eta, u64 N) {
  if (N < 1 || N > (1u << 23)) throw domain_error("sumset_s_eta needs 1 <= N <= 2^23");
  auto indicator = [&](const std::vector<u64>& S) {
    std::vector<double> ind(size_t(N), 0.0);
    for (u64 n : S) {
      if (n < 1 || n > N) throw domain_error("sumset_s_eta: set element outside [1, N]");
      ind[size_t(n - 1)] = 1.0;
    }
    return ind;
  };
  if (A.empty() || B.empty()) return {};
  std::vector<double> conv = linear_convolve(indicator(A), indicator(B));
  std::vector<u64> out;
  for (size_t j = 0; j < conv.size(); ++j) {
    double count = std::round(conv[j]);  // representation counts are integers
    if (count >= eta * double(N) - 1e-9) out.push_back(u64(j) + 2);
  }
  return out;
}

// U^2 norm of f on [1, N] embedded in a cyclic group, normalized so the
// constant one function scores 1.  group_size = 0 picks the smallest power of
// two above 4N; any admissible size gives the same answer.
inline double gowers_u2(const std::vector<double>& f, u64 N, u64 group_size = 0) {
  if (N < 1 || f.size() != N) throw domain_error("gowers_u2 needs f of length N >= 1");
  u64 G = group_size == 0 ? fft_size_at_least(size_t(4 * N + 1)) : group_size;
  if (G <= 4 * N || (G & (G - 1)) != 0)
    throw domain_error("gowers_u2 group size must be a power of two above 4N");
  auto fourth_power_sum = [&](const std::vector<double>& vals) {
    std::vector<cplx> a(size_t(G), cplx{0, 0});
    for (size_t i = 0; i < vals.size(); ++i) a[i] = vals[i];
    fft_pow2(a, -1);
    kahan acc;
    for (const cplx& z : a) acc.add(std::norm(z) * std::norm(z));
    return acc.value();
  };
  double num = fourth_power_sum(f);
  double den = fourth_power_sum(std::vector<double>(size_t(N), 1.0));
  return std::pow(num / den, 0.25);
}

// Exhaustive quadruple sum over the same embedding; reference path.
inline double gowers_u2_direct(const std::vector<double>& f, u64 N, u64 group_size = 0) {
  if (N < 1 || f.size() != N) throw domain_error("gowers_u2 needs f of length N >= 1");
  u64 G = group_size == 0 ? fft_size_at_least(size_t(4 * N + 1)) : group_size;
  if (G <= 4 * N || (G & (G - 1)) != 0)
    throw domain_error("gowers_u2 group size must be a power of two above 4N");
  auto quad = [&](const std::vector<double>& vals) {
    std::vector<double> g(size_t(G), 0.0);
    for (size_t i = 0; i < vals.size(); ++i) g[i] = vals[i];
    kahan acc;
    for (u64 x = 0; x < G; ++x)
      for (u64 h1 = 0; h1 < G; ++h1) {
        if (g[size_t(x)] == 0.0 && g[size_t((x + h1) % G)] == 0.0) continue;
        for (u64 h2 = 0; h2 < G; ++h2)
          acc.add(g[size_t(x)] * g[size_t((x + h1) % G)] * g[size_t((x + h2) % G)] *
                  g[size_t((x + h1 + h2) % G)]);
      }
    return acc.value();
  };
  double num = quad(f);
  double den = quad(std::vector<double>(size_t(N), 1.0));
  return std::pow(num / den, 0.25);
}

struct PreTransferenceReport {
  unsigned s = 0;
  u64 N = 0;
  double eps = 0.0;
  double eta = 0.125;  // progressions tested down to this fraction of N
  unsigned trials = 0;
  double min_ratio = 0.0;  // min over trials and n in [N/2, N] of conv(n)/N^(s-1)
  bool all_positive = false;
  u64 seed = 0;
  std::optional<std::pair<unsigned, u64>> counterexample;  // (trial, n)
};

namespace detail {

// One random model function with every maximal progression of difference
// q <= 1/eta holding mean at least alpha + eps.  Rejection sampled.
inline std::vector<double> random_model_function(double alpha, double eps, u64 N, double eta,
                                                 rng64& rng) {
  double target = alpha + eps + 0.03;
  if (target > 0.97) throw domain_error("model generator needs alpha + eps <= 0.94");
  double amp = std::min({0.15, target, 1.0 - target});
  u64 q_max = u64(1.0 / eta);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<double> f(static_cast<size_t>(N));
    for (auto& v : f) v = target + amp * (2.0 * rng.uniform() - 1.0);
    bool ok = true;
    for (u64 q = 1; q_max >= 1 && q <= q_max && ok; ++q) {
      for (u64 a = 0; a < q && ok; ++a) {
        kahan acc;
        u64 count = 0;
        for (u64 n = a == 0 ? q : a; n <= N; n += q) {
          acc.add(f[size_t(n - 1)]);
          ++count;
        }
        if (count > 0 && acc.value() / double(count) < alpha + eps) ok = false;
      }
    }
    if (ok) return f;
  }
  throw domain_error("model generator failed to meet the progression means");
}

}  // namespace detail

// Empirical positivity check for s-fold convolutions of random dense model
// functions whose progression means clear alpha_i + eps.
inline PreTransferenceReport pre_transference_check(unsigned s, const std::vector<double>& alphas,
                                                    double eps, u64 N, unsigned trials,
                                                    u64 seed = 12345) {
  if (s < 2 || alphas.size() != s) throw domain_error("pre_transference_check needs s >= 2 weights");
  if (N < 16 || N > (1u << 16)) throw domain_error("pre_transference_check needs 16 <= N <= 65536");
  if (!(eps > 0)) throw domain_error("pre_transference_check needs eps > 0");
  if (trials < 1) throw domain_error("pre_transference_check needs at least one trial");
  double total = 0;
  for (double a : alphas) {
    if (!(a > 0 && a < 1)) throw domain_error("pre_transference_check needs alphas in (0, 1)");
    total += a;
  }
  if (total < 1.0) throw domain_error("pre_transference_check needs the weights to sum to at least 1");

  PreTransferenceReport rep;
  rep.s = s;
  rep.N = N;
  rep.eps = eps;
  rep.trials = trials;
  rep.seed = seed;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.all_positive = true;
  double scale = std::pow(double(N), double(s) - 1.0);
  rng64 rng(seed);
  for (unsigned trial = 0; trial < trials; ++trial) {
    std::vector<std::vector<double>> fs;
    fs.reserve(s);
    for (unsigned i = 0; i < s; ++i)
      fs.push_back(detail::random_model_function(alphas[i], eps, N, rep.eta, rng));
    std::vector<double> conv = convolve(fs);
    for (u64 n = (N + 1) / 2; n <= N; ++n) {
      double ratio = conv[size_t(n)] / scale;
      if (ratio < rep.min_ratio) rep.min_ratio = ratio;
      if (!(ratio > 0) && !rep.counterexample) {
        rep.all_positive = false;
        rep.counterexample = {trial, n};
      }
    }
  }
  return rep;
}

// Indicator pile-up f_i = 1_[1, floor(alpha_i N)]; with total mass below 1 the
// top of [N/2, N] is out of reach of the s-fold sumset.
inline std::vector<std::vector<double>> adversarial_indicator_instance(
    const std::vector<double>& alphas, u64 N) {
  std::vector<std::vector<double>> out;
  for (double a : alphas) {
    std::vector<double> f(size_t(N), 0.0);
    u64 cut = u64(a * double(N));
    for (u64 n = 1; n <= std::min(cut, N); ++n) f[size_t(n - 1)] = 1.0;
    out.push_back(std::move(f));
  }
  return out;
}

// ------------------------------------------------------------- serialization

// Layout 0 stores the support triples, layout 1 a dense f64 array.
inline std::string sequence_encode(const WeightedSequence& seq) {
  std::string s = "WGSQ1";
  bool dense = seq.length <= (Int(1) << 20);
  s.push_back(seq.kind == SeqKind::f_b ? 0 : 1);
  s.push_back(dense ? 1 : 0);
  detail::put_u64_le(s, to_u64(seq.length, "N"));
  detail::put_u64_le(s, to_u64(seq.b, "b"));
  detail::put_u64_le(s, seq.sieve_level);
  u64 norm_bits;
  static_assert(sizeof(double) == sizeof(u64));
  std::memcpy(&norm_bits, &seq.normalizer, 8);
  detail::put_u64_le(s, norm_bits);
  auto put_f64 = [&](double v) {
    u64 bits;
    std::memcpy(&bits, &v, 8);
    detail::put_u64_le(s, bits);
  };
  if (dense) {
    for (double v : seq.dense()) put_f64(v);
  } else {
    detail::put_u64_le(s, seq.support_n.size());
    u64 prev = 0;
    for (u64 n : seq.support_n) {
      detail::put_varint(s, n - prev);
      prev = n;
    }
    prev = 0;
    for (u64 t : seq.support_t) {
      detail::put_varint(s, t - prev);
      prev = t;
    }
    for (double v : seq.support_v) put_f64(v);
  }
  return s;
}

inline WeightedSequence sequence_decode(const std::string& s, const WaringContext& ctx) {
  if (s.size() < 7 || s.compare(0, 5, "WGSQ1") != 0)
    throw io_error("sequence blob has a bad magic header");
  WeightedSequence seq;
  seq.ctx = ctx;
  seq.kind = s[5] == 0 ? SeqKind::f_b : SeqKind::nu_b;
  bool dense = s[6] == 1;
  size_t off = 7;
  seq.length = Int(detail::get_u64_le(s, off));
  seq.b = Int(detail::get_u64_le(s, off));
  seq.sieve_level = detail::get_u64_le(s, off);
  auto get_f64 = [&]() {
    u64 bits = detail::get_u64_le(s, off);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  };
  seq.normalizer = get_f64();
  if (dense) {
    u64 N = to_u64(seq.length, "N");
    for (u64 n = 1; n <= N; ++n) {
      double v = get_f64();
      if (v != 0.0) {
        seq.support_n.push_back(n);
        seq.support_t.push_back(0);  // roots are not stored in the dense layout
        seq.support_v.push_back(v);
      }
    }
  } else {
    u64 count = detail::get_u64_le(s, off);
    u64 prev = 0;
    for (u64 i = 0; i < count; ++i) {
      prev += detail::get_varint(s, off);
      seq.support_n.push_back(prev);
    }
    prev = 0;
    for (u64 i = 0; i < count; ++i) {
      prev += detail::get_varint(s, off);
      seq.support_t.push_back(prev);
    }
    for (u64 i = 0; i < count; ++i) seq.support_v.push_back(get_f64());
  }
  return seq;
}

}  // namespace wg
