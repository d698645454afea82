#include <catch2/catch_amalgamated.hpp>

#include "wg/arith.hpp"

using namespace wg;

// ---------------------------------------------------------------- oracles

namespace {

// Trial-division primality, independent of the library path.
bool oracle_is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Direct root count over all residues.
u64 oracle_sigma(u64 W, u64 b, u64 k) {
  u64 c = 0;
  for (u64 z = 0; z < W; ++z)
    if (powmod_u64(z, k, W) == b % W) ++c;
  return c;
}

u64 oracle_phi(u64 n) {
  u64 c = 0;
  for (u64 i = 1; i <= n; ++i)
    if (std::gcd(i, n) == 1) ++c;
  return c;
}

}  // namespace

TEST_CASE("eta exponent") {
  CHECK(eta_exponent(2, 2) == 3);
  CHECK(eta_exponent(3, 2) == 1);
  CHECK(eta_exponent(4, 5) == 1);
  CHECK(eta_exponent(4, 2) == 4);
  CHECK(eta_exponent(6, 7) == 1);
  CHECK(eta_exponent(6, 3) == 2);
  CHECK_THROWS_AS(eta_exponent(4, 7), domain_error);
  CHECK_THROWS_AS(eta_exponent(3, 4), domain_error);
}

TEST_CASE("k-th power congruence modulus") {
  auto h2 = hua_modulus(2);
  CHECK(h2.value == 24);
  REQUIRE(h2.factors.size() == 2);
  CHECK(h2.factors[0] == std::pair<u64, unsigned>{2, 3});
  CHECK(h2.factors[1] == std::pair<u64, unsigned>{3, 1});
  CHECK(hua_modulus(3).value == 2);
  CHECK(hua_modulus(4).value == 240);
  for (unsigned k = 1; k <= 10; ++k) {
    CAPTURE(k);
    CHECK(hua_modulus(k).value % 2 == 0);
    Int prod = 1;
    for (auto [p, e] : hua_modulus(k).factors) {
      CHECK(k % (p - 1) == 0);
      CHECK(e == eta_exponent(k, p));
      prod *= ipow(Int(p), e);
    }
    CHECK(prod == Int(hua_modulus(k).value));
  }
}

TEST_CASE("sigma root counts") {
  CHECK(sigma(1, 0, 2) == 1);
  CHECK(sigma(8, 1, 2) == 4);
  CHECK(sigma(8, 3, 2) == 0);
  SECTION("matches brute force") {
    for (u64 W : {2, 7, 8, 12, 16, 24, 45, 64, 96, 144, 200, 288}) {
      for (u64 k = 1; k <= 5; ++k) {
        for (u64 b = 0; b < W; ++b) {
          CAPTURE(W, b, k);
          CHECK(sigma(W, b, k) == oracle_sigma(W, b, k));
        }
      }
    }
  }
  SECTION("total mass is W") {
    for (u64 W = 1; W <= 200; ++W) {
      for (u64 k = 1; k <= 5; ++k) {
        u64 total = 0;
        for (u64 b = 0; b < W; ++b) total += sigma(W, b, k);
        CAPTURE(W, k);
        CHECK(total == W);
      }
    }
  }
  SECTION("multiplicative across coprime splits") {
    const std::pair<u64, u64> splits[] = {{8, 9}, {16, 25}, {27, 64}, {24, 35}, {81, 121}, {49, 128}};
    for (auto [w1, w2] : splits) {
      REQUIRE(std::gcd(w1, w2) == 1);
      REQUIRE(w1 * w2 <= 10000);
      for (u64 k = 1; k <= 4; ++k) {
        for (u64 b = 0; b < w1 * w2; b += 7) {
          CAPTURE(w1, w2, b, k);
          CHECK(sigma(w1 * w2, b, k) == sigma(w1, b % w1, k) * sigma(w2, b % w2, k));
        }
      }
    }
  }
}

TEST_CASE("factorization utilities") {
  for (u64 n = 2; n <= 3000; ++n) {
    u64 prod = 1;
    u64 distinct = 0;
    bool squarefree = true;
    for (auto [p, e] : factor_u64(n)) {
      CHECK(oracle_is_prime(p));
      prod *= ipow_u64(p, e);
      ++distinct;
      if (e > 1) squarefree = false;
    }
    CAPTURE(n);
    CHECK(prod == n);
    int mu = mobius_u64(n);
    if (!squarefree) CHECK(mu == 0);
    else CHECK(mu == ((distinct % 2 == 0) ? 1 : -1));
  }
  for (u64 n = 1; n <= 400; ++n) CHECK(phi_u64(n) == oracle_phi(n));
  CHECK(factor_u64(999999999989ull) == Factorization{{999999999989ull, 1}});
  CHECK(factor_u64(1000003ull * 1000033ull) ==
        Factorization{{1000003, 1}, {1000033, 1}});
  CHECK(crt_pair(2, 3, 3, 5) == 8);
  CHECK(crt_pair(1, 8, 4, 9) == 49);
}

TEST_CASE("prime windows") {
  auto w = primes_in(10, 30);
  CHECK(w.primes == std::vector<u64>{11, 13, 17, 19, 23, 29});
  CHECK(primes_in(2, 2).primes == std::vector<u64>{2});
  CHECK(primes_in(1000000, 1000100).primes.size() == 6);
  CHECK_THROWS_AS(primes_in(30, 10), domain_error);

  SECTION("agrees with trial division up to 1e5") {
    auto big = primes_in(2, 100000);
    std::vector<u64> ref;
    for (u64 n = 2; n <= 100000; ++n)
      if (oracle_is_prime(n)) ref.push_back(n);
    CHECK(big.primes == ref);
  }
  SECTION("segmented window matches trial division") {
    auto seg = primes_in(999900, 1000100);
    std::vector<u64> ref;
    for (u64 n = 999900; n <= 1000100; ++n)
      if (oracle_is_prime(n)) ref.push_back(n);
    CHECK(seg.primes == ref);
  }
  SECTION("high window near the ceiling") {
    auto seg = primes_in(999999999000ull, 999999999400ull);
    std::vector<u64> ref;
    for (u64 n = 999999999000ull; n <= 999999999400ull; ++n)
      if (is_prime_u64(n)) ref.push_back(n);
    CHECK(seg.primes == ref);
    CHECK(!seg.primes.empty());
  }
}

TEST_CASE("prime window cache roundtrip") {
  auto w = primes_in(100000, 101000);
  auto blob = prime_window_encode(w);
  CHECK(blob.compare(0, 5, "WGPW1") == 0);
  auto back = prime_window_decode(blob);
  CHECK(back.lo == w.lo);
  CHECK(back.hi == w.hi);
  CHECK(back.primes == w.primes);
  CHECK_THROWS_AS(prime_window_decode("WGXX1junk"), io_error);

  auto path = std::string("/tmp/wg_test_pw.bin");
  prime_window_save(w, path);
  auto fromfile = prime_window_load(path);
  CHECK(fromfile.primes == w.primes);
}

TEST_CASE("short-interval AP density estimator") {
  SECTION("desk value") {
    auto rep = alpha_minus_estimate(1000000, Rat(9, 10), Rat(1, 20), 1);
    CHECK(rep.value > 0.0);
    CHECK(rep.value < 1.3);
    CHECK(rep.num_windows >= 2);
    CHECK(rep.window_len > 0);
    CHECK(rep.stride == (rep.window_len + 3) / 4);
  }
  SECTION("min over a larger family is no larger") {
    auto r1 = alpha_minus_estimate(200000, Rat(3, 4), Rat(1, 10), 1);
    auto r3 = alpha_minus_estimate(200000, Rat(3, 4), Rat(1, 10), 3);
    CHECK(r3.ratio_min <= r1.ratio_min);
  }
  SECTION("empty window gives zero") {
    auto rep = alpha_minus_estimate(1000, Rat(51, 100), Rat(3, 10), 1);
    CHECK(rep.ratio_min == Rat(0));
    CHECK(rep.value == 0.0);
  }
  CHECK_THROWS_AS(alpha_minus_estimate(100, Rat(9, 10), Rat(1, 20), 1), domain_error);
  CHECK_THROWS_AS(alpha_minus_estimate(1000000, Rat(2, 5), Rat(1, 20), 1), domain_error);
  CHECK_THROWS_AS(alpha_minus_estimate(1000000, Rat(9, 10), Rat(1, 20), 100), domain_error);
}
