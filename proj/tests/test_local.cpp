#include <catch2/catch_amalgamated.hpp>

#include "wg/local.hpp"

using namespace wg;

namespace {

// Oracle: DP directly over Z_q, no factorization, counts ordered unit tuples.
Int oracle_count(u64 q, u64 m, unsigned k, unsigned s) {
  std::vector<u64> mult(q, 0);
  for (u64 z = 0; z < q; ++z)
    if (std::gcd(z, q) == 1) ++mult[powmod_u64(z, k, q)];
  std::vector<u128> cur(q, 0), nxt(q, 0);
  cur[0] = 1;
  for (unsigned j = 0; j < s; ++j) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (u64 r = 0; r < q; ++r) {
      if (!cur[r]) continue;
      for (u64 u = 0; u < q; ++u)
        if (mult[u]) nxt[(r + u) % q] += cur[r] * mult[u];
    }
    std::swap(cur, nxt);
  }
  u128 c = cur[m % q];
  return (Int(u64(c >> 64)) << 64) | Int(u64(c));
}

// Fully exhaustive enumeration for tiny instances.
u64 oracle_enumerate(u64 q, u64 m, unsigned k, unsigned s) {
  std::vector<u64> units;
  for (u64 z = 1; z <= q; ++z)
    if (std::gcd(z % q, q) == 1) units.push_back(z % q);
  std::vector<size_t> idx(s, 0);
  u64 count = 0;
  while (true) {
    u64 sum = 0;
    for (size_t i = 0; i < s; ++i) sum = (sum + powmod_u64(units[idx[i]], k, q)) % q;
    if (sum == m % q) ++count;
    size_t pos = 0;
    while (pos < s && ++idx[pos] == units.size()) idx[pos++] = 0;
    if (pos == s) break;
  }
  return count;
}

}  // namespace

TEST_CASE("unit exponential sums") {
  CHECK(std::abs(unit_gauss_sum(5, 0, 2) - cplx(4.0, 0.0)) < 1e-12);
  cplx expected = 2.0 * unit_phase(1, 3);
  CHECK(std::abs(unit_gauss_sum(3, 1, 2) - expected) < 1e-12);
  CHECK(std::abs(unit_gauss_sum(4, 2, 2) - cplx(-2.0, 0.0)) < 1e-12);
  for (u64 q : {2, 3, 8, 12, 24, 30}) {
    for (u64 a = 0; a < q; ++a) {
      CAPTURE(q, a);
      CHECK(std::abs(unit_gauss_sum(q, a, 3)) <= phi_u64(q) + 1e-9);
    }
  }
}

TEST_CASE("counts match the direct oracle") {
  CHECK(count_solutions(4, 2, 2, 6, false).count == 64);
  auto zero = count_solutions(4, 1, 2, 6, true);
  CHECK(zero.count == 0);
  CHECK(!zero.witness.has_value());

  SECTION("tiny instances, exhaustive enumeration") {
    for (u64 q : {2, 3, 4, 5, 6, 8}) {
      for (unsigned k : {1u, 2u, 3u}) {
        for (unsigned s : {1u, 2u, 3u, 4u}) {
          for (u64 m = 0; m < q; ++m) {
            CAPTURE(q, k, s, m);
            CHECK(count_solutions(q, m, k, s, false).count == oracle_enumerate(q, m, k, s));
          }
        }
      }
    }
  }
  SECTION("q up to 60, s = 3k, all residues") {
    for (u64 q = 1; q <= 60; ++q) {
      for (unsigned k : {1u, 2u, 3u, 4u}) {
        unsigned s = 3 * k;
        for (u64 m = 0; m < q; ++m) {
          CAPTURE(q, k, s, m);
          CHECK(count_solutions(q, m, k, s, false).count == oracle_count(q, m, k, s));
        }
      }
    }
  }
}

TEST_CASE("multiplicativity") {
  const std::pair<u64, u64> splits[] = {{4, 3}, {8, 5}, {3, 5}, {4, 15}, {8, 7}, {9, 5}};
  for (auto [u, v] : splits) {
    REQUIRE(std::gcd(u, v) == 1);
    REQUIRE(u * v <= 60);
    for (u64 m = 0; m < u * v; ++m) {
      CAPTURE(u, v, m);
      Int lhs = count_solutions(u * v, m, 2, 6, false).count;
      Int rhs = count_solutions(u, m % u, 2, 6, false).count *
                count_solutions(v, m % v, 2, 6, false).count;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("exponential-sum identity") {
  // q * M_m(q) = sum_a S(q,a)^s e_q(-a m)
  for (u64 q : {3, 4, 5, 8, 9, 12, 16, 24, 25, 30}) {
    for (unsigned k : {2u, 3u}) {
      unsigned s = 3 * k;
      for (u64 m : {u64(0), u64(1), q / 2, q - 1}) {
        kahan_cplx acc;
        for (u64 a = 0; a < q; ++a) {
          cplx S = unit_gauss_sum(q, a, k);
          cplx Spow = 1.0;
          for (unsigned i = 0; i < s; ++i) Spow *= S;
          acc.add(Spow * unit_phase((q - mulmod_u64(a, m % q, q)) % q, q));
        }
        double lhs = double(q) * to_double(count_solutions(q, m, k, s, false).count);
        double rhs = acc.value().real();
        CAPTURE(q, k, m);
        CHECK(std::abs(acc.value().imag()) < 1e-6 * std::max(1.0, std::abs(rhs)));
        CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
      }
    }
  }
}

TEST_CASE("witnesses verify and are deterministic") {
  for (u64 q : {4, 8, 24, 36, 60}) {
    for (u64 m = 0; m < q; ++m) {
      auto lc = count_solutions(q, m, 2, 6, true);
      if (lc.count > 0) {
        REQUIRE(lc.witness.has_value());
        u64 sum = 0;
        for (u64 y : *lc.witness) {
          CHECK(std::gcd(y, q) == 1);
          sum = (sum + powmod_u64(y, 2, q)) % q;
        }
        CHECK(sum == m % q);
        auto again = count_solutions(q, m, 2, 6, true);
        CHECK(*again.witness == *lc.witness);
      } else {
        CHECK(!lc.witness.has_value());
      }
    }
  }
}

TEST_CASE("lifting above the enumeration bound") {
  // Large 2-power: identity M(2^t) = 2^(s-1) M(2^(t-1)) pinned directly
  // where both sides are enumerable, then used at 2^20.
  for (unsigned t = 4; t <= 13; ++t) {
    u64 q = ipow_u64(2, t), qh = q / 2;
    for (u64 m : {u64(1), u64(7), q - 3}) {
      Int big = count_solutions(q, m, 2, 6, false).count;
      Int small = count_solutions(qh, m % qh, 2, 6, false).count;
      CAPTURE(t, m);
      CHECK(big == ipow(Int(2), 5) * small);
    }
  }
  u64 q20 = ipow_u64(2, 20);
  auto lc = count_solutions(q20, 6, 2, 6, true);
  CHECK(lc.count == count_solutions(8, 6, 2, 6, false).count * ipow(Int(2), 5 * 17));
  REQUIRE(lc.witness.has_value());
  u64 sum = 0;
  for (u64 y : *lc.witness) {
    CHECK((y & 1) == 1);
    sum = (sum + powmod_u64(y, 2, q20)) % q20;
  }
  CHECK(sum == 6);

  u64 q59 = ipow_u64(5, 9);
  auto lc5 = count_solutions(q59, 123456, 2, 4, true);
  if (lc5.count > 0) {
    u64 s5 = 0;
    for (u64 y : *lc5.witness) s5 = (s5 + powmod_u64(y, 2, q59)) % q59;
    CHECK(s5 == 123456 % q59);
  }
  CHECK(lc5.count == count_solutions(5, 123456 % 5, 2, 4, false).count * ipow(Int(5), 3 * 8));
}

TEST_CASE("solubility guarantee") {
  CHECK(solvable_guarantee(24, 7, 2, 7));
  CHECK(!solvable_guarantee(24, 6, 2, 7));
  for (u64 m = 0; m < 5; ++m) CHECK(solvable_guarantee(5, m, 2, 6));
  CHECK(!solvable_guarantee(24, 7, 2, 5));  // s < 3k

  for (u64 q = 1; q <= 60; ++q) {
    for (unsigned k : {2u, 3u}) {
      for (unsigned s = 3 * k; s < 3 * k + 3; ++s) {
        for (u64 m = 0; m < q; ++m) {
          if (solvable_guarantee(q, m, k, s)) {
            CAPTURE(q, k, s, m);
            CHECK(count_solutions(q, m, k, s, false).count > 0);
          }
        }
      }
    }
  }
}

TEST_CASE("modulus captures the k=2 obstruction exactly") {
  // Unit squares force m = s mod 24; the converse direction pins minimality.
  for (u64 q : {24, 48, 72}) {
    for (unsigned s : {6u, 7u}) {
      for (u64 m = 0; m < q; ++m) {
        bool soluble = count_solutions(q, m, 2, s, false).count > 0;
        bool congruent = (m % 24) == (s % 24);
        CAPTURE(q, s, m);
        CHECK(soluble == congruent);
      }
    }
  }
  // A smaller modulus would miss obstructions: 18 = 6 mod 12 but 18 != 6 mod 24.
  CHECK(count_solutions(24, 18, 2, 6, false).count == 0);
}

TEST_CASE("residue vector selection") {
  CHECK(choose_b_vector(8, 7, 2, 7) == std::vector<u64>(7, 1));
  CHECK(choose_b_vector(1, 42, 2, 5) == std::vector<u64>(5, 0));
  CHECK_THROWS_AS(choose_b_vector(24, 13, 2, 7), domain_error);

  for (u64 W : {8, 24, 288}) {
    unsigned s = 7;
    u64 n0 = s % W;
    auto b = choose_b_vector(W, n0, 2, s);
    u64 sum = 0;
    for (u64 bi : b) {
      CHECK(sigma(W, bi, 2) >= 1);
      sum = (sum + bi) % W;
    }
    CHECK(sum == n0 % W);
  }
}
