#include <catch2/catch_amalgamated.hpp>

#include "wg/context.hpp"

using namespace wg;

namespace {

// Independent long-double evaluation of the window edges.
long double oracle_edge_m(long double x, long double theta, unsigned k, unsigned s, long double W) {
  long double lo = x - powl(x, theta) / s;
  return floorl(powl(lo, k) / W);
}

long double oracle_edge_N(long double x, long double theta, unsigned k, unsigned s, long double W) {
  long double lo = x - powl(x, theta) / s;
  long double hi = x + powl(x, theta) - W;
  return floorl((powl(hi, k) - powl(lo, k)) / W);
}

}  // namespace

TEST_CASE("modulus assembly") {
  ContextOptions o1;
  o1.w_override = 1;
  auto c = build_context(2, 7, Rat(9, 10), Rat(1), Int(1000000), o1);
  CHECK(c.c_eta == 1);
  CHECK(c.W == 8);
  CHECK(c.b == 1);
  CHECK(c.sigma_w_b == 4);

  ContextOptions o2;
  o2.w_override = 2;
  auto c2 = build_context(2, 7, Rat(9, 10), Rat(1, 2), Int(1000000), o2);
  CHECK(c2.c_eta == 4);
  CHECK(c2.W == 64);

  ContextOptions o3;
  o3.w_override = 1;
  auto c3 = build_context(2, 7, Rat(9, 10), Rat(1, 3), Int(1000000), o3);
  CHECK(c3.c_eta == 36);
  CHECK(c3.W == 288);

  CHECK_THROWS_AS(build_context(2, 7, Rat(45, 100), Rat(1), Int(1000000), o1), domain_error);
  CHECK_THROWS_AS(build_context(2, 7, Rat(1), Rat(1), Int(1000000), o1), domain_error);
  CHECK_THROWS_AS(build_context(1, 7, Rat(9, 10), Rat(1), Int(1000000), o1), domain_error);
  CHECK_THROWS_AS(build_context(2, 2, Rat(9, 10), Rat(1), Int(1000000), o1), domain_error);
}

TEST_CASE("window edges match an independent evaluation") {
  struct Case {
    unsigned k, s;
    Rat theta;
    u64 x;
  };
  const Case cases[] = {
      {2, 7, Rat(9, 10), 1000000},
      {2, 7, Rat(4, 5), 20000},
      {3, 13, Rat(4, 5), 5000},
      {2, 5, Rat(11, 20) + Rat(1, 100), 300000},
  };
  for (const auto& cs : cases) {
    ContextOptions o;
    o.w_override = 1;
    auto c = build_context(cs.k, cs.s, cs.theta, Rat(1), Int(cs.x), o);
    CAPTURE(cs.k, cs.s, cs.x);
    long double th = (long double)(to_double(cs.theta));
    long double Wl = (long double)(to_double(c.W));
    Int m_ref{std::string(std::to_string((unsigned long long)oracle_edge_m(cs.x, th, cs.k, cs.s, Wl)))};
    Int N_ref{std::string(std::to_string((unsigned long long)oracle_edge_N(cs.x, th, cs.k, cs.s, Wl)))};
    CHECK(c.m == m_ref);
    CHECK(c.N == N_ref);
    CHECK(c.X == c.W * c.m + c.b);
    CHECK(c.Y == c.W * c.N);
    CHECK(boost::multiprecision::gcd(c.b, c.W) == 1);
    CHECK(c.N >= 16);
    CHECK(c.delta < delta_cap(c.k, c.theta));
  }
}

TEST_CASE("N is monotone in the base scale") {
  ContextOptions o;
  o.w_override = 1;
  Int prev = -1;
  for (u64 x : {2000, 4000, 8000, 16000, 32000, 64000}) {
    auto c = build_context(2, 7, Rat(4, 5), Rat(1), Int(x), o);
    CHECK(c.N >= prev);
    prev = c.N;
  }
}

TEST_CASE("serialization round trip") {
  ContextOptions o;
  o.w_override = 2;
  o.b_override = Int(17);
  auto c = build_context(2, 7, Rat(9, 10), Rat(1, 2), Int(500000), o);
  auto j = context_to_json(c);
  auto c2 = context_from_json(j);
  CHECK(c2.k == c.k);
  CHECK(c2.s == c.s);
  CHECK(c2.theta == c.theta);
  CHECK(c2.eta == c.eta);
  CHECK(c2.epsilon == c.epsilon);
  CHECK(c2.w == c.w);
  CHECK(c2.c_eta == c.c_eta);
  CHECK(c2.W == c.W);
  CHECK(c2.b == c.b);
  CHECK(c2.x == c.x);
  CHECK(c2.m == c.m);
  CHECK(c2.X == c.X);
  CHECK(c2.N == c.N);
  CHECK(c2.Y == c.Y);
  CHECK(c2.delta == c.delta);
  CHECK(c2.rho == c.rho);
  CHECK(c2.sigma_w_b == c.sigma_w_b);
  CHECK(context_hash(c2) == context_hash(c));

  auto c3 = build_context(2, 7, Rat(9, 10), Rat(1, 2), Int(500001), o);
  CHECK(context_hash(c3) != context_hash(c));
}

TEST_CASE("degenerate residues are flagged, not rejected") {
  ContextOptions o;
  o.w_override = 1;
  o.b_override = Int(3);  // 3 is a unit mod 8 but not a square
  auto c = build_context(2, 7, Rat(9, 10), Rat(1), Int(1000000), o);
  CHECK(c.sigma_w_b == 0);

  ContextOptions bad;
  bad.w_override = 1;
  bad.b_override = Int(4);  // not a unit
  CHECK_THROWS_AS(build_context(2, 7, Rat(9, 10), Rat(1), Int(1000000), bad), domain_error);
}

TEST_CASE("scale guards") {
  ContextOptions o;
  o.w_override = 1;
  CHECK_THROWS_AS(build_context(2, 7, Rat(9, 10), Rat(1, 3), Int(30), o), scale_error);
  ContextOptions tight = o;
  tight.epsilon = Rat(1, 1000);
  CHECK_THROWS_AS(build_context(2, 7, Rat(9, 10), Rat(1), Int(1000000), tight), domain_error);
}
