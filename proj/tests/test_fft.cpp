#include "wg/fft.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace wg;

namespace {

std::vector<cplx> random_signal(size_t n, u64 seed) {
  rng64 rng(seed);
  std::vector<cplx> x(n);
  for (auto& v : x) v = cplx{rng.uniform() * 2 - 1, rng.uniform() * 2 - 1};
  return x;
}

double max_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  REQUIRE(a.size() == b.size());
  double e = 0;
  for (size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST_CASE("power-of-two transform matches the quadratic reference") {
  for (size_t n : {1ul, 2ul, 8ul, 64ul, 256ul}) {
    std::vector<cplx> x = random_signal(n, 11 + n);
    for (int sign : {-1, +1}) {
      std::vector<cplx> a = x;
      fft_pow2(a, sign);
      CHECK(max_err(a, dft_direct(x, sign)) < 1e-9);
    }
  }
  std::vector<cplx> bad(3);
  CHECK_THROWS_AS(fft_pow2(bad, -1), domain_error);
}

TEST_CASE("forward then backward recovers the signal") {
  std::vector<cplx> x = random_signal(128, 5);
  std::vector<cplx> a = x;
  fft_pow2(a, -1);
  fft_pow2(a, +1);
  for (auto& v : a) v /= 128.0;
  CHECK(max_err(a, x) < 1e-12);
}

TEST_CASE("arbitrary-length transform matches the reference") {
  for (size_t n : {3ul, 5ul, 12ul, 97ul, 441ul, 1000ul}) {
    std::vector<cplx> x = random_signal(n, 1000 + n);
    for (int sign : {-1, +1}) CHECK(max_err(dft_any(x, sign), dft_direct(x, sign)) < 1e-8);
  }
  CHECK_THROWS_AS(dft_any({}, -1), domain_error);
}

TEST_CASE("arbitrary-length path agrees with the radix-2 path on powers of two") {
  std::vector<cplx> x = random_signal(64, 9);
  std::vector<cplx> a = x;
  fft_pow2(a, -1);
  CHECK(max_err(dft_any(x, -1), a) < 1e-10);
}

TEST_CASE("Parseval holds on both transform paths") {
  for (size_t n : {64ul, 97ul}) {
    std::vector<cplx> x = random_signal(n, 77 + n);
    std::vector<cplx> X = dft_any(x, -1);
    kahan lhs, rhs;
    for (auto& v : x) lhs.add(std::norm(v));
    for (auto& v : X) rhs.add(std::norm(v));
    CHECK(rhs.value() / double(n) == Catch::Approx(lhs.value()).epsilon(1e-12));
  }
}

TEST_CASE("linear convolution agrees with the schoolbook path") {
  rng64 rng(42);
  std::vector<double> f(300), g(211);
  for (auto& v : f) v = rng.uniform();
  for (auto& v : g) v = rng.uniform();
  std::vector<double> fast = linear_convolve(f, g);
  std::vector<double> slow = convolve_direct_pair(f, g);
  REQUIRE(fast.size() == slow.size());
  for (size_t i = 0; i < fast.size(); ++i)
    CHECK(fast[i] == Catch::Approx(slow[i]).margin(1e-9));
}
