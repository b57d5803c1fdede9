#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "serre/tridiagonal.hpp"

using namespace serre;

namespace {

TridiagonalSystem random_dominant_system(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  TridiagonalSystem s;
  s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.sub[i] = i > 0 ? off(rng) : 0.0;
    s.super[i] = i + 1 < n ? off(rng) : 0.0;
    s.diag[i] = std::abs(s.sub[i]) + std::abs(s.super[i]) + 0.1 + std::abs(off(rng));
    s.rhs[i] = 10.0 * off(rng);
  }
  return s;
}

}  // namespace

TEST_SUITE("tridiagonal") {
  TEST_CASE("Thomas solve matches a dense elimination") {
    for (unsigned seed = 1; seed <= 20; ++seed) {
      const std::size_t n = 1 + seed * 3;
      const TridiagonalSystem s = random_dominant_system(n, seed);
      std::vector<double> x(n);
      std::vector<double> scratch;
      REQUIRE(solve_tridiagonal(s, x, scratch));

      std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1, 0.0L));
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) a[i][i - 1] = s.sub[i];
        a[i][i] = s.diag[i];
        if (i + 1 < n) a[i][i + 1] = s.super[i];
        a[i][n] = s.rhs[i];
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
          if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        }
        std::swap(a[c], a[p]);
        for (std::size_t r = c + 1; r < n; ++r) {
          const long double f = a[r][c] / a[c][c];
          for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
      }
      std::vector<long double> ref(n);
      for (std::size_t i = n; i-- > 0;) {
        long double v = a[i][n];
        for (std::size_t k = i + 1; k < n; ++k) v -= a[i][k] * ref[k];
        ref[i] = v / a[i][i];
      }
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(x[i] - static_cast<double>(ref[i])) <=
              1e-13 * (1.0 + std::abs(static_cast<double>(ref[i]))));
      }
      CHECK(s.relative_residual(x) <= 1e-14);
      CHECK(s.strictly_diagonally_dominant());
    }
  }

  TEST_CASE("single row") {
    TridiagonalSystem s;
    s.resize(1);
    s.diag[0] = 4.0;
    s.rhs[0] = 2.0;
    std::vector<double> x(1);
    std::vector<double> scratch;
    REQUIRE(solve_tridiagonal(s, x, scratch));
    CHECK(x[0] == 0.5);
  }

  TEST_CASE("zero pivot is reported, not divided through") {
    TridiagonalSystem s;
    s.resize(2);
    s.diag = {0.0, 1.0};
    s.super = {1.0, 0.0};
    s.sub = {0.0, 1.0};
    s.rhs = {1.0, 1.0};
    std::vector<double> x(2);
    std::vector<double> scratch;
    CHECK_FALSE(solve_tridiagonal(s, x, scratch));
    CHECK_FALSE(s.strictly_diagonally_dominant());
  }

  TEST_CASE("non-finite input is reported") {
    TridiagonalSystem s = random_dominant_system(5, 7);
    s.rhs[2] = std::nan("");
    std::vector<double> x(5);
    std::vector<double> scratch;
    CHECK_FALSE(solve_tridiagonal(s, x, scratch));
  }
}
