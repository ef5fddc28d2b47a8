#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypb/growth.hpp"

using namespace hypb;

TEST_CASE("series shapes") {
  auto s = growth_series({4, 6});
  CHECK(s.num == std::vector<long long>{1, 2, 2, 1});
  CHECK(s.den == std::vector<long long>{1, -2, -2, 1});

  auto o = growth_series({6, 5});  // q odd: middle coefficients 4 and -(p-4)
  int mid = (5 - 1) / 2;
  CHECK(o.num[mid] == 4);
  CHECK(o.den[mid] == -(6 - 4));
  CHECK(o.den[0] == 1);
}

TEST_CASE("coefficients match the construction") {
  for (TilingParams P : {TilingParams{4, 6}, TilingParams{3, 7}, TilingParams{5, 4},
                         TilingParams{4, 8}, TilingParams{7, 3}}) {
    auto coeff = series_coefficients(growth_series(P), 8);
    CHECK(coeff[0] == 1);
    CHECK(coeff[1] == P.p);
    auto layers = tile_layer_counts(P, 8);
    for (int n = 0; n <= 8; ++n) CHECK(coeff[n] == layers[n]);
  }
  auto c46 = series_coefficients(growth_series({4, 6}), 3);
  CHECK(c46 == std::vector<BigInt>{1, 4, 12, 32});
}

TEST_CASE("growth rate values") {
  CHECK(tiling_growth_rate({4, 6}).alpha == doctest::Approx(2.61803398874989).epsilon(1e-12));
  CHECK(tiling_growth_rate({3, 8}).alpha == doctest::Approx(1.72208380573904).epsilon(1e-12));
  CHECK(tiling_growth_rate({3, 7}).alpha == doctest::Approx(1.55603019132268).epsilon(1e-12));
}

TEST_CASE("reversal consistency") {
  for (TilingParams P : {TilingParams{4, 6}, TilingParams{5, 7}, TilingParams{3, 9}}) {
    auto s = growth_series(P);
    double a = tiling_growth_rate(P).alpha;
    double x = 1.0 / a, val = 0, pw = 1;
    for (long long c : s.den) {
      val += c * pw;
      pw *= x;
    }
    CHECK(std::abs(val) < 1e-9);
  }
}

TEST_CASE("ratio convergence") {
  for (TilingParams P : {TilingParams{4, 8}, TilingParams{3, 7}}) {
    auto coeff = series_coefficients(growth_series(P), 41);
    double ratio =
        coeff[41].convert_to<double>() / coeff[40].convert_to<double>();
    CHECK(std::abs(ratio - tiling_growth_rate(P).alpha) < 1e-6);
  }
}

TEST_CASE("type matrix") {
  auto m4 = type_matrix({6, 4});  // ((p-3, 1), (p-4, 1)), stored doubled
  CHECK(m4.size == 2);
  CHECK(m4.twice == std::vector<std::vector<long long>>{{6, 2}, {4, 2}});

  auto m8 = type_matrix({4, 8});  // the next-to-last type row ends with a half entry
  CHECK(m8.size == 4);
  CHECK(m8.twice[m8.size - 2].back() == 1);

  for (TilingParams P : {TilingParams{4, 6}, TilingParams{4, 8}, TilingParams{5, 7}}) {
    CHECK(type_matrix(P).spectralRadius() ==
          doctest::Approx(tiling_growth_rate(P).alpha).epsilon(1e-9));
    auto sim = type_matrix(P).layerTotals(P.p, 8);
    auto coeff = series_coefficients(growth_series(P), 8);
    for (int n = 0; n <= 8; ++n) CHECK(sim[n] == coeff[n]);
  }
  CHECK_THROWS_AS(type_matrix({3, 8}), param_error);
}

TEST_CASE("surface series") {
  auto a = surface_growth_series(2, SurfaceKind::FourNGon);
  auto b = growth_series({8, 8});
  CHECK(a.num == b.num);
  CHECK(a.den == b.den);

  CHECK_THROWS_AS(surface_growth_series(1, SurfaceKind::FourNPlusTwoGon), param_error);

  auto c = surface_growth_series(2, SurfaceKind::FourNPlusTwoGon);
  auto d = growth_series({10, 5});
  CHECK(c.num == d.num);
  CHECK(c.den == d.den);
}
