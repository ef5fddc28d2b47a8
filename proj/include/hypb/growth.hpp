#pragma once

#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "hypb/tiling.hpp"

namespace hypb {

using BigInt = boost::multiprecision::cpp_int;

// Growth series f(x) = sum N_td(n) x^n as an exact rational function.
struct RationalSeries {
  std::vector<long long> num;  // ascending powers
  std::vector<long long> den;  // ascending powers, den[0] == 1
};

RationalSeries growth_series(TilingParams params);

// N_td(0..n) by the denominator-driven linear recurrence; exact.
std::vector<BigInt> series_coefficients(const RationalSeries& s, int n);

struct GrowthRate {
  double alpha = 0;
  double precision = 0;
};

// alpha = largest real root of the degree-reversed denominator, isolated via
// the companion matrix and certified by exact dyadic bisection.
GrowthRate tiling_growth_rate(TilingParams params, double tol = 1e-12);

// Type-count transfer matrix from the theorem's proof.  Entries are exact
// halves (the q/2-1 -> q/2 production is 1/2); stored doubled.
// Defined for p >= 4 and (q even, q >= 4) or (q odd, q >= 5).
struct TypeMatrix {
  int size = 0;
  std::vector<std::vector<long long>> twice;  // twice[i][j] = 2 * entry(i,j)

  Eigen::MatrixXd dense() const;
  double spectralRadius() const;
  // iterate from T_1 = (p,0,...,0): returns N_td(0..n) for cross-checks
  std::vector<BigInt> layerTotals(int p, int n) const;
};

TypeMatrix type_matrix(TilingParams params);

enum class SurfaceKind { FourNGon, FourNPlusTwoGon };

RationalSeries surface_growth_series(int n, SurfaceKind kind);

}  // namespace hypb
