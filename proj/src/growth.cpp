#include "hypb/growth.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace hypb {

RationalSeries growth_series(TilingParams params) {
  params.validate();
  const int p = params.p, q = params.q;
  RationalSeries s;
  if (q % 2 == 0) {
    const int d = q / 2;
    s.num.assign(d + 1, 2);
    s.den.assign(d + 1, -(long long)(p - 2));
    s.num[0] = s.num[d] = 1;
    s.den[0] = s.den[d] = 1;
  } else {
    const int d = q - 1;
    s.num.assign(d + 1, 2);
    s.den.assign(d + 1, -(long long)(p - 2));
    s.num[0] = s.num[d] = 1;
    s.den[0] = s.den[d] = 1;
    s.num[d / 2] = 4;
    s.den[d / 2] = -(long long)(p - 4);
  }
  return s;
}

std::vector<BigInt> series_coefficients(const RationalSeries& s, int n) {
  if (n < 0) throw param_error("series_coefficients: n must be >= 0");
  if (s.den.empty() || s.den[0] != 1) throw param_error("series denominator must start with 1");
  std::vector<BigInt> c(n + 1, 0);
  for (int k = 0; k <= n; ++k) {
    BigInt v = (k < (int)s.num.size()) ? BigInt(s.num[k]) : BigInt(0);
    for (int j = 1; j < (int)s.den.size() && j <= k; ++j) v -= s.den[j] * c[k - j];
    c[k] = v;
  }
  return c;
}

namespace {

// exact sign of sum coeff[j] * (m / 2^k)^j, coefficients integer
int dyadicSign(const std::vector<long long>& coeff, const BigInt& m, int k) {
  BigInt acc = 0;
  int d = (int)coeff.size() - 1;
  // sum coeff[j] * m^j * 2^(k*(d-j))
  BigInt mj = 1;
  for (int j = 0; j <= d; ++j) {
    acc += coeff[j] * mj * (BigInt(1) << (std::size_t)(k * (d - j)));
    mj *= m;
  }
  if (acc > 0) return 1;
  if (acc < 0) return -1;
  return 0;
}

}  // namespace

GrowthRate tiling_growth_rate(TilingParams params, double tol) {
  if (tol <= 0) throw param_error("tol must be > 0");
  RationalSeries s = growth_series(params);
  std::vector<long long> rev(s.den.rbegin(), s.den.rend());
  const int d = (int)rev.size() - 1;

  // isolate roots via the companion matrix (leading coefficient rev[d] == 1)
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -(double)rev[i] / (double)rev[d];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  double best = -1e300;
  for (int i = 0; i < d; ++i) {
    auto lam = es.eigenvalues()[i];
    if (std::abs(lam.imag()) < 1e-8) best = std::max(best, lam.real());
  }
  if (best < -1e299) throw numeric_error("no real root found for growth denominator");

  // certify with exact dyadic bisection around the estimate
  const int K = 60;  // dyadic resolution 2^-60
  auto toDyadic = [&](double x) { return BigInt((long long)std::llround(x * 9.007199254740992e15)) << (K - 53); };
  BigInt lo = toDyadic(best - 1e-3), hi = toDyadic(best + 1e-3);
  int slo = dyadicSign(rev, lo, K), shi = dyadicSign(rev, hi, K);
  int widen = 0;
  while (slo == shi && widen < 40) {
    BigInt w = hi - lo;
    lo -= w;
    hi += w;
    slo = dyadicSign(rev, lo, K);
    shi = dyadicSign(rev, hi, K);
    ++widen;
  }
  if (slo == shi) throw numeric_error("root bracketing failed");
  if (slo == 0) return {(double)lo.convert_to<double>() / std::pow(2.0, K), 0.0};
  for (int it = 0; it < 200; ++it) {
    BigInt mid = (lo + hi) >> 1;
    int sm = dyadicSign(rev, mid, K);
    if (sm == 0) {
      lo = hi = mid;
      break;
    }
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
    double width = (hi - lo).convert_to<double>() / std::pow(2.0, K);
    if (width < tol * 0.5) break;
  }
  double alpha = ((lo + hi).convert_to<double>() / 2.0) / std::pow(2.0, K);
  double prec = (hi - lo).convert_to<double>() / std::pow(2.0, K);
  return {alpha, prec};
}

Eigen::MatrixXd TypeMatrix::dense() const {
  Eigen::MatrixXd m(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) m(i, j) = 0.5 * (double)twice[i][j];
  return m;
}

double TypeMatrix::spectralRadius() const {
  Eigen::EigenSolver<Eigen::MatrixXd> es(dense());
  double r = 0;
  for (int i = 0; i < size; ++i) r = std::max(r, std::abs(es.eigenvalues()[i]));
  return r;
}

std::vector<BigInt> TypeMatrix::layerTotals(int p, int n) const {
  std::vector<BigInt> out;
  out.push_back(1);
  if (n >= 1) out.push_back(p);
  std::vector<BigInt> t(size, 0);
  t[0] = p;  // distance-1 vertices are all type 1
  for (int k = 2; k <= n; ++k) {
    std::vector<BigInt> nt(size, 0);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) nt[j] += t[i] * twice[i][j];
    BigInt total = 0;
    for (int j = 0; j < size; ++j) {
      if (nt[j] % 2 != 0) throw numeric_error("type iteration produced a non-integer count");
      nt[j] /= 2;
      total += nt[j];
    }
    t = std::move(nt);
    out.push_back(total);
  }
  return out;
}

TypeMatrix type_matrix(TilingParams params) {
  params.validate();
  const int p = params.p, q = params.q;
  if (p < 4)
    throw param_error("type_matrix: the paper's matrix assumes p >= 4 (p = 3 rows degenerate)");
  TypeMatrix m;
  if (q % 2 == 0) {
    if (q == 4) {
      m.size = 2;
      m.twice = {{2 * (p - 3), 2}, {2 * (p - 4), 2}};
      return m;
    }
    const int n = q / 2;
    m.size = n;
    m.twice.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) m.twice[i][0] = 2 * (p - 3);
    m.twice[n - 1][0] = 2 * (p - 4);
    m.twice[0][1] = 4;
    m.twice[n - 1][1] = 4;
    for (int i = 1; i < n - 1; ++i) m.twice[i][1] = 2;
    for (int i = 1; i < n - 2; ++i) m.twice[i][i + 1] = 2;  // shifted identity
    m.twice[n - 2][n - 1] = 1;                              // the 1/2 production
    return m;
  }
  if (q < 5) throw param_error("type_matrix: q = 3 rows degenerate in the printed block array");
  const int n = q - 1;
  m.size = n;
  m.twice.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m.twice[i][0] = 2 * (p - 3);
  m.twice[(q - 1) / 2 - 1][0] = 2 * (p - 4);
  m.twice[n - 1][0] = 2 * (p - 4);
  m.twice[0][1] = 4;
  m.twice[n - 1][1] = 4;
  for (int i = 1; i < n - 1; ++i) m.twice[i][1] = 2;
  for (int i = 1; i < n - 2; ++i) m.twice[i][i + 1] = 2;
  m.twice[n - 2][n - 1] = 1;
  return m;
}

RationalSeries surface_growth_series(int n, SurfaceKind kind) {
  if (n < 1) throw param_error("surface_growth_series: n must be >= 1");
  TilingParams params = (kind == SurfaceKind::FourNGon) ? TilingParams{4 * n, 4 * n}
                                                        : TilingParams{4 * n + 2, 2 * n + 1};
  return growth_series(params);  // validates hyperbolicity (rejects n = 1 cases that collapse)
}

}  // namespace hypb
