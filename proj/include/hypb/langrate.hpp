#pragma once

#include <optional>
#include <vector>

#include "hypb/growth.hpp"
#include "hypb/tiling.hpp"
#include "hypb/words.hpp"

namespace hypb {

struct ForbiddenLanguage {
  int p = 0;                                 // alphabet 1..p
  std::vector<std::vector<int>> forbidden;   // sorted, deduplicated
  int maxLen = 0;                            // m
};

// Rule E: kk and alternations of length q/2 + 1 (q even).
// O-upper: kk and alternations of length (q+3)/2; O-lower: length (q-1)/2.
ForbiddenLanguage forbidden_set(TilingParams params, RuleSet rule);

struct DeBruijnGraph {
  int p = 0;
  int m = 0;
  std::vector<std::vector<int>> vertices;  // factor-free (m-1)-words, lex order
  std::vector<std::vector<int>> adj;       // out-neighbour indices, sorted

  std::optional<int> vertexIndex(const std::vector<int>& w) const;
  bool hasEdge(const std::vector<int>& u, const std::vector<int>& v) const;
};

DeBruijnGraph debruijn(const ForbiddenLanguage& f);

// Spectral radius of the 0/1 transition matrix: max over strongly connected
// components, each via power iteration on A+I with Collatz-Wielandt bounds.
double perron_rate(const DeBruijnGraph& g, double tol = 1e-12);

// Exact number of allowed words of length n.
BigInt word_count(const ForbiddenLanguage& f, int n);

struct ComplexityReport {
  int p = 0, q = 0;
  double alpha = 0;                 // tiling growth rate (= h_top when q even)
  // q odd only: lower/upper language rates and the alpha-power lower bound
  std::optional<double> ell, alphaPow, upper;
};

ComplexityReport complexity_report(TilingParams params, double tol = 1e-12);

}  // namespace hypb
