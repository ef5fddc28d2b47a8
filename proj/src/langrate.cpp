#include "hypb/langrate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hypb {

namespace {

bool adjacentLetters(int a, int b, int p) {
  int d = (a - b + p) % p;
  return d == 1 || d == p - 1;
}

bool hasFactor(const std::vector<int>& w, const std::vector<int>& f) {
  if (f.size() > w.size()) return false;
  for (std::size_t i = 0; i + f.size() <= w.size(); ++i)
    if (std::equal(f.begin(), f.end(), w.begin() + i)) return true;
  return false;
}

bool containsForbidden(const std::vector<int>& w, const ForbiddenLanguage& f) {
  for (const auto& fw : f.forbidden)
    if (hasFactor(w, fw)) return true;
  return false;
}

}  // namespace

ForbiddenLanguage forbidden_set(TilingParams params, RuleSet rule) {
  params.validate();
  const int p = params.p, q = params.q;
  if ((rule == RuleSet::E) != (q % 2 == 0))
    throw param_error("rule parity does not match q");
  int altLen = 0;
  switch (rule) {
    case RuleSet::E: altLen = q / 2 + 1; break;
    case RuleSet::OUpper: altLen = (q + 3) / 2; break;
    case RuleSet::OLower: altLen = (q - 1) / 2; break;
  }
  ForbiddenLanguage f;
  f.p = p;
  for (int k = 1; k <= p; ++k) f.forbidden.push_back({k, k});
  for (int k = 1; k <= p; ++k) {
    int k2 = k % p + 1;  // cyclically adjacent pair, both phases
    for (auto [a, b] : {std::pair{k, k2}, std::pair{k2, k}}) {
      std::vector<int> w;
      for (int t = 0; t < altLen; ++t) w.push_back(t % 2 == 0 ? a : b);
      f.forbidden.push_back(std::move(w));
    }
  }
  std::sort(f.forbidden.begin(), f.forbidden.end());
  f.forbidden.erase(std::unique(f.forbidden.begin(), f.forbidden.end()), f.forbidden.end());
  for (const auto& w : f.forbidden) f.maxLen = std::max(f.maxLen, (int)w.size());
  return f;
}

std::optional<int> DeBruijnGraph::vertexIndex(const std::vector<int>& w) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
  if (it == vertices.end() || *it != w) return std::nullopt;
  return (int)(it - vertices.begin());
}

bool DeBruijnGraph::hasEdge(const std::vector<int>& u, const std::vector<int>& v) const {
  auto iu = vertexIndex(u), iv = vertexIndex(v);
  if (!iu || !iv) return false;
  return std::binary_search(adj[*iu].begin(), adj[*iu].end(), *iv);
}

DeBruijnGraph debruijn(const ForbiddenLanguage& f) {
  if (f.maxLen < 2) throw param_error("de Bruijn construction needs forbidden words of length >= 2");
  DeBruijnGraph g;
  g.p = f.p;
  g.m = f.maxLen;
  const int len = g.m - 1;

  std::vector<int> w;
  std::function<void()> gen = [&] {
    if ((int)w.size() == len) {
      g.vertices.push_back(w);
      return;
    }
    for (int a = 1; a <= f.p; ++a) {
      w.push_back(a);
      if (!containsForbidden(w, f)) gen();  // factor-free prefixes only
      w.pop_back();
    }
  };
  gen();

  g.adj.resize(g.vertices.size());
  std::vector<int> amalgam(g.m);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& u = g.vertices[i];
    std::copy(u.begin(), u.end(), amalgam.begin());
    for (int a = 1; a <= f.p; ++a) {
      amalgam[g.m - 1] = a;
      if (containsForbidden(amalgam, f)) continue;
      std::vector<int> v(amalgam.begin() + 1, amalgam.end());
      if (auto j = g.vertexIndex(v)) g.adj[i].push_back(*j);
    }
    std::sort(g.adj[i].begin(), g.adj[i].end());
  }
  return g;
}

namespace {

// Tarjan strongly connected components
std::vector<std::vector<int>> sccs(const std::vector<std::vector<int>>& adj) {
  const int n = (int)adj.size();
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> onStack(n, false);
  std::vector<std::vector<int>> out;
  int counter = 0;

  struct Frame {
    int v;
    std::size_t next = 0;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    onStack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        int w = adj[f.v][f.next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          onStack[w] = true;
          call.push_back({w});
        } else if (onStack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            onStack[w] = false;
            comp.push_back(w);
          } while (w != f.v);
          out.push_back(std::move(comp));
        }
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return out;
}

}  // namespace

double perron_rate(const DeBruijnGraph& g, double tol) {
  if (tol <= 0) throw param_error("tol must be > 0");
  if (g.vertices.empty()) return 0.0;
  double best = 0.0;
  for (const auto& comp : sccs(g.adj)) {
    if (comp.size() == 1) {
      int v = comp[0];
      bool selfLoop = std::binary_search(g.adj[v].begin(), g.adj[v].end(), v);
      best = std::max(best, selfLoop ? 1.0 : 0.0);
      continue;
    }
    std::vector<int> local(g.vertices.size(), -1);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = (int)i;
    std::vector<std::vector<int>> a(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int w : g.adj[comp[i]])
        if (local[w] >= 0) a[i].push_back(local[w]);

    // power iteration on A+I (primitive for an irreducible component)
    std::vector<double> x(comp.size(), 1.0), y(comp.size());
    double lo = 0, hi = 0;
    bool converged = false;
    for (int it = 0; it < 1000000; ++it) {
      double norm = 0;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        double s = x[i];
        for (int j : a[i]) s += x[j];
        y[i] = s;
        norm = std::max(norm, s);
      }
      lo = 1e300;
      hi = 0;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        double r = y[i] / x[i];  // Collatz-Wielandt quotient for A+I
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      for (std::size_t i = 0; i < comp.size(); ++i) x[i] = y[i] / norm;
      if (hi - lo < tol) {
        converged = true;
        break;
      }
    }
    if (!converged) throw numeric_error("power iteration did not converge");
    best = std::max(best, (lo + hi) / 2 - 1.0);
  }
  return best;
}

BigInt word_count(const ForbiddenLanguage& f, int n) {
  if (n < 0) throw param_error("word length must be >= 0");
  const int prefixLen = std::min(n, f.maxLen - 1);

  // enumerate factor-free words up to the de Bruijn state length
  std::vector<std::vector<int>> states;
  std::vector<int> w;
  std::function<void()> gen = [&] {
    if ((int)w.size() == prefixLen) {
      states.push_back(w);
      return;
    }
    for (int a = 1; a <= f.p; ++a) {
      w.push_back(a);
      if (!containsForbidden(w, f)) gen();
      w.pop_back();
    }
  };
  gen();
  if (n <= f.maxLen - 1) return (BigInt)states.size();

  std::vector<BigInt> count(states.size(), 1);
  std::vector<int> ext(prefixLen + 1);
  for (int step = prefixLen; step < n; ++step) {
    std::vector<BigInt> next(states.size(), 0);
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (count[i] == 0) continue;
      std::copy(states[i].begin(), states[i].end(), ext.begin());
      for (int a = 1; a <= f.p; ++a) {
        ext[prefixLen] = a;
        if (containsForbidden(ext, f)) continue;
        std::vector<int> s(ext.begin() + 1, ext.end());
        auto it = std::lower_bound(states.begin(), states.end(), s);
        next[it - states.begin()] += count[i];
      }
    }
    count = std::move(next);
  }
  BigInt total = 0;
  for (const BigInt& c : count) total += c;
  return total;
}

ComplexityReport complexity_report(TilingParams params, double tol) {
  params.validate();
  ComplexityReport rep;
  rep.p = params.p;
  rep.q = params.q;
  rep.alpha = tiling_growth_rate(params, tol).alpha;
  if (params.q % 2 == 0) return rep;
  // language complexity is at least 1, so the lower rate is floored there
  // (degenerate at q = 3, where the lower language is empty)
  rep.ell = std::max(1.0, perron_rate(debruijn(forbidden_set(params, RuleSet::OLower)), tol));
  rep.upper = perron_rate(debruijn(forbidden_set(params, RuleSet::OUpper)), tol);
  rep.alphaPow = std::pow(rep.alpha, double(params.q - 1) / double(params.q + 1));
  return rep;
}

}  // namespace hypb
