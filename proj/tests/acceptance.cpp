// End-to-end acceptance checks; prints one PASS/FAIL line per criterion and
// exits nonzero if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <random>
#include <set>
#include <vector>

#include "hypb/geometry.hpp"
#include "hypb/growth.hpp"
#include "hypb/langrate.hpp"
#include "hypb/paths.hpp"
#include "hypb/words.hpp"

using namespace hypb;

namespace {

int failures = 0;

void report(bool ok, const char* what) {
  std::printf("%s: %s\n", ok ? "PASS" : "FAIL", what);
  if (!ok) ++failures;
  std::fflush(stdout);
}

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct EvenRow {
  int p, q;
  double alpha;
};
const EvenRow kEvenRows[] = {
    {3, 8, 1.72208380573904}, {4, 6, 2.61803398874989}, {4, 8, 2.89005363826396},
    {5, 4, 2.61803398874989}, {5, 6, 3.73205080756888}, {5, 8, 3.93869094197994},
    {6, 4, 3.73205080756888}, {6, 6, 4.79128784747792}, {6, 8, 4.96069291859917},
    {7, 4, 4.79128784747792}, {7, 6, 5.82842712474619}, {7, 8, 5.97262435800721},
    {8, 4, 5.82842712474619}, {8, 6, 6.85410196624968}, {8, 8, 6.97983577921557},
};

struct OddRow {
  int p, q;
  double ell, alphaPow, alpha, upper;
};
const OddRow kOddRows[] = {
    {3, 7, 1.00000000000000, 1.39320015609277, 1.55603019132268, 1.83928675521416},
    {3, 9, 1.61803398874989, 1.62242661883033, 1.83107582510231, 1.92756197548293},
    {4, 5, 1.00000000000000, 1.74071386619816, 2.29663026288654, 2.83117720720834},
    {4, 7, 2.41421356237309, 2.17799288640350, 2.82320193241387, 2.94771158684464},
    {4, 9, 2.83117720720834, 2.37412444801062, 2.94699466977899, 2.98314000701146},
    {5, 5, 2.00000000000000, 2.30788179437972, 3.50606805595024, 3.90057187491196},
    {5, 7, 3.56155281280883, 2.77414842757632, 3.89797986736932, 3.97608928489373},
    {5, 9, 3.90057187491196, 3.01683949575744, 3.97594397745373, 3.99410304410951},
    {6, 5, 3.00000000000000, 2.77055394307089, 4.61158178930871, 4.93394490940640},
    {6, 7, 4.64575131106459, 3.30995335049871, 4.93282638839610, 4.98708779528314},
    {6, 9, 4.93394490940640, 3.61638522480061, 4.98704581211217, 4.99743424469419},
    {7, 3, 1.00000000000000, 1.61803398874989, 2.61803398874989, 5.70156211871642},
    {7, 5, 4.00000000000000, 3.18270263144865, 5.67798309021366, 5.95281778935296},
    {7, 7, 5.70156211871642, 3.81075501946865, 5.95225287964244, 5.99224996607951},
};

std::vector<int> tilesAt(const TilingGraph& g, int v) {
  std::set<int> s;
  for (int e : g.rotation[v])
    for (int t : g.edgeTiles[e])
      if (t >= 0) s.insert(t);
  return {s.begin(), s.end()};
}

std::vector<int> tileDistFrom(const TilingGraph& g, int u) {
  std::vector<int> dist(g.tileCount(), -1);
  std::deque<int> q;
  for (int t : tilesAt(g, u)) {
    dist[t] = 0;
    q.push_back(t);
  }
  while (!q.empty()) {
    int t = q.front();
    q.pop_front();
    for (int e : g.tileEdges[t]) {
      int w = g.tileAcross(e, t);
      if (w >= 0 && dist[w] < 0) {
        dist[w] = dist[t] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

int certifiedTileLen(const TilingGraph& g, const std::vector<int>& distU, int maxTdU, int v) {
  int best = -1, bestB = -1;
  for (int B : tilesAt(g, v))
    if (distU[B] >= 0 && (best < 0 || distU[B] < best)) best = distU[B], bestB = B;
  if (best < 0) return -1;
  if ((maxTdU + g.tileDistance[bestB] + best) / 2 > g.trustedTileDepth) return -1;
  return best;
}

// tl-vs-cl comparison on random certified vertex pairs; returns {done, violations}
std::pair<int, int> vertexLaw(const TilingGraph& g, const DiskRealization& r, int target) {
  std::mt19937 rng(11);
  std::vector<int> vpool;
  for (int v = 0; v < g.vertexCount(); ++v)
    if (g.vertexComplete(v) && r.vertexRealized[v] && g.vertexDistance[v] <= 3) vpool.push_back(v);
  int done = 0, bad = 0;
  std::set<std::pair<int, int>> seen;
  for (int attempt = 0; attempt < target * 50 && done < target; ++attempt) {
    int u = vpool[rng() % vpool.size()];
    auto distU = tileDistFrom(g, u);
    int maxTdU = 0;
    for (int t : tilesAt(g, u)) maxTdU = std::max(maxTdU, g.tileDistance[t]);
    for (int k = 0; k < 60 && done < target; ++k) {
      int v = vpool[rng() % vpool.size()];
      if (u == v || seen.count({u, v})) continue;
      int tl = certifiedTileLen(g, distU, maxTdU, v);
      if (tl < 0) continue;
      TraceResult res;
      try {
        res = trace_word(r, g, {r.vertexPos[u], r.vertexPos[v]});
      } catch (const std::runtime_error&) {
        continue;
      }
      seen.insert({u, v});
      ++done;
      bool good;
      if (g.params.q % 2 == 0) {
        good = res.cl == tl + 1;
      } else {
        good = res.cl >= tl + 1 &&
               res.cl <= (double)(g.params.q + 1) / (g.params.q - 1) * tl + 1 + 1e-9;
      }
      if (!good) ++bad;
    }
  }
  return {done, bad};
}

}  // namespace

int main() {
  // 1: q-even growth rates against the frozen 15-row table
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (const auto& row : kEvenRows)
      ok = ok && std::abs(tiling_growth_rate({row.p, row.q}).alpha - row.alpha) < 1e-10;
    ok = ok && seconds(t0) < 5.0;
    report(ok, "q-even growth rates: all 15 table rows within 1e-10, under 5s");
  }

  // 2: q-odd four-column table (ell, alpha^((q-1)/(q+1)), alpha, u)
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (const auto& row : kOddRows) {
      auto rep = complexity_report({row.p, row.q});
      ok = ok && rep.ell && rep.alphaPow && rep.upper;
      ok = ok && std::abs(*rep.ell - row.ell) < 1e-10;
      ok = ok && std::abs(*rep.alphaPow - row.alphaPow) < 1e-10;
      ok = ok && std::abs(rep.alpha - row.alpha) < 1e-10;
      ok = ok && std::abs(*rep.upper - row.upper) < 1e-10;
    }
    ok = ok && seconds(t0) < 60.0;
    report(ok, "q-odd bound table: all 14 rows, all four columns within 1e-10, under 60s");
  }

  // 3: (3,7) upper-language transfer graph and both language rates
  {
    auto f = forbidden_set({3, 7}, RuleSet::OUpper);
    auto g = debruijn(f);
    bool ok = g.vertices.size() == 24;
    ok = ok && g.hasEdge({1, 2, 1, 2}, {2, 1, 2, 3});
    ok = ok && !g.hasEdge({1, 2, 1, 2}, {2, 1, 2, 1});
    ok = ok && std::abs(perron_rate(g) - 1.83928675521416) < 1e-10;
    double lo = perron_rate(debruijn(forbidden_set({3, 7}, RuleSet::OLower)));
    ok = ok && std::abs(lo - 1.0) < 1e-10;
    report(ok, "(3,7) transfer graph: 24 vertices, edge membership, rates 1.83928... and 1");
  }

  // 4: series coefficients equal BFS layer counts for every small hyperbolic pair
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int p = 3; p <= 10; ++p)
      for (int q = 3; q <= 10; ++q) {
        TilingParams P{p, q};
        if (!P.hyperbolic()) continue;
        int nMax = (p <= 6 && q <= 6) ? 8 : 6;
        auto coeff = series_coefficients(growth_series(P), nMax);
        auto layers = tile_layer_counts(P, nMax);
        for (int n = 0; n <= nMax; ++n) ok = ok && coeff[n] == BigInt(layers[n]);
      }
    ok = ok && seconds(t0) < 120.0;
    report(ok, "series coefficients equal BFS tile counts for all hyperbolic p,q <= 10");
  }

  // 5: admissible-class counts equal tile counts
  {
    bool ok = true;
    for (TilingParams P :
         {TilingParams{4, 8}, TilingParams{3, 8}, TilingParams{5, 4}, TilingParams{4, 6}}) {
      auto layers = tile_layer_counts(P, 6);
      for (int n = 0; n <= 6; ++n)
        ok = ok && enumerate_admissible_classes(P, n).count == layers[n];
    }
    report(ok, "admissible word classes biject with tiles at distance n, n <= 6");
  }

  // 6: separating-class counts give the tiling distance, both parities
  {
    int done = 0, bad = 0;
    {
      auto g = build_tiling({4, 6}, 9);
      auto egc = edge_geodesic_classes(g);
      std::mt19937 rng(5);
      std::vector<int> pool;
      for (int t = 0; t < g.tileCount(); ++t)
        if (g.tileDistance[t] >= 0 && g.tileDistance[t] <= g.trustedTileDepth / 2 + 1)
          pool.push_back(t);
      while (done < 1000) {
        int A = pool[rng() % pool.size()], B = pool[rng() % pool.size()];
        if (A == B) continue;
        int d;
        try {
          d = tiling_distance(g, A, B);
        } catch (const depth_error&) {
          continue;
        }
        ++done;
        if ((int)separating_classes(g, egc, A, B).size() != d) ++bad;
      }
    }
    report(done >= 1000 && bad == 0, "q even: 1000 tile pairs, distance = separating classes");
    done = bad = 0;
    {
      auto g = build_tiling({3, 7}, 9);
      auto zz = zigzag_classes(g);
      std::mt19937 rng(6);
      std::vector<int> pool;
      for (int t = 0; t < g.tileCount(); ++t)
        if (g.tileDistance[t] >= 0 && g.tileDistance[t] <= g.trustedTileDepth / 2 + 1)
          pool.push_back(t);
      while (done < 1000) {
        int A = pool[rng() % pool.size()], B = pool[rng() % pool.size()];
        if (A == B) continue;
        int d;
        try {
          d = tiling_distance(g, A, B);
        } catch (const depth_error&) {
          continue;
        }
        ++done;
        if ((int)separating_classes(g, zz, A, B).size() != 2 * d) ++bad;
      }
    }
    report(done >= 1000 && bad == 0, "q odd: 1000 tile pairs, 2 x distance = separating zigzags");
  }

  // 7: traced vertex-to-vertex combinatorial lengths, both parities + sharp case
  {
    auto g = build_tiling({4, 6}, 8);
    auto r = realize(g);
    auto [done, bad] = vertexLaw(g, r, 1000);
    report(done >= 1000 && bad == 0, "q even: 1000 vertex segments, cl = tl + 1");
  }
  {
    TilingParams P{4, 7};
    auto g = build_tiling(P, 7);
    auto r = realize(g);
    auto [done, bad] = vertexLaw(g, r, 1000);
    report(done >= 1000 && bad == 0,
           "q odd: 1000 vertex segments, tl + 1 <= cl <= (q+1)/(q-1) tl + 1");

    // sharp case: segment hugging the long side of a vertex fan
    bool sharp = false;
    int w = g.tileVertices[g.baseTile][0];
    std::vector<int> fan;
    for (int i = 0; i < P.q; ++i) {
      int e1 = g.rotation[w][i], e2 = g.rotation[w][(i + 1) % P.q];
      for (int x : g.edgeTiles[e1])
        for (int y : g.edgeTiles[e2])
          if (x >= 0 && x == y) fan.push_back(x);
    }
    for (int off = 0; off < P.q && !sharp; ++off) {
      int A = fan[off], B = fan[(off + (P.q + 1) / 2) % P.q];
      int tl;
      try {
        tl = tiling_distance(g, A, B);
      } catch (const depth_error&) {
        continue;
      }
      if (tl != (P.q - 1) / 2) continue;
      for (int fa = 1; fa <= 6 && !sharp; ++fa)
        for (int fb = 1; fb <= 6 && !sharp; ++fb) {
          Complex za = r.vertexPos[w] + 0.05 * fa * (r.tileCenter[A] - r.vertexPos[w]);
          Complex zb = r.vertexPos[w] + 0.05 * fb * (r.tileCenter[B] - r.vertexPos[w]);
          TraceResult res;
          try {
            res = trace_word(r, g, {za, zb});
          } catch (const std::runtime_error&) {
            continue;
          }
          if (res.path.tiles.front() == A && res.path.tiles.back() == B &&
              res.cl == (P.q + 1) / 2 + 1)
            sharp = true;
        }
    }
    report(sharp, "(4,7) sharp case exhibited: cl = (q+1)/2 + 1 at tl = (q-1)/2");
  }

  // 8: word-class checks at the (4,8)/(8,4) scale (side labels 3 and 4 swapped
  // relative to the reference pictures; see the repo notes)
  {
    auto cls = word_class(parse_word({4, 8}, "12124141"));
    bool ok = !cls.classAdmissible;
    bool viaMember = false;
    for (const auto& m : cls.members)
      if (m == parse_word({4, 8}, "12121414"))
        viaMember = !check_admissible(m, RuleSet::E).admissible;
    ok = ok && viaMember;
    report(ok, "(4,8) class of 12124141 inadmissible via equivalent member 12121414");

    auto cls2 = word_class(parse_word({8, 4}, "12124141"));
    report(!cls2.classAdmissible, "(8,4) class of 12124141 inadmissible");

    TilingParams P{4, 8};
    auto g = build_tiling(P, 5);
    auto r = realize(g);
    auto target = word_class(parse_word(P, "1212"));
    // jittered segment endpoints land on either side of the traversed vertex,
    // so both phases of the class appear among the traced words
    auto path = word_to_path(target.canonical, g);
    int A = path.tiles.front(), B = path.tiles.back();
    std::set<std::vector<int>> found;
    std::mt19937 rng(99);
    for (int attempt = 0; attempt < 2000 && found.size() < 2; ++attempt) {
      Complex za = r.tileCenter[A], zb = r.tileCenter[B];
      double fa = 0.8 * (rng() % 1000) / 1000.0, fb = 0.8 * (rng() % 1000) / 1000.0;
      za += fa * (r.vertexPos[g.tileVertices[A][rng() % P.p]] - za);
      zb += fb * (r.vertexPos[g.tileVertices[B][rng() % P.p]] - zb);
      TraceResult res;
      try {
        res = trace_word(r, g, {za, zb});
      } catch (const std::runtime_error&) {
        continue;
      }
      if (res.path.tiles.front() != A || res.path.tiles.back() != B) continue;
      for (const auto& m : target.members)
        if (m == res.word) found.insert(res.word.letters);
    }
    bool both = found.count({1, 2, 1, 2}) && found.count({2, 1, 2, 1});
    report(both, "(4,8) class {1212, 2121}: traced geodesic witnesses found for both members");
  }

  // 9: realized-geometry lemmas
  {
    auto g = build_tiling({3, 7}, 9);
    auto r = realize(g);
    auto rep = check_appendix_lemmas(r, g, 300, 1);
    bool ok = rep.zigzagsChecked > 0 && rep.maxMidpointDeviation < 1e-8;
    ok = ok && rep.segmentsChecked > 100 && rep.nonConsecutiveHits == 0;
    report(ok, "q odd: zigzag midpoints collinear < 1e-8; crossings consecutive, zero gaps");

    bool evenOk = true;
    for (TilingParams P : {TilingParams{4, 8}, TilingParams{4, 6}, TilingParams{5, 4}}) {
      auto ge = build_tiling(P, 5);
      auto re = realize(ge);
      auto r2 = check_appendix_lemmas(re, ge, 200, 1);
      evenOk = evenOk && r2.pairsChecked > 0 && r2.intersectingPairs == 0;
    }
    report(evenOk, "q even: extended edge geodesics of one tile never meet, depth 5");
  }

  // 10: asymptotics at desk scale: ratio convergence and language-count bound
  {
    bool ok = true;
    for (TilingParams P : {TilingParams{4, 8}, TilingParams{3, 7}, TilingParams{5, 5}}) {
      auto coeff = series_coefficients(growth_series(P), 41);
      double ratio = coeff[41].convert_to<double>() / coeff[40].convert_to<double>();
      ok = ok && std::abs(ratio - tiling_growth_rate(P).alpha) < 1e-6;
    }
    for (TilingParams P : {TilingParams{4, 8}, TilingParams{4, 6}}) {
      auto f = forbidden_set(P, RuleSet::E);
      auto layers = tile_layer_counts(P, 8);
      for (int n = 0; n <= 8; ++n) ok = ok && BigInt(layers[n]) <= word_count(f, n);
    }
    report(ok, "ratio N(41)/N(40) within 1e-6 of alpha; N_td(n) <= even-rule word count");
  }

  std::printf("%s (%d failing)\n", failures ? "ACCEPTANCE FAIL" : "ACCEPTANCE PASS", failures);
  return failures ? 1 : 0;
}
