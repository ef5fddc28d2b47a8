#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <deque>
#include <random>
#include <set>

#include "hypb/geometry.hpp"

using namespace hypb;

namespace {

constexpr double kPi = 3.14159265358979323846;

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

// randomized vertex-to-vertex cl/tl comparison; returns checked count
int vertexLaw(const TilingGraph& g, const DiskRealization& r, int target) {
  std::mt19937 rng(11);
  std::vector<int> vpool;
  for (int v = 0; v < g.vertexCount(); ++v)
    if (g.vertexComplete(v) && r.vertexRealized[v] && g.vertexDistance[v] <= 3) vpool.push_back(v);
  int done = 0;
  for (int attempt = 0; attempt < target * 50 && done < target; ++attempt) {
    int u = vpool[rng() % vpool.size()];
    auto distU = tileDistFrom(g, u);
    int maxTdU = 0;
    for (int t : tilesAt(g, u)) maxTdU = std::max(maxTdU, g.tileDistance[t]);
    for (int k = 0; k < 40 && done < target; ++k) {
      int v = vpool[rng() % vpool.size()];
      if (u == v) continue;
      int tl = certifiedTileLen(g, distU, maxTdU, v);
      if (tl < 0) continue;
      TraceResult res;
      try {
        res = trace_word(r, g, {r.vertexPos[u], r.vertexPos[v]});
      } catch (const std::runtime_error&) {
        continue;
      }
      ++done;
      if (g.params.q % 2 == 0) {
        CHECK(res.cl == tl + 1);
      } else {
        CHECK(res.cl >= tl + 1);
        CHECK(res.cl <= (double)(g.params.q + 1) / (g.params.q - 1) * tl + 1 + 1e-9);
      }
    }
  }
  return done;
}

}  // namespace

TEST_CASE("realization regularity") {
  auto g = build_tiling({4, 8}, 5);
  auto r = realize(g);
  // interior angles at complete vertices
  int checked = 0;
  for (int v = 0; v < g.vertexCount() && checked < 200; ++v) {
    if (!g.vertexComplete(v) || !r.vertexRealized[v]) continue;
    for (int i = 0; i < g.params.q; ++i) {
      int e1 = g.rotation[v][i], e2 = g.rotation[v][(i + 1) % g.params.q];
      double a = interior_angle(r.vertexPos[v], r.vertexPos[g.edgeOtherEnd(e1, v)],
                                r.vertexPos[g.edgeOtherEnd(e2, v)]);
      CHECK(std::abs(a - 2 * kPi / g.params.q) < 1e-9);
    }
    ++checked;
  }
  CHECK(checked > 100);
  // all edges the same hyperbolic length
  double len0 = -1;
  for (int e = 0; e < g.edgeCount(); ++e) {
    int v1 = g.edgeEnds[e][0], v2 = g.edgeEnds[e][1];
    if (!r.vertexRealized[v1] || !r.vertexRealized[v2]) continue;
    double L = hyperbolic_distance(r.vertexPos[v1], r.vertexPos[v2]);
    if (len0 < 0) len0 = L;
    CHECK(std::abs(L - len0) < 1e-9);
  }
  // every closed tile is placed; inner layers carry the exact counts
  for (int n = 0; n <= 4; ++n) {
    int closed = 0, placed = 0;
    for (int t = 0; t < g.tileCount(); ++t)
      if (g.tileDistance[t] == n) {
        ++closed;
        if (r.tileRealized[t]) ++placed;
      }
    CHECK(placed == closed);
    if (n <= g.trustedTileDepth + 1) CHECK(placed == g.tileLayerCounts[n]);
  }
}

TEST_CASE("traced tile-center segments are minimal paths") {
  auto g = build_tiling({4, 8}, 6);
  auto r = realize(g);
  auto egc = edge_geodesic_classes(g);
  std::mt19937 rng(7);
  std::vector<int> pool;
  for (int t = 0; t < g.tileCount(); ++t)
    if (g.tileDistance[t] >= 0 && g.tileDistance[t] <= g.trustedTileDepth / 2 + 1) pool.push_back(t);
  int done = 0;
  while (done < 100) {
    int A = pool[rng() % pool.size()], B = pool[rng() % pool.size()];
    if (A == B) continue;
    int d;
    try {
      d = tiling_distance(g, A, B);
    } catch (const depth_error&) {
      continue;
    }
    auto res = trace_word(r, g, {r.tileCenter[A], r.tileCenter[B]});
    CHECK(res.path.tiles.front() == A);
    CHECK(res.path.tiles.back() == B);
    validate_path(g, res.path);
    CHECK(res.path.length() == d);
    CHECK(is_minimal(g, egc, res.path).minimal);
    // word of the traced path stays in the class of the path word (coherence)
    auto cls = word_class(res.word);
    CHECK(cls.classAdmissible);
    ++done;
  }
}

TEST_CASE("trace edge cases") {
  auto g = build_tiling({4, 8}, 4);
  auto r = realize(g);
  // segment interior to one tile: empty word
  Complex c = r.tileCenter[g.baseTile];
  auto res = trace_word(r, g, {c + Complex(0.01, 0.0), c + Complex(0.0, 0.01)});
  CHECK(res.word.letters.empty());
  CHECK(res.cl == 1);
  // coincident endpoints rejected
  CHECK_THROWS_AS(trace_word(r, g, {c, c}), param_error);
  // endpoint on an edge rejected with a reposition hint
  int v1 = g.tileVertices[g.baseTile][0], v2 = g.tileVertices[g.baseTile][1];
  Complex z1 = r.vertexPos[v1], z2 = r.vertexPos[v2];
  Complex w = (z2 - z1) / (1.0 - std::conj(z1) * z2);
  Complex m = (w / std::abs(w)) * std::tanh(std::atanh(std::abs(w)) / 2);
  Complex mid = (m + z1) / (1.0 + std::conj(z1) * m);
  CHECK_THROWS_AS(trace_word(r, g, {mid, c}), param_error);
}

TEST_CASE("vertex-to-vertex laws") {
  {
    auto g = build_tiling({4, 6}, 7);
    auto r = realize(g);
    CHECK(vertexLaw(g, r, 150) >= 100);
  }
  {
    auto g = build_tiling({4, 7}, 6);
    auto r = realize(g);
    CHECK(vertexLaw(g, r, 150) >= 100);
  }
}

TEST_CASE("word class witnesses") {
  TilingParams P{4, 8};
  auto g = build_tiling(P, 5);
  auto r = realize(g);

  auto cls = word_class(parse_word(P, "1212"));
  auto wit = realize_word_class(r, g, cls);
  CHECK(wit.admissible);
  REQUIRE(wit.segment.has_value());
  bool inClass = false;
  for (const auto& m : cls.members) inClass = inClass || m == *wit.traced;
  CHECK(inClass);

  auto bad = word_class(parse_word(P, "12124141"));
  auto refuted = realize_word_class(r, g, bad);
  CHECK(!refuted.admissible);
  CHECK(!refuted.segment.has_value());

  // length-1 class: straight segment into the neighbor
  auto one = word_class(parse_word(P, "1"));
  auto w1 = realize_word_class(r, g, one);
  REQUIRE(w1.segment.has_value());
  CHECK(w1.traced->letters == std::vector<int>{1});
}

TEST_CASE("diagonal census") {
  TilingParams P{4, 8};
  auto g = build_tiling(P, 5);
  auto r = realize(g);
  int v0 = g.tileVertices[g.baseTile][0];
  auto c = diagonal_census(r, g, v0, 6);
  CHECK(c.gd[0] == 4);
  CHECK(c.gd[1] == P.p * (P.p - 3) / 2);
  CHECK(c.excluded == 0);
  CHECK(c.trustedK >= 3);
  // primitive counts dominate as k grows
  CHECK(c.nClPrim[c.trustedK] * 10 >= c.nCl[c.trustedK] * 9);
  // formula arithmetic and telescoping
  BigInt p1 = 4, p2 = 12;
  CHECK(complexity_p_n(c, p1, p2, 1) == 2 * p1 + (p2 - p1));
  for (int n = 1; n < c.trustedK; ++n) {
    BigInt inc = p2 - p1;
    for (int j = 3; j <= n + 1; ++j) inc += c.gd[j];
    CHECK(complexity_p_n(c, p1, p2, n + 1) - complexity_p_n(c, p1, p2, n) == inc);
  }
  CHECK_THROWS_AS(complexity_p_n(c, p1, p2, c.trustedK + 1), depth_error);
}

TEST_CASE("appendix lemma checks") {
  {
    auto g = build_tiling({3, 7}, 8);
    auto r = realize(g);
    auto rep = check_appendix_lemmas(r, g, 150, 1);
    CHECK(rep.zigzagsChecked > 0);
    CHECK(rep.maxMidpointDeviation < 1e-8);
    CHECK(rep.segmentsChecked > 50);
    CHECK(rep.nonConsecutiveHits == 0);
  }
  {
    auto g = build_tiling({4, 8}, 5);
    auto r = realize(g);
    auto rep = check_appendix_lemmas(r, g, 100, 1);
    CHECK(rep.pairsChecked > 0);
    CHECK(rep.intersectingPairs == 0);
  }
}

TEST_CASE("svg rendering") {
  auto g = build_tiling({4, 8}, 3);
  auto r = realize(g);
  auto svg = render_svg(r, g);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  GeodesicSegment seg{r.tileCenter[g.baseTile] + Complex(0.01, 0.02), Complex(0.3, 0.1)};
  auto svg2 = render_svg(r, g, &seg);
  CHECK(svg2.size() > svg.size());
}
