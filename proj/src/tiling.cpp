#include "hypb/tiling.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>

#include <nlohmann/json.hpp>

namespace hypb {

bool TilingParams::hyperbolic() const {
  if (p < 3 || q < 3) return false;
  // 1/p + 1/q < 1/2  <=>  2(p+q) < pq
  return 2 * (p + q) < p * q;
}

void TilingParams::validate() const {
  if (!hyperbolic())
    throw param_error("(" + std::to_string(p) + "," + std::to_string(q) +
                      ") is not hyperbolic: need p,q >= 3 and 1/p + 1/q < 1/2");
}

int TilingGraph::rotationIndex(int v, int e) const {
  const auto& r = rotation[v];
  for (int i = 0; i < (int)r.size(); ++i)
    if (r[i] == e) return i;
  return -1;
}

namespace {

// Construction 2.1 on a rotation system.  The frontier after each stage is a
// cyclic alternation of distance-k vertices and open faces; every open face
// keeps the ordered path of its edges from end `a` to end `b`.  Per stage each
// distance-k vertex is filled to degree q with fresh spokes, then faces with p
// edges close by merging their two fresh endpoints and (p odd) faces with p-1
// edges close with one new edge between their endpoints.
struct Builder {
  int p, q;

  std::vector<int> dist;
  std::vector<int> birthValence;
  std::vector<std::vector<int>> rot;  // ccw; gap between back() and front()
  std::vector<std::array<int, 2>> ends;
  std::vector<bool> dead;  // vertices removed by a merge

  struct OFace {
    std::vector<int> edges;  // path from a to b
    int a = -1, b = -1;
    bool closed = false;
  };
  std::vector<OFace> faces;
  std::vector<int> fLeft, fRight;  // per vertex: flanking open faces of the exterior corner

  std::vector<std::vector<int>> closedFaces;  // edge paths of closed tiles, in closing order
  std::vector<std::int64_t> layerCounts;

  int newVertex(int d) {
    dist.push_back(d);
    birthValence.push_back(0);
    rot.emplace_back();
    dead.push_back(false);
    fLeft.push_back(-1);
    fRight.push_back(-1);
    return (int)dist.size() - 1;
  }
  int newEdge(int u, int v) {
    ends.push_back({u, v});
    return (int)ends.size() - 1;
  }

  void run(int depth, int orderShift) {
    newVertex(0);
    layerCounts.assign(1, 1);
    if (depth == 0) return;

    // stage 1: q spokes around the base vertex, q open faces between them
    std::vector<int> leaf(q);
    for (int i = 0; i < q; ++i) {
      int y = newVertex(1);
      int s = newEdge(0, y);
      rot[0].push_back(s);
      rot[y].push_back(s);
      leaf[i] = y;
    }
    for (int i = 0; i < q; ++i) {
      int j = (i + 1) % q;
      OFace f;
      f.edges = {rot[leaf[i]][0], rot[leaf[j]][0]};
      f.a = leaf[i];
      f.b = leaf[j];
      faces.push_back(f);
      fRight[leaf[i]] = (int)faces.size() - 1;
      fLeft[leaf[j]] = (int)faces.size() - 1;
    }
    closeReadyFaces(1);
    recordStage(1);

    for (int k = 1; k < depth; ++k) {
      std::vector<int> frontier = frontierOrder(k, orderShift);
      for (int v : frontier) addSpokes(v, k + 1);
      closeReadyFaces(k + 1);
      recordStage(k + 1);
    }
  }

  std::vector<int> frontierOrder(int k, int orderShift) const {
    int start = -1;
    for (int v = 0; v < (int)dist.size(); ++v)
      if (!dead[v] && dist[v] == k) {
        start = v;
        break;
      }
    assert(start >= 0);
    std::vector<int> order;
    int v = start;
    do {
      order.push_back(v);
      v = faces[fRight[v]].b;
    } while (v != start);
    if (orderShift) {
      int s = ((orderShift % (int)order.size()) + (int)order.size()) % (int)order.size();
      std::rotate(order.begin(), order.begin() + s, order.end());
    }
    return order;
  }

  void addSpokes(int v, int newDist) {
    int m = q - (int)rot[v].size();
    assert(m >= 1);
    int fL = fLeft[v], fR = fRight[v];
    std::vector<int> ys(m), ss(m);
    for (int i = 0; i < m; ++i) {
      ys[i] = newVertex(newDist);
      ss[i] = newEdge(v, ys[i]);
      rot[v].push_back(ss[i]);
      rot[ys[i]].push_back(ss[i]);
    }
    faces[fL].edges.push_back(ss[0]);
    faces[fL].b = ys[0];
    faces[fR].edges.insert(faces[fR].edges.begin(), ss[m - 1]);
    faces[fR].a = ys[m - 1];
    std::vector<int> mid(m - 1);
    for (int i = 0; i + 1 < m; ++i) {
      OFace g;
      g.edges = {ss[i], ss[i + 1]};
      g.a = ys[i];
      g.b = ys[i + 1];
      faces.push_back(g);
      mid[i] = (int)faces.size() - 1;
    }
    for (int i = 0; i < m; ++i) {
      fLeft[ys[i]] = (i == 0) ? fL : mid[i - 1];
      fRight[ys[i]] = (i == m - 1) ? fR : mid[i];
    }
  }

  void closeReadyFaces(int stage) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int f = 0; f < (int)faces.size(); ++f) {
        if (faces[f].closed) continue;
        int n = (int)faces[f].edges.size();
        assert(n <= p);
        if (n == p) {
          mergeEnds(f, stage);
          progress = true;
        } else if (n == p - 1 && (p % 2 == 1)) {
          closeWithEdge(f);
          progress = true;
        }
      }
    }
  }

  void mergeEnds(int f, int stage) {
    int x = faces[f].a, y = faces[f].b;
    assert(x != y && dist[x] == stage && dist[y] == stage);
    for (int e : rot[y]) {
      if (ends[e][0] == y) ends[e][0] = x;
      if (ends[e][1] == y) ends[e][1] = x;
    }
    std::vector<int> merged = rot[y];
    merged.insert(merged.end(), rot[x].begin(), rot[x].end());
    rot[x] = std::move(merged);
    dead[y] = true;
    int fR = fRight[y];
    fRight[x] = fR;
    faces[fR].a = x;
    faces[f].closed = true;
    closedFaces.push_back(faces[f].edges);
  }

  void closeWithEdge(int f) {
    int x = faces[f].a, y = faces[f].b;
    assert(x != y);
    int e = newEdge(x, y);
    rot[x].insert(rot[x].begin(), e);
    rot[y].push_back(e);
    auto path = faces[f].edges;
    path.push_back(e);
    faces[f].closed = true;
    closedFaces.push_back(path);
    OFace g;
    g.edges = {e};
    g.a = x;
    g.b = y;
    faces.push_back(g);
    fRight[x] = (int)faces.size() - 1;
    fLeft[y] = (int)faces.size() - 1;
  }

  void recordStage(int stage) {
    std::int64_t c = 0;
    for (int v = 0; v < (int)dist.size(); ++v) {
      if (dead[v] || dist[v] != stage) continue;
      ++c;
      birthValence[v] = (int)rot[v].size();
    }
    layerCounts.push_back(c);
  }
};

// Trace the faces of the rotation system.  A directed edge (e, towards v)
// continues with the previous edge in the ccw rotation at v; at an incomplete
// vertex stepping across the gap (back -> front) is forbidden, which discards
// exactly the unfinished outer faces.
void traceTiles(TilingGraph& g) {
  int E = g.edgeCount();
  const int q = g.params.q;
  // position of each edge in the rotation of each endpoint
  std::vector<std::array<int, 2>> pos(E, {-1, -1});
  for (int v = 0; v < g.vertexCount(); ++v)
    for (int i = 0; i < (int)g.rotation[v].size(); ++i) {
      int e = g.rotation[v][i];
      pos[e][g.edgeEnds[e][0] == v ? 0 : 1] = i;
    }

  g.edgeTiles.assign(E, {-1, -1});
  std::vector<std::array<bool, 2>> seen(E, {false, false});  // directed edge used
  for (int e0 = 0; e0 < E; ++e0) {
    for (int d0 = 0; d0 < 2; ++d0) {
      if (seen[e0][d0]) continue;
      std::vector<int> edges, verts;
      int e = e0, d = d0;
      bool ok = true;
      while (true) {
        edges.push_back(e);
        int v = g.edgeEnds[e][d];  // head vertex
        verts.push_back(v);
        int deg = (int)g.rotation[v].size();
        int i = pos[e][d];
        if (i == 0 && deg < q) {  // would wrap through the frontier gap
          ok = false;
          break;
        }
        int ne = g.rotation[v][(i - 1 + deg) % deg];
        int nd = g.edgeEnds[ne][0] == v ? 1 : 0;  // directed away from v
        if (ne == e0 && nd == d0) break;
        if ((int)edges.size() > g.params.p) {
          ok = false;
          break;
        }
        e = ne;
        d = nd;
      }
      if (ok && (int)edges.size() == g.params.p) {
        int t = g.tileCount();
        for (int i = 0; i < (int)edges.size(); ++i) {
          int ee = edges[i];
          seen[ee][g.edgeEnds[ee][1] == verts[i] ? 1 : 0] = true;
          (g.edgeTiles[ee][0] == -1 ? g.edgeTiles[ee][0] : g.edgeTiles[ee][1]) = t;
        }
        g.tileEdges.push_back(edges);
        g.tileVertices.push_back(verts);
      } else {
        // mark only the starting directed edge; other orbit members retried
        seen[e0][d0] = true;
      }
    }
  }
}

void computeTileDistances(TilingGraph& g) {
  int T = g.tileCount();
  g.tileDistance.assign(T, -1);
  g.baseTile = -1;
  for (int t = 0; t < T && g.baseTile < 0; ++t)
    for (int v : g.tileVertices[t])
      if (v == 0) {
        g.baseTile = t;
        break;
      }
  if (g.baseTile < 0) {
    g.trustedTileDepth = -1;
    return;
  }
  std::queue<int> bfs;
  g.tileDistance[g.baseTile] = 0;
  bfs.push(g.baseTile);
  while (!bfs.empty()) {
    int t = bfs.front();
    bfs.pop();
    for (int e : g.tileEdges[t]) {
      int u = g.tileAcross(e, t);
      if (u >= 0 && g.tileDistance[u] < 0) {
        g.tileDistance[u] = g.tileDistance[t] + 1;
        bfs.push(u);
      }
    }
  }
  int trusted = INT32_MAX;
  for (int t = 0; t < T; ++t) {
    if (g.tileDistance[t] < 0) continue;
    bool full = true;
    for (int e : g.tileEdges[t])
      if (g.tileAcross(e, t) < 0) full = false;
    if (!full) trusted = std::min(trusted, g.tileDistance[t] - 1);
  }
  g.trustedTileDepth = (trusted == INT32_MAX) ? g.depth : trusted;
}

}  // namespace

TilingGraph build_tiling(TilingParams params, int depth, int orderShift) {
  params.validate();
  if (depth < 0) throw param_error("depth must be >= 0");

  Builder b;
  b.p = params.p;
  b.q = params.q;
  b.run(depth, orderShift);

  TilingGraph g;
  g.params = params;
  g.depth = depth;
  g.orderShift = orderShift;

  // compact merged-away vertex ids
  std::vector<int> remap(b.dist.size(), -1);
  for (int v = 0; v < (int)b.dist.size(); ++v) {
    if (b.dead[v]) continue;
    remap[v] = g.vertexCount();
    g.vertexDistance.push_back(b.dist[v]);
    g.birthValence.push_back(b.birthValence[v]);
    g.rotation.emplace_back(b.rot[v].begin(), b.rot[v].end());
  }
  g.edgeEnds.resize(b.ends.size());
  for (int e = 0; e < (int)b.ends.size(); ++e)
    g.edgeEnds[e] = {remap[b.ends[e][0]], remap[b.ends[e][1]]};

  traceTiles(g);
  assert(g.tileCount() == (int)b.closedFaces.size());
  computeTileDistances(g);
  g.tileLayerCounts = tile_layer_counts(params, depth);
  return g;
}

std::vector<std::int64_t> tile_layer_counts(TilingParams params, int nMax) {
  params.validate();
  Builder b;
  b.p = params.q;  // dual view: tiles of (p,q) are vertices of (q,p)
  b.q = params.p;
  b.run(nMax, 0);
  return b.layerCounts;
}

std::int64_t tiles_at_distance(const TilingGraph& g, int n) {
  if (n < 0) throw param_error("n must be >= 0");
  if (n >= (int)g.tileLayerCounts.size())
    throw depth_error("tiles_at_distance: n=" + std::to_string(n) +
                      " beyond generated depth " + std::to_string(g.depth));
  return g.tileLayerCounts[n];
}

EdgeLabeling label_edges(const TilingGraph& g, const std::vector<int>& baseLabels) {
  const int p = g.params.p;
  if (g.params.q % 2 != 0)
    throw param_error("label_edges: global labelling exists only for q even");
  std::vector<int> base = baseLabels;
  if (base.empty()) {
    base.resize(p);
    for (int i = 0; i < p; ++i) base[i] = i + 1;
  }
  if ((int)base.size() != p) throw param_error("label_edges: need p base labels");
  if (g.baseTile < 0) throw depth_error("label_edges: no base tile generated");

  EdgeLabeling lab;
  lab.label.assign(g.edgeCount(), 0);
  std::vector<bool> done(g.tileCount(), false);
  for (int i = 0; i < p; ++i) lab.label[g.tileEdges[g.baseTile][i]] = base[i];
  done[g.baseTile] = true;
  std::queue<int> bfs;
  bfs.push(g.baseTile);
  while (!bfs.empty()) {
    int t = bfs.front();
    bfs.pop();
    for (int e : g.tileEdges[t]) {
      int u = g.tileAcross(e, t);
      if (u < 0 || done[u]) continue;
      // reflect t's labels across e into u: walk the two boundaries in
      // opposite directions starting from the shared edge
      int i = 0, j = 0;
      while (g.tileEdges[t][i] != e) ++i;
      while (g.tileEdges[u][j] != e) ++j;
      for (int s = 0; s < p; ++s)
        lab.label[g.tileEdges[u][(j + s) % p]] = lab.label[g.tileEdges[t][(i - s + p) % p]];
      done[u] = true;
      bfs.push(u);
    }
  }
  // consistency across every generated adjacency
  for (int e = 0; e < g.edgeCount(); ++e) {
    auto [t0, t1] = g.edgeTiles[e];
    if (t0 < 0 || t1 < 0 || !done[t0] || !done[t1]) continue;
    int i = 0, j = 0;
    while (g.tileEdges[t0][i] != e) ++i;
    while (g.tileEdges[t1][j] != e) ++j;
    for (int s = 0; s < p; ++s)
      if (lab.label[g.tileEdges[t1][(j + s) % p]] != lab.label[g.tileEdges[t0][(i - s + p) % p]])
        throw numeric_error("label_edges: reflection consistency violated");
  }
  return lab;
}

EdgeGeodesicClasses edge_geodesic_classes(const TilingGraph& g) {
  if (g.params.q % 2 != 0)
    throw param_error("edge_geodesic_classes: defined only for q even");
  const int q = g.params.q;
  int E = g.edgeCount();
  // links[e] = up to two continuations (opposite edges at complete endpoints)
  std::vector<std::vector<int>> links(E);
  for (int v = 0; v < g.vertexCount(); ++v) {
    if (!g.vertexComplete(v)) continue;
    for (int i = 0; i < q / 2; ++i) {
      int a = g.rotation[v][i], b = g.rotation[v][i + q / 2];
      links[a].push_back(b);
      links[b].push_back(a);
    }
  }
  EdgeGeodesicClasses cls;
  cls.classOf.assign(E, -1);
  for (int e = 0; e < E; ++e) {
    if (cls.classOf[e] != -1) continue;
    // walk to one end of the chain
    int cur = e, prev = -1;
    while (true) {
      int nxt = -1;
      for (int c : links[cur])
        if (c != prev) nxt = c;
      if (nxt < 0 || nxt == e) break;  // chain end (or full cycle; impossible here)
      prev = cur;
      cur = nxt;
    }
    std::vector<int> chain;
    int id = (int)cls.chains.size();
    prev = -1;
    while (cur >= 0) {
      chain.push_back(cur);
      cls.classOf[cur] = id;
      int nxt = -1;
      for (int c : links[cur])
        if (c != prev && cls.classOf[c] == -1) nxt = c;
      prev = cur;
      cur = nxt;
    }
    cls.chains.push_back(std::move(chain));
  }
  return cls;
}

ZigzagClasses zigzag_classes(const TilingGraph& g) {
  if (g.params.q % 2 == 0) throw param_error("zigzag_classes: defined only for q odd");
  const int q = g.params.q;
  const int L = (q - 1) / 2, R = (q + 1) / 2;
  int E = g.edgeCount();

  std::vector<std::array<int, 2>> pos(E, {-1, -1});
  for (int v = 0; v < g.vertexCount(); ++v)
    for (int i = 0; i < (int)g.rotation[v].size(); ++i) {
      int e = g.rotation[v][i];
      pos[e][g.edgeEnds[e][0] == v ? 0 : 1] = i;
    }

  // forward ray from directed edge (e, head=end[d]) taking offset o first,
  // then alternating; stops at incomplete vertices
  auto ray = [&](int e, int d, int o, std::vector<int>& out,
                 std::set<std::array<int, 3>>& visited) {
    while (true) {
      int v = g.edgeEnds[e][d];
      if (!g.vertexComplete(v)) return;
      int i = pos[e][d];
      int ne = g.rotation[v][(i + o) % q];
      int nd = g.edgeEnds[ne][0] == v ? 1 : 0;
      std::array<int, 3> state = {ne, nd, o == L ? R : L};
      if (visited.count(state)) return;  // safety against frontier oddities
      visited.insert(state);
      out.push_back(ne);
      e = ne;
      d = nd;
      o = (o == L) ? R : L;
    }
  };

  ZigzagClasses zz;
  zz.zigzagsOf.assign(E, {-1, -1});
  // the two zigzags through e start with offset L resp. R in direction 0
  // (and with the same offset value in the reverse direction)
  std::set<std::array<int, 2>> seeded;  // (edge, first-offset) already covered
  for (int e = 0; e < E; ++e) {
    for (int o : {L, R}) {
      if (seeded.count({e, o})) continue;
      std::set<std::array<int, 3>> visited;
      std::vector<int> fwd, bwd;
      visited.insert({e, 0, o});
      visited.insert({e, 1, o});
      ray(e, 0, o, fwd, visited);
      ray(e, 1, o, bwd, visited);
      std::vector<int> chain(bwd.rbegin(), bwd.rend());
      chain.push_back(e);
      chain.insert(chain.end(), fwd.begin(), fwd.end());
      int id = (int)zz.chains.size();
      // mark every edge of the chain with the phase it carries there
      // walk forward from the start recording (edge, offset-at-entry)
      for (int idx = 0; idx < (int)chain.size(); ++idx) {
        int ee = chain[idx];
        if (zz.zigzagsOf[ee][0] == -1)
          zz.zigzagsOf[ee][0] = id;
        else if (zz.zigzagsOf[ee][0] != id && zz.zigzagsOf[ee][1] == -1)
          zz.zigzagsOf[ee][1] = id;
      }
      // phases covered by this zigzag at each edge: recompute to mark seeds
      // (phase at chain[k] alternates from the phase at e)
      {
        int phase = o;
        // find e's index
        int k0 = (int)bwd.size();
        for (int idx = k0; idx < (int)chain.size(); ++idx) {
          seeded.insert({chain[idx], phase});
          phase = (phase == L) ? R : L;
        }
        phase = o;
        for (int idx = k0; idx >= 0; --idx) {
          seeded.insert({chain[idx], phase});
          phase = (phase == L) ? R : L;
        }
      }
      zz.chains.push_back(std::move(chain));
    }
  }
  return zz;
}

VertexTileMap vertex_tile_map(const TilingGraph& g) {
  VertexTileMap m;
  const int p = g.params.p, q = g.params.q;

  // psi: tile -> its minimum-distance vertex (unique, or first of two adjacent
  // minima in the stored cyclic order)
  if (q >= 4 || p == 3) {
    m.psi.assign(g.tileCount(), -1);
    for (int t = 0; t < g.tileCount(); ++t) {
      const auto& vs = g.tileVertices[t];
      int n = (int)vs.size();
      int best = g.vertexDistance[vs[0]];
      for (int v : vs) best = std::min(best, g.vertexDistance[v]);
      std::vector<int> minIdx;
      for (int i = 0; i < n; ++i)
        if (g.vertexDistance[vs[i]] == best) minIdx.push_back(i);
      if (minIdx.size() == 1) {
        m.psi[t] = vs[minIdx[0]];
      } else {
        // two adjacent minima: pick the first of the pair in cyclic order
        int a = minIdx[0], b = minIdx[1];
        if (minIdx.size() == 2 && (b == a + 1 || (a == 0 && b == n - 1))) {
          m.psi[t] = (b == a + 1) ? vs[a] : vs[b];
        } else {
          m.psi[t] = vs[minIdx[0]];  // frontier artifact; callers stay in-depth
        }
      }
    }
  }

  // phi: vertex -> adjacent tile by the dual rule on tile distances
  if (p >= 4) {
    m.phi.assign(g.vertexCount(), -1);
    for (int v = 0; v < g.vertexCount(); ++v) {
      if (!g.vertexComplete(v)) continue;
      const int deg = (int)g.rotation[v].size();
      std::vector<int> tiles(deg, -1);
      bool all = true;
      for (int i = 0; i < deg; ++i) {
        int e = g.rotation[v][i], e2 = g.rotation[v][(i + 1) % deg];
        auto [t0, t1] = g.edgeTiles[e];
        int t = -1;
        for (int cand : {t0, t1}) {
          if (cand < 0) continue;
          for (int ee : g.tileEdges[cand])
            if (ee == e2) t = cand;
        }
        tiles[i] = t;
        if (t < 0) all = false;
      }
      if (!all) continue;
      int best = g.tileDistance[tiles[0]];
      for (int t : tiles) best = std::min(best, g.tileDistance[t]);
      std::vector<int> minIdx;
      for (int i = 0; i < deg; ++i)
        if (g.tileDistance[tiles[i]] == best) minIdx.push_back(i);
      if (minIdx.size() == 1) {
        m.phi[v] = tiles[minIdx[0]];
      } else if (minIdx.size() == 2) {
        int a = minIdx[0], b = minIdx[1];
        m.phi[v] = (b == a + 1 || (a == 0 && b == deg - 1 && b == a + deg - 1))
                       ? ((b == a + 1) ? tiles[a] : tiles[b])
                       : tiles[a];
      } else {
        m.phi[v] = tiles[minIdx[0]];
      }
    }
  }
  return m;
}

std::string graph_to_json(const TilingGraph& g) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["p"] = g.params.p;
  j["q"] = g.params.q;
  j["depth"] = g.depth;
  j["vertexDistance"] = g.vertexDistance;
  j["rotation"] = g.rotation;
  j["edges"] = g.edgeEnds;
  j["tiles"] = g.tileEdges;
  j["tileDistance"] = g.tileDistance;
  j["baseTile"] = g.baseTile;
  j["tileLayerCounts"] = g.tileLayerCounts;
  return j.dump(2);
}

}  // namespace hypb
