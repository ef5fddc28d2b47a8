#include "hypb/paths.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace hypb {

void validate_path(const TilingGraph& g, const TilingPath& path) {
  if (path.tiles.empty()) throw param_error("path needs at least one tile");
  if (path.edges.size() + 1 != path.tiles.size())
    throw param_error("path needs |tiles| = |edges| + 1");
  for (std::size_t k = 0; k < path.edges.size(); ++k) {
    int e = path.edges[k];
    if (e < 0 || e >= g.edgeCount()) throw param_error("path edge out of range");
    int a = g.edgeTiles[e][0], b = g.edgeTiles[e][1];
    if (!((a == path.tiles[k] && b == path.tiles[k + 1]) ||
          (b == path.tiles[k] && a == path.tiles[k + 1])))
      throw param_error("consecutive path tiles do not share the recorded edge");
  }
}

namespace {

// BFS over closed tiles; parent[t] = edge used to reach t, or -1
std::vector<int> bfsParents(const TilingGraph& g, int from, int to, int* distOut) {
  std::vector<int> dist(g.tileCount(), -1), parent(g.tileCount(), -1);
  std::deque<int> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    if (t == to) break;
    for (int e : g.tileEdges[t]) {
      int u = g.tileAcross(e, t);
      if (u >= 0 && dist[u] < 0) {
        dist[u] = dist[t] + 1;
        parent[u] = e;
        queue.push_back(u);
      }
    }
  }
  *distOut = dist[to];
  return parent;
}

TilingPath reconstruct(const TilingGraph& g, const std::vector<int>& parent, int from, int to) {
  TilingPath path;
  int t = to;
  while (t != from) {
    int e = parent[t];
    path.tiles.push_back(t);
    path.edges.push_back(e);
    t = g.tileAcross(e, t);
  }
  path.tiles.push_back(from);
  std::reverse(path.tiles.begin(), path.tiles.end());
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

void checkTile(const TilingGraph& g, int t) {
  if (t < 0 || t >= g.tileCount()) throw param_error("tile id out of range");
}

}  // namespace

int tiling_distance(const TilingGraph& g, int A, int B) {
  checkTile(g, A);
  checkTile(g, B);
  int d = -1;
  bfsParents(g, A, B, &d);
  if (d < 0) throw depth_error("tiles not connected within the generated region");
  // a tile X on a true shortest path with td(A,X) = k satisfies
  // td(base,X) <= min(td(A) + k, td(B) + d - k) <= (td(A) + td(B) + d) / 2
  int reach = (g.tileDistance[A] + g.tileDistance[B] + d) / 2;
  if (reach > g.trustedTileDepth)
    throw depth_error("tiling distance not certified at this depth");
  return d;
}

std::map<int, int> crossing_profile(const TilingPath& path, const EdgeGeodesicClasses& egc) {
  std::map<int, int> prof;
  for (int e : path.edges) ++prof[egc.classOf[e]];
  return prof;
}

std::map<int, int> crossing_profile(const TilingPath& path, const ZigzagClasses& zz) {
  std::map<int, int> prof;
  for (int e : path.edges) {
    ++prof[zz.zigzagsOf[e][0]];
    ++prof[zz.zigzagsOf[e][1]];
  }
  return prof;
}

namespace {

template <typename Classes>
MinimalityReport minimalityImpl(const TilingGraph& g, const Classes& cls, const TilingPath& path) {
  validate_path(g, path);
  MinimalityReport rep;
  rep.length = path.length();
  for (auto [cid, count] : crossing_profile(path, cls)) {
    if (count > 1 && !rep.doubledClass) rep.doubledClass = cid;
  }
  try {
    rep.distance = tiling_distance(g, path.tiles.front(), path.tiles.back());
  } catch (const depth_error&) {
    rep.distance = -1;
  }
  rep.minimal = !rep.doubledClass.has_value();
  return rep;
}

}  // namespace

MinimalityReport is_minimal(const TilingGraph& g, const EdgeGeodesicClasses& egc,
                            const TilingPath& path) {
  if (g.params.q % 2 != 0) throw param_error("edge-geodesic minimality needs q even");
  return minimalityImpl(g, egc, path);
}

MinimalityReport is_minimal(const TilingGraph& g, const ZigzagClasses& zz,
                            const TilingPath& path) {
  if (g.params.q % 2 == 0) throw param_error("zigzag minimality needs q odd");
  return minimalityImpl(g, zz, path);
}

namespace {

// crossing parity along any connecting path; well-defined because every class
// chain runs frontier-to-frontier through the simply connected region
template <typename Classes>
std::set<int> separatingImpl(const TilingGraph& g, const Classes& cls, int A, int B) {
  checkTile(g, A);
  checkTile(g, B);
  int d = -1;
  auto parent = bfsParents(g, A, B, &d);
  if (d < 0) throw depth_error("tiles not connected within the generated region");
  TilingPath path = (A == B) ? TilingPath{{A}, {}} : reconstruct(g, parent, A, B);
  std::set<int> odd;
  for (auto [cid, count] : crossing_profile(path, cls))
    if (count % 2 == 1) odd.insert(cid);
  return odd;
}

}  // namespace

std::set<int> separating_classes(const TilingGraph& g, const EdgeGeodesicClasses& egc, int A,
                                 int B) {
  if (g.params.q % 2 != 0) throw param_error("edge-geodesic separation needs q even");
  return separatingImpl(g, egc, A, B);
}

std::set<int> separating_classes(const TilingGraph& g, const ZigzagClasses& zz, int A, int B) {
  if (g.params.q % 2 == 0) throw param_error("zigzag separation needs q odd");
  return separatingImpl(g, zz, A, B);
}

namespace {

struct Mirror {
  int image;
  int i0, j0;  // edge index correspondence: (i0 + s) in source <-> (j0 - s) in image
};

int edgeIndexIn(const TilingGraph& g, int t, int e) {
  const auto& edges = g.tileEdges[t];
  for (int k = 0; k < (int)edges.size(); ++k)
    if (edges[k] == e) return k;
  throw numeric_error("edge not on tile");
}

// reflection of the generated region across the chain of one class, as a
// tile-to-tile map grown by BFS from the tile pairs flanking chain edges
std::unordered_map<int, Mirror> reflectionAcross(const TilingGraph& g,
                                                 const std::vector<int>& chain) {
  const int p = g.params.p;
  std::unordered_map<int, Mirror> sigma;
  std::deque<int> queue;
  for (int e : chain) {
    int t0 = g.edgeTiles[e][0], t1 = g.edgeTiles[e][1];
    if (t0 < 0 || t1 < 0) continue;
    if (!sigma.count(t0)) {
      sigma[t0] = {t1, edgeIndexIn(g, t0, e), edgeIndexIn(g, t1, e)};
      queue.push_back(t0);
    }
    if (!sigma.count(t1)) {
      sigma[t1] = {t0, edgeIndexIn(g, t1, e), edgeIndexIn(g, t0, e)};
      queue.push_back(t1);
    }
  }
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    Mirror m = sigma.at(t);
    for (int s = 0; s < p; ++s) {
      int e = g.tileEdges[t][(m.i0 + s) % p];
      int em = g.tileEdges[m.image][((m.j0 - s) % p + p) % p];
      int u = g.tileAcross(e, t);
      int um = g.tileAcross(em, m.image);
      if (u < 0 || um < 0 || sigma.count(u)) continue;
      sigma[u] = {um, edgeIndexIn(g, u, e), edgeIndexIn(g, um, em)};
      queue.push_back(u);
    }
  }
  return sigma;
}

int sharedEdge(const TilingGraph& g, int a, int b) {
  for (int e : g.tileEdges[a])
    if (g.tileAcross(e, a) == b) return e;
  throw numeric_error("tiles are not adjacent");
}

}  // namespace

TilingPath shorten_by_reflection(const TilingGraph& g, const EdgeGeodesicClasses& egc,
                                 const TilingPath& path, int classId) {
  if (g.params.q % 2 != 0) throw param_error("reflection shortening needs q even");
  validate_path(g, path);
  std::vector<int> hits;
  for (int k = 0; k < path.length(); ++k)
    if (egc.classOf[path.edges[k]] == classId) hits.push_back(k);
  if (hits.size() < 2) throw param_error("class is not crossed twice by the path");
  const int k1 = hits[0], k2 = hits[1];

  auto sigma = reflectionAcross(g, egc.chains[classId]);
  auto mirror = [&](int t) {
    auto it = sigma.find(t);
    if (it == sigma.end()) throw depth_error("reflected tile not generated");
    return it->second.image;
  };

  std::vector<int> tiles(path.tiles.begin(), path.tiles.begin() + k1 + 1);
  for (int t = k1 + 2; t <= k2 - 1; ++t) tiles.push_back(mirror(path.tiles[t]));
  for (int t = k2 + 1; t < (int)path.tiles.size(); ++t) tiles.push_back(path.tiles[t]);

  // a backtracking double-cross (A,B,A) leaves a duplicated junction tile
  std::vector<int> merged;
  for (int t : tiles)
    if (merged.empty() || merged.back() != t) merged.push_back(t);

  TilingPath out;
  out.tiles = std::move(merged);
  for (std::size_t k = 0; k + 1 < out.tiles.size(); ++k)
    out.edges.push_back(sharedEdge(g, out.tiles[k], out.tiles[k + 1]));
  if (out.length() != path.length() - 2)
    throw numeric_error("reflection did not shorten the path by 2");
  return out;
}

bool is_fellow_traveling(const TilingGraph& g, const EdgeGeodesicClasses& egc,
                         const TilingPath& path, int classId) {
  if (g.params.q % 2 != 0) throw param_error("fellow traveling needs q even");
  validate_path(g, path);
  for (std::size_t k = 0; k + 2 < path.tiles.size(); ++k)
    if (path.tiles[k] == path.tiles[k + 2]) return false;  // backtrack
  for (int e : path.edges)
    if (egc.classOf[e] == classId) return false;  // crosses the geodesic
  std::unordered_set<int> chainVertices;
  for (int e : egc.chains[classId]) {
    chainVertices.insert(g.edgeEnds[e][0]);
    chainVertices.insert(g.edgeEnds[e][1]);
  }
  for (int t : path.tiles) {
    bool touches = false;
    for (int v : g.tileVertices[t]) touches |= chainVertices.count(v) > 0;
    if (!touches) return false;
  }
  return true;
}

}  // namespace hypb
