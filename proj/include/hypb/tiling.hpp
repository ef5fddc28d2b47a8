#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypb {

struct param_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct depth_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TilingParams {
  int p = 0;  // sides per tile
  int q = 0;  // tiles per vertex

  bool hyperbolic() const;
  void validate() const;  // throws param_error unless 1/p + 1/q < 1/2
  TilingParams dual() const { return {q, p}; }
};

// Combinatorial map of a finite chunk of the (p,q)-tiling, built layer by
// layer around a base vertex.  Rotation lists are counterclockwise; for a
// vertex that has not reached full degree q the missing edges all belong in
// the single gap between rotation.back() and rotation.front().
struct TilingGraph {
  TilingParams params;
  int depth = 0;
  int orderShift = 0;  // frontier processing rotation, for order-independence checks

  // vertices / edges
  std::vector<int> vertexDistance;
  std::vector<int> birthValence;  // degree at the end of the stage that created the vertex
  std::vector<std::vector<int>> rotation;
  std::vector<std::array<int, 2>> edgeEnds;

  // closed tiles, traced from the rotation system with a fixed orientation
  std::vector<std::vector<int>> tileEdges;     // cyclic
  std::vector<std::vector<int>> tileVertices;  // tileVertices[i] joins tileEdges[i] and tileEdges[(i+1)%p]
  std::vector<std::array<int, 2>> edgeTiles;   // -1 where the neighbouring tile is not generated
  std::vector<int> tileDistance;               // BFS from baseTile over shared edges
  int baseTile = -1;
  int trustedTileDepth = -1;  // all tiles at distance <= this have every neighbour closed

  // layer sizes of the dual (q,p) construction: tileLayerCounts[n] = N_td(n)
  std::vector<std::int64_t> tileLayerCounts;

  int vertexCount() const { return (int)vertexDistance.size(); }
  int edgeCount() const { return (int)edgeEnds.size(); }
  int tileCount() const { return (int)tileEdges.size(); }
  bool vertexComplete(int v) const { return (int)rotation[v].size() == params.q; }
  int edgeOtherEnd(int e, int v) const {
    return edgeEnds[e][0] == v ? edgeEnds[e][1] : edgeEnds[e][0];
  }
  int tileAcross(int e, int t) const {
    return edgeTiles[e][0] == t ? edgeTiles[e][1] : edgeTiles[e][0];
  }
  int rotationIndex(int v, int e) const;  // position of edge e at vertex v
};

TilingGraph build_tiling(TilingParams params, int depth, int orderShift = 0);

// N_td(0..nMax) counted by running the construction on the dual parameters
// (q,p) and sizing its distance layers; exact for every n <= nMax.
std::vector<std::int64_t> tile_layer_counts(TilingParams params, int nMax);

std::int64_t tiles_at_distance(const TilingGraph& g, int n);  // throws depth_error if n > g.depth

// ---- labelling (q even) ------------------------------------------------

struct EdgeLabeling {
  std::vector<int> label;  // per edge, 1..p; 0 where no closed tile reaches it
};

// baseLabels: the p labels around the base tile in cyclic order (default 1..p).
EdgeLabeling label_edges(const TilingGraph& g, const std::vector<int>& baseLabels = {});

// ---- edge geodesics (q even) ------------------------------------------

struct EdgeGeodesicClasses {
  std::vector<int> classOf;              // per edge
  std::vector<std::vector<int>> chains;  // each class as an ordered edge path
};

EdgeGeodesicClasses edge_geodesic_classes(const TilingGraph& g);

// ---- zigzags (q odd) ---------------------------------------------------

struct ZigzagClasses {
  std::vector<std::array<int, 2>> zigzagsOf;  // per edge, exactly two ids
  std::vector<std::vector<int>> chains;       // ordered edge lists, truncated at the frontier
};

ZigzagClasses zigzag_classes(const TilingGraph& g);

// ---- vertex/tile maps --------------------------------------------------

struct VertexTileMap {
  std::vector<int> phi;  // vertex -> adjacent tile (p >= 4); -1 where not decidable in-region
  std::vector<int> psi;  // tile -> vertex (q >= 4 or p == 3); -1 if the rule does not apply
};

VertexTileMap vertex_tile_map(const TilingGraph& g);

// ---- serialization -----------------------------------------------------

std::string graph_to_json(const TilingGraph& g);

}  // namespace hypb
