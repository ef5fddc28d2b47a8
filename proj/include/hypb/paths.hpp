#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hypb/tiling.hpp"

namespace hypb {

struct TilingPath {
  std::vector<int> tiles;  // consecutive tiles share edges[i]
  std::vector<int> edges;
  int length() const { return (int)edges.size(); }
};

void validate_path(const TilingGraph& g, const TilingPath& path);  // throws param_error

// BFS shortest-path length over closed tiles; throws depth_error when the
// minimal path could leave the fully generated region.
int tiling_distance(const TilingGraph& g, int A, int B);

// Crossing counts per edge-geodesic class (q even) or per zigzag (q odd;
// every step counts for both zigzags through the crossed edge).
std::map<int, int> crossing_profile(const TilingPath& path, const EdgeGeodesicClasses& egc);
std::map<int, int> crossing_profile(const TilingPath& path, const ZigzagClasses& zz);

struct MinimalityReport {
  bool minimal = false;
  std::optional<int> doubledClass;  // witness: a class/zigzag crossed twice
  int length = 0;
  int distance = 0;  // BFS distance between endpoints, as a cross-check
};

MinimalityReport is_minimal(const TilingGraph& g, const EdgeGeodesicClasses& egc,
                            const TilingPath& path);
MinimalityReport is_minimal(const TilingGraph& g, const ZigzagClasses& zz, const TilingPath& path);

// Classes whose chains separate A from B, decided by crossing parity along a
// connecting path (well-defined: the generated region is simply connected and
// every truncated chain ends on the frontier).
std::set<int> separating_classes(const TilingGraph& g, const EdgeGeodesicClasses& egc, int A,
                                 int B);
std::set<int> separating_classes(const TilingGraph& g, const ZigzagClasses& zz, int A, int B);

// Reflect the subpath between the first two crossings of `classId` across the
// class chain; returns a valid path exactly 2 shorter with the same endpoints.
TilingPath shorten_by_reflection(const TilingGraph& g, const EdgeGeodesicClasses& egc,
                                 const TilingPath& path, int classId);

bool is_fellow_traveling(const TilingGraph& g, const EdgeGeodesicClasses& egc,
                         const TilingPath& path, int classId);

}  // namespace hypb
