#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "hypb/growth.hpp"
#include "hypb/paths.hpp"
#include "hypb/tiling.hpp"
#include "hypb/words.hpp"

namespace hypb {

using Complex = std::complex<double>;

// Poincare-disk placement of the generated tiling: base tile centered at the
// origin, neighbours by geodesic reflection across shared edges.
struct DiskRealization {
  TilingParams params;
  double circumradius = 0;  // Euclidean distance origin -> base-tile vertex
  double eps = 1e-9;        // incidence tolerance
  std::vector<Complex> vertexPos;
  std::vector<Complex> tileCenter;
  std::vector<bool> vertexRealized, tileRealized;
  std::vector<int> vertexXOrder;  // realized vertices sorted by Re(pos), for lookup
};

DiskRealization realize(const TilingGraph& g);

double hyperbolic_distance(Complex a, Complex b);

// interior angle at v between the geodesics v->a and v->b
double interior_angle(Complex v, Complex a, Complex b);

struct GeodesicSegment {
  Complex a, b;
};

struct TraceResult {
  TilingPath path;  // tiles visited; edges transversely crossed (nudged)
  Word word;        // crossed-edge labels, frame seeded 1..p on the first tile
  int cl = 0;       // combinatorial length = crossings + 1
  std::vector<int> verticesHit;  // interior vertices passed (ccw nudge)
  bool collinearRun = false;     // some stretch ran along tiling edges
};

// Trace the geodesic from s.a to s.b through the realized tiling.  Interior
// vertex passages are resolved by the counterclockwise nudge; stretches along
// tiling edges cross nothing and do not count toward cl.
TraceResult trace_word(const DiskRealization& r, const TilingGraph& g, const GeodesicSegment& s);

struct ClassWitness {
  bool admissible = false;
  std::optional<GeodesicSegment> segment;  // witness whose traced word is in the class
  std::optional<Word> traced;
};

ClassWitness realize_word_class(const DiskRealization& r, const TilingGraph& g,
                                const WordClass& cls, int baseTile = -1, int budget = 64);

struct DiagonalCensus {
  int baseVertex = 0;
  int kMax = 0;
  int trustedK = 0;  // counts at cl <= trustedK are complete
  std::vector<std::int64_t> nCl, nClPrim;  // segments from baseVertex, by cl
  std::vector<std::int64_t> gd;            // (p/2q) * nClPrim, exact division
  int excluded = 0;                        // eps-ambiguous segments skipped
};

DiagonalCensus diagonal_census(const DiskRealization& r, const TilingGraph& g, int baseVertex,
                               int kMax);

// p(n) = 2 p(1) + n (p(2) - p(1)) + sum_{k=3..n} sum_{j=3..k} gd(j)
BigInt complexity_p_n(const DiagonalCensus& census, BigInt p1, BigInt p2, int n);

struct AppendixReport {
  // q odd: midpoints of each zigzag lie on one geodesic
  double maxMidpointDeviation = 0;
  int zigzagsChecked = 0;
  // q odd: a geodesic meets a zigzag only along consecutive chain edges
  int segmentsChecked = 0;
  int nonConsecutiveHits = 0;
  // q even: supporting geodesics of opposite edges of a tile do not meet
  int pairsChecked = 0;
  int intersectingPairs = 0;
};

AppendixReport check_appendix_lemmas(const DiskRealization& r, const TilingGraph& g,
                                     int samples = 1000, unsigned seed = 1);

// SVG rendering of the realized tiling, optionally with a traced segment
std::string render_svg(const DiskRealization& r, const TilingGraph& g,
                       const GeodesicSegment* segment = nullptr);

}  // namespace hypb
