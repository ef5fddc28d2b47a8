#include "hypb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <sstream>

namespace hypb {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex mob(Complex z, Complex base) { return (z - base) / (1.0 - std::conj(base) * z); }

double wrapAngle(double a) {  // to (-pi, pi]
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

// reflection across the geodesic through z1 and z2
struct Reflector {
  bool diameter = false;
  Complex u;       // unit direction when diameter
  Complex c;       // circle centre otherwise
  double rho2 = 0;

  Complex operator()(Complex z) const {
    if (diameter) return u * u * std::conj(z);
    return c + rho2 / std::conj(z - c);
  }
};

// numerically stable form: conjugate a diameter reflection by the Mobius map
// sending z1 to the origin
struct StableReflector {
  Complex z1;
  Complex d2;  // squared unit direction of the mapped geodesic

  StableReflector(Complex a, Complex b) : z1(a) {
    Complex w = mob(b, a);
    Complex d = w / std::abs(w);
    d2 = d * d;
  }
  Complex operator()(Complex z) const { return mob(d2 * std::conj(mob(z, z1)), -z1); }
};

Reflector reflectorThrough(Complex z1, Complex z2) {
  double cross = z1.real() * z2.imag() - z1.imag() * z2.real();
  if (std::abs(cross) < 1e-14) {
    Complex d = (std::abs(z1) > std::abs(z2)) ? z1 : z2;
    return {true, d / std::abs(d), {}, 0};
  }
  // orthogonal circle: 2 Re(z conj(c)) = |z|^2 + 1 at both points
  double a1 = 2 * z1.real(), b1 = 2 * z1.imag(), r1 = std::norm(z1) + 1;
  double a2 = 2 * z2.real(), b2 = 2 * z2.imag(), r2 = std::norm(z2) + 1;
  double det = a1 * b2 - a2 * b1;
  Complex c((r1 * b2 - r2 * b1) / det, (a1 * r2 - a2 * r1) / det);
  return {false, {}, c, std::norm(c) - 1};
}

}  // namespace

double hyperbolic_distance(Complex a, Complex b) {
  return 2 * std::atanh(std::min(1.0 - 1e-16, std::abs(mob(b, a))));
}

double interior_angle(Complex v, Complex a, Complex b) {
  double t = std::abs(wrapAngle(std::arg(mob(a, v)) - std::arg(mob(b, v))));
  return t;
}

DiskRealization realize(const TilingGraph& g) {
  const int p = g.params.p, q = g.params.q;
  DiskRealization r;
  r.params = g.params;
  r.vertexPos.assign(g.vertexCount(), Complex(0, 0));
  r.tileCenter.assign(g.tileCount(), Complex(0, 0));
  r.vertexRealized.assign(g.vertexCount(), false);
  r.tileRealized.assign(g.tileCount(), false);
  if (g.tileCount() == 0) return r;

  // circumradius from the interior-angle condition, by bisection
  auto vertexAngle = [&](double rad) {
    Complex v0 = std::polar(rad, 2 * kPi * 0.5 / p);
    Complex v1 = std::polar(rad, 2 * kPi * 1.5 / p);
    Complex vm = std::polar(rad, 2 * kPi * (p - 0.5) / p);
    return interior_angle(v0, v1, vm);
  };
  double lo = 1e-9, hi = 1 - 1e-12;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (vertexAngle(mid) > 2 * kPi / q ? lo : hi) = mid;
  }
  r.circumradius = 0.5 * (lo + hi);

  // base tile around the origin
  const int base = g.baseTile;
  for (int k = 0; k < p; ++k) {
    int v = g.tileVertices[base][k];
    r.vertexPos[v] = std::polar(r.circumradius, 2 * kPi * (k + 0.5) / p);
    r.vertexRealized[v] = true;
  }
  r.tileCenter[base] = 0;
  r.tileRealized[base] = true;

  // place neighbours by reflection, breadth first
  std::deque<int> queue{base};
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int i = 0; i < p; ++i) {
      int e = g.tileEdges[t][i];
      int u = g.tileAcross(e, t);
      if (u < 0 || r.tileRealized[u]) continue;
      int vA = g.tileVertices[t][(i - 1 + p) % p], vB = g.tileVertices[t][i];
      StableReflector refl(r.vertexPos[vA], r.vertexPos[vB]);
      int j = -1;
      for (int k = 0; k < p; ++k)
        if (g.tileEdges[u][k] == e) j = k;
      for (int s = 0; s < p; ++s) {
        int src = g.tileVertices[t][(i + s) % p];
        int dst = g.tileVertices[u][(j - s - 1 + p * 2) % p];
        Complex pos = refl(r.vertexPos[src]);
        if (r.vertexRealized[dst]) {
          if (std::abs(pos - r.vertexPos[dst]) > 1e-6)
            throw numeric_error("inconsistent vertex placement across reflections");
        } else {
          r.vertexPos[dst] = pos;
          r.vertexRealized[dst] = true;
        }
      }
      r.tileCenter[u] = refl(r.tileCenter[t]);
      r.tileRealized[u] = true;
      queue.push_back(u);
    }
  }

  for (int v = 0; v < g.vertexCount(); ++v)
    if (r.vertexRealized[v]) r.vertexXOrder.push_back(v);
  std::sort(r.vertexXOrder.begin(), r.vertexXOrder.end(),
            [&](int a, int b) { return r.vertexPos[a].real() < r.vertexPos[b].real(); });

  // no two realized tiles may collapse onto one spot
  std::vector<int> order;
  for (int t = 0; t < g.tileCount(); ++t)
    if (r.tileRealized[t]) order.push_back(t);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return r.tileCenter[a].real() < r.tileCenter[b].real();
  });
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t k = i + 1; k < order.size(); ++k) {
      if (r.tileCenter[order[k]].real() - r.tileCenter[order[i]].real() > 1e-12) break;
      if (std::abs(r.tileCenter[order[k]] - r.tileCenter[order[i]]) < 1e-12)
        throw numeric_error("tile centres collide; realization depth too large for doubles");
    }
  return r;
}

namespace {

// geodesic trace bookkeeping in the frame where the segment is [0, L] on the
// real axis
struct Tracer {
  const DiskRealization& r;
  const TilingGraph& g;
  Complex a;
  Complex rot;
  double L;
  double angTol = 1e-9;

  Tracer(const DiskRealization& rr, const TilingGraph& gg, const GeodesicSegment& s)
      : r(rr), g(gg), a(s.a) {
    Complex mb = mob(s.b, a);
    L = std::abs(mb);
    if (L < 1e-12) throw param_error("degenerate segment: endpoints coincide");
    rot = std::conj(mb / L);
  }

  Complex map(Complex z) const { return rot * mob(z, a); }
  Complex W(int v) const {
    if (!r.vertexRealized[v]) throw depth_error("segment leaves the realized region");
    return map(r.vertexPos[v]);
  }

  // intersection of the geodesic through w1, w2 with the real axis, between
  // the two points; NaN when there is none
  double axisCrossing(Complex w1, Complex w2) const {
    double nan = std::numeric_limits<double>::quiet_NaN();
    double cross = w1.real() * w2.imag() - w1.imag() * w2.real();
    if (std::abs(cross) < 1e-15) {  // diameter through the origin
      double dy = w2.imag() - w1.imag();
      if (std::abs(dy) < 1e-15) return nan;  // lies on the axis
      double t = -w1.imag() / dy;
      if (t < -1e-12 || t > 1 + 1e-12) return nan;
      return w1.real() + t * (w2.real() - w1.real());
    }
    Reflector arc = reflectorThrough(w1, w2);
    double cx = arc.c.real();
    double disc = cx * cx - 1;
    if (disc <= 0) return nan;
    double x = cx > 0 ? cx - std::sqrt(disc) : cx + std::sqrt(disc);
    double t1 = std::arg(w1 - arc.c), t2 = std::arg(w2 - arc.c);
    double span = wrapAngle(t2 - t1), tx = wrapAngle(std::arg(Complex(x, 0) - arc.c) - t1);
    bool between = span >= 0 ? (tx >= -1e-12 && tx <= span + 1e-12)
                             : (tx <= 1e-12 && tx >= span - 1e-12);
    return between ? x : nan;
  }

  // outgoing directions (angles) of the edges at v, in the mapped frame
  std::vector<std::pair<double, int>> edgeAngles(int v) const {
    Complex wv = W(v);
    std::vector<std::pair<double, int>> out;
    for (int e : g.rotation[v]) {
      Complex wu = W(g.edgeOtherEnd(e, v));
      out.push_back({std::arg(mob(wu, wv)), e});
    }
    return out;
  }

  int tileBetween(int e1, int e2) const {
    for (int x : g.edgeTiles[e1])
      for (int y : g.edgeTiles[e2])
        if (x >= 0 && x == y) return x;
    throw depth_error("tile at vertex sector not generated");
  }

  // tile at v whose angular sector contains direction angle `dir`
  int sectorTile(int v, double dir) const {
    auto ang = edgeAngles(v);
    int eBelow = -1, eAbove = -1;
    double dBelow = 1e9, dAbove = 1e9;
    for (auto [th, e] : ang) {
      double up = wrapAngle(th - dir);   // rotating ccw from dir to the edge
      double down = wrapAngle(dir - th);
      if (up > 0 && up < dAbove) dAbove = up, eAbove = e;
      if (down > 0 && down < dBelow) dBelow = down, eBelow = e;
    }
    if (eBelow < 0 || eAbove < 0) throw numeric_error("vertex sector not resolved");
    return tileBetween(eBelow, eAbove);
  }
};

}  // namespace

TraceResult trace_word(const DiskRealization& r, const TilingGraph& g, const GeodesicSegment& s) {
  Tracer tr(r, g, s);
  const double endTol = 1e-9;
  TraceResult out;

  // locate endpoints that sit on vertices (binary search on Re)
  auto vertexNear = [&](Complex z) {
    auto lessX = [&](int v, double x) { return r.vertexPos[v].real() < x; };
    auto it = std::lower_bound(r.vertexXOrder.begin(), r.vertexXOrder.end(), z.real() - r.eps,
                               lessX);
    for (; it != r.vertexXOrder.end() && r.vertexPos[*it].real() < z.real() + r.eps; ++it)
      if (std::abs(z - r.vertexPos[*it]) < r.eps) return *it;
    return -1;
  };
  int vStart = vertexNear(s.a);

  int t = -1;
  double pos = 0;
  int pendingVertex = -1;  // vertex passage to resolve before advancing

  if (vStart >= 0) {
    // starts at a vertex: the nudged trajectory leaves through the sector
    // containing the forward direction; if an edge points straight ahead the
    // path runs along it on the clockwise side (the ccw nudge bulges there)
    auto ang = tr.edgeAngles(vStart);
    int ahead = -1;
    for (auto [th, e] : ang)
      if (std::abs(th) < tr.angTol) ahead = e;
    if (ahead >= 0) {
      out.collinearRun = true;
      t = tr.sectorTile(vStart, -1e-6);
      out.path.tiles.push_back(t);
      int v2 = g.edgeOtherEnd(ahead, vStart);
      pos = tr.W(v2).real();
      if (pos >= tr.L - endTol) {
        out.word = path_to_word(out.path, g);
        out.cl = 1;
        return out;
      }
      pendingVertex = v2;
    } else {
      t = tr.sectorTile(vStart, 0.0);
      out.path.tiles.push_back(t);
    }
  } else {
    // interior start: walk from the base tile towards the point
    t = g.baseTile;
    if (!r.tileRealized[t]) throw depth_error("base tile not realized");
    const int p = g.params.p;
    auto insideEdge = [&](int tt, int i, Complex z) {
      int vA = g.tileVertices[tt][(i - 1 + p) % p], vB = g.tileVertices[tt][i];
      Reflector refl = reflectorThrough(r.vertexPos[vA], r.vertexPos[vB]);
      double sz, sc;
      if (refl.diameter) {
        auto side = [&](Complex w) { return refl.u.real() * w.imag() - refl.u.imag() * w.real(); };
        sz = side(z), sc = side(r.tileCenter[tt]);
      } else {
        sz = std::norm(z - refl.c) - refl.rho2;
        sc = std::norm(r.tileCenter[tt] - refl.c) - refl.rho2;
      }
      return sz * sc;  // > 0: same side as the centre
    };
    for (int guard = 0;; ++guard) {
      if (guard > 100000) throw numeric_error("tile location walk did not terminate");
      int exit = -1;
      for (int i = 0; i < p && exit < 0; ++i)
        if (insideEdge(t, i, s.a) < 0) exit = i;
      if (exit < 0) break;
      int u = g.tileAcross(g.tileEdges[t][exit], t);
      if (u < 0 || !r.tileRealized[u]) throw depth_error("segment start outside realized region");
      t = u;
    }
    for (int i = 0; i < p; ++i)
      if (std::abs(insideEdge(t, i, s.a)) < 1e-12)
        throw param_error("segment endpoint lies on an edge; reposition it");
    out.path.tiles.push_back(t);
  }

  auto resolveVertex = [&](int v) {
    // counterclockwise half-circle: crosses the edges below the axis in ccw
    // order; an edge pointing straight ahead is followed, not crossed
    while (true) {
      out.verticesHit.push_back(v);
      auto ang = tr.edgeAngles(v);
      std::vector<std::pair<double, int>> fan;
      int ahead = -1;
      for (auto [th, e] : ang) {
        if (std::abs(th) < tr.angTol) ahead = e;
        else if (th < -tr.angTol && th > -kPi + tr.angTol) fan.push_back({th, e});
      }
      std::sort(fan.begin(), fan.end());
      for (auto [th, e] : fan) {
        out.path.edges.push_back(e);
        t = g.tileAcross(e, t);
        if (t < 0) throw depth_error("segment leaves the generated region");
        out.path.tiles.push_back(t);
      }
      if (ahead < 0) {
        pos = tr.W(v).real();
        return true;  // continue the transverse trace
      }
      out.collinearRun = true;
      int v2 = g.edgeOtherEnd(ahead, v);
      pos = tr.W(v2).real();
      if (pos >= tr.L - endTol) return false;  // the segment ends at v2
      v = v2;
    }
  };

  if (pendingVertex >= 0 && !resolveVertex(pendingVertex)) {
    out.word = path_to_word(out.path, g);
    out.cl = out.path.length() + 1;
    return out;
  }

  const int p = g.params.p;
  for (int guard = 0;; ++guard) {
    if (guard > 1000000) throw numeric_error("trace did not terminate");
    // nearest event beyond pos: an edge crossing or a vertex passage; a
    // vertex wins a near-tie, since incident-edge crossings sit right on it
    double vx = tr.L + 1, ex = tr.L + 1;
    int bestEdge = -1, bestVertex = -1;
    for (int k = 0; k < p; ++k) {
      int v = g.tileVertices[t][k];
      Complex w = tr.W(v);
      if (std::abs(w.imag()) < r.eps && w.real() > pos + 1e-11 && w.real() < vx) {
        vx = w.real();
        bestVertex = v;
      }
    }
    for (int k = 0; k < p; ++k) {
      int e = g.tileEdges[t][k];
      Complex w1 = tr.W(g.edgeEnds[e][0]), w2 = tr.W(g.edgeEnds[e][1]);
      double x = tr.axisCrossing(w1, w2);
      if (std::isnan(x) || x <= pos + 1e-11) continue;
      if (x < ex) {
        ex = x;
        bestEdge = e;
      }
    }
    bool vertexEvent = bestVertex >= 0 && vx <= ex + r.eps;
    double bestX = vertexEvent ? vx : ex;
    if (bestX > tr.L - endTol) break;  // b lies in the current tile (or at a vertex)
    if (vertexEvent) {
      pos = bestX;
      if (!resolveVertex(bestVertex)) break;
    } else {
      out.path.edges.push_back(bestEdge);
      t = g.tileAcross(bestEdge, t);
      if (t < 0) throw depth_error("segment leaves the generated region");
      out.path.tiles.push_back(t);
      pos = bestX;
    }
  }

  out.word = path_to_word(out.path, g);
  out.cl = out.path.length() + 1;
  return out;
}

ClassWitness realize_word_class(const DiskRealization& r, const TilingGraph& g,
                                const WordClass& cls, int baseTile, int budget) {
  ClassWitness wit;
  wit.admissible = cls.classAdmissible;
  if (!wit.admissible) return wit;  // refutation: no segment sought
  int base = baseTile < 0 ? g.baseTile : baseTile;
  TilingPath target = word_to_path(cls.canonical, g, base);
  int last = target.tiles.back();
  if (!r.tileRealized[base] || !r.tileRealized[last])
    throw depth_error("class endpoints not realized");

  auto member = [&](const Word& w) {
    for (const Word& m : cls.members)
      if (m.letters == w.letters) return true;
    return false;
  };

  std::mt19937 rng(12345);
  const int p = g.params.p;
  for (int attempt = 0; attempt < budget; ++attempt) {
    Complex za = r.tileCenter[base], zb = r.tileCenter[last];
    if (attempt > 0) {  // jitter towards random tile vertices
      double fa = 0.5 * (double)(rng() % 1000) / 1000.0;
      double fb = 0.5 * (double)(rng() % 1000) / 1000.0;
      Complex va = r.vertexPos[g.tileVertices[base][rng() % p]];
      Complex vb = r.vertexPos[g.tileVertices[last][rng() % p]];
      za += fa * (va - za);
      zb += fb * (vb - zb);
    }
    GeodesicSegment seg{za, zb};
    TraceResult res;
    try {
      res = trace_word(r, g, seg);
    } catch (const std::runtime_error&) {
      continue;
    }
    if (res.path.tiles.front() == base && res.path.tiles.back() == last && member(res.word)) {
      wit.segment = seg;
      wit.traced = res.word;
      return wit;
    }
  }
  return wit;  // admissible but no witness found within budget
}

DiagonalCensus diagonal_census(const DiskRealization& r, const TilingGraph& g, int baseVertex,
                               int kMax) {
  if (baseVertex < 0 || baseVertex >= g.vertexCount() || !r.vertexRealized[baseVertex])
    throw param_error("base vertex not realized");
  const int p = g.params.p, q = g.params.q;
  DiagonalCensus c;
  c.baseVertex = baseVertex;
  c.kMax = kMax;
  c.nCl.assign(kMax + 1, 0);
  c.nClPrim.assign(kMax + 1, 0);
  c.gd.assign(kMax + 1, 0);

  int minUnsafe = std::numeric_limits<int>::max();
  std::int64_t edgeSegments = 0;
  for (int u = 0; u < g.vertexCount(); ++u) {
    if (u == baseVertex || !r.vertexRealized[u]) continue;
    TraceResult res;
    try {
      res = trace_word(r, g, {r.vertexPos[baseVertex], r.vertexPos[u]});
    } catch (const std::runtime_error&) {
      ++c.excluded;
      continue;
    }
    bool unsafe = !g.vertexComplete(u);
    for (int v : res.verticesHit)
      if (!g.vertexComplete(v)) unsafe = true;
    if (unsafe) minUnsafe = std::min(minUnsafe, res.cl);
    if (res.cl > kMax) continue;
    bool isEdge = res.cl == 1 && res.collinearRun && res.verticesHit.empty();
    if (isEdge) ++edgeSegments;
    ++c.nCl[res.cl];
    if (res.verticesHit.empty() && !isEdge) ++c.nClPrim[res.cl];
  }
  c.trustedK = std::min(kMax, minUnsafe == std::numeric_limits<int>::max()
                                  ? kMax
                                  : minUnsafe - 1);
  if (edgeSegments != q) throw numeric_error("edge segments from the base vertex miscounted");

  c.gd[0] = p;
  for (int k = 1; k <= c.trustedK; ++k) {
    std::int64_t num = (std::int64_t)p * c.nClPrim[k];
    if (num % (2 * q) != 0) throw numeric_error("symmetry division of diagonal counts failed");
    c.gd[k] = num / (2 * q);
  }
  return c;
}

BigInt complexity_p_n(const DiagonalCensus& census, BigInt p1, BigInt p2, int n) {
  if (n < 1) throw param_error("complexity formula needs n >= 1");
  if (n > census.trustedK) throw depth_error("census truncated below n");
  BigInt total = 2 * p1 + n * (p2 - p1);
  for (int k = 3; k <= n; ++k)
    for (int j = 3; j <= k; ++j) total += census.gd[j];
  return total;
}

namespace {

// hyperbolic midpoint of an edge
Complex edgeMidpoint(const DiskRealization& r, const TilingGraph& g, int e) {
  Complex z1 = r.vertexPos[g.edgeEnds[e][0]], z2 = r.vertexPos[g.edgeEnds[e][1]];
  Complex w = mob(z2, z1);
  Complex m = (w / std::abs(w)) * std::tanh(std::atanh(std::abs(w)) / 2);
  return mob(m, -z1);  // inverse of mob(., z1) is mob(., -z1)
}

// hyperbolic distance from z to the full geodesic through g1, g2
double distToGeodesic(Complex g1, Complex g2, Complex z) {
  // map g1 -> 0; the geodesic becomes a diameter with direction d
  Complex w2 = mob(g2, g1), wz = mob(z, g1);
  Complex d = w2 / std::abs(w2);
  double off = std::abs(d.real() * wz.imag() - d.imag() * wz.real());  // euclid offset
  double sinhd = 2 * off / (1 - std::norm(wz));
  return std::asinh(sinhd);
}

bool geodesicsMeetInDisk(Complex a1, Complex a2, Complex b1, Complex b2) {
  Reflector A = reflectorThrough(a1, a2), B = reflectorThrough(b1, b2);
  if (A.diameter && B.diameter) return true;  // both pass through the origin
  if (A.diameter || B.diameter) {
    if (A.diameter) std::swap(A, B);
    // line through origin with direction u against circle (c, rho)
    double proj = B.c.real() * A.u.real() + B.c.imag() * A.u.imag();
    double disc = proj * proj - (std::norm(B.c) - B.rho2);
    if (disc < 0) return false;
    for (double s : {proj - std::sqrt(disc), proj + std::sqrt(disc)})
      if (std::abs(s) < 1) return true;
    return false;
  }
  Complex d = B.c - A.c;
  double dist = std::abs(d);
  double rA = std::sqrt(A.rho2), rB = std::sqrt(B.rho2);
  if (dist > rA + rB || dist < std::abs(rA - rB) || dist < 1e-15) return false;
  double x = (dist * dist + rA * rA - rB * rB) / (2 * dist);
  double h2 = rA * rA - x * x;
  if (h2 < 0) return false;
  Complex mid = A.c + d * (x / dist);
  Complex off = Complex(-d.imag(), d.real()) * (std::sqrt(h2) / dist);
  return std::abs(mid + off) < 1 || std::abs(mid - off) < 1;
}

}  // namespace

AppendixReport check_appendix_lemmas(const DiskRealization& r, const TilingGraph& g, int samples,
                                     unsigned seed) {
  AppendixReport rep;
  std::mt19937 rng(seed);
  std::vector<int> realizedTiles;
  for (int t = 0; t < g.tileCount(); ++t)
    if (r.tileRealized[t]) realizedTiles.push_back(t);

  if (g.params.q % 2 == 1) {
    ZigzagClasses zz = zigzag_classes(g);
    // midpoints of a zigzag lie on a single geodesic
    for (const auto& chain : zz.chains) {
      if ((int)chain.size() < 3) continue;
      bool ok = true;
      for (int e : chain)
        if (!r.vertexRealized[g.edgeEnds[e][0]] || !r.vertexRealized[g.edgeEnds[e][1]]) ok = false;
      if (!ok) continue;
      std::vector<Complex> mids;
      for (int e : chain) mids.push_back(edgeMidpoint(r, g, e));
      for (std::size_t i = 1; i + 1 < mids.size(); ++i)
        rep.maxMidpointDeviation = std::max(
            rep.maxMidpointDeviation, distToGeodesic(mids.front(), mids.back(), mids[i]));
      ++rep.zigzagsChecked;
      if (rep.zigzagsChecked >= samples) break;
    }
    // crossings of one zigzag along a geodesic are consecutive chain edges
    std::vector<std::map<int, int>> chainIndex(zz.chains.size());
    for (std::size_t z = 0; z < zz.chains.size(); ++z)
      for (std::size_t i = 0; i < zz.chains[z].size(); ++i) chainIndex[z][zz.chains[z][i]] = (int)i;
    // sample within the inner region so geodesics stay realized
    std::vector<int> innerTiles;
    for (int t : realizedTiles)
      if (g.tileDistance[t] >= 0 && 2 * g.tileDistance[t] <= g.trustedTileDepth)
        innerTiles.push_back(t);
    if (innerTiles.size() < 2) innerTiles = realizedTiles;
    for (int it = 0; it < samples; ++it) {
      int A = innerTiles[rng() % innerTiles.size()];
      int B = innerTiles[rng() % innerTiles.size()];
      if (A == B) continue;
      TraceResult res;
      try {
        res = trace_word(r, g, {r.tileCenter[A], r.tileCenter[B]});
      } catch (const std::runtime_error&) {
        continue;
      }
      std::map<int, std::vector<int>> hits;  // zigzag -> chain positions
      for (int e : res.path.edges)
        for (int zid : {zz.zigzagsOf[e][0], zz.zigzagsOf[e][1]}) {
          auto it2 = chainIndex[zid].find(e);
          if (it2 != chainIndex[zid].end()) hits[zid].push_back(it2->second);
        }
      ++rep.segmentsChecked;
      for (auto& [zid, ps] : hits) {
        std::sort(ps.begin(), ps.end());
        for (std::size_t i = 1; i < ps.size(); ++i)
          if (ps[i] != ps[i - 1] + 1) ++rep.nonConsecutiveHits;
      }
    }
  } else {
    // supporting geodesics of non-adjacent edges of one tile never meet
    const int p = g.params.p;
    for (int it = 0; it < samples; ++it) {
      int t = realizedTiles[rng() % realizedTiles.size()];
      for (int i = 0; i < p; ++i)
        for (int j = i + 2; j < p; ++j) {
          if (i == 0 && j == p - 1) continue;  // adjacent around the wrap
          int e1 = g.tileEdges[t][i], e2 = g.tileEdges[t][j];
          Complex a1 = r.vertexPos[g.edgeEnds[e1][0]], a2 = r.vertexPos[g.edgeEnds[e1][1]];
          Complex b1 = r.vertexPos[g.edgeEnds[e2][0]], b2 = r.vertexPos[g.edgeEnds[e2][1]];
          ++rep.pairsChecked;
          if (geodesicsMeetInDisk(a1, a2, b1, b2)) ++rep.intersectingPairs;
        }
    }
  }
  return rep;
}

std::string render_svg(const DiskRealization& r, const TilingGraph& g,
                       const GeodesicSegment* segment) {
  const double S = 400, C = 410;
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='820' height='820' "
         "viewBox='0 0 820 820'>\n";
  svg << "<circle cx='" << C << "' cy='" << C << "' r='" << S
      << "' fill='white' stroke='black' stroke-width='1'/>\n";
  auto px = [&](Complex z) {
    return std::pair<double, double>{C + S * z.real(), C - S * z.imag()};
  };
  auto arc = [&](Complex z1, Complex z2, const char* colour) {
    svg << "<polyline fill='none' stroke='" << colour << "' stroke-width='0.7' points='";
    for (int k = 0; k <= 16; ++k) {
      Complex w = mob(z2, z1);
      Complex m = (w / std::abs(w)) * std::tanh(std::atanh(std::abs(w)) * k / 16.0);
      Complex z = mob(m, -z1);
      auto [x, y] = px(z);
      svg << x << "," << y << " ";
    }
    svg << "'/>\n";
  };
  for (int e = 0; e < g.edgeCount(); ++e) {
    int v1 = g.edgeEnds[e][0], v2 = g.edgeEnds[e][1];
    if (r.vertexRealized[v1] && r.vertexRealized[v2]) arc(r.vertexPos[v1], r.vertexPos[v2], "#444");
  }
  if (segment) arc(segment->a, segment->b, "red");
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hypb
