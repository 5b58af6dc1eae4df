// Copyright 2026 The rogmap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rogmap/core/errors.hpp"
#include "rogmap/core/index_math.hpp"
#include "rogmap/core/vec3.hpp"

namespace rogmap::sim {

struct BoxPrimitive {
  Vec3d lo;
  Vec3d hi;
};

/// Thin segment with a radius (a capsule); models wire-like obstacles.
struct WirePrimitive {
  Vec3d a;
  Vec3d b;
  double radius = 0.0;
};

struct Scene {
  Vec3d boundsLo{-10, -10, -10};
  Vec3d boundsHi{10, 10, 10};
  std::vector<BoxPrimitive> boxes;
  std::vector<WirePrimitive> wires;
};

namespace geo {

inline double clamp01(double t) { return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t); }

inline Vec3d closestPointOnSegment(const Vec3d& p, const Vec3d& a, const Vec3d& b) {
  const Vec3d ab = b - a;
  const double denom = ab.squaredNorm();
  if (denom == 0.0) return a;
  return a + ab * clamp01((p - a).dot(ab) / denom);
}

inline double pointToBoxDistance(const Vec3d& p, const Vec3d& lo, const Vec3d& hi) {
  auto axis = [](double v, double l, double h) { return v < l ? l - v : (v > h ? v - h : 0.0); };
  const Vec3d d{axis(p.x, lo.x, hi.x), axis(p.y, lo.y, hi.y), axis(p.z, lo.z, hi.z)};
  return d.norm();
}

/// Distance from a segment to an axis-aligned box. The distance along the
/// segment parameter is convex, so a ternary search converges.
inline double segmentToBoxDistance(const Vec3d& a, const Vec3d& b, const Vec3d& lo, const Vec3d& hi) {
  double t0 = 0.0, t1 = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double m1 = t0 + (t1 - t0) / 3.0;
    const double m2 = t1 - (t1 - t0) / 3.0;
    const double d1 = pointToBoxDistance(a + (b - a) * m1, lo, hi);
    const double d2 = pointToBoxDistance(a + (b - a) * m2, lo, hi);
    if (d1 < d2) t1 = m2;
    else t0 = m1;
  }
  return pointToBoxDistance(a + (b - a) * (0.5 * (t0 + t1)), lo, hi);
}

/// First intersection parameter of ray o + t*d (t > 0, d unit) with a box.
inline std::optional<double> rayBoxIntersect(const Vec3d& o, const Vec3d& d, const Vec3d& lo, const Vec3d& hi) {
  double tEnter = 0.0, tExit = std::numeric_limits<double>::infinity();
  auto axis = [&](double ov, double dv, double l, double h) {
    if (dv == 0.0) return ov >= l && ov <= h;
    double ta = (l - ov) / dv, tb = (h - ov) / dv;
    if (ta > tb) std::swap(ta, tb);
    tEnter = std::max(tEnter, ta);
    tExit = std::min(tExit, tb);
    return tEnter <= tExit;
  };
  if (!axis(o.x, d.x, lo.x, hi.x) || !axis(o.y, d.y, lo.y, hi.y) || !axis(o.z, d.z, lo.z, hi.z)) {
    return std::nullopt;
  }
  if (tExit < tEnter || tExit <= 0.0) return std::nullopt;
  return tEnter > 0.0 ? std::optional<double>(tEnter) : std::nullopt;  // origin inside: no surface hit
}

inline std::optional<double> raySphereIntersect(const Vec3d& o, const Vec3d& d, const Vec3d& c, double r) {
  const Vec3d m = o - c;
  const double b = m.dot(d);
  const double cc = m.squaredNorm() - r * r;
  const double disc = b * b - cc;
  if (disc < 0.0) return std::nullopt;
  const double t = -b - std::sqrt(disc);
  return t > 0.0 ? std::optional<double>(t) : std::nullopt;
}

/// First intersection of a ray with a capsule (cylinder body plus sphere
/// caps). `d` must be unit length.
inline std::optional<double> rayCapsuleIntersect(const Vec3d& o, const Vec3d& d, const Vec3d& a, const Vec3d& b,
                                                 double r) {
  std::optional<double> best;
  auto consider = [&](std::optional<double> t) {
    if (t && (!best || *t < *best)) best = t;
  };

  const Vec3d axis = b - a;
  const double axisLen2 = axis.squaredNorm();
  if (axisLen2 > 0.0) {
    // Infinite cylinder about the axis, then restrict to the segment span.
    const Vec3d m = o - a;
    const double dAxis = d.dot(axis);
    const double mAxis = m.dot(axis);
    const double A = d.squaredNorm() - dAxis * dAxis / axisLen2;
    const double B = m.dot(d) - mAxis * dAxis / axisLen2;
    const double C = m.squaredNorm() - mAxis * mAxis / axisLen2 - r * r;
    if (A > 1e-15) {
      const double disc = B * B - A * C;
      if (disc >= 0.0) {
        const double t = (-B - std::sqrt(disc)) / A;
        if (t > 0.0) {
          const double s = (mAxis + t * dAxis) / axisLen2;
          if (s >= 0.0 && s <= 1.0) consider(t);
        }
      }
    }
  }
  consider(raySphereIntersect(o, d, a, r));
  consider(raySphereIntersect(o, d, b, r));
  return best;
}

}  // namespace geo

inline bool pointInsideAnyPrimitive(const Scene& scene, const Vec3d& p) {
  for (const BoxPrimitive& b : scene.boxes) {
    if (p.x >= b.lo.x && p.x <= b.hi.x && p.y >= b.lo.y && p.y <= b.hi.y && p.z >= b.lo.z && p.z <= b.hi.z) {
      return true;
    }
  }
  for (const WirePrimitive& w : scene.wires) {
    if ((p - geo::closestPointOnSegment(p, w.a, w.b)).norm() <= w.radius) return true;
  }
  return false;
}

/// Nearest surface hit of a ray against the whole scene, within maxRange.
inline std::optional<double> raySceneIntersect(const Scene& scene, const Vec3d& origin, const Vec3d& dir,
                                               double maxRange) {
  std::optional<double> best;
  auto consider = [&](std::optional<double> t) {
    if (t && *t <= maxRange && (!best || *t < *best)) best = t;
  };
  for (const BoxPrimitive& b : scene.boxes) consider(geo::rayBoxIntersect(origin, dir, b.lo, b.hi));
  for (const WirePrimitive& w : scene.wires) consider(geo::rayCapsuleIntersect(origin, dir, w.a, w.b, w.radius));
  return best;
}

// --- cell-level geometry for ground truth ---------------------------------

inline bool cellIntersectsPrimitive(const GlobalIndex& g, double r, const BoxPrimitive& b) {
  const Vec3d lo{(g.ix - 0.5) * r, (g.iy - 0.5) * r, (g.iz - 0.5) * r};
  const Vec3d hi{(g.ix + 0.5) * r, (g.iy + 0.5) * r, (g.iz + 0.5) * r};
  return lo.x <= b.hi.x && hi.x >= b.lo.x && lo.y <= b.hi.y && hi.y >= b.lo.y && lo.z <= b.hi.z && hi.z >= b.lo.z;
}

inline bool cellIntersectsPrimitive(const GlobalIndex& g, double r, const WirePrimitive& w) {
  const Vec3d lo{(g.ix - 0.5) * r, (g.iy - 0.5) * r, (g.iz - 0.5) * r};
  const Vec3d hi{(g.ix + 0.5) * r, (g.iy + 0.5) * r, (g.iz + 0.5) * r};
  return geo::segmentToBoxDistance(w.a, w.b, lo, hi) <= w.radius;
}

inline bool cellIntersectsAnyPrimitive(const Scene& scene, const GlobalIndex& g, double r) {
  for (const BoxPrimitive& b : scene.boxes) {
    if (cellIntersectsPrimitive(g, r, b)) return true;
  }
  for (const WirePrimitive& w : scene.wires) {
    if (cellIntersectsPrimitive(g, r, w)) return true;
  }
  return false;
}

inline bool cellFullyInsideAnyPrimitive(const Scene& scene, const GlobalIndex& g, double r) {
  const Vec3d lo{(g.ix - 0.5) * r, (g.iy - 0.5) * r, (g.iz - 0.5) * r};
  const Vec3d hi{(g.ix + 0.5) * r, (g.iy + 0.5) * r, (g.iz + 0.5) * r};
  for (const BoxPrimitive& b : scene.boxes) {
    if (lo.x >= b.lo.x && hi.x <= b.hi.x && lo.y >= b.lo.y && hi.y <= b.hi.y && lo.z >= b.lo.z && hi.z <= b.hi.z) {
      return true;
    }
  }
  for (const WirePrimitive& w : scene.wires) {
    // A box lies inside a convex capsule iff all its corners do.
    bool all = true;
    for (int corner = 0; corner < 8 && all; ++corner) {
      const Vec3d p{(corner & 1) ? hi.x : lo.x, (corner & 2) ? hi.y : lo.y, (corner & 4) ? hi.z : lo.z};
      all = (p - geo::closestPointOnSegment(p, w.a, w.b)).norm() <= w.radius;
    }
    if (all) return true;
  }
  return false;
}

enum class TruthState { Occupied, Free, Unseen };

/// Geometric ground truth for one cell. `swept` reports whether any
/// simulated ray traversed the cell; visibility is defined by the ray set,
/// the geometry by the scene.
template <typename SweptFn>
TruthState groundTruthState(const Scene& scene, const GlobalIndex& g, double r, SweptFn&& swept) {
  if (cellIntersectsAnyPrimitive(scene, g, r)) return TruthState::Occupied;
  return swept(g) ? TruthState::Free : TruthState::Unseen;
}

// --- scene description file ------------------------------------------------
//
//   # comment
//   bounds <xlo> <ylo> <zlo> <xhi> <yhi> <zhi>
//   box <xlo> <ylo> <zlo> <xhi> <yhi> <zhi>
//   wire <x1> <y1> <z1> <x2> <y2> <z2> <radius>

inline Scene loadScene(std::istream& in) {
  Scene scene;
  bool haveBounds = false;
  std::string line;
  long lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "bounds") {
      if (!(ls >> scene.boundsLo.x >> scene.boundsLo.y >> scene.boundsLo.z >> scene.boundsHi.x >>
            scene.boundsHi.y >> scene.boundsHi.z)) {
        throw ParseError("scene: bounds needs 6 numbers", lineNo);
      }
      haveBounds = true;
    } else if (kind == "box") {
      BoxPrimitive b;
      if (!(ls >> b.lo.x >> b.lo.y >> b.lo.z >> b.hi.x >> b.hi.y >> b.hi.z)) {
        throw ParseError("scene: box needs 6 numbers", lineNo);
      }
      if (!(b.lo.x < b.hi.x && b.lo.y < b.hi.y && b.lo.z < b.hi.z)) {
        throw ParseError("scene: box min corner must be below max corner", lineNo);
      }
      scene.boxes.push_back(b);
    } else if (kind == "wire") {
      WirePrimitive w;
      if (!(ls >> w.a.x >> w.a.y >> w.a.z >> w.b.x >> w.b.y >> w.b.z >> w.radius)) {
        throw ParseError("scene: wire needs 7 numbers", lineNo);
      }
      if (!(w.radius > 0.0)) throw ParseError("scene: wire radius must be > 0", lineNo);
      scene.wires.push_back(w);
    } else {
      throw ParseError("scene: unknown entry '" + kind + "'", lineNo);
    }
  }
  if (!haveBounds) throw ParseError("scene: missing bounds entry", 0);
  // Primitives must stay inside the declared bounds.
  for (const BoxPrimitive& b : scene.boxes) {
    if (b.lo.x < scene.boundsLo.x || b.hi.x > scene.boundsHi.x || b.lo.y < scene.boundsLo.y ||
        b.hi.y > scene.boundsHi.y || b.lo.z < scene.boundsLo.z || b.hi.z > scene.boundsHi.z) {
      throw ParseError("scene: box outside bounds", 0);
    }
  }
  for (const WirePrimitive& w : scene.wires) {
    const Vec3d lo = w.a.cwiseMin(w.b) - Vec3d{w.radius, w.radius, w.radius};
    const Vec3d hi = w.a.cwiseMax(w.b) + Vec3d{w.radius, w.radius, w.radius};
    if (lo.x < scene.boundsLo.x || hi.x > scene.boundsHi.x || lo.y < scene.boundsLo.y ||
        hi.y > scene.boundsHi.y || lo.z < scene.boundsLo.z || hi.z > scene.boundsHi.z) {
      throw ParseError("scene: wire outside bounds", 0);
    }
  }
  return scene;
}

inline Scene loadSceneFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("scene: cannot open '" + path + "'", 0);
  return loadScene(in);
}

}  // namespace rogmap::sim
