#pragma once
// Exact exponent geometry: critical exponents p_a, p_(a,b), the L^p-improving
// region Delta (a closed triangle in the (1/p,1/q) square), the endpoint R_1/R_2,
// Bourgain-style interpolation bookkeeping, and the sphere hull specialization.

#include <optional>
#include <string>
#include <vector>

#include "maxlab/rational.hpp"

namespace maxlab {

struct ExponentParams {
  int d = 2;
  Rat a = Rat(1, 2);
  Rat b = 1;
  std::optional<Rat> delta;

  void validate() const {
    if (d < 1) throw std::domain_error("d must be >= 1");
    if (a <= 0) throw std::domain_error("a must be > 0");
    if (b <= 0 || b > d) throw std::domain_error("b must lie in (0, d]");
    if (delta && *delta <= 0) throw std::domain_error("delta must be > 0");
  }
};

struct ExponentPoint {
  Rat x;  // 1/p
  Rat y;  // 1/q
  bool operator==(const ExponentPoint& o) const { return x == o.x && y == o.y; }
};

enum class RegionStatus { interior, boundary, exterior };

struct RegionClassification {
  RegionStatus status;
  std::string boundary_label;  // present iff status == boundary
};

namespace detail {
inline void require_a(const ExponentParams& p) {
  p.validate();
  if (p.a <= Rat(1, 2)) throw std::domain_error("Theorem requires a > 1/2");
}
// Cross product (b-a) x (c-a); >0 when c lies left of a->b.
inline Rat cross(const ExponentPoint& a, const ExponentPoint& b, const ExponentPoint& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}
inline bool on_segment(const ExponentPoint& a, const ExponentPoint& b, const ExponentPoint& p) {
  if (cross(a, b, p) != 0) return false;
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
         p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}
}  // namespace detail

inline Rat critical_p_a(const Rat& a) {
  if (a <= Rat(1, 2)) throw std::domain_error("Theorem requires a > 1/2");
  return (2 * a + 1) / (2 * a);
}

inline Rat critical_p_ab(const ExponentParams& p) {
  detail::require_a(p);
  return (2 * (p.d - p.b) + 2 * p.a - 1) / (p.d - p.b + 2 * p.a - 1);
}

inline bool p_ab_less_than_p_a(const ExponentParams& p) {
  detail::require_a(p);
  bool by_formula = p.b > Rat(p.d) - 1;
  bool by_compare = critical_p_ab(p) < critical_p_a(p.a);
  if (by_formula != by_compare) throw std::logic_error("p_ab/p_a comparison mismatch");
  return by_formula;
}

struct Vertices {
  ExponentPoint O, P, Q;
};

inline Vertices vertices_OPQ(const ExponentParams& params) {
  Rat pa = critical_p_a(params.a);
  Rat pab = critical_p_ab(params);
  Rat pcirc = std::min(pa, pab);
  ExponentPoint O{0, 0};
  ExponentPoint P{1 / pcirc, 1 / pcirc};
  ExponentPoint Q{1 / pab, 1 - 1 / pab};
  return {O, P, Q};
}

struct PointRResult {
  ExponentPoint R;
  enum class Case { R1, R2, degenerate } kind;
};

inline PointRResult point_R(const ExponentParams& params) {
  detail::require_a(params);
  if (!params.delta) throw std::domain_error("point_R requires delta");
  Rat a = params.a, b = params.b, dl = *params.delta;
  Rat d = params.d;
  if (2 * a + dl <= b)
    throw std::domain_error("condition 2a + delta > b violated; R would not lie outside Delta");
  Rat lhs = 2 * a * (dl + 1);
  if (lhs > d) {
    Rat den = 2 * (d - b + a) * (dl + 1) - d;
    ExponentPoint R{((d - b + 2 * a) * (dl + 1) - d) / den, dl * (d - b) / den};
    return {R, PointRResult::Case::R1};
  }
  // 2a(delta+1) <= d together with a > 1/2 forces delta < d-1, so the
  // denominator below is positive.
  ExponentPoint R{Rat(1, 2), (d - 2 * a - dl) / (2 * (d - dl - 1))};
  return {R, lhs == d ? PointRResult::Case::degenerate : PointRResult::Case::R2};
}

// Membership in a convex polygon given in counterclockwise order, with
// boundary labels "[A,B]" for open edges and "{A}" for vertices.
inline RegionClassification classify_convex(const ExponentPoint& pt,
                                            const std::vector<ExponentPoint>& poly,
                                            const std::vector<std::string>& names) {
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    if (pt == poly[i]) return {RegionStatus::boundary, "{" + names[i] + "}"};
  bool inside = true;
  for (size_t i = 0; i < n; ++i) {
    const auto& A = poly[i];
    const auto& B = poly[(i + 1) % n];
    Rat c = detail::cross(A, B, pt);
    if (c < 0) return {RegionStatus::exterior, ""};
    if (c == 0) {
      if (detail::on_segment(A, B, pt))
        return {RegionStatus::boundary, "[" + names[i] + "," + names[(i + 1) % n] + "]"};
      return {RegionStatus::exterior, ""};
    }
    (void)inside;
  }
  return {RegionStatus::interior, ""};
}

// Delta is exactly the closed triangle O, P, Q (checked in both parameter
// regimes b >= d-1 and b < d-1 against the paper's inequality descriptions).
// Orientation O -> Q -> P is counterclockwise since Q lies below the diagonal.
inline RegionClassification classify_in_delta(const ExponentPoint& pt,
                                              const ExponentParams& params) {
  auto [O, P, Q] = vertices_OPQ(params);
  auto res = classify_convex(pt, {O, Q, P}, {"O", "Q", "P"});
  if (res.status == RegionStatus::boundary) {
    if (res.boundary_label == "[P,O]" || res.boundary_label == "[O,P]")
      res.boundary_label = "[O,P] diagonal";
    else if (res.boundary_label == "[Q,P]")
      res.boundary_label = "[P,Q]";
    else if (res.boundary_label == "[O,Q]")
      res.boundary_label = "[Q,O]";
  }
  return res;
}

inline RegionClassification classify_in_hull(const ExponentPoint& pt,
                                             const ExponentParams& params) {
  auto [O, P, Q] = vertices_OPQ(params);
  auto [R, kind] = point_R(params);
  (void)kind;
  // Convex hull of {O, P, Q, R}: gift-wrap over the four labelled points,
  // dropping collinear interior points so degenerate configurations still
  // classify cleanly.
  std::vector<std::pair<ExponentPoint, std::string>> pts = {
      {O, "O"}, {P, "P"}, {Q, "Q"}, {R, "R"}};
  // Deduplicate.
  std::vector<std::pair<ExponentPoint, std::string>> uniq;
  for (auto& p : pts) {
    bool dup = false;
    for (auto& u : uniq) dup = dup || u.first == p.first;
    if (!dup) uniq.push_back(p);
  }
  // Start at lowest-then-leftmost point; wrap counterclockwise.
  size_t start = 0;
  for (size_t i = 1; i < uniq.size(); ++i)
    if (uniq[i].first.y < uniq[start].first.y ||
        (uniq[i].first.y == uniq[start].first.y && uniq[i].first.x < uniq[start].first.x))
      start = i;
  std::vector<size_t> hull;
  size_t cur = start;
  do {
    hull.push_back(cur);
    size_t next = (cur + 1) % uniq.size();
    for (size_t i = 0; i < uniq.size(); ++i) {
      if (i == cur) continue;
      Rat c = detail::cross(uniq[cur].first, uniq[next].first, uniq[i].first);
      if (c < 0) next = i;
      else if (c == 0) {
        // keep the farther point
        Rat d1 = (uniq[next].first.x - uniq[cur].first.x) * (uniq[next].first.x - uniq[cur].first.x) +
                 (uniq[next].first.y - uniq[cur].first.y) * (uniq[next].first.y - uniq[cur].first.y);
        Rat d2 = (uniq[i].first.x - uniq[cur].first.x) * (uniq[i].first.x - uniq[cur].first.x) +
                 (uniq[i].first.y - uniq[cur].first.y) * (uniq[i].first.y - uniq[cur].first.y);
        if (d2 > d1) next = i;
      }
    }
    cur = next;
  } while (cur != start && hull.size() <= uniq.size());
  std::vector<ExponentPoint> poly;
  std::vector<std::string> names;
  for (size_t i : hull) {
    poly.push_back(uniq[i].first);
    names.push_back(uniq[i].second);
  }
  if (poly.size() < 3) {
    // All points collinear: boundary iff on the segment.
    for (size_t i = 0; i + 1 < poly.size(); ++i)
      if (detail::on_segment(poly[i], poly[i + 1], pt))
        return {RegionStatus::boundary, "[" + names[i] + "," + names[i + 1] + "]"};
    for (size_t i = 0; i < poly.size(); ++i)
      if (pt == poly[i]) return {RegionStatus::boundary, "{" + names[i] + "}"};
    return {RegionStatus::exterior, ""};
  }
  return classify_convex(pt, poly, names);
}

// Eq. (4.4): 2a + (d-b-1)/q >= (d+2a-b)/p, evaluated at pt = (1/p, 1/q).
inline bool necessary_condition_abd(const ExponentPoint& pt, const ExponentParams& params) {
  params.validate();
  Rat d = params.d;
  return 2 * params.a + (d - params.b - 1) * pt.y >= (d + 2 * params.a - params.b) * pt.x;
}

struct InterpolationDatum {
  ExtExp p0, q0, p1, q1;
  Rat eps0, eps1;
  Rat theta;
  Rat inv_p, inv_q;  // 1/p = theta/p0 + (1-theta)/p1, same for q
};

inline InterpolationDatum bourgain_interpolate(const ExtExp& p0, const ExtExp& q0, const Rat& eps0,
                                               const ExtExp& p1, const ExtExp& q1, const Rat& eps1) {
  if (eps0 <= 0 || eps1 <= 0) throw std::domain_error("interpolation requires positive epsilons");
  Rat theta = eps1 / (eps0 + eps1);
  InterpolationDatum out{p0, q0, p1, q1, eps0, eps1, theta,
                         theta * p0.reciprocal() + (1 - theta) * p1.reciprocal(),
                         theta * q0.reciprocal() + (1 - theta) * q1.reciprocal()};
  return out;
}

struct SphereHull {
  ExponentPoint O, P2, P3, P4;
};

inline SphereHull sphere_hull(int d) {
  if (d < 2) throw std::domain_error("sphere_hull requires d >= 2");
  Rat dd = d;
  return {ExponentPoint{0, 0},
          ExponentPoint{(dd - 1) / dd, (dd - 1) / dd},
          ExponentPoint{(dd - 1) / dd, 1 / dd},
          ExponentPoint{dd * (dd - 1) / (dd * dd + 1), (dd - 1) / (dd * dd + 1)}};
}

// Exponent of Eq. (4.9): (d - delta - 2a(delta+1)) / (2(delta+1)).
inline Rat strichartz_exponent(const ExponentParams& params) {
  if (!params.delta) throw std::domain_error("strichartz exponent requires delta");
  Rat dl = *params.delta;
  return (Rat(params.d) - dl - 2 * params.a * (dl + 1)) / (2 * (dl + 1));
}

}  // namespace maxlab
