#include <catch2/catch_amalgamated.hpp>

#include "maxlab/exponents.hpp"

using namespace maxlab;

TEST_CASE("critical_p_a") {
  CHECK(critical_p_a(1) == Rat(3, 2));
  CHECK(critical_p_a(2) == Rat(5, 4));
  CHECK_THROWS_AS(critical_p_a(Rat(1, 2)), std::domain_error);
  // p_a((d-1)/2) = d/(d-1) for d = 3..12 (d = 2 gives a = 1/2, out of range)
  for (int d = 3; d <= 12; ++d)
    CHECK(critical_p_a(Rat(d - 1, 2)) == Rat(d, d - 1));
}

TEST_CASE("critical_p_ab") {
  for (int d = 1; d <= 12; ++d)
    for (Rat alpha : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
      ExponentParams p{d, Rat(d - 1, 2) + alpha, Rat(d - 1) + alpha, {}};
      if (p.b > d || p.a <= Rat(1, 2)) continue;
      CHECK(critical_p_ab(p) == Rat(d) / (Rat(d - 1) + alpha));
    }
  ExponentParams sphere_like{3, 1, 2, {}};
  CHECK(critical_p_ab(sphere_like) == critical_p_a(1));
  ExponentParams full{3, 1, 3, {}};
  CHECK(critical_p_ab(full) == 1);
}

TEST_CASE("p_ab vs p_a ordering") {
  CHECK(p_ab_less_than_p_a({3, 1, Rat(5, 2), {}}));
  CHECK_FALSE(p_ab_less_than_p_a({3, 1, 2, {}}));
  CHECK_FALSE(p_ab_less_than_p_a({2, Rat(3, 4), Rat(1, 2), {}}));
  // iff across a sweep
  for (int d = 2; d <= 6; ++d)
    for (int an = 3; an <= 9; an += 2)
      for (int bn = 1; bn < 4 * d; ++bn) {
        ExponentParams p{d, Rat(an, 4), Rat(bn, 4), {}};
        if (p.b > d) continue;
        CHECK(p_ab_less_than_p_a(p) == (p.b > Rat(d - 1)));
      }
}

TEST_CASE("vertices_OPQ") {
  auto v = vertices_OPQ({3, 1, 2, {}});
  CHECK(v.O == ExponentPoint{0, 0});
  CHECK(v.P == ExponentPoint{Rat(2, 3), Rat(2, 3)});
  CHECK(v.Q == ExponentPoint{Rat(2, 3), Rat(1, 3)});
  auto w = vertices_OPQ({2, Rat(3, 4), 1, {}});
  CHECK(w.P == ExponentPoint{Rat(3, 5), Rat(3, 5)});
  CHECK(w.Q == ExponentPoint{Rat(3, 5), Rat(2, 5)});
  CHECK(w.Q.y == 1 - w.Q.x);
}

TEST_CASE("point_R cases") {
  // sphere: a = delta = (d-1)/2, b = d-1 -> R1 closed form
  for (int d = 3; d <= 12; ++d) {
    ExponentParams p{d, Rat(d - 1, 2), d - 1, Rat(d - 1, 2)};
    auto [R, kind] = point_R(p);
    CHECK(kind == PointRResult::Case::R1);
    CHECK(R.x == Rat(d) * (d - 1) / (Rat(d) * d + 1));
    CHECK(R.y == Rat(d - 1) / (Rat(d) * d + 1));
  }
  {
    // 2a(delta+1) = d here, so the degenerate flag fires; value is still R_2
    ExponentParams p{4, 1, 2, Rat(1)};
    auto [R, kind] = point_R(p);
    CHECK(kind == PointRResult::Case::degenerate);
    CHECK(R == ExponentPoint{Rat(1, 2), Rat(1, 4)});
  }
  {
    // strict R2: 2a(delta+1) = 3 < 4
    ExponentParams p{4, Rat(3, 4), 1, Rat(1)};
    auto [R, kind] = point_R(p);
    CHECK(kind == PointRResult::Case::R2);
    CHECK(R == ExponentPoint{Rat(1, 2), Rat(3, 8)});
  }
  for (int n = 4; n <= 8; ++n) {  // d = 2n, a = delta = n/2, b = n
    ExponentParams p{2 * n, Rat(n, 2), n, Rat(n, 2)};
    auto [R, kind] = point_R(p);
    CHECK(kind == PointRResult::Case::R1);
    CHECK(R == ExponentPoint{Rat(2 * n, 3 * n + 2), Rat(n, 3 * n + 2)});
  }
  {
    // 2a(delta+1) = d exactly -> degenerate flag, R2 value
    ExponentParams p{4, 1, 1, Rat(1)};
    auto [R, kind] = point_R(p);
    CHECK(kind == PointRResult::Case::degenerate);
    CHECK(R.x == Rat(1, 2));
  }
  CHECK_THROWS_AS(point_R({3, 1, 3, Rat(1, 2)}), std::domain_error);
}

TEST_CASE("classify_in_delta") {
  ExponentParams p{3, 1, 2, {}};
  CHECK(classify_in_delta({Rat(1, 2), Rat(3, 8)}, p).status == RegionStatus::interior);
  auto verO = classify_in_delta({0, 0}, p);
  CHECK(verO.status == RegionStatus::boundary);
  CHECK(verO.boundary_label == "{O}");
  auto pq = classify_in_delta({Rat(2, 3), Rat(1, 2)}, p);
  CHECK(pq.status == RegionStatus::boundary);
  CHECK(pq.boundary_label == "[P,Q]");
  auto diag = classify_in_delta({Rat(1, 3), Rat(1, 3)}, p);
  CHECK(diag.status == RegionStatus::boundary);
  CHECK(diag.boundary_label == "[O,P] diagonal");
  CHECK(classify_in_delta({Rat(3, 4), Rat(1, 4)}, p).status == RegionStatus::exterior);
  CHECK(classify_in_delta({Rat(1, 2), Rat(2, 3)}, p).status == RegionStatus::exterior);
}

TEST_CASE("R outside Delta on rational sweep") {
  // 200+ parameter tuples with 2a + delta > b
  int count = 0;
  for (int d = 2; d <= 6; ++d)
    for (int an = 3; an <= 11; an += 2)
      for (int bn = 1; bn <= 3 * d; bn += 2)
        for (int dn = 1; dn <= 4; ++dn) {
          ExponentParams p{d, Rat(an, 4), Rat(bn, 4), Rat(dn, 2)};
          if (p.b > d) continue;
          if (2 * p.a + *p.delta <= p.b) continue;
          auto [R, kind] = point_R(p);
          (void)kind;
          CHECK(classify_in_delta(R, p).status == RegionStatus::exterior);
          ++count;
        }
  CHECK(count >= 200);
}

TEST_CASE("classify_in_hull") {
  ExponentParams p{3, 1, 2, Rat(1)};
  auto atR = classify_in_hull({Rat(3, 5), Rat(1, 5)}, p);
  CHECK(atR.status == RegionStatus::boundary);
  CHECK(atR.boundary_label == "{R}");
  auto atO = classify_in_hull({0, 0}, p);
  CHECK(atO.status == RegionStatus::boundary);
  CHECK(atO.boundary_label == "{O}");
  CHECK(classify_in_hull({Rat(3, 5), Rat(3, 10)}, p).status == RegionStatus::interior);
  CHECK(classify_in_hull({Rat(9, 10), Rat(1, 10)}, p).status == RegionStatus::exterior);
}

TEST_CASE("necessary_condition_abd") {
  ExponentParams p{4, 1, 2, {}};  // 2a = b = 2, k-specialization
  CHECK(necessary_condition_abd({Rat(1, 2), Rat(1, 4)}, p));
  CHECK(necessary_condition_abd({0, 0}, p));
  CHECK_FALSE(necessary_condition_abd({Rat(3, 4), Rat(1, 4)}, p));
}

TEST_CASE("bourgain_interpolate") {
  auto sym = bourgain_interpolate(ExtExp::finite(2), ExtExp::finite(2), 1,
                                  ExtExp::finite(1), ExtExp::finite(1), 1);
  CHECK(sym.theta == Rat(1, 2));
  // L2 with eps0 = a - 1/2 against L1 with eps1 = d - b reproduces p_(a,b)
  for (int d = 2; d <= 5; ++d)
    for (int an = 3; an <= 9; an += 2)
      for (int bn = 1; bn < 2 * d; ++bn) {
        ExponentParams p{d, Rat(an, 4), Rat(bn, 2), {}};
        if (p.b > d || p.b >= d) continue;
        auto datum = bourgain_interpolate(ExtExp::finite(2), ExtExp::finite(2), p.a - Rat(1, 2),
                                          ExtExp::finite(1), ExtExp::finite(1), Rat(d) - p.b);
        CHECK(datum.inv_p == 1 / critical_p_ab(p));
        CHECK(datum.theta > 0);
        CHECK(datum.theta < 1);
      }
  // Strichartz-side instance reproduces R_1 for the d=3 sphere
  {
    ExponentParams p{3, 1, 2, Rat(1)};
    Rat dl = *p.delta;
    auto datum = bourgain_interpolate(
        ExtExp::finite(2), ExtExp::finite(2 * (dl + 1) / dl),
        (2 * p.a * (dl + 1) - p.d) / (2 * (dl + 1)),
        ExtExp::finite(1), ExtExp::inf(), Rat(p.d) - p.b);
    auto [R, kind] = point_R(p);
    (void)kind;
    CHECK(datum.inv_p == R.x);
    CHECK(datum.inv_q == R.y);
  }
  CHECK_THROWS_AS(bourgain_interpolate(ExtExp::finite(2), ExtExp::finite(2), 0,
                                       ExtExp::finite(1), ExtExp::finite(1), 1),
                  std::domain_error);
}

TEST_CASE("sphere_hull") {
  auto h3 = sphere_hull(3);
  CHECK(h3.P2 == ExponentPoint{Rat(2, 3), Rat(2, 3)});
  CHECK(h3.P3 == ExponentPoint{Rat(2, 3), Rat(1, 3)});
  CHECK(h3.P4 == ExponentPoint{Rat(3, 5), Rat(1, 5)});
  auto h2 = sphere_hull(2);
  CHECK(h2.P2 == h2.P3);
  CHECK_THROWS_AS(sphere_hull(1), std::domain_error);
  // coincidence with the general machinery for 3 <= d <= 12 (R_1 regime)
  for (int d = 3; d <= 12; ++d) {
    ExponentParams p{d, Rat(d - 1, 2), d - 1, Rat(d - 1, 2)};
    auto v = vertices_OPQ(p);
    auto h = sphere_hull(d);
    CHECK(v.P == h.P2);
    CHECK(v.Q == h.P3);
    CHECK(point_R(p).R == h.P4);
  }
}

TEST_CASE("strichartz_exponent") {
  CHECK(strichartz_exponent({2, Rat(1, 2), 1, Rat(1, 2)}) == 0);
  CHECK(strichartz_exponent({3, 1, 2, Rat(1)}) == Rat(-1, 2));
}

TEST_CASE("rational parsing round trip") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-7") == Rat(-7));
  CHECK(rat_str(Rat(3, 4)) == "3/4");
  CHECK(rat_str(Rat(5)) == "5");
  CHECK_THROWS_AS(parse_rat("1/0"), std::domain_error);
}
