#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "hyperlines/polar_space.hpp"

using namespace hyperlines;

namespace {

PolarSpace make(FormFamily fam, int d, int p, int k = 1) {
  FiniteField F(p, k);
  return build_polar(standard_form(fam, d, F));
}

struct Counts {
  int points, lines, line_size, lines_per_point, rank;
};

void check_counts(const PolarSpace& S, Counts c) {
  CHECK(S.num_points() == c.points);
  CHECK(S.num_lines() == c.lines);
  std::vector<int> on_point(static_cast<std::size_t>(S.num_points()), 0);
  for (int l = 0; l < S.num_lines(); ++l) {
    CHECK(static_cast<int>(S.line(l).size()) == c.line_size);
    for (int x : S.line(l)) ++on_point[static_cast<std::size_t>(x)];
    // lines are pairwise perp cliques
    for (std::size_t i = 0; i < S.line(l).size(); ++i)
      for (std::size_t j = i; j < S.line(l).size(); ++j)
        CHECK(S.perp_rel(S.line(l)[i], S.line(l)[j]));
  }
  for (int x = 0; x < S.num_points(); ++x) CHECK(on_point[static_cast<std::size_t>(x)] == c.lines_per_point);
  CHECK(polar_rank(S) == c.rank);
  CHECK(is_nondegenerate(S));
  CHECK(check_one_or_all(S).pass());
}

}  // namespace

TEST_CASE("symplectic spaces") {
  check_counts(make(FormFamily::symplectic, 4, 2), {15, 15, 3, 3, 2});
  check_counts(make(FormFamily::symplectic, 4, 3), {40, 40, 4, 4, 2});
  check_counts(make(FormFamily::symplectic, 4, 2, 2), {85, 85, 5, 5, 2});
  check_counts(make(FormFamily::symplectic, 6, 2), {63, 315, 3, 15, 3});
}

TEST_CASE("hermitian spaces") {
  check_counts(make(FormFamily::hermitian, 4, 2, 2), {45, 27, 5, 3, 2});
  check_counts(make(FormFamily::hermitian, 4, 3, 2), {280, 112, 10, 4, 2});
}

TEST_CASE("orthogonal spaces") {
  check_counts(make(FormFamily::orthogonal_parabolic, 5, 2), {15, 15, 3, 3, 2});
  check_counts(make(FormFamily::orthogonal_parabolic, 5, 3), {40, 40, 4, 4, 2});
  check_counts(make(FormFamily::orthogonal_hyperbolic, 4, 3), {16, 8, 4, 2, 2});

  PolarSpace minus = make(FormFamily::orthogonal_elliptic, 4, 3);
  CHECK(minus.num_points() == 10);
  CHECK(minus.num_lines() == 0);
  CHECK(polar_rank(minus) == 1);
  CHECK_THROWS_AS(gq_order(minus), std::domain_error);
}

TEST_CASE("empty space warning") {
  PolarSpace e = make(FormFamily::orthogonal_elliptic, 2, 2);
  CHECK(e.num_points() == 0);
  CHECK(e.num_lines() == 0);
  CHECK(e.empty_warning());
  CHECK(polar_rank(e) == 0);
  CHECK(!make(FormFamily::symplectic, 4, 2).empty_warning());
}

TEST_CASE("point ordering and lookup") {
  PolarSpace S = make(FormFamily::symplectic, 4, 3);
  const FiniteField& F = S.field();
  // lex order: first point is the last axis
  CHECK(S.point(0) == Vector{F.zero(), F.zero(), F.zero(), F.one()});
  for (int i = 0; i + 1 < S.num_points(); ++i) {
    auto key = [&](const Vector& v) {
      std::vector<int> k;
      for (auto e : v) k.push_back(e.idx);
      return k;
    };
    CHECK(key(S.point(i)) < key(S.point(i + 1)));
  }
  // lookup normalizes
  for (int i = 0; i < S.num_points(); ++i) {
    CHECK(S.point_index(S.point(i)) == i);
    Vector doubled = vec_scale(F, F.element(2), S.point(i));
    CHECK(S.point_index(doubled) == i);
  }
  CHECK(S.point_index(zero_vector(4)) == -1);
}

TEST_CASE("one or all fails on a corrupted line") {
  PolarSpace S = make(FormFamily::symplectic, 4, 3);
  std::vector<std::vector<int>> lines = S.lines();
  lines[0].pop_back();
  CheckReport r = check_one_or_all(S.perps(), lines);
  CHECK(!r.pass());
  REQUIRE(!r.witnesses.empty());
  CHECK(r.witnesses[0][1] == 0);  // the trimmed line
  CHECK(r.witnesses[0][2] == 0);  // its lone perp there was removed
}

TEST_CASE("degenerate radical") {
  // symplectic form padded with a dead coordinate
  FiniteField F(3, 1);
  std::vector<FieldElement> g(25, F.zero());
  g[0 * 5 + 1] = F.one();
  g[1 * 5 + 0] = F.neg(F.one());
  g[2 * 5 + 3] = F.one();
  g[3 * 5 + 2] = F.neg(F.one());
  PolarSpace S = build_polar(GramForm::hermitian(F, 5, std::move(g), false, F.neg(F.one())));
  std::vector<int> rad = polar_radical(S);
  REQUIRE(rad.size() == 1);
  // the dead axis is the lex-first point
  CHECK(rad[0] == 0);
  CHECK(S.point(0) == Vector{F.zero(), F.zero(), F.zero(), F.zero(), F.one()});
  CHECK(!is_nondegenerate(S));
  CHECK_THROWS_AS(hyperbolic_geometry(S), std::domain_error);
}

TEST_CASE("strict perp separation") {
  PolarSpace S = make(FormFamily::symplectic, 4, 3);
  for (int x = 0; x < S.num_points(); ++x)
    for (int y = 0; y < S.num_points(); ++y)
      if (x != y) CHECK(!S.perp(x).subset_of(S.perp(y)));
}

TEST_CASE("hyperbolic lines") {
  PolarSpace S = make(FormFamily::symplectic, 4, 3);
  for (int x = 0; x < S.num_points(); ++x)
    for (int y = x + 1; y < S.num_points(); ++y) {
      if (S.perp_rel(x, y)) continue;
      std::vector<int> h = hyperbolic_line(S, x, y);
      CHECK(h.size() == 4);
      CHECK(std::binary_search(h.begin(), h.end(), x));
      CHECK(std::binary_search(h.begin(), h.end(), y));
    }
  CHECK_THROWS_AS(hyperbolic_line(S, 3, 3), std::invalid_argument);
  int x = 0, y = S.perp(0).find_next(0);
  CHECK_THROWS_AS(hyperbolic_line(S, x, y), std::invalid_argument);

  PolarSpace H9 = make(FormFamily::hermitian, 4, 3, 2);
  int cnt = 0;
  for (int a = 0; a < H9.num_points() && cnt < 50; ++a)
    for (int b = a + 1; b < H9.num_points() && cnt < 50; ++b) {
      if (H9.perp_rel(a, b)) continue;
      CHECK(hyperbolic_line(H9, a, b).size() == 4);
      ++cnt;
    }
}

TEST_CASE("double perp pairs regenerate their line") {
  for (auto fam : {FormFamily::symplectic, FormFamily::hermitian}) {
    PolarSpace S = fam == FormFamily::symplectic ? make(fam, 4, 2) : make(fam, 4, 2, 2);
    PartialLinearSpace pi = hyperbolic_geometry(S);
    for (int l = 0; l < pi.num_lines(); ++l) {
      const std::vector<int>& h = pi.line(l);
      for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j) {
          CHECK(!S.perp_rel(h[i], h[j]));
          CHECK(hyperbolic_line(S, h[i], h[j]) == h);
        }
    }
  }
}

TEST_CASE("hyperbolic geometries") {
  struct Row {
    FormFamily fam;
    int d, p, k, lines, size;
  };
  const Row rows[] = {
      {FormFamily::symplectic, 4, 2, 1, 20, 3},
      {FormFamily::symplectic, 4, 3, 1, 90, 4},
      {FormFamily::symplectic, 4, 2, 2, 272, 5},
      {FormFamily::symplectic, 6, 2, 1, 336, 3},
      {FormFamily::hermitian, 4, 2, 2, 240, 3},
      {FormFamily::hermitian, 4, 3, 2, 5670, 4},
      {FormFamily::orthogonal_parabolic, 5, 2, 1, 20, 3},
      {FormFamily::orthogonal_parabolic, 5, 3, 1, 540, 2},
      {FormFamily::orthogonal_hyperbolic, 4, 3, 1, 72, 2},
  };
  for (const Row& r : rows) {
    PolarSpace S = make(r.fam, r.d, r.p, r.k);
    PartialLinearSpace pi = hyperbolic_geometry(S);
    CHECK(pi.n() == S.num_points());
    CHECK(pi.num_lines() == r.lines);
    for (int l = 0; l < pi.num_lines(); ++l) CHECK(static_cast<int>(pi.line(l).size()) == r.size);
    CHECK(validate_pls(pi).pass());
  }
}

TEST_CASE("perp conventions align") {
  for (auto fam : {FormFamily::symplectic, FormFamily::hermitian}) {
    PolarSpace S = fam == FormFamily::symplectic ? make(fam, 4, 3) : make(fam, 4, 2, 2);
    PartialLinearSpace pi = hyperbolic_geometry(S);
    for (int x = 0; x < S.num_points(); ++x) CHECK(pi.perp(x) == S.perp(x));
  }
}

TEST_CASE("hyperbolic lines are the singular vectors of their span") {
  for (auto fam : {FormFamily::symplectic, FormFamily::hermitian}) {
    PolarSpace S = fam == FormFamily::symplectic ? make(fam, 4, 3) : make(fam, 4, 3, 2);
    const FiniteField& F = S.field();
    PartialLinearSpace pi = hyperbolic_geometry(S);
    for (int l = 0; l < pi.num_lines(); ++l) {
      const std::vector<int>& h = pi.line(l);
      const Vector& vx = S.point(h[0]);
      const Vector& vy = S.point(h[1]);
      std::vector<int> span_pts;
      if (int id = S.point_index(vy); id >= 0) span_pts.push_back(id);
      for (int c = 0; c < F.q(); ++c) {
        Vector u = vec_add(F, vx, vec_scale(F, F.element(c), vy));
        if (int id = S.point_index(u); id >= 0) span_pts.push_back(id);
      }
      std::sort(span_pts.begin(), span_pts.end());
      CHECK(span_pts == h);
    }
  }
}

TEST_CASE("generalized quadrangle orders") {
  auto order = [](const PolarSpace& S) { return gq_order(S); };
  GQOrder o = order(make(FormFamily::symplectic, 4, 2));
  CHECK(o.s == 2);
  CHECK(o.t == 2);
  o = order(make(FormFamily::symplectic, 4, 3));
  CHECK(o.s == 3);
  CHECK(o.t == 3);
  o = order(make(FormFamily::hermitian, 4, 2, 2));
  CHECK(o.s == 4);
  CHECK(o.t == 2);
  o = order(make(FormFamily::hermitian, 4, 3, 2));
  CHECK(o.s == 9);
  CHECK(o.t == 3);
  // constancy is about incidence counts, not rank
  o = order(make(FormFamily::symplectic, 6, 2));
  CHECK(o.s == 2);
  CHECK(o.t == 14);

  CHECK_THROWS_AS(gq_order(PartialLinearSpace(4, {{0, 1, 2}, {0, 3}})), std::domain_error);
  CHECK_THROWS_AS(gq_order(PartialLinearSpace(3, {{0, 1}, {0, 2}})), std::domain_error);
}

TEST_CASE("scalar set criterion") {
  auto verdict = [](FormFamily fam, int d, int p, int k = 1) {
    FiniteField F(p, k);
    return check_prop_2_6(standard_form(fam, d, F));
  };
  ScalarSetVerdict v = verdict(FormFamily::symplectic, 4, 2);
  CHECK(!v.holds);
  CHECK(v.scalars.size() == 2);
  CHECK(v.is_subfield);

  v = verdict(FormFamily::symplectic, 4, 3);
  CHECK(v.holds);
  CHECK(v.scalars.size() == 3);

  v = verdict(FormFamily::symplectic, 4, 2, 2);
  CHECK(v.holds);
  CHECK(v.scalars.size() == 4);

  v = verdict(FormFamily::hermitian, 4, 2, 2);
  CHECK(!v.holds);
  CHECK(v.scalars.size() == 2);
  CHECK(v.is_subfield);

  v = verdict(FormFamily::hermitian, 4, 3, 2);
  CHECK(v.holds);
  CHECK(v.scalars.size() == 3);

  v = verdict(FormFamily::orthogonal_parabolic, 5, 2);
  CHECK(!v.holds);
  CHECK(v.scalars.size() == 2);
  CHECK(v.is_subfield);

  v = verdict(FormFamily::orthogonal_parabolic, 5, 3);
  CHECK(!v.holds);
  CHECK(v.scalars.size() == 1);
  CHECK(!v.is_subfield);

  v = verdict(FormFamily::orthogonal_hyperbolic, 4, 3);
  CHECK(!v.holds);
  CHECK(v.scalars.size() == 1);
}
