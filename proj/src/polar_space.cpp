#include "hyperlines/polar_space.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace hyperlines {

namespace {

std::uint64_t encode(const FiniteField& F, const Vector& v) {
  std::uint64_t key = 0;
  for (auto it = v.rbegin(); it != v.rend(); ++it)
    key = key * static_cast<std::uint64_t>(F.q()) + it->idx;
  return key;
}

// Bilinear matrix driving perp: the Gram matrix itself for hermitian kind,
// the polarization G + G^T for quadratic kind.
std::vector<FieldElement> bilinear_matrix(const GramForm& form) {
  const FiniteField& F = form.field();
  const int d = form.dim();
  std::vector<FieldElement> b(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      b[static_cast<std::size_t>(i) * d + j] =
          form.kind() == FormKind::hermitian
              ? form.gram(i, j)
              : F.add(form.gram(i, j), form.gram(j, i));
  return b;
}

bool values_form_subfield(const FiniteField& F, const std::vector<FieldElement>& s) {
  std::vector<char> in(static_cast<std::size_t>(F.q()), 0);
  for (auto e : s) in[e.idx] = 1;
  if (!in[0] || !in[1]) return false;
  // finite and closed under + and * with 0 and 1 present pins a subfield
  for (auto a : s)
    for (auto b : s)
      if (!in[F.add(a, b).idx] || !in[F.mul(a, b).idx]) return false;
  return true;
}

}  // namespace

std::vector<Vector> isotropic_points(const GramForm& form) {
  const FiniteField& F = form.field();
  const int d = form.dim();
  const int q = F.q();
  std::vector<Vector> pts;
  // first nonzero coordinate fixed to 1; descending pivot plus a suffix
  // odometer yields lex order on digit strings
  for (int pivot = d - 1; pivot >= 0; --pivot) {
    Vector v = zero_vector(d);
    v[static_cast<std::size_t>(pivot)] = F.one();
    while (true) {
      if (form.is_isotropic(v)) pts.push_back(v);
      int i = d - 1;
      while (i > pivot && v[static_cast<std::size_t>(i)].idx == q - 1) {
        v[static_cast<std::size_t>(i)] = F.zero();
        --i;
      }
      if (i == pivot) break;
      v[static_cast<std::size_t>(i)] = F.element(v[static_cast<std::size_t>(i)].idx + 1);
    }
  }
  return pts;
}

PolarSpace::PolarSpace(GramForm form) : form_(std::move(form)) {
  const FiniteField& F = form_.field();
  const int d = form_.dim();
  points_ = isotropic_points(form_);
  empty_warning_ = points_.empty();
  const int n = static_cast<int>(points_.size());
  index_.reserve(static_cast<std::size_t>(n) * 2);
  for (int i = 0; i < n; ++i) index_[encode(F, points_[static_cast<std::size_t>(i)])] = i;

  // f(v, w) = sum_i sigma(v_i) * (B w)_i with B the bilinear matrix
  const std::vector<FieldElement> B = bilinear_matrix(form_);
  const bool sig = form_.kind() == FormKind::hermitian && form_.uses_sigma();
  std::vector<Vector> bw(static_cast<std::size_t>(n), zero_vector(d));
  std::vector<Vector> sv(static_cast<std::size_t>(n), zero_vector(d));
  for (int j = 0; j < n; ++j) {
    const Vector& w = points_[static_cast<std::size_t>(j)];
    for (int i = 0; i < d; ++i) {
      FieldElement acc = F.zero();
      for (int k = 0; k < d; ++k)
        acc = F.add(acc, F.mul(B[static_cast<std::size_t>(i) * d + k],
                               w[static_cast<std::size_t>(k)]));
      bw[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = acc;
      sv[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          sig ? F.sigma(w[static_cast<std::size_t>(i)]) : w[static_cast<std::size_t>(i)];
    }
  }
  perp_.assign(static_cast<std::size_t>(n), Bitset(n));
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      FieldElement acc = F.zero();
      for (int k = 0; k < d; ++k)
        acc = F.add(acc, F.mul(sv[static_cast<std::size_t>(x)][static_cast<std::size_t>(k)],
                               bw[static_cast<std::size_t>(y)][static_cast<std::size_t>(k)]));
      if (F.is_zero(acc)) {
        perp_[static_cast<std::size_t>(x)].set(y);
        perp_[static_cast<std::size_t>(y)].set(x);
      }
    }
    // singular points are self-perp under both kinds
    assert(perp_[static_cast<std::size_t>(x)].test(x));
  }

  // lines: spans of perp point pairs are totally singular, emitted once at
  // their lexicographically least generating pair
  for (int x = 0; x < n; ++x) {
    const Bitset& px = perp_[static_cast<std::size_t>(x)];
    for (int y = px.find_next(x); y >= 0; y = px.find_next(y)) {
      std::vector<int> ids;
      ids.reserve(static_cast<std::size_t>(F.q()) + 1);
      ids.push_back(y);
      for (int c = 0; c < F.q(); ++c) {
        Vector u = vec_add(F, points_[static_cast<std::size_t>(x)],
                           vec_scale(F, F.element(c), points_[static_cast<std::size_t>(y)]));
        int id = point_index(u);
        assert(id >= 0);
        ids.push_back(id);
      }
      std::sort(ids.begin(), ids.end());
      assert(std::unique(ids.begin(), ids.end()) == ids.end());
      if (ids[0] == x && ids[1] == y) lines_.push_back(std::move(ids));
    }
  }
  assert(std::is_sorted(lines_.begin(), lines_.end()));
}

int PolarSpace::point_index(const Vector& v) const {
  auto it = index_.find(encode(form_.field(), normalize(form_.field(), v)));
  return it == index_.end() ? -1 : it->second;
}

PolarSpace build_polar(const GramForm& form) { return PolarSpace(form); }

CheckReport check_one_or_all(const std::vector<Bitset>& perp,
                             const std::vector<std::vector<int>>& lines,
                             int witness_cap) {
  CheckReport report("one_or_all", witness_cap);
  const int n = static_cast<int>(perp.size());
  std::vector<Bitset> line_masks;
  line_masks.reserve(lines.size());
  for (const auto& l : lines) {
    Bitset m(n);
    for (int p : l) m.set(p);
    line_masks.push_back(std::move(m));
  }
  long long scanned = 0;
  for (int p = 0; p < n; ++p) {
    for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
      if (line_masks[static_cast<std::size_t>(li)].test(p)) continue;
      ++scanned;
      const int c = (perp[static_cast<std::size_t>(p)] &
                     line_masks[static_cast<std::size_t>(li)])
                        .count();
      const int sz = static_cast<int>(lines[static_cast<std::size_t>(li)].size());
      if (c != 1 && c != sz) report.add_witness({p, li, c});
    }
  }
  report.stats["points"] = n;
  report.stats["lines"] = static_cast<long long>(lines.size());
  report.stats["pairs_scanned"] = scanned;
  return report;
}

CheckReport check_one_or_all(const PolarSpace& S, int witness_cap) {
  return check_one_or_all(S.perps(), S.lines(), witness_cap);
}

std::vector<int> polar_radical(const PolarSpace& S) {
  std::vector<int> rad;
  for (int x = 0; x < S.num_points(); ++x)
    if (S.perp(x).count() == S.num_points()) rad.push_back(x);
  return rad;
}

bool is_nondegenerate(const PolarSpace& S) { return polar_radical(S).empty(); }

namespace {

// intersection of perp[u] over all u in the double perp's inner set
Bitset double_perp(const std::vector<Bitset>& perp, const Bitset& inner) {
  const int n = static_cast<int>(perp.size());
  Bitset h(n);
  int u = inner.find_first();
  if (u < 0) {
    for (int i = 0; i < n; ++i) h.set(i);
    return h;
  }
  h = perp[static_cast<std::size_t>(u)];
  for (u = inner.find_next(u); u >= 0; u = inner.find_next(u))
    h &= perp[static_cast<std::size_t>(u)];
  return h;
}

}  // namespace

std::vector<int> hyperbolic_line(const PolarSpace& S, int x, int y) {
  if (x == y) throw std::invalid_argument("hyperbolic_line needs distinct points");
  if (S.perp_rel(x, y)) throw std::invalid_argument("hyperbolic_line needs a non-perp pair");
  Bitset inner = S.perp(x) & S.perp(y);
  return double_perp(S.perps(), inner).to_vector();
}

PartialLinearSpace hyperbolic_geometry(const PolarSpace& S) {
  if (!is_nondegenerate(S))
    throw std::domain_error("hyperbolic geometry needs a non-degenerate space");
  const int n = S.num_points();
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> lines;
  // a computed double perp covers all its non-perp pairs, so mark them off
  std::vector<char> done(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (S.perp_rel(x, y)) continue;
      if (done[static_cast<std::size_t>(x) * n + y]) continue;
      Bitset inner = S.perp(x) & S.perp(y);
      std::vector<int> h = double_perp(S.perps(), inner).to_vector();
      for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j) {
          done[static_cast<std::size_t>(h[i]) * n + h[j]] = 1;
          done[static_cast<std::size_t>(h[j]) * n + h[i]] = 1;
        }
      if (seen.insert(h).second) lines.push_back(std::move(h));
    }
  }
  return PartialLinearSpace(n, std::move(lines));
}

namespace {

int rank_dfs(const std::vector<Bitset>& perp, const PartialLinearSpace& singular,
             const Bitset& span, const Bitset& cands, int from, int depth, int cap) {
  int best = depth;
  for (int x = cands.find_next(from); x >= 0; x = cands.find_next(x)) {
    if (cap >= 0 && best >= cap) return best;
    if (span.test(x)) continue;
    Bitset nspan = span;
    nspan.set(x);
    nspan = closure(singular, nspan);
    Bitset ncands = cands & perp[static_cast<std::size_t>(x)];
    const int r = rank_dfs(perp, singular, nspan, ncands, x, depth + 1, cap);
    if (r > best) best = r;
  }
  return best;
}

}  // namespace

int abstract_polar_rank(const std::vector<Bitset>& perp,
                        const PartialLinearSpace& singular, int cap) {
  const int n = static_cast<int>(perp.size());
  if (n == 0) return 0;
  Bitset all(n);
  for (int i = 0; i < n; ++i) all.set(i);
  return rank_dfs(perp, singular, Bitset(n), all, -1, 0, cap);
}

int polar_rank(const PolarSpace& S) {
  PartialLinearSpace singular(S.num_points(), S.lines());
  // the Witt bound caps chains of singular subspaces for any reflexive form
  return abstract_polar_rank(S.perps(), singular, S.form().dim() / 2);
}

GQOrder gq_order(const PartialLinearSpace& pls) {
  if (pls.num_lines() == 0) throw std::domain_error("gq_order needs lines");
  const int s = static_cast<int>(pls.line(0).size()) - 1;
  for (int l = 1; l < pls.num_lines(); ++l)
    if (static_cast<int>(pls.line(l).size()) - 1 != s)
      throw std::domain_error("gq_order needs a constant line size");
  const int t = static_cast<int>(pls.lines_on(0).size()) - 1;
  for (int x = 1; x < pls.n(); ++x)
    if (static_cast<int>(pls.lines_on(x).size()) - 1 != t)
      throw std::domain_error("gq_order needs a constant point degree");
  return {s, t};
}

GQOrder gq_order(const PolarSpace& S) {
  return gq_order(PartialLinearSpace(S.num_points(), S.lines()));
}

ScalarSetVerdict check_prop_2_6(const GramForm& form) {
  const FiniteField& F = form.field();
  ScalarSetVerdict v;
  if (form.kind() == FormKind::hermitian && form.uses_sigma()) {
    SigmaEpsilonSets sets = sigma_epsilon_sets(F, form.eps(), true);
    v.scalars = std::move(sets.lower);
    v.is_subfield = sets.lower_is_subfield;
  } else if (form.kind() == FormKind::hermitian) {
    // alternating form: the scalar set fills the field in odd
    // characteristic via doubling and in characteristic 2 via squaring
    v.scalars.reserve(static_cast<std::size_t>(F.q()));
    for (int i = 0; i < F.q(); ++i) v.scalars.push_back(F.element(i));
    v.is_subfield = true;
  } else {
    v.scalars = phi_q(form);
    v.is_subfield = values_form_subfield(F, v.scalars);
  }
  v.holds = v.is_subfield && v.scalars.size() >= 3;
  return v;
}

}  // namespace hyperlines
