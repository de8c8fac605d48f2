#include "hyperlines/incidence.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace hyperlines {

PartialLinearSpace::PartialLinearSpace(int n, std::vector<std::vector<int>> lines)
    : n_(n), lines_(std::move(lines)) {
  if (n < 0) throw std::invalid_argument("negative point count");
  for (auto& l : lines_) {
    for (int p : l) {
      if (p < 0 || p >= n) throw std::invalid_argument("line point id out of range");
    }
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }

  line_masks_.reserve(lines_.size());
  adj_.assign(static_cast<std::size_t>(n), Bitset(n));
  lines_on_.assign(static_cast<std::size_t>(n), {});
  pair_line_.assign(static_cast<std::size_t>(n) * n, -1);

  for (int li = 0; li < static_cast<int>(lines_.size()); ++li) {
    const auto& l = lines_[static_cast<std::size_t>(li)];
    Bitset m(n);
    for (int p : l) {
      m.set(p);
      lines_on_[static_cast<std::size_t>(p)].push_back(li);
    }
    line_masks_.push_back(std::move(m));
    for (std::size_t i = 0; i < l.size(); ++i) {
      for (std::size_t j = i + 1; j < l.size(); ++j) {
        int x = l[i], y = l[j];
        int& slot = pair_line_[static_cast<std::size_t>(x) * n + y];
        if (slot >= 0 && slot != li) {
          pair_collisions_.push_back({x, y, slot, li});
        } else {
          slot = li;
          pair_line_[static_cast<std::size_t>(y) * n + x] = li;
        }
        adj_[static_cast<std::size_t>(x)].set(y);
        adj_[static_cast<std::size_t>(y)].set(x);
      }
    }
  }

  perp_.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    Bitset p = adj_[static_cast<std::size_t>(x)].complement();
    perp_.push_back(std::move(p));  // complement of irreflexive adj contains x
  }
}

CheckReport validate_pls(const PartialLinearSpace& pls, int witness_cap) {
  CheckReport r("validate_pls", witness_cap);
  long long thick3 = 0, thick4 = 0;
  int min_size = -1, max_size = 0;
  for (int li = 0; li < pls.num_lines(); ++li) {
    int sz = static_cast<int>(pls.line(li).size());
    if (sz < 2) r.add_witness({li});
    if (sz >= 3) ++thick3;
    if (sz >= 4) ++thick4;
    if (min_size < 0 || sz < min_size) min_size = sz;
    max_size = std::max(max_size, sz);
  }
  for (const auto& c : pls.pair_collisions()) r.add_witness({c[0], c[1], c[2], c[3]});
  r.stats["points"] = pls.n();
  r.stats["lines"] = pls.num_lines();
  r.stats["min_line_size"] = min_size < 0 ? 0 : min_size;
  r.stats["max_line_size"] = max_size;
  r.stats["lines_size_ge_3"] = thick3;
  r.stats["lines_size_ge_4"] = thick4;
  r.stats["pair_collisions"] = static_cast<long long>(pls.pair_collisions().size());
  return r;
}

Bitset closure(const PartialLinearSpace& pls, const Bitset& seed) {
  assert(seed.size() == pls.n());
  Bitset s = seed;
  std::vector<int> queue = seed.to_vector();
  std::vector<char> line_done(static_cast<std::size_t>(pls.num_lines()), 0);
  while (!queue.empty()) {
    int p = queue.back();
    queue.pop_back();
    for (int li : pls.lines_on(p)) {
      if (line_done[static_cast<std::size_t>(li)]) continue;
      const Bitset& lm = pls.line_mask(li);
      Bitset in = lm & s;
      if (in.count() < 2) continue;
      line_done[static_cast<std::size_t>(li)] = 1;
      lm.for_each([&](int q) {
        if (!s.test(q)) {
          s.set(q);
          queue.push_back(q);
        }
      });
    }
  }
  return s;
}

Bitset closure_of(const PartialLinearSpace& pls, std::initializer_list<int> seed) {
  Bitset s(pls.n());
  for (int p : seed) s.set(p);
  return closure(pls, s);
}

bool is_subspace(const PartialLinearSpace& pls, const Bitset& x) {
  for (int li = 0; li < pls.num_lines(); ++li) {
    const Bitset& lm = pls.line_mask(li);
    if ((lm & x).count() >= 2 && !lm.subset_of(x)) return false;
  }
  return true;
}

TransversalPartition transversals_of(const PartialLinearSpace& pls, const Bitset& x) {
  TransversalPartition out;
  std::vector<int> internal;
  for (int li = 0; li < pls.num_lines(); ++li) {
    if (pls.line_mask(li).subset_of(x)) internal.push_back(li);
  }
  if (internal.empty()) {
    out.why = "no internal line";
    return out;
  }
  if (!is_subspace(pls, x)) {
    out.why = "not a subspace";
    return out;
  }

  auto partition_from = [&](int li, std::vector<Bitset>& classes) -> bool {
    classes.clear();
    Bitset covered(pls.n());
    for (int p : pls.line(li)) {
      Bitset c = pls.perp(p) & x;
      if (c.intersects(covered)) return false;
      covered |= c;
      classes.push_back(std::move(c));
    }
    if (!(covered == x)) return false;
    std::sort(classes.begin(), classes.end(),
              [](const Bitset& a, const Bitset& b) { return a.find_first() < b.find_first(); });
    return true;
  };

  std::vector<Bitset> first;
  for (std::size_t k = 0; k < internal.size(); ++k) {
    std::vector<Bitset> classes;
    if (!partition_from(internal[k], classes)) {
      out.why = "line " + std::to_string(internal[k]) + " does not induce a partition";
      return out;
    }
    if (k == 0) {
      first = std::move(classes);
    } else if (classes != first) {
      out.why = "lines induce different partitions";
      return out;
    }
  }
  out.ok = true;
  out.classes = std::move(first);
  return out;
}

CheckReport is_transversal_subspace(const PartialLinearSpace& pls, const Bitset& x,
                                    int witness_cap) {
  CheckReport r("is_transversal_subspace", witness_cap);
  TransversalPartition tp = transversals_of(pls, x);
  if (!tp.ok) {
    r.add_witness(x.to_vector());
    r.stats["classes"] = 0;
  } else {
    r.stats["classes"] = static_cast<long long>(tp.classes.size());
  }
  return r;
}

namespace {

// Projective plane axioms on an explicit point set and line list: every point
// pair on exactly one line, every line pair meets, some 4 points have no 3 on
// a common line.
bool projective_plane_axioms(int n, const std::vector<Bitset>& lines) {
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      int on = 0;
      for (const auto& l : lines) {
        if (l.test(x) && l.test(y)) ++on;
      }
      if (on != 1) return false;
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (!lines[i].intersects(lines[j])) return false;
    }
  }
  // quadrangle: two points off some line plus two on it never share a line 3x
  auto three_collinear = [&](int a, int b, int c) {
    for (const auto& l : lines) {
      if (l.test(a) && l.test(b) && l.test(c)) return true;
    }
    return false;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        if (three_collinear(a, b, c)) continue;
        for (int d = c + 1; d < n; ++d) {
          if (!three_collinear(a, b, d) && !three_collinear(a, c, d) &&
              !three_collinear(b, c, d))
            return true;
        }
      }
  return false;
}

}  // namespace

PlaneClassification classify_plane(const PartialLinearSpace& pls, const Bitset& x) {
  PlaneClassification out;
  out.points = x;

  bool linear = true;
  std::vector<int> pts = x.to_vector();
  for (std::size_t i = 0; i < pts.size() && linear; ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (!pls.collinear(pts[i], pts[j])) {
        linear = false;
        break;
      }
    }
  }
  if (linear) {
    out.tag = PlaneTag::linear;
    return out;
  }

  TransversalPartition tp = transversals_of(pls, x);
  if (!tp.ok) {
    out.tag = PlaneTag::other;
    return out;
  }

  // completion: relabel plane points 0..k-1, adjoin point k, close each
  // transversal class through it, then test the projective plane axioms
  int k = static_cast<int>(pts.size());
  std::vector<int> local(static_cast<std::size_t>(pls.n()), -1);
  for (int i = 0; i < k; ++i) local[static_cast<std::size_t>(pts[i])] = i;
  std::vector<Bitset> comp_lines;
  for (int li = 0; li < pls.num_lines(); ++li) {
    if (!pls.line_mask(li).subset_of(x)) continue;
    Bitset cl(k + 1);
    for (int p : pls.line(li)) cl.set(local[static_cast<std::size_t>(p)]);
    comp_lines.push_back(std::move(cl));
  }
  std::size_t plane_lines = comp_lines.size();
  for (const auto& c : tp.classes) {
    Bitset cl(k + 1);
    c.for_each([&](int p) { cl.set(local[static_cast<std::size_t>(p)]); });
    cl.set(k);
    comp_lines.push_back(std::move(cl));
  }
  if (!projective_plane_axioms(k + 1, comp_lines)) {
    out.tag = PlaneTag::transversal_other;
    return out;
  }

  // order n: n^2+n points, n^2 internal lines, n+1 classes of size n
  int order = static_cast<int>(tp.classes.size()) - 1;
  bool shape = (k == order * order + order) &&
               (static_cast<int>(plane_lines) == order * order);
  for (const auto& c : tp.classes) shape = shape && c.count() == order;
  if (!shape) {
    out.tag = PlaneTag::transversal_other;
    return out;
  }
  out.tag = PlaneTag::dual_affine;
  out.order = order;
  return out;
}

CheckReport check_delta_property(const PartialLinearSpace& pls, int witness_cap) {
  CheckReport r("delta_property", witness_cap);
  long long scans = 0;
  for (int x = 0; x < pls.n(); ++x) {
    const Bitset& a = pls.adj(x);
    for (int li = 0; li < pls.num_lines(); ++li) {
      ++scans;
      int sz = static_cast<int>(pls.line(li).size());
      int c = (a & pls.line_mask(li)).count();
      if (c != 0 && c != sz - 1 && c != sz) r.add_witness({x, li, c});
    }
  }
  r.stats["pairs_scanned"] = scans;
  return r;
}

int DiameterInfo::max_diameter() const {
  int m = 0;
  for (int d : diameters) m = std::max(m, d);
  return m;
}

namespace {

DiameterInfo diameter_impl(int n, const std::vector<int>& pts,
                           const std::function<Bitset(int)>& nbrs) {
  DiameterInfo info;
  if (pts.empty()) return info;
  Bitset domain(n);
  for (int p : pts) domain.set(p);
  Bitset seen(n);
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  for (int start : pts) {
    if (seen.test(start)) continue;
    // BFS component off start, then BFS from each member for its eccentricity
    std::vector<int> comp{start};
    Bitset in_comp(n);
    in_comp.set(start);
    for (std::size_t h = 0; h < comp.size(); ++h) {
      Bitset nb = nbrs(comp[h]) & domain;
      nb.for_each([&](int q) {
        if (!in_comp.test(q)) {
          in_comp.set(q);
          comp.push_back(q);
        }
      });
    }
    int diam = 0;
    for (int s : comp) {
      for (int p : comp) dist[static_cast<std::size_t>(p)] = -1;
      dist[static_cast<std::size_t>(s)] = 0;
      std::vector<int> frontier{s};
      int ecc = 0;
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int u : frontier) {
          Bitset nb = nbrs(u) & domain;
          nb.for_each([&](int q) {
            if (dist[static_cast<std::size_t>(q)] < 0) {
              dist[static_cast<std::size_t>(q)] = dist[static_cast<std::size_t>(u)] + 1;
              ecc = std::max(ecc, dist[static_cast<std::size_t>(q)]);
              next.push_back(q);
            }
          });
        }
        frontier = std::move(next);
      }
      diam = std::max(diam, ecc);
    }
    seen |= in_comp;
    ++info.components;
    info.component_sizes.push_back(static_cast<int>(comp.size()));
    info.diameters.push_back(diam);
  }
  return info;
}

}  // namespace

DiameterInfo graph_diameter(const PartialLinearSpace& pls, bool use_perp) {
  Bitset all(pls.n());
  for (int i = 0; i < pls.n(); ++i) all.set(i);
  return graph_diameter_within(pls, use_perp, all);
}

DiameterInfo graph_diameter_within(const PartialLinearSpace& pls, bool use_perp,
                                   const Bitset& within) {
  std::vector<int> pts = within.to_vector();
  auto nbrs = [&pls, use_perp](int u) {
    if (!use_perp) return pls.adj(u);
    Bitset p = pls.perp(u);
    p.reset(u);  // perp edges between distinct points only
    return p;
  };
  return diameter_impl(pls.n(), pts, nbrs);
}

CheckReport no_4_lines_scan(const std::vector<Bitset>& lines, int witness_cap) {
  CheckReport r("no_4_lines_6_points", witness_cap);
  int m = static_cast<int>(lines.size());
  // pairwise meeting points; -1 when disjoint, -2 when meeting in >1 point
  std::vector<int> meet(static_cast<std::size_t>(m) * m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      Bitset in = lines[static_cast<std::size_t>(i)] & lines[static_cast<std::size_t>(j)];
      int c = in.count();
      int v = c == 0 ? -1 : (c == 1 ? in.find_first() : -2);
      meet[static_cast<std::size_t>(i) * m + j] = v;
      meet[static_cast<std::size_t>(j) * m + i] = v;
    }
  }
  auto pt = [&](int i, int j) { return meet[static_cast<std::size_t>(i) * m + j]; };
  long long quads = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      if (pt(a, b) < 0) continue;
      for (int c = b + 1; c < m; ++c) {
        if (pt(a, c) < 0 || pt(b, c) < 0) continue;
        for (int d = c + 1; d < m; ++d) {
          if (pt(a, d) < 0 || pt(b, d) < 0 || pt(c, d) < 0) continue;
          ++quads;
          int six[6] = {pt(a, b), pt(a, c), pt(a, d), pt(b, c), pt(b, d), pt(c, d)};
          std::sort(six, six + 6);
          if (std::unique(six, six + 6) == six + 6) r.add_witness({a, b, c, d});
        }
      }
    }
  r.stats["lines"] = m;
  r.stats["pairwise_meeting_quadruples"] = quads;
  return r;
}

CheckReport no_4_lines_6_points(const PartialLinearSpace& pls, const Bitset& x,
                                int witness_cap) {
  std::vector<int> pts = x.to_vector();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (!pls.collinear(pts[i], pts[j]))
        throw std::invalid_argument("no_4_lines_6_points needs a linear plane");
    }
  }
  std::vector<Bitset> internal;
  for (int li = 0; li < pls.num_lines(); ++li) {
    if (pls.line_mask(li).subset_of(x)) internal.push_back(pls.line_mask(li));
  }
  return no_4_lines_scan(internal, witness_cap);
}

PerpMeetOutcome perp_meet_outcome(const PartialLinearSpace& pls, int p, const PlaneData& plane) {
  Bitset in = pls.perp(p) & plane.points;
  int c = in.count();
  if (c == 0) return PerpMeetOutcome::empty;
  if (c == 1) return PerpMeetOutcome::point;
  if (in == plane.points) return PerpMeetOutcome::full;
  for (int li : plane.line_ids) {
    if (in == pls.line_mask(li)) return PerpMeetOutcome::line;
  }
  for (const auto& t : plane.classes) {
    if (in == t) return PerpMeetOutcome::transversal;
  }
  return PerpMeetOutcome::other;
}

const char* perp_meet_outcome_name(PerpMeetOutcome o) {
  switch (o) {
    case PerpMeetOutcome::empty: return "empty";
    case PerpMeetOutcome::point: return "point";
    case PerpMeetOutcome::line: return "line";
    case PerpMeetOutcome::transversal: return "transversal";
    case PerpMeetOutcome::full: return "full";
    case PerpMeetOutcome::other: return "other";
  }
  return "other";
}

CheckReport double_perp_line_check(const PartialLinearSpace& pls, int witness_cap) {
  CheckReport r("double_perp_lines", witness_cap);
  for (int li = 0; li < pls.num_lines(); ++li) {
    Bitset hp(pls.n());
    hp = pls.perp(pls.line(li)[0]);
    for (int p : pls.line(li)) hp &= pls.perp(p);
    Bitset hpp(pls.n());
    for (int z = 0; z < pls.n(); ++z) {
      if (hp.subset_of(pls.perp(z))) hpp.set(z);
    }
    if (!(hpp == pls.line_mask(li))) r.add_witness({li, hpp.count()});
  }
  r.stats["lines"] = pls.num_lines();
  return r;
}

bool is_design(const PartialLinearSpace& pls, const Bitset& x, int v, int k, int lambda) {
  if (x.count() != v) return false;
  std::vector<int> internal;
  for (int li = 0; li < pls.num_lines(); ++li) {
    if (pls.line_mask(li).subset_of(x)) {
      if (static_cast<int>(pls.line(li).size()) != k) return false;
      internal.push_back(li);
    }
  }
  std::vector<int> pts = x.to_vector();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      int on = 0;
      for (int li : internal) {
        const Bitset& lm = pls.line_mask(li);
        if (lm.test(pts[i]) && lm.test(pts[j])) ++on;
      }
      if (on != lambda) return false;
    }
  }
  return true;
}

}  // namespace hyperlines
