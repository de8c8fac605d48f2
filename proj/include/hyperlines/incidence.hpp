#pragma once

#include <array>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "hyperlines/bitset.hpp"

namespace hyperlines {

/// Outcome of one exhaustive scan. The verdict counts every violation; the
/// witness list is capped so reports stay readable on badly broken inputs.
struct CheckReport {
  std::string name;
  long long violations = 0;
  int witness_cap = 10;
  std::vector<std::vector<int>> witnesses;
  std::map<std::string, long long> stats;

  explicit CheckReport(std::string check_name, int cap = 10)
      : name(std::move(check_name)), witness_cap(cap) {}

  bool pass() const { return violations == 0; }
  bool truncated() const {
    return violations > static_cast<long long>(witnesses.size());
  }
  void add_witness(std::vector<int> w) {
    ++violations;
    if (static_cast<int>(witnesses.size()) < witness_cap) witnesses.push_back(std::move(w));
  }
};

/// Point-line geometry on points 0..n-1. Lines are sorted id lists; adj is
/// the irreflexive collinearity graph, perp[x] = {x} plus the non-collinear
/// points. Malformed line sets (shared pairs, short lines) are representable
/// so validate_pls can report them; only out-of-range ids throw.
class PartialLinearSpace {
 public:
  PartialLinearSpace(int n, std::vector<std::vector<int>> lines);

  int n() const { return n_; }
  int num_lines() const { return static_cast<int>(lines_.size()); }
  const std::vector<std::vector<int>>& lines() const { return lines_; }
  const std::vector<int>& line(int l) const { return lines_[static_cast<std::size_t>(l)]; }
  const Bitset& line_mask(int l) const { return line_masks_[static_cast<std::size_t>(l)]; }
  const Bitset& adj(int x) const { return adj_[static_cast<std::size_t>(x)]; }
  const Bitset& perp(int x) const { return perp_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& lines_on(int x) const { return lines_on_[static_cast<std::size_t>(x)]; }

  bool collinear(int x, int y) const { return adj_[static_cast<std::size_t>(x)].test(y); }
  bool perp_rel(int x, int y) const { return perp_[static_cast<std::size_t>(x)].test(y); }
  /// Line id through two collinear points, -1 if none. For pairs on several
  /// lines (invalid input) this is the first line in file order.
  int line_through(int x, int y) const {
    return pair_line_[static_cast<std::size_t>(x) * n_ + y];
  }
  /// Pairs covered by more than one line, as (x, y, line1, line2).
  const std::vector<std::array<int, 4>>& pair_collisions() const { return pair_collisions_; }

 private:
  int n_;
  std::vector<std::vector<int>> lines_;
  std::vector<Bitset> line_masks_;
  std::vector<Bitset> adj_;
  std::vector<Bitset> perp_;
  std::vector<std::vector<int>> lines_on_;
  std::vector<int> pair_line_;
  std::vector<std::array<int, 4>> pair_collisions_;
};

/// Partial linearity, line sizes >= 2, thickness statistics.
CheckReport validate_pls(const PartialLinearSpace& pls, int witness_cap = 10);

/// Least subspace containing the seed: closed under adding full lines that
/// meet the set in two or more points.
Bitset closure(const PartialLinearSpace& pls, const Bitset& seed);
Bitset closure_of(const PartialLinearSpace& pls, std::initializer_list<int> seed);
bool is_subspace(const PartialLinearSpace& pls, const Bitset& x);

/// Transversal partition of a subspace: for each internal line l the sets
/// {p^perp intersect X : p in l} must partition X, and all internal lines
/// must induce the same partition. Classes come out sorted by least point.
struct TransversalPartition {
  bool ok = false;
  std::vector<Bitset> classes;
  std::string why;  // set when !ok
};
TransversalPartition transversals_of(const PartialLinearSpace& pls, const Bitset& x);
CheckReport is_transversal_subspace(const PartialLinearSpace& pls, const Bitset& x,
                                    int witness_cap = 10);

enum class PlaneTag { linear, dual_affine, transversal_other, other };

struct PlaneClassification {
  PlaneTag tag = PlaneTag::other;
  int order = 0;  // dual_affine only
  Bitset points;
};

/// Classifies the subspace generated by two intersecting lines. Dual affine
/// recognition adjoins one point closing the transversal classes and tests
/// the projective plane axioms on the completion.
PlaneClassification classify_plane(const PartialLinearSpace& pls, const Bitset& x);

/// |x~ intersect l| is 0, |l|-1 or |l| for every point and line.
CheckReport check_delta_property(const PartialLinearSpace& pls, int witness_cap = 10);

struct DiameterInfo {
  int components = 0;
  std::vector<int> component_sizes;
  std::vector<int> diameters;  // per component, same order
  int max_diameter() const;
  bool connected() const { return components <= 1; }
};
/// Per-component BFS diameters of the collinearity graph or of the perp
/// graph taken irreflexively.
DiameterInfo graph_diameter(const PartialLinearSpace& pls, bool use_perp);
/// Same, restricted to the induced subgraph on a point set.
DiameterInfo graph_diameter_within(const PartialLinearSpace& pls, bool use_perp,
                                   const Bitset& within);

/// Four lines of a linear plane pairwise meeting in six distinct points.
/// The public check requires x to be linear; the raw scan runs on any line
/// list (used by the hand-built failing fixture).
CheckReport no_4_lines_6_points(const PartialLinearSpace& pls, const Bitset& x,
                                int witness_cap = 10);
CheckReport no_4_lines_scan(const std::vector<Bitset>& lines, int witness_cap = 10);

/// How p^perp meets a plane with known internal lines and transversal
/// classes (classes empty for non-transversal planes).
enum class PerpMeetOutcome { empty, point, line, transversal, full, other };
struct PlaneData {
  Bitset points;
  std::vector<int> line_ids;  // lines contained in the plane
  std::vector<Bitset> classes;
  PlaneTag tag = PlaneTag::other;
  int order = 0;
};
PerpMeetOutcome perp_meet_outcome(const PartialLinearSpace& pls, int p, const PlaneData& plane);
const char* perp_meet_outcome_name(PerpMeetOutcome o);

/// h == h^perp-perp for every line h.
CheckReport double_perp_line_check(const PartialLinearSpace& pls, int witness_cap = 10);

/// 2-(v, k, lambda) design test on the lines inside x.
bool is_design(const PartialLinearSpace& pls, const Bitset& x, int v, int k, int lambda);

}  // namespace hyperlines
