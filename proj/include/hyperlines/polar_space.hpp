#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hyperlines/formspace.hpp"
#include "hyperlines/incidence.hpp"

namespace hyperlines {

/// Classical polar space of a reflexive form: the singular points
/// (normalized isotropic vectors in lex digit order), the totally isotropic
/// lines as sorted point-id lists, and the reflexive perp adjacency
/// perp[x] ∋ y iff f(x,y) = 0.
class PolarSpace {
 public:
  const GramForm& form() const { return form_; }
  const FiniteField& field() const { return form_.field(); }
  int num_points() const { return static_cast<int>(points_.size()); }
  int num_lines() const { return static_cast<int>(lines_.size()); }
  const std::vector<Vector>& points() const { return points_; }
  const Vector& point(int i) const { return points_[static_cast<std::size_t>(i)]; }
  const std::vector<std::vector<int>>& lines() const { return lines_; }
  const std::vector<int>& line(int l) const { return lines_[static_cast<std::size_t>(l)]; }
  const std::vector<Bitset>& perps() const { return perp_; }
  const Bitset& perp(int x) const { return perp_[static_cast<std::size_t>(x)]; }
  bool perp_rel(int x, int y) const { return perp_[static_cast<std::size_t>(x)].test(y); }
  /// Point id of a nonzero vector (normalized first), -1 if not singular.
  int point_index(const Vector& v) const;
  /// Set when the form has no singular points at all.
  bool empty_warning() const { return empty_warning_; }

 private:
  friend PolarSpace build_polar(const GramForm& form);
  explicit PolarSpace(GramForm form);

  GramForm form_;
  std::vector<Vector> points_;
  std::vector<std::vector<int>> lines_;
  std::vector<Bitset> perp_;
  std::unordered_map<std::uint64_t, int> index_;
  bool empty_warning_ = false;
};

/// Normalized singular points of the form in lex digit order, exposed
/// separately so callers can bound the instance size before lines and perp
/// are materialized.
std::vector<Vector> isotropic_points(const GramForm& form);

PolarSpace build_polar(const GramForm& form);

/// Every point off a line is perp to exactly one or to all of its points.
/// The raw overload runs on any (perp, lines) pair, e.g. a reconstruction.
CheckReport check_one_or_all(const std::vector<Bitset>& perp,
                             const std::vector<std::vector<int>>& lines,
                             int witness_cap = 10);
CheckReport check_one_or_all(const PolarSpace& S, int witness_cap = 10);

/// Points perp to every point.
std::vector<int> polar_radical(const PolarSpace& S);
bool is_nondegenerate(const PolarSpace& S);

/// {x,y}^perp-perp for non-perp x != y; throws std::invalid_argument on
/// equal or perp inputs.
std::vector<int> hyperbolic_line(const PolarSpace& S, int x, int y);

/// The points of S with the distinct double perps of non-perp pairs as
/// lines; throws std::domain_error on degenerate input. Non-collinearity
/// of the result coincides with S's perp.
PartialLinearSpace hyperbolic_geometry(const PolarSpace& S);

/// Longest chain of nested nonempty subspaces that are pairwise-perp and
/// line-closed, by depth-first growth. cap >= 0 stops the search as soon as
/// a chain of that length is found. Runs on any perp adjacency plus the
/// geometry of its singular lines.
int abstract_polar_rank(const std::vector<Bitset>& perp,
                        const PartialLinearSpace& singular, int cap = -1);
int polar_rank(const PolarSpace& S);

struct GQOrder {
  int s = 0;  // points per line, minus one
  int t = 0;  // lines per point, minus one
};

/// Requires at least one line, constant line size and constant point
/// degree; throws std::domain_error otherwise.
GQOrder gq_order(const PartialLinearSpace& pls);
GQOrder gq_order(const PolarSpace& S);

/// The scalar set steering the linear-plane criterion: the trace set for a
/// genuinely hermitian form, the whole field for an alternating one, the
/// quadratic values on the bilinear radical for quadratic kind. holds is
/// the criterion itself: the scalars form a subfield of order >= 3.
struct ScalarSetVerdict {
  std::vector<FieldElement> scalars;
  bool is_subfield = false;
  bool holds = false;
};

ScalarSetVerdict check_prop_2_6(const GramForm& form);

}  // namespace hyperlines
