#pragma once

#include <vector>

#include "hyperlines/finite_field.hpp"

namespace hyperlines {

using Vector = std::vector<FieldElement>;

Vector zero_vector(int d);
bool is_zero_vector(const Vector& v);
Vector vec_add(const FiniteField& F, const Vector& a, const Vector& b);
Vector vec_scale(const FiniteField& F, FieldElement c, const Vector& v);
/// Scales so the first nonzero coordinate is 1; identity on the zero vector.
Vector normalize(const FiniteField& F, Vector v);

enum class FormKind { hermitian, quadratic };

/// A reflexive form on F^d, fixed by a d x d Gram matrix.
///
/// hermitian kind: f(v, w) = sum_ij sigma(v_i) G_ij w_j where sigma is the
/// field involution when uses_sigma is set and the identity otherwise (the
/// alternating case); the Gram matrix must satisfy G_ji = eps * sigma(G_ij).
/// quadratic kind: Q(v) = sum_{i<=j} G_ij v_i v_j with G upper triangular;
/// eval() is then the polarization f(v, w) = Q(v+w) - Q(v) - Q(w).
class GramForm {
 public:
  static GramForm hermitian(FiniteField F, int dim, std::vector<FieldElement> gram,
                            bool use_sigma, FieldElement eps);
  static GramForm quadratic(FiniteField F, int dim, std::vector<FieldElement> gram);

  FormKind kind() const { return kind_; }
  const FiniteField& field() const { return F_; }
  int dim() const { return d_; }
  bool uses_sigma() const { return use_sigma_; }
  FieldElement eps() const { return eps_; }
  FieldElement gram(int i, int j) const {
    return gram_[static_cast<std::size_t>(i) * d_ + j];
  }

  /// The sesquilinear form, or the polarization for quadratic kind.
  FieldElement eval(const Vector& v, const Vector& w) const;
  /// Quadratic kind only; throws std::domain_error otherwise.
  FieldElement eval_quadratic(const Vector& v) const;
  /// eval_quadratic(v) == 0 for quadratic kind, eval(v, v) == 0 otherwise.
  bool is_isotropic(const Vector& v) const;

 private:
  GramForm(FormKind kind, FiniteField F, int dim, std::vector<FieldElement> gram,
           bool use_sigma, FieldElement eps);

  FieldElement bilinear(int i, int j) const {
    return polar_[static_cast<std::size_t>(i) * d_ + j];
  }

  FormKind kind_;
  FiniteField F_;
  int d_;
  std::vector<FieldElement> gram_;
  std::vector<FieldElement> polar_;  // gram for hermitian, G + G^T for quadratic
  bool use_sigma_;
  FieldElement eps_;
};

/// Basis in reduced row echelon form: pivot columns strictly increase and
/// each pivot is 1 with zeros elsewhere in its column, so equal subspaces
/// have identical bases.
struct Subspace {
  std::vector<Vector> basis;
  int dim() const { return static_cast<int>(basis.size()); }
  friend bool operator==(const Subspace&, const Subspace&) = default;
};

Subspace row_reduce(const FiniteField& F, std::vector<Vector> rows);
bool subspace_contains(const FiniteField& F, const Subspace& U, Vector v);
/// Solutions x of rows * x = 0 inside F^dim.
Subspace null_space(const FiniteField& F, const std::vector<Vector>& rows, int dim);

/// { x : f(u, x) = 0 for every u in U }.
Subspace perp_subspace(const GramForm& form, const Subspace& U);
/// Radical of the bilinear form: perp of the whole space. For quadratic
/// kind this is the radical of the polarization, which in characteristic 2
/// can be nonzero for a perfectly good quadric.
Subspace radical(const GramForm& form);
/// Values of the quadratic form on its bilinear radical. Quadratic kind
/// only; throws std::domain_error when some nonzero radical vector is
/// singular (the set is only a useful invariant without such vectors).
std::vector<FieldElement> phi_q(const GramForm& form);

enum class FormFamily {
  symplectic,
  hermitian,
  orthogonal_hyperbolic,
  orthogonal_elliptic,
  orthogonal_parabolic,
};

/// Canonical form of the given family on F^d. Symplectic and the even
/// orthogonal families need d even, parabolic needs d odd, hermitian needs
/// the involution; violations throw std::invalid_argument.
GramForm standard_form(FormFamily family, int d, const FiniteField& F);

}  // namespace hyperlines
