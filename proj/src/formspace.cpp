#include "hyperlines/formspace.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hyperlines {

Vector zero_vector(int d) { return Vector(static_cast<std::size_t>(d)); }

bool is_zero_vector(const Vector& v) {
  for (FieldElement c : v)
    if (c.idx != 0) return false;
  return true;
}

Vector vec_add(const FiniteField& F, const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

Vector vec_scale(const FiniteField& F, FieldElement c, const Vector& v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = F.mul(c, v[i]);
  return r;
}

Vector normalize(const FiniteField& F, Vector v) {
  for (FieldElement c : v) {
    if (F.is_zero(c)) continue;
    return vec_scale(F, F.inv(c), v);
  }
  return v;
}

GramForm::GramForm(FormKind kind, FiniteField F, int dim,
                   std::vector<FieldElement> gram, bool use_sigma, FieldElement eps)
    : kind_(kind), F_(std::move(F)), d_(dim), gram_(std::move(gram)),
      use_sigma_(use_sigma), eps_(eps) {
  if (d_ < 1) throw std::invalid_argument("form dimension must be positive");
  if (gram_.size() != static_cast<std::size_t>(d_) * d_)
    throw std::invalid_argument("gram matrix size mismatch");
  for (FieldElement c : gram_)
    if (c.idx >= F_.q()) throw std::invalid_argument("gram entry outside field");

  if (kind_ == FormKind::hermitian) {
    if (use_sigma_ && !F_.has_sigma())
      throw std::invalid_argument("field has no involution for a sigma form");
    if (eps_ != F_.one() && eps_ != F_.neg(F_.one()))
      throw std::invalid_argument("eps must be 1 or -1");
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) {
        FieldElement gij = this->gram(i, j);
        FieldElement want = F_.mul(eps_, use_sigma_ ? F_.sigma(gij) : gij);
        if (this->gram(j, i) != want)
          throw std::invalid_argument("gram matrix is not (sigma, eps)-symmetric");
      }
    polar_ = gram_;
  } else {
    if (use_sigma_ || eps_ != F_.one())
      throw std::invalid_argument("quadratic forms take sigma=id, eps=1");
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < i; ++j)
        if (this->gram(i, j).idx != 0)
          throw std::invalid_argument("quadratic gram matrix must be upper triangular");
    polar_.resize(gram_.size());
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j)
        polar_[static_cast<std::size_t>(i) * d_ + j] =
            F_.add(this->gram(i, j), this->gram(j, i));
  }
}

GramForm GramForm::hermitian(FiniteField F, int dim, std::vector<FieldElement> gram,
                             bool use_sigma, FieldElement eps) {
  return GramForm(FormKind::hermitian, std::move(F), dim, std::move(gram), use_sigma, eps);
}

GramForm GramForm::quadratic(FiniteField F, int dim, std::vector<FieldElement> gram) {
  FieldElement one{1};
  return GramForm(FormKind::quadratic, std::move(F), dim, std::move(gram), false, one);
}

FieldElement GramForm::eval(const Vector& v, const Vector& w) const {
  if (static_cast<int>(v.size()) != d_ || static_cast<int>(w.size()) != d_)
    throw std::invalid_argument("vector dimension mismatch");
  FieldElement acc = F_.zero();
  for (int i = 0; i < d_; ++i) {
    if (v[static_cast<std::size_t>(i)].idx == 0) continue;
    FieldElement row = F_.zero();
    for (int j = 0; j < d_; ++j)
      row = F_.add(row, F_.mul(bilinear(i, j), w[static_cast<std::size_t>(j)]));
    FieldElement lhs = v[static_cast<std::size_t>(i)];
    if (kind_ == FormKind::hermitian && use_sigma_) lhs = F_.sigma(lhs);
    acc = F_.add(acc, F_.mul(lhs, row));
  }
  return acc;
}

FieldElement GramForm::eval_quadratic(const Vector& v) const {
  if (kind_ != FormKind::quadratic)
    throw std::domain_error("eval_quadratic needs a quadratic form");
  if (static_cast<int>(v.size()) != d_)
    throw std::invalid_argument("vector dimension mismatch");
  FieldElement acc = F_.zero();
  for (int i = 0; i < d_; ++i)
    for (int j = i; j < d_; ++j)
      acc = F_.add(acc, F_.mul(gram(i, j), F_.mul(v[static_cast<std::size_t>(i)],
                                                  v[static_cast<std::size_t>(j)])));
  return acc;
}

bool GramForm::is_isotropic(const Vector& v) const {
  if (kind_ == FormKind::quadratic) return F_.is_zero(eval_quadratic(v));
  return F_.is_zero(eval(v, v));
}

Subspace row_reduce(const FiniteField& F, std::vector<Vector> rows) {
  if (rows.empty()) return {};
  const int d = static_cast<int>(rows[0].size());
  std::vector<Vector> basis;
  int pivot_col = 0;
  std::size_t done = 0;
  for (; pivot_col < d && done < rows.size(); ++pivot_col) {
    std::size_t pick = done;
    while (pick < rows.size() && rows[pick][static_cast<std::size_t>(pivot_col)].idx == 0)
      ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[done], rows[pick]);
    Vector& pr = rows[done];
    pr = vec_scale(F, F.inv(pr[static_cast<std::size_t>(pivot_col)]), pr);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == done) continue;
      FieldElement c = rows[r][static_cast<std::size_t>(pivot_col)];
      if (c.idx == 0) continue;
      rows[r] = vec_add(F, rows[r], vec_scale(F, F.neg(c), pr));
    }
    ++done;
  }
  rows.resize(done);
  return {std::move(rows)};
}

bool subspace_contains(const FiniteField& F, const Subspace& U, Vector v) {
  for (const Vector& b : U.basis) {
    int pivot = -1;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i].idx != 0) {
        pivot = static_cast<int>(i);
        break;
      }
    if (pivot < 0) continue;
    FieldElement c = v[static_cast<std::size_t>(pivot)];
    if (c.idx != 0) v = vec_add(F, v, vec_scale(F, F.neg(c), b));
  }
  return is_zero_vector(v);
}

Subspace null_space(const FiniteField& F, const std::vector<Vector>& rows, int dim) {
  Subspace reduced = row_reduce(F, rows);
  std::vector<int> pivot_of_col(static_cast<std::size_t>(dim), -1);
  for (std::size_t r = 0; r < reduced.basis.size(); ++r)
    for (int c = 0; c < dim; ++c)
      if (reduced.basis[r][static_cast<std::size_t>(c)].idx != 0) {
        pivot_of_col[static_cast<std::size_t>(c)] = static_cast<int>(r);
        break;
      }
  std::vector<Vector> kernel;
  for (int free = 0; free < dim; ++free) {
    if (pivot_of_col[static_cast<std::size_t>(free)] >= 0) continue;
    Vector v = zero_vector(dim);
    v[static_cast<std::size_t>(free)] = F.one();
    for (int c = 0; c < dim; ++c) {
      int r = pivot_of_col[static_cast<std::size_t>(c)];
      if (r < 0) continue;
      v[static_cast<std::size_t>(c)] =
          F.neg(reduced.basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(free)]);
    }
    kernel.push_back(std::move(v));
  }
  return row_reduce(F, std::move(kernel));
}

Subspace perp_subspace(const GramForm& form, const Subspace& U) {
  const FiniteField& F = form.field();
  const int d = form.dim();
  std::vector<Vector> rows;
  rows.reserve(U.basis.size());
  for (const Vector& u : U.basis) {
    Vector row = zero_vector(d);
    for (int j = 0; j < d; ++j) {
      FieldElement acc = F.zero();
      for (int i = 0; i < d; ++i) {
        FieldElement lhs = u[static_cast<std::size_t>(i)];
        if (form.kind() == FormKind::hermitian && form.uses_sigma()) lhs = F.sigma(lhs);
        FieldElement gij = form.kind() == FormKind::hermitian
                               ? form.gram(i, j)
                               : F.add(form.gram(i, j), form.gram(j, i));
        acc = F.add(acc, F.mul(lhs, gij));
      }
      row[static_cast<std::size_t>(j)] = acc;
    }
    rows.push_back(std::move(row));
  }
  return null_space(F, rows, d);
}

Subspace radical(const GramForm& form) {
  std::vector<Vector> identity;
  for (int i = 0; i < form.dim(); ++i) {
    Vector e = zero_vector(form.dim());
    e[static_cast<std::size_t>(i)] = form.field().one();
    identity.push_back(std::move(e));
  }
  return perp_subspace(form, Subspace{std::move(identity)});
}

std::vector<FieldElement> phi_q(const GramForm& form) {
  if (form.kind() != FormKind::quadratic)
    throw std::domain_error("phi_q needs a quadratic form");
  const FiniteField& F = form.field();
  Subspace rad = radical(form);
  std::vector<FieldElement> values;
  const int r = rad.dim();
  long long total = 1;
  for (int i = 0; i < r; ++i) total *= F.q();
  std::vector<int> coeff(static_cast<std::size_t>(r), 0);
  for (long long step = 0; step < total; ++step) {
    Vector v = zero_vector(form.dim());
    long long rem = step;
    for (int i = 0; i < r; ++i) {
      FieldElement c = F.element(static_cast<int>(rem % F.q()));
      rem /= F.q();
      v = vec_add(F, v, vec_scale(F, c, rad.basis[static_cast<std::size_t>(i)]));
    }
    FieldElement val = form.eval_quadratic(v);
    if (F.is_zero(val) && !is_zero_vector(v))
      throw std::domain_error("bilinear radical contains singular vectors");
    values.push_back(val);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

GramForm standard_form(FormFamily family, int d, const FiniteField& F) {
  auto at = [&](std::vector<FieldElement>& g, int i, int j) -> FieldElement& {
    return g[static_cast<std::size_t>(i) * d + j];
  };
  std::vector<FieldElement> g(static_cast<std::size_t>(d) * d, F.zero());

  switch (family) {
    case FormFamily::symplectic: {
      if (d < 2 || d % 2) throw std::invalid_argument("symplectic forms need even dimension");
      for (int i = 0; i + 1 < d; i += 2) {
        at(g, i, i + 1) = F.one();
        at(g, i + 1, i) = F.neg(F.one());
      }
      return GramForm::hermitian(F, d, std::move(g), false, F.neg(F.one()));
    }
    case FormFamily::hermitian: {
      if (!F.has_sigma())
        throw std::invalid_argument("hermitian forms need a field with involution");
      for (int i = 0; i < d / 2; ++i) {
        at(g, i, d - 1 - i) = F.one();
        at(g, d - 1 - i, i) = F.neg(F.one());
      }
      if (d % 2) {
        // middle entry c with sigma(c) = -c
        FieldElement c = F.one();
        if (F.p() != 2) {
          int root = 1;
          for (int i = 0; i < F.k() / 2; ++i) root *= F.p();
          c = F.exp_table((root + 1) / 2);
        }
        at(g, d / 2, d / 2) = c;
      }
      return GramForm::hermitian(F, d, std::move(g), true, F.neg(F.one()));
    }
    case FormFamily::orthogonal_hyperbolic: {
      if (d < 2 || d % 2)
        throw std::invalid_argument("hyperbolic quadrics need even dimension");
      for (int i = 0; i + 1 < d; i += 2) at(g, i, i + 1) = F.one();
      return GramForm::quadratic(F, d, std::move(g));
    }
    case FormFamily::orthogonal_parabolic: {
      if (d % 2 == 0)
        throw std::invalid_argument("parabolic quadrics need odd dimension");
      for (int i = 0; i + 1 < d - 1; i += 2) at(g, i, i + 1) = F.one();
      at(g, d - 1, d - 1) = F.one();
      return GramForm::quadratic(F, d, std::move(g));
    }
    case FormFamily::orthogonal_elliptic: {
      if (d < 2 || d % 2)
        throw std::invalid_argument("elliptic quadrics need even dimension");
      for (int i = 0; i + 1 < d - 2; i += 2) at(g, i, i + 1) = F.one();
      // anisotropic tail a t^2 + t u + b u^2, least (a, b) by table index
      for (int ai = 0; ai < F.q(); ++ai) {
        for (int bi = 0; bi < F.q(); ++bi) {
          FieldElement a = F.element(ai), b = F.element(bi);
          bool anisotropic = true;
          for (int t = 0; t < F.q() && anisotropic; ++t)
            for (int u = 0; u < F.q(); ++u) {
              if (t == 0 && u == 0) continue;
              FieldElement tt = F.element(t), uu = F.element(u);
              FieldElement val = F.add(F.add(F.mul(a, F.mul(tt, tt)), F.mul(tt, uu)),
                                       F.mul(b, F.mul(uu, uu)));
              if (F.is_zero(val)) {
                anisotropic = false;
                break;
              }
            }
          if (anisotropic) {
            at(g, d - 2, d - 2) = a;
            at(g, d - 2, d - 1) = F.one();
            at(g, d - 1, d - 1) = b;
            return GramForm::quadratic(F, d, std::move(g));
          }
        }
      }
      throw std::logic_error("no anisotropic binary quadratic found");
    }
  }
  throw std::invalid_argument("unknown form family");
}

}  // namespace hyperlines
