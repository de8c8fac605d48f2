#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace hyperlines {

/// Handle to one element of a FiniteField; idx is a position in the
/// field's tables. Index 0 is always the zero element and index 1 the one.
struct FieldElement {
  std::uint16_t idx = 0;
  auto operator<=>(const FieldElement&) const = default;
};

/// Arithmetic for GF(p^k) with q = p^k <= 32.
///
/// Elements are table indices; the index encodes the polynomial
/// representative base p, low power first. Multiplication and inversion
/// run through exp/log tables over one fixed primitive element: the
/// smallest primitive root for prime fields, the class of x for extension
/// fields (every hard-coded modulus is primitive). Addition is digit
/// arithmetic cached in a q*q table at construction.
class FiniteField {
 public:
  /// Throws std::invalid_argument unless p is prime, k >= 1 and p^k <= 32.
  FiniteField(int p, int k);

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }
  /// True when k is even, so the involution x -> x^(p^(k/2)) is available.
  bool has_sigma() const { return k_ % 2 == 0; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// Bounds-checked element handle from a raw table index.
  FieldElement element(int idx) const;
  FieldElement generator() const { return exp_at(1); }

  bool is_zero(FieldElement a) const { return a.idx == 0; }

  FieldElement add(FieldElement a, FieldElement b) const {
    return {add_[static_cast<std::size_t>(a.idx) * q_ + b.idx]};
  }
  FieldElement neg(FieldElement a) const { return {neg_[a.idx]}; }
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.idx == 0 || b.idx == 0) return {0};
    return exp_at((log_[a.idx] + log_[b.idx]) % (q_ - 1));
  }
  /// Throws std::domain_error on inv(0).
  FieldElement inv(FieldElement a) const;
  /// a^e for e >= 0, with pow(0, 0) = 1.
  FieldElement pow(FieldElement a, long long e) const;
  /// The involution x -> x^(p^(k/2)) when k is even, identity otherwise.
  FieldElement sigma(FieldElement a) const { return {sigma_[a.idx]}; }

  /// exp_table(i) = g^i for 0 <= i < q-1; log_table(a) inverts it.
  FieldElement exp_table(int i) const;
  int log_table(FieldElement a) const;

  /// Modulus coefficients, low power first, length k+1 (monic). For prime
  /// fields this is x, recorded as [0, 1].
  const std::vector<int>& modulus() const { return modulus_; }

  /// Digits of the polynomial representative, low power first, length k.
  std::vector<int> digits(FieldElement a) const;

 private:
  FieldElement exp_at(int i) const { return {exp_[static_cast<std::size_t>(i)]}; }

  int p_ = 0, k_ = 0, q_ = 0;
  std::vector<int> modulus_;
  std::vector<std::uint16_t> exp_;    // length q-1
  std::vector<std::uint16_t> log_;    // length q, log_[0] unused
  std::vector<std::uint16_t> add_;    // q*q, row major
  std::vector<std::uint16_t> neg_;    // length q
  std::vector<std::uint16_t> sigma_;  // length q
};

/// The two scalar sets attached to an involution sigma (or the identity
/// when use_sigma is false) and a sign eps:
///   lower = { c - eps * sigma(c) : c in F }
///   upper = { c in F : eps * sigma(c) = -c }
/// lower_is_subfield reports closure of lower under * and inverse together
/// with membership of 1, which for these sets pins down a subfield.
struct SigmaEpsilonSets {
  std::vector<FieldElement> lower;
  std::vector<FieldElement> upper;
  bool lower_is_subfield = false;
};

SigmaEpsilonSets sigma_epsilon_sets(const FiniteField& F, FieldElement eps,
                                    bool use_sigma);

}  // namespace hyperlines
