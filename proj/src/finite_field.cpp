#include "hyperlines/finite_field.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace hyperlines {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Canonical moduli, low power first. Every q = p^k <= 32 with k >= 2 is
// covered; each polynomial is primitive, so x generates the unit group.
struct ModulusEntry {
  int p, k;
  std::vector<int> coeffs;
};
const ModulusEntry kModuli[] = {
    {2, 2, {1, 1, 1}},           // x^2 + x + 1
    {2, 3, {1, 1, 0, 1}},        // x^3 + x + 1
    {2, 4, {1, 1, 0, 0, 1}},     // x^4 + x + 1
    {2, 5, {1, 0, 1, 0, 0, 1}},  // x^5 + x^2 + 1
    {3, 2, {2, 2, 1}},           // x^2 + 2x + 2
    {3, 3, {1, 2, 0, 1}},        // x^3 + 2x + 1
    {5, 2, {2, 4, 1}},           // x^2 + 4x + 2
};

int smallest_primitive_root(int p) {
  for (int g = 1; g < p; ++g) {
    int x = 1, order = 0;
    do {
      x = x * g % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) return g;
  }
  throw std::logic_error("no primitive root found");
}

}  // namespace

FiniteField::FiniteField(int p, int k) : p_(p), k_(k) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (k < 1) throw std::invalid_argument("field degree must be positive");
  long long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > 32) throw std::invalid_argument("field order exceeds 32");
  }
  q_ = static_cast<int>(q);

  if (k_ == 1) {
    modulus_ = {0, 1};
  } else {
    for (const auto& e : kModuli)
      if (e.p == p_ && e.k == k_) modulus_ = e.coeffs;
    if (modulus_.empty()) throw std::logic_error("modulus table incomplete");
  }

  // index <-> digit helpers
  auto to_digits = [&](int idx) {
    std::vector<int> d(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) {
      d[static_cast<std::size_t>(i)] = idx % p_;
      idx /= p_;
    }
    return d;
  };
  auto to_index = [&](const std::vector<int>& d) {
    int idx = 0;
    for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + d[static_cast<std::size_t>(i)];
    return idx;
  };

  // multiply two digit vectors and reduce against the modulus
  auto poly_mul = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> prod(static_cast<std::size_t>(2 * k_ - 1), 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        prod[static_cast<std::size_t>(i + j)] =
            (prod[static_cast<std::size_t>(i + j)] +
             a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]) %
            p_;
    for (int d = 2 * k_ - 2; d >= k_; --d) {
      int c = prod[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      prod[static_cast<std::size_t>(d)] = 0;
      // x^d = x^(d-k) * (x^k mod modulus); modulus is monic
      for (int i = 0; i < k_; ++i) {
        int sub = c * modulus_[static_cast<std::size_t>(i)] % p_;
        auto& slot = prod[static_cast<std::size_t>(d - k_ + i)];
        slot = ((slot - sub) % p_ + p_) % p_;
      }
    }
    prod.resize(static_cast<std::size_t>(k_));
    return prod;
  };

  // exp table over the fixed primitive element
  exp_.resize(static_cast<std::size_t>(q_ - 1));
  if (k_ == 1) {
    int g = smallest_primitive_root(p_);
    int x = 1;
    for (int i = 0; i < q_ - 1; ++i) {
      exp_[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(x);
      x = x * g % p_;
    }
  } else {
    std::vector<int> gen(static_cast<std::size_t>(k_), 0);
    gen[1] = 1;  // the class of x
    std::vector<int> cur(static_cast<std::size_t>(k_), 0);
    cur[0] = 1;
    for (int i = 0; i < q_ - 1; ++i) {
      exp_[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(to_index(cur));
      cur = poly_mul(cur, gen);
    }
    if (to_index(cur) != 1) throw std::logic_error("modulus is not primitive");
  }
  std::set<std::uint16_t> distinct(exp_.begin(), exp_.end());
  if (static_cast<int>(distinct.size()) != q_ - 1 || distinct.count(0))
    throw std::logic_error("exp table does not enumerate the unit group");

  log_.assign(static_cast<std::size_t>(q_), 0);
  for (int i = 0; i < q_ - 1; ++i) log_[exp_[static_cast<std::size_t>(i)]] = static_cast<std::uint16_t>(i);

  add_.resize(static_cast<std::size_t>(q_) * q_);
  for (int a = 0; a < q_; ++a) {
    auto da = to_digits(a);
    for (int b = 0; b < q_; ++b) {
      auto db = to_digits(b);
      std::vector<int> s(static_cast<std::size_t>(k_));
      for (int i = 0; i < k_; ++i)
        s[static_cast<std::size_t>(i)] =
            (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p_;
      add_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(to_index(s));
    }
  }

  neg_.resize(static_cast<std::size_t>(q_));
  for (int a = 0; a < q_; ++a) {
    auto d = to_digits(a);
    for (auto& c : d) c = (p_ - c) % p_;
    neg_[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(to_index(d));
  }

  sigma_.resize(static_cast<std::size_t>(q_));
  sigma_[0] = 0;
  if (has_sigma()) {
    long long m = 1;
    for (int i = 0; i < k_ / 2; ++i) m *= p_;
    for (int i = 0; i < q_ - 1; ++i) {
      auto image = static_cast<int>(static_cast<long long>(i) * m % (q_ - 1));
      sigma_[exp_[static_cast<std::size_t>(i)]] = exp_[static_cast<std::size_t>(image)];
    }
  } else {
    for (int a = 1; a < q_; ++a) sigma_[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(a);
  }
}

FieldElement FiniteField::element(int idx) const {
  if (idx < 0 || idx >= q_) throw std::invalid_argument("element index out of range");
  return {static_cast<std::uint16_t>(idx)};
}

FieldElement FiniteField::inv(FieldElement a) const {
  if (a.idx == 0) throw std::domain_error("zero has no inverse");
  return exp_at((q_ - 1 - log_[a.idx]) % (q_ - 1));
}

FieldElement FiniteField::pow(FieldElement a, long long e) const {
  if (e < 0) throw std::invalid_argument("negative exponent");
  if (a.idx == 0) return e == 0 ? one() : zero();
  return exp_at(static_cast<int>(static_cast<long long>(log_[a.idx]) * (e % (q_ - 1)) % (q_ - 1)));
}

FieldElement FiniteField::exp_table(int i) const {
  if (i < 0 || i >= q_ - 1) throw std::invalid_argument("exponent out of range");
  return exp_at(i);
}

int FiniteField::log_table(FieldElement a) const {
  if (a.idx == 0) throw std::domain_error("zero has no logarithm");
  return log_[a.idx];
}

std::vector<int> FiniteField::digits(FieldElement a) const {
  std::vector<int> d(static_cast<std::size_t>(k_));
  int idx = a.idx;
  for (int i = 0; i < k_; ++i) {
    d[static_cast<std::size_t>(i)] = idx % p_;
    idx /= p_;
  }
  return d;
}

SigmaEpsilonSets sigma_epsilon_sets(const FiniteField& F, FieldElement eps,
                                    bool use_sigma) {
  if (eps != F.one() && eps != F.neg(F.one()))
    throw std::invalid_argument("eps must be 1 or -1");
  auto sig = [&](FieldElement c) { return use_sigma ? F.sigma(c) : c; };

  SigmaEpsilonSets out;
  std::set<FieldElement> lower, upper;
  for (int i = 0; i < F.q(); ++i) {
    FieldElement c = F.element(i);
    lower.insert(F.sub(c, F.mul(eps, sig(c))));
    if (F.mul(eps, sig(c)) == F.neg(c)) upper.insert(c);
  }
  out.lower.assign(lower.begin(), lower.end());
  out.upper.assign(upper.begin(), upper.end());

  bool ok = lower.count(F.one()) > 0;
  for (FieldElement a : out.lower) {
    if (!ok) break;
    if (!F.is_zero(a) && !lower.count(F.inv(a))) ok = false;
    for (FieldElement b : out.lower)
      if (!lower.count(F.mul(a, b))) {
        ok = false;
        break;
      }
  }
  out.lower_is_subfield = ok;
  return out;
}

}  // namespace hyperlines
