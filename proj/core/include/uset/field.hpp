#pragma once

// Exact arithmetic in the ring of integers O_K of K = Q or K = Q(sqrt d).
//
// O_K is always represented in the integral basis {1, w}:
//   w = sqrt(d)          when d = 2, 3 (mod 4)
//   w = (1 + sqrt(d))/2  when d = 1 (mod 4)
// so every element is a pair of integers (a, b) meaning a + b*w. The minimal
// polynomial of w is x^2 - t*x + n with (t, n) = (0, -d) or (1, (1-d)/4).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uset/primes.hpp"

namespace uset {

class Field {
 public:
  /// The degenerate context K = Q (degree 1, discriminant 1).
  static Field rationals();
  /// K = Q(sqrt d); d must be squarefree and not 0 or 1.
  static Field quadratic(std::int64_t d);
  /// Parses "Q", "Q(sqrt -1)", "Q(sqrt(-5))", "Q(i)".
  static Field parse(std::string_view spec);

  bool is_rational() const { return rational_; }
  int degree() const { return rational_ ? 1 : 2; }
  /// The radicand; 1 for Q.
  std::int64_t d() const { return d_; }
  std::int64_t discriminant() const;
  bool is_imaginary() const { return !rational_ && d_ < 0; }
  bool is_totally_real() const { return rational_ || d_ > 0; }
  /// True when w = (1 + sqrt d)/2.
  bool half_integral_basis() const;
  /// w^2 = omega_trace() * w - omega_norm()
  std::int64_t omega_trace() const;
  std::int64_t omega_norm() const;

  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(std::int64_t d, bool rational) : d_(d), rational_(rational) {}
  std::int64_t d_ = 1;
  bool rational_ = true;
};

std::ostream& operator<<(std::ostream& os, const Field& f);

/// An element a + b*w of O_K.
class QuadInt {
 public:
  explicit QuadInt(const Field& field) : field_(field) {}
  QuadInt(const Field& field, Integer a, Integer b = 0);
  QuadInt(const Field& field, long a, long b = 0)
      : QuadInt(field, Integer(a), Integer(b)) {}

  const Field& field() const { return field_; }
  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadInt conj() const;
  Integer norm() const;
  Integer trace() const;

  QuadInt& operator+=(const QuadInt& y);
  QuadInt& operator-=(const QuadInt& y);
  QuadInt& operator*=(const QuadInt& y);
  QuadInt operator-() const;

  friend QuadInt operator+(QuadInt x, const QuadInt& y) { return x += y; }
  friend QuadInt operator-(QuadInt x, const QuadInt& y) { return x -= y; }
  friend QuadInt operator*(QuadInt x, const QuadInt& y) { return x *= y; }
  friend bool operator==(const QuadInt& x, const QuadInt& y) {
    return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string to_string() const;

 private:
  void check_same_field(const QuadInt& y) const;

  Field field_;
  Integer a_ = 0;
  Integer b_ = 0;
};

std::ostream& operator<<(std::ostream& os, const QuadInt& x);

/// Deterministic total order used for greedy tie-breaking: lexicographic on
/// (|a| + |b|, a, b).
bool canonical_less(const QuadInt& x, const QuadInt& y);

/// Plain coordinate order (a, b); used to normalize sets by translation.
bool coordinate_less(const QuadInt& x, const QuadInt& y);

enum class Splitting { Rational, Split, Inert, Ramified };

std::string_view to_string(Splitting s);

/// A nonzero prime ideal of O_K lying above the rational prime p.
///
/// For split and ramified primes the ideal is (p, w - r) where r is a root of
/// the minimal polynomial of w modulo p (the "local root"); then
/// O_K / P^k is Z / p^k via w -> r_k, the Hensel lift of r. The two split
/// primes above p are told apart by conjugate_index (0 for the smaller root).
class PrimeIdeal {
 public:
  const Field& field() const { return field_; }
  const Integer& p() const { return p_; }
  Splitting kind() const { return kind_; }
  int conjugate_index() const { return index_; }
  /// N(P) = |O_K / P|
  const Integer& residue_norm() const { return norm_; }
  int ramification() const { return kind_ == Splitting::Ramified ? 2 : 1; }
  int inertia_degree() const { return kind_ == Splitting::Inert ? 2 : 1; }
  /// Root of the minimal polynomial of w mod p (split/ramified only).
  const Integer& local_root() const { return root_; }
  bool has_local_root() const {
    return kind_ == Splitting::Split || kind_ == Splitting::Ramified;
  }

  /// Root of the minimal polynomial of w modulo p^k lifting local_root()
  /// (split primes only; ramified roots do not lift in general).
  Integer lifted_root(int k) const;

  /// The other prime above p for split primes; *this otherwise.
  PrimeIdeal conjugate() const;

  std::string to_string() const;

  /// Orders by norm, then p, then kind, then conjugate index.
  friend std::strong_ordering operator<=>(const PrimeIdeal& x, const PrimeIdeal& y);
  friend bool operator==(const PrimeIdeal& x, const PrimeIdeal& y) {
    return (x <=> y) == std::strong_ordering::equal;
  }

 private:
  friend std::vector<std::pair<PrimeIdeal, int>> factor_rational_prime(
      const Field&, const Integer&);
  PrimeIdeal(const Field& f) : field_(f) {}

  Field field_;
  Integer p_;
  Splitting kind_ = Splitting::Rational;
  int index_ = 0;
  Integer norm_;
  Integer root_;
  Integer other_root_;
};

std::ostream& operator<<(std::ostream& os, const PrimeIdeal& P);

/// The primes above p with their ramification indices. The caller vouches
/// that p is prime.
std::vector<std::pair<PrimeIdeal, int>> factor_rational_prime(const Field& field,
                                                              const Integer& p);

/// Convenience wrapper: prime ideals above p, in canonical order.
std::vector<PrimeIdeal> primes_above(const Field& field, const Integer& p);

/// All prime ideals of norm <= bound, in canonical order.
std::vector<PrimeIdeal> primes_up_to_norm(const Field& field, std::uint64_t bound);

/// v_P(x); throws InfiniteValuation for x = 0.
std::int64_t valuation(const QuadInt& x, const PrimeIdeal& P);

/// An ideal as a finite product of prime-ideal powers. Zero exponents are
/// never stored.
class FactoredIdeal {
 public:
  using Map = std::map<PrimeIdeal, std::int64_t>;

  FactoredIdeal() = default;

  /// Multiplies in P^e (e may be negative when dividing; the result must stay
  /// integral).
  void add(const PrimeIdeal& P, std::int64_t e);
  FactoredIdeal& operator*=(const FactoredIdeal& other);
  friend FactoredIdeal operator*(FactoredIdeal x, const FactoredIdeal& y) {
    return x *= y;
  }
  FactoredIdeal pow(std::int64_t k) const;

  std::int64_t exponent(const PrimeIdeal& P) const;
  bool is_unit() const { return factors_.empty(); }
  bool divides(const FactoredIdeal& other) const;

  const Map& factors() const { return factors_; }
  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.end(); }
  std::size_t size() const { return factors_.size(); }

  /// Exact norm as an integer.
  Integer norm() const;
  /// log N computed from the exact norm.
  double log_norm() const;

  std::string to_string() const;

  friend bool operator==(const FactoredIdeal&, const FactoredIdeal&) = default;

 private:
  Map factors_;
};

/// Factorization of the principal ideal (x), x != 0: factor |N(x)| over Z by
/// trial division up to `bound`, then split each prime's exponent among the
/// primes above it via valuation().
FactoredIdeal factor_element(const QuadInt& x,
                             std::uint64_t bound = kDefaultFactorBound);

/// log of a positive integer, exact to double rounding for any size.
double log_integer(const Integer& n);

}  // namespace uset
