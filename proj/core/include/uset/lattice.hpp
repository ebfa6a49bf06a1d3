#pragma once

// Ideals of O_K as full-rank sublattices of Z^2 (coordinates in the basis
// {1, w}) and Chinese remaindering across coprime prime-power moduli.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uset/field.hpp"

namespace uset {

/// Column-style Hermite normal form
///
///   [ h11  h12 ]
///   [  0   h22 ]     with h11, h22 > 0 and 0 <= h12 < h11,
///
/// whose columns (h11, 0) and (h12, h22) span the ideal. For K = Q the second
/// row is degenerate (h12 = 0, h22 = 1) and only h11 matters.
class IdealLattice {
 public:
  /// The whole ring O_K.
  static IdealLattice unit(const Field& field);
  /// The Z-span of {g, g*w : g in generators}, i.e. the ideal they generate.
  static IdealLattice from_generators(const Field& field,
                                      const std::vector<QuadInt>& generators);

  const Field& field() const { return field_; }
  const Integer& h11() const { return h11_; }
  const Integer& h12() const { return h12_; }
  const Integer& h22() const { return h22_; }
  /// Index in O_K, equal to the ideal norm.
  Integer det() const { return h11_ * h22_; }

  /// The two HNF columns as ring elements.
  std::array<QuadInt, 2> basis() const;
  /// A Lagrange-reduced basis (shortest vectors in the coordinate metric).
  std::array<QuadInt, 2> short_basis() const;

  bool contains(const QuadInt& x) const;
  /// Canonical representative a + b*w with 0 <= a < h11, 0 <= b < h22.
  QuadInt reduce(const QuadInt& x) const;
  /// Representative near the origin (Babai rounding against short_basis()).
  QuadInt reduce_short(const QuadInt& x) const;

  /// Ideal product.
  IdealLattice operator*(const IdealLattice& other) const;

  std::string to_string() const;
  friend bool operator==(const IdealLattice& x, const IdealLattice& y) {
    return x.field_ == y.field_ && x.h11_ == y.h11_ && x.h12_ == y.h12_ &&
           x.h22_ == y.h22_;
  }

 private:
  explicit IdealLattice(const Field& f) : field_(f) {}

  Field field_;
  Integer h11_ = 1;
  Integer h12_ = 0;
  Integer h22_ = 1;
};

/// HNF of P^k (k >= 1).
IdealLattice ideal_power_lattice(const PrimeIdeal& P, int k);

/// x = target (mod P^exponent)
struct Congruence {
  QuadInt target;
  PrimeIdeal prime;
  int exponent = 1;
};

enum class Reduction { Hermite, Short };

struct CrtSolution {
  QuadInt x;
  IdealLattice modulus;
};

/// Solves a system of congruences whose moduli are pairwise coprime (distinct
/// prime ideals). The answer is reduced modulo the product of the moduli.
CrtSolution crt_solve_with_modulus(const std::vector<Congruence>& system,
                                   Reduction reduction = Reduction::Hermite);

inline QuadInt crt_solve(const std::vector<Congruence>& system,
                         Reduction reduction = Reduction::Hermite) {
  return crt_solve_with_modulus(system, reduction).x;
}

/// Default cap on |O_K / P^k| for residue enumeration.
inline constexpr std::uint64_t kDefaultResidueGuard = 1u << 20;

/// Complete residue system of O_K / P^k in canonical order. Throws
/// BudgetExceeded when N(P)^k exceeds `guard`.
std::vector<QuadInt> residues(const PrimeIdeal& P, int k,
                              std::uint64_t guard = kDefaultResidueGuard);

}  // namespace uset
