#include "uset/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "uset/errors.hpp"

namespace uset {

namespace {

// A lattice vector (a, b) together with a companion vector (ta, tb) that is
// carried through every integer row operation. The companion records the
// part of the vector that came from a designated sublattice.
struct Tracked {
  Integer a, b, ta, tb;
};

void axpy(Tracked& x, const Integer& q, const Tracked& y) {
  x.a -= q * y.a;
  x.b -= q * y.b;
  x.ta -= q * y.ta;
  x.tb -= q * y.tb;
}

void negate(Tracked& x) {
  x.a = -x.a;
  x.b = -x.b;
  x.ta = -x.ta;
  x.tb = -x.tb;
}

/// Euclid on one coordinate across a list: afterwards at most one entry has a
/// nonzero value in that coordinate and it is returned (made positive).
std::optional<Tracked> gcd_pivot(std::vector<Tracked>& rows, Integer Tracked::*coord) {
  for (;;) {
    std::size_t best = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].*coord == 0) continue;
      if (best == rows.size() || abs(rows[i].*coord) < abs(rows[best].*coord)) best = i;
    }
    if (best == rows.size()) return std::nullopt;
    bool others = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == best || rows[i].*coord == 0) continue;
      axpy(rows[i], floor_div(rows[i].*coord, rows[best].*coord), rows[best]);
      others = true;
    }
    if (!others) {
      Tracked pivot = rows[best];
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
      if (pivot.*coord < 0) negate(pivot);
      return pivot;
    }
  }
}

struct TrackedHnf {
  Tracked col1;  // (h11, 0)
  Tracked col2;  // (h12, h22)
};

TrackedHnf tracked_hnf(std::vector<Tracked> rows, bool rational) {
  Tracked col2{0, 1, 0, 0};
  if (!rational) {
    auto p = gcd_pivot(rows, &Tracked::b);
    if (!p) throw IntegrityError("lattice is not full rank");
    col2 = *p;
  }
  auto p1 = gcd_pivot(rows, &Tracked::a);
  if (!p1) throw IntegrityError("lattice is not full rank");
  Tracked col1 = *p1;
  axpy(col2, floor_div(col2.a, col1.a), col1);
  return {col1, col2};
}

Tracked plain(const QuadInt& x, bool tagged) {
  return tagged ? Tracked{x.a(), x.b(), x.a(), x.b()} : Tracked{x.a(), x.b(), 0, 0};
}

/// Rounds num/den to the nearest integer (den != 0), halves rounded up.
Integer round_div(const Integer& num, const Integer& den) {
  Integer n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return floor_div(2 * n + d, 2 * d);
}

Integer sq_len(const QuadInt& x) { return x.a() * x.a() + x.b() * x.b(); }

Integer dot(const QuadInt& x, const QuadInt& y) { return x.a() * y.a() + x.b() * y.b(); }

}  // namespace

IdealLattice IdealLattice::unit(const Field& field) { return IdealLattice(field); }

IdealLattice IdealLattice::from_generators(const Field& field,
                                           const std::vector<QuadInt>& generators) {
  std::vector<Tracked> rows;
  const QuadInt w(field, 0, field.is_rational() ? 0 : 1);
  for (const auto& g : generators) {
    if (!(g.field() == field)) throw InputError("generator from a different field");
    if (g.is_zero()) continue;
    rows.push_back(plain(g, false));
    if (!field.is_rational()) rows.push_back(plain(g * w, false));
  }
  if (rows.empty()) throw InputError("the zero ideal is not a lattice");
  auto h = tracked_hnf(std::move(rows), field.is_rational());
  IdealLattice L(field);
  L.h11_ = h.col1.a;
  L.h12_ = h.col2.a;
  L.h22_ = h.col2.b;
  return L;
}

std::array<QuadInt, 2> IdealLattice::basis() const {
  return {QuadInt(field_, h11_, Integer(0)), QuadInt(field_, h12_, field_.is_rational() ? Integer(0) : h22_)};
}

std::array<QuadInt, 2> IdealLattice::short_basis() const {
  if (field_.is_rational()) return basis();
  QuadInt u = basis()[0], v = basis()[1];
  if (sq_len(u) > sq_len(v)) std::swap(u, v);
  for (;;) {
    const Integer q = round_div(dot(u, v), sq_len(u));
    v -= QuadInt(field_, q) * u;
    if (sq_len(v) >= sq_len(u)) break;
    std::swap(u, v);
  }
  return {u, v};
}

bool IdealLattice::contains(const QuadInt& x) const { return reduce(x).is_zero(); }

QuadInt IdealLattice::reduce(const QuadInt& x) const {
  if (!(x.field() == field_)) throw InputError("reduce: element from a different field");
  if (field_.is_rational()) return QuadInt(field_, mod_floor(x.a(), h11_));
  const Integer q = floor_div(x.b(), h22_);
  const Integer b = x.b() - q * h22_;
  const Integer a = mod_floor(x.a() - q * h12_, h11_);
  return QuadInt(field_, a, b);
}

QuadInt IdealLattice::reduce_short(const QuadInt& x) const {
  if (!(x.field() == field_)) throw InputError("reduce_short: element from a different field");
  if (field_.is_rational()) {
    return QuadInt(field_, x.a() - round_div(x.a(), h11_) * h11_);
  }
  const auto [u, v] = short_basis();
  // x = alpha*u + beta*v over Q by Cramer's rule.
  const Integer D = u.a() * v.b() - u.b() * v.a();
  const Integer alpha = round_div(x.a() * v.b() - x.b() * v.a(), D);
  const Integer beta = round_div(u.a() * x.b() - u.b() * x.a(), D);
  QuadInt r = x;
  r -= QuadInt(field_, alpha) * u;
  r -= QuadInt(field_, beta) * v;
  return r;
}

IdealLattice IdealLattice::operator*(const IdealLattice& other) const {
  if (!(field_ == other.field_)) throw InputError("ideal product across fields");
  std::vector<QuadInt> gens;
  for (const auto& x : basis())
    for (const auto& y : other.basis()) gens.push_back(x * y);
  return from_generators(field_, gens);
}

std::string IdealLattice::to_string() const {
  std::ostringstream os;
  os << "[[" << h11_ << ", " << h12_ << "], [0, " << h22_ << "]]";
  return os.str();
}

IdealLattice ideal_power_lattice(const PrimeIdeal& P, int k) {
  if (k < 1) throw InputError("ideal_power_lattice: exponent must be >= 1");
  const Field& f = P.field();
  std::vector<QuadInt> gens{QuadInt(f, P.p())};
  if (P.has_local_root()) gens.emplace_back(f, -P.local_root(), Integer(1));
  const IdealLattice base = IdealLattice::from_generators(f, gens);
  IdealLattice result = IdealLattice::unit(f);
  IdealLattice sq = base;
  for (int e = k;;) {
    if (e & 1) result = result * sq;
    e >>= 1;
    if (e == 0) break;
    sq = sq * sq;
  }
  Integer expected;
  mpz_pow_ui(expected.get_mpz_t(), P.residue_norm().get_mpz_t(), static_cast<unsigned long>(k));
  ensure(result.det() == expected, "ideal power lattice for " + P.to_string() + "^" +
                                       std::to_string(k) + " has the wrong determinant");
  return result;
}

CrtSolution crt_solve_with_modulus(const std::vector<Congruence>& system, Reduction reduction) {
  if (system.empty()) throw InputError("crt_solve: empty system");
  const Field& f = system.front().prime.field();
  {
    std::vector<PrimeIdeal> seen;
    for (const auto& c : system) {
      if (!(c.prime.field() == f) || !(c.target.field() == f))
        throw InputError("crt_solve: congruences from different fields");
      if (c.exponent < 1) throw InputError("crt_solve: exponents must be >= 1");
      if (std::find(seen.begin(), seen.end(), c.prime) != seen.end())
        throw InputError("crt_solve: moduli are not coprime (repeated prime " +
                         c.prime.to_string() + ")");
      seen.push_back(c.prime);
    }
  }

  IdealLattice M = ideal_power_lattice(system[0].prime, system[0].exponent);
  QuadInt x = M.reduce(system[0].target);
  const QuadInt w(f, 0, f.is_rational() ? 0 : 1);
  for (std::size_t i = 1; i < system.size(); ++i) {
    const auto& c = system[i];
    const IdealLattice L = ideal_power_lattice(c.prime, c.exponent);
    // Find e1 in M, e2 in L with e1 + e2 = 1 by tracking the M-component
    // through the HNF of M + L.
    std::vector<Tracked> rows;
    for (const auto& g : M.basis()) rows.push_back(plain(g, true));
    for (const auto& g : L.basis()) rows.push_back(plain(g, false));
    auto h = tracked_hnf(std::move(rows), f.is_rational());
    if (!(h.col1.a == 1 && h.col2.a == 0 && h.col2.b == 1))
      throw InputError("crt_solve: moduli are not coprime");
    const QuadInt e1(f, h.col1.ta, h.col1.tb);
    const QuadInt one(f, 1);
    const QuadInt e2 = one - e1;
    ensure(M.contains(e1) && L.contains(e2), "crt_solve: idempotent split failed");
    x = x * e2 + c.target * e1;
    M = M * L;
    x = M.reduce(x);
  }
  if (reduction == Reduction::Short) x = M.reduce_short(x);
  for (const auto& c : system) {
    const QuadInt diff = x - c.target;
    ensure(diff.is_zero() || valuation(diff, c.prime) >= c.exponent,
           "crt_solve: solution misses congruence at " + c.prime.to_string());
  }
  return {x, M};
}

std::vector<QuadInt> residues(const PrimeIdeal& P, int k, std::uint64_t guard) {
  const IdealLattice L = ideal_power_lattice(P, k);
  if (L.det() > Integer(static_cast<unsigned long>(guard)))
    throw BudgetExceeded("residue guard " + std::to_string(guard) + " exceeded: |O/" +
                         P.to_string() + "^" + std::to_string(k) + "| = " + L.det().get_str());
  std::vector<QuadInt> out;
  const unsigned long A = L.h11().get_ui();
  const unsigned long B = P.field().is_rational() ? 1 : L.h22().get_ui();
  out.reserve(A * B);
  for (unsigned long b = 0; b < B; ++b)
    for (unsigned long a = 0; a < A; ++a)
      out.emplace_back(P.field(), static_cast<long>(a), static_cast<long>(b));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace uset
