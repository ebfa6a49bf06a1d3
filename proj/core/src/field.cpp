#include "uset/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <regex>
#include <sstream>

#include "uset/errors.hpp"

namespace uset {

// ---------------------------------------------------------------------------
// Field

namespace {

constexpr std::int64_t kMaxRadicand = std::int64_t{1} << 40;

std::int64_t mod4(std::int64_t d) { return ((d % 4) + 4) % 4; }

bool squarefree(std::int64_t d) {
  std::uint64_t m = static_cast<std::uint64_t>(d < 0 ? -d : d);
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % (q * q) == 0) return false;
    if (m % q == 0) m /= q;
  }
  return true;
}

}  // namespace

Field Field::rationals() { return Field(1, true); }

Field Field::quadratic(std::int64_t d) {
  if (d == 0 || d == 1)
    throw InputError("Q(sqrt " + std::to_string(d) + ") is not a quadratic field");
  if (d > kMaxRadicand || d < -kMaxRadicand)
    throw InputError("radicand " + std::to_string(d) + " out of supported range");
  if (!squarefree(d))
    throw InputError("radicand " + std::to_string(d) + " is not squarefree");
  return Field(d, false);
}

Field Field::parse(std::string_view spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "Q" || s == "QQ") return rationals();
  if (s == "Q(i)") return quadratic(-1);
  static const std::regex re(R"(Q\(sqrt\(?([+-]?[0-9]+)\)?\))");
  std::smatch m;
  if (std::regex_match(s, m, re)) {
    std::int64_t d = 0;
    try {
      d = std::stoll(m[1].str());
    } catch (const std::exception&) {
      throw InputError("bad radicand in field name '" + std::string(spec) + "'");
    }
    return quadratic(d);
  }
  throw InputError("unrecognized field name '" + std::string(spec) +
                   "' (expected \"Q\" or \"Q(sqrt D)\")");
}

std::int64_t Field::discriminant() const {
  if (rational_) return 1;
  return mod4(d_) == 1 ? d_ : 4 * d_;
}

bool Field::half_integral_basis() const { return !rational_ && mod4(d_) == 1; }

std::int64_t Field::omega_trace() const { return half_integral_basis() ? 1 : 0; }

std::int64_t Field::omega_norm() const {
  if (rational_) return 0;
  return half_integral_basis() ? (1 - d_) / 4 : -d_;
}

std::string Field::to_string() const {
  if (rational_) return "Q";
  return "Q(sqrt " + std::to_string(d_) + ")";
}

std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.to_string(); }

// ---------------------------------------------------------------------------
// QuadInt

QuadInt::QuadInt(const Field& field, Integer a, Integer b)
    : field_(field), a_(std::move(a)), b_(std::move(b)) {
  if (field_.is_rational() && b_ != 0)
    throw InputError("elements of Q have no w-coordinate");
}

void QuadInt::check_same_field(const QuadInt& y) const {
  if (!(field_ == y.field_))
    throw InputError("mixed-field operands: " + field_.to_string() + " and " +
                     y.field_.to_string());
}

QuadInt QuadInt::conj() const {
  QuadInt r(field_);
  r.a_ = a_ + b_ * field_.omega_trace();
  r.b_ = -b_;
  return r;
}

Integer QuadInt::norm() const {
  if (field_.is_rational()) return a_;
  Integer t(static_cast<long>(field_.omega_trace()));
  Integer n(static_cast<long>(field_.omega_norm()));
  return a_ * a_ + a_ * b_ * t + b_ * b_ * n;
}

Integer QuadInt::trace() const {
  if (field_.is_rational()) return a_;
  return 2 * a_ + b_ * field_.omega_trace();
}

QuadInt& QuadInt::operator+=(const QuadInt& y) {
  check_same_field(y);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& y) {
  check_same_field(y);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

QuadInt& QuadInt::operator*=(const QuadInt& y) {
  check_same_field(y);
  // (a + b w)(c + e w) = ac - be*n + (ae + bc + be*t) w
  const Integer be = b_ * y.b_;
  Integer na = a_ * y.a_ - be * field_.omega_norm();
  Integer nb = a_ * y.b_ + b_ * y.a_ + be * field_.omega_trace();
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QuadInt QuadInt::operator-() const {
  QuadInt r(field_);
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

std::string QuadInt::to_string() const {
  if (b_ == 0) return a_.get_str();
  std::string w;
  if (b_ == 1)
    w = "w";
  else if (b_ == -1)
    w = "-w";
  else
    w = b_.get_str() + "w";
  if (a_ == 0) return w;
  return a_.get_str() + (b_ > 0 ? "+" : "") + w;
}

std::ostream& operator<<(std::ostream& os, const QuadInt& x) { return os << x.to_string(); }

bool canonical_less(const QuadInt& x, const QuadInt& y) {
  const Integer sx = abs(x.a()) + abs(x.b());
  const Integer sy = abs(y.a()) + abs(y.b());
  if (sx != sy) return sx < sy;
  if (x.a() != y.a()) return x.a() < y.a();
  return x.b() < y.b();
}

bool coordinate_less(const QuadInt& x, const QuadInt& y) {
  if (x.a() != y.a()) return x.a() < y.a();
  return x.b() < y.b();
}

// ---------------------------------------------------------------------------
// PrimeIdeal

std::string_view to_string(Splitting s) {
  switch (s) {
    case Splitting::Rational:
      return "rational";
    case Splitting::Split:
      return "split";
    case Splitting::Inert:
      return "inert";
    case Splitting::Ramified:
      return "ramified";
  }
  return "?";
}

namespace {

Integer min_poly_at(const Field& f, const Integer& x) {
  return x * x - x * f.omega_trace() + Integer(static_cast<long>(f.omega_norm()));
}

Splitting splitting_of(const Field& f, const Integer& p) {
  if (f.is_rational()) return Splitting::Rational;
  const Integer disc(static_cast<long>(f.discriminant()));
  if (p == 2) {
    if (mpz_even_p(disc.get_mpz_t())) return Splitting::Ramified;
    return mod_floor(disc, 8) == 1 ? Splitting::Split : Splitting::Inert;
  }
  if (mod_floor(disc, p) == 0) return Splitting::Ramified;
  return mpz_legendre(disc.get_mpz_t(), p.get_mpz_t()) == 1 ? Splitting::Split
                                                            : Splitting::Inert;
}

/// Roots of x^2 - t x + n modulo p, ascending, without multiplicity.
std::vector<Integer> roots_mod_p(const Field& f, const Integer& p) {
  std::vector<Integer> out;
  if (p == 2) {
    for (long x = 0; x < 2; ++x)
      if (mod_floor(min_poly_at(f, Integer(x)), 2) == 0) out.emplace_back(x);
    return out;
  }
  const Integer disc(static_cast<long>(f.discriminant()));
  const Integer s = sqrt_mod_prime(disc, p);
  const Integer inv2 = (p + 1) / 2;
  const Integer t(static_cast<long>(f.omega_trace()));
  Integer r0 = mod_floor((t + s) * inv2, p);
  Integer r1 = mod_floor((t - s) * inv2, p);
  out.push_back(r0);
  if (r1 != r0) out.push_back(r1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::pair<PrimeIdeal, int>> factor_rational_prime(const Field& field,
                                                              const Integer& p) {
  if (p < 2) throw InputError("factor_rational_prime: p must be a prime >= 2");
  std::vector<std::pair<PrimeIdeal, int>> out;
  PrimeIdeal P(field);
  P.p_ = p;
  P.kind_ = splitting_of(field, p);
  switch (P.kind_) {
    case Splitting::Rational:
      P.norm_ = p;
      out.emplace_back(P, 1);
      break;
    case Splitting::Inert:
      P.norm_ = p * p;
      out.emplace_back(P, 1);
      break;
    case Splitting::Ramified: {
      auto roots = roots_mod_p(field, p);
      ensure(roots.size() == 1, "ramified prime must have a double root");
      P.norm_ = p;
      P.root_ = roots[0];
      P.other_root_ = roots[0];
      out.emplace_back(P, 2);
      break;
    }
    case Splitting::Split: {
      auto roots = roots_mod_p(field, p);
      ensure(roots.size() == 2, "split prime must have two roots");
      P.norm_ = p;
      for (int i = 0; i < 2; ++i) {
        PrimeIdeal Q = P;
        Q.index_ = i;
        Q.root_ = roots[i];
        Q.other_root_ = roots[1 - i];
        out.emplace_back(Q, 1);
      }
      break;
    }
  }
  return out;
}

std::vector<PrimeIdeal> primes_above(const Field& field, const Integer& p) {
  std::vector<PrimeIdeal> out;
  for (auto& [P, e] : factor_rational_prime(field, p)) out.push_back(P);
  return out;
}

std::vector<PrimeIdeal> primes_up_to_norm(const Field& field, std::uint64_t bound) {
  std::vector<PrimeIdeal> out;
  const Integer b(static_cast<unsigned long>(bound));
  for (std::uint32_t p : primes_up_to(bound)) {
    for (auto& P : primes_above(field, Integer(static_cast<unsigned long>(p))))
      if (P.residue_norm() <= b) out.push_back(P);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer PrimeIdeal::lifted_root(int k) const {
  if (kind_ != Splitting::Split) throw InputError("lifted_root: prime is not split");
  if (k < 1) throw InputError("lifted_root: precision must be >= 1");
  const Integer t(static_cast<long>(field_.omega_trace()));
  Integer r = root_;
  int cur = 1;
  while (cur < k) {
    cur = std::min(2 * cur, k);
    Integer mod;
    mpz_pow_ui(mod.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(cur));
    Integer deriv = mod_floor(2 * r - t, mod);
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), deriv.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw IntegrityError("Hensel lift: derivative not invertible at " + to_string());
    r = mod_floor(r - min_poly_at(field_, r) * inv, mod);
  }
  return r;
}

PrimeIdeal PrimeIdeal::conjugate() const {
  if (kind_ != Splitting::Split) return *this;
  PrimeIdeal Q = *this;
  Q.index_ = 1 - index_;
  std::swap(Q.root_, Q.other_root_);
  return Q;
}

std::string PrimeIdeal::to_string() const {
  if (kind_ == Splitting::Rational || kind_ == Splitting::Inert)
    return "(" + p_.get_str() + ")";
  std::string r = root_ == 0 ? "w" : "w-" + root_.get_str();
  return "(" + p_.get_str() + ", " + r + ")";
}

std::strong_ordering operator<=>(const PrimeIdeal& x, const PrimeIdeal& y) {
  if (int c = cmp(x.norm_, y.norm_); c != 0) return c <=> 0;
  if (int c = cmp(x.p_, y.p_); c != 0) return c <=> 0;
  if (x.kind_ != y.kind_) return x.kind_ <=> y.kind_;
  if (x.index_ != y.index_) return x.index_ <=> y.index_;
  if (x.field_.d() != y.field_.d()) return x.field_.d() <=> y.field_.d();
  return x.field_.is_rational() <=> y.field_.is_rational();
}

std::ostream& operator<<(std::ostream& os, const PrimeIdeal& P) { return os << P.to_string(); }

// ---------------------------------------------------------------------------
// valuation

namespace {

Integer pow_int(const Integer& p, std::int64_t k) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

/// Largest k <= cap with y = 0 mod p^k, y taken modulo p^cap.
std::int64_t capped_valuation(const Integer& y, const Integer& p, std::int64_t cap,
                              const Integer& modulus) {
  const Integer r = mod_floor(y, modulus);
  if (r == 0) return cap;
  return valuation_p(r, p);
}

}  // namespace

std::int64_t valuation(const QuadInt& x, const PrimeIdeal& P) {
  if (!(x.field() == P.field())) throw InputError("valuation: element and prime in different fields");
  if (x.is_zero()) throw InfiniteValuation();
  if (P.kind() == Splitting::Rational) return valuation_p(x.a(), P.p());

  const std::int64_t vn = valuation_p(x.norm(), P.p());
  switch (P.kind()) {
    case Splitting::Ramified:
      return vn;
    case Splitting::Inert:
      ensure(vn % 2 == 0, "inert prime " + P.to_string() + " has odd norm valuation on " +
                              x.to_string());
      return vn / 2;
    case Splitting::Split: {
      if (vn == 0) return 0;
      const Integer mod = pow_int(P.p(), vn);
      const Integer r = P.lifted_root(static_cast<int>(vn));
      const Integer r_conj = mod_floor(Integer(static_cast<long>(P.field().omega_trace())) - r, mod);
      const std::int64_t v = capped_valuation(x.a() + x.b() * r, P.p(), vn, mod);
      const std::int64_t w = capped_valuation(x.a() + x.b() * r_conj, P.p(), vn, mod);
      ensure(v + w == vn, "split valuations at " + P.to_string() + " and its conjugate do not sum to v_p(N(" +
                              x.to_string() + "))");
      return v;
    }
    case Splitting::Rational:
      break;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// FactoredIdeal

void FactoredIdeal::add(const PrimeIdeal& P, std::int64_t e) {
  if (e == 0) return;
  auto [it, inserted] = factors_.try_emplace(P, 0);
  it->second += e;
  if (it->second < 0)
    throw IntegrityError("ideal division left a negative exponent at " + P.to_string());
  if (it->second == 0) factors_.erase(it);
}

FactoredIdeal& FactoredIdeal::operator*=(const FactoredIdeal& other) {
  for (const auto& [P, e] : other.factors_) add(P, e);
  return *this;
}

FactoredIdeal FactoredIdeal::pow(std::int64_t k) const {
  if (k < 0) throw InputError("negative ideal power");
  FactoredIdeal r;
  if (k == 0) return r;
  for (const auto& [P, e] : factors_) r.factors_.emplace(P, e * k);
  return r;
}

std::int64_t FactoredIdeal::exponent(const PrimeIdeal& P) const {
  auto it = factors_.find(P);
  return it == factors_.end() ? 0 : it->second;
}

bool FactoredIdeal::divides(const FactoredIdeal& other) const {
  for (const auto& [P, e] : factors_)
    if (other.exponent(P) < e) return false;
  return true;
}

Integer FactoredIdeal::norm() const {
  // Product tree: factorial norms run to millions of digits.
  std::vector<Integer> layer;
  layer.reserve(factors_.size());
  for (const auto& [P, e] : factors_) layer.push_back(pow_int(P.residue_norm(), e));
  if (layer.empty()) return 1;
  while (layer.size() > 1) {
    std::vector<Integer> next;
    next.reserve((layer.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(layer[i] * layer[i + 1]);
    if (layer.size() % 2) next.push_back(std::move(layer.back()));
    layer = std::move(next);
  }
  return layer.front();
}

double FactoredIdeal::log_norm() const { return log_integer(norm()); }

std::string FactoredIdeal::to_string() const {
  if (factors_.empty()) return "(1)";
  std::ostringstream os;
  bool first = true;
  for (const auto& [P, e] : factors_) {
    if (!first) os << " * ";
    first = false;
    os << P.to_string();
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

FactoredIdeal factor_element(const QuadInt& x, std::uint64_t bound) {
  if (x.is_zero()) throw InfiniteValuation();
  FactoredIdeal out;
  const Integer n = abs(x.norm());
  if (n == 1) return out;
  for (const auto& [p, vp] : factor_integer(n, bound)) {
    std::int64_t accounted = 0;
    for (const auto& P : primes_above(x.field(), p)) {
      const std::int64_t v = valuation(x, P);
      out.add(P, v);
      accounted += v * P.inertia_degree();
    }
    ensure(accounted == vp, "norm bookkeeping failed for " + x.to_string() + " at p=" + p.get_str());
  }
  return out;
}

double log_integer(const Integer& n) {
  if (n <= 0) throw InputError("log_integer needs a positive integer");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace uset
