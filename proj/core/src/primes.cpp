#include "uset/primes.hpp"

#include <map>
#include <mutex>
#include <string>

#include "uset/errors.hpp"

namespace uset {

namespace {

std::vector<std::uint32_t> sieve(std::uint64_t bound) {
  std::vector<std::uint32_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

bool fits_u64(const Integer& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 63; }

void push_power(std::vector<PrimePower>& out, std::uint64_t p, int e) {
  if (e > 0) out.push_back({Integer(static_cast<unsigned long>(p)), e});
}

}  // namespace

const std::vector<std::uint32_t>& primes_up_to(std::uint64_t bound) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::vector<std::uint32_t>> cache;
  if (bound > (1ull << 32)) throw InputError("sieve bound too large");
  std::lock_guard lock(mu);
  auto it = cache.find(bound);
  if (it == cache.end()) it = cache.emplace(bound, sieve(bound)).first;
  return it->second;
}

PartialFactorization trial_divide(const Integer& n, std::uint64_t bound) {
  if (n == 0) throw InputError("cannot factor zero");
  PartialFactorization out;
  Integer m = abs(n);
  const auto& primes = primes_up_to(bound);

  std::size_t idx = 0;
  // Bignum phase: peel primes until the cofactor fits a machine word.
  for (; idx < primes.size() && !fits_u64(m); ++idx) {
    const unsigned long p = primes[idx];
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    push_power(out.small, p, e);
  }
  if (fits_u64(m)) {
    std::uint64_t r = m.get_ui();
    for (; idx < primes.size(); ++idx) {
      const std::uint64_t p = primes[idx];
      if (p * p > r) break;
      int e = 0;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      push_power(out.small, p, e);
    }
    // Whatever is left is 1, a prime <= bound, or has only factors > bound.
    if (r > 1 && r <= bound) {
      push_power(out.small, r, 1);
      r = 1;
    }
    out.cofactor = Integer(static_cast<unsigned long>(r));
  } else {
    out.cofactor = m;
  }
  return out;
}

bool is_probable_prime(const Integer& n) {
  return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::vector<PrimePower> factor_integer(const Integer& n, std::uint64_t bound) {
  auto partial = trial_divide(n, bound);
  auto out = std::move(partial.small);
  const Integer& c = partial.cofactor;
  if (c == 1) return out;
  const Integer b = Integer(static_cast<unsigned long>(bound));
  if (c <= b * b || is_probable_prime(c)) {
    out.push_back({c, 1});
    return out;
  }
  throw BudgetExceeded("factor bound " + std::to_string(bound) +
                       " exceeded: composite cofactor " + c.get_str() +
                       " has no factor below the bound");
}

int valuation_p(const Integer& n, const Integer& p) {
  if (n == 0) throw InfiniteValuation();
  if (p < 2) throw InputError("valuation_p needs p >= 2");
  Integer m = n;
  const unsigned long count =
      mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
  return static_cast<int>(count);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer mod_floor(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer sqrt_mod_prime(const Integer& a_in, const Integer& p) {
  const Integer a = mod_floor(a_in, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
    throw InputError("sqrt_mod_prime: not a quadratic residue");

  auto powm = [&](const Integer& base, const Integer& e) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  };

  // p - 1 = q * 2^s with q odd
  Integer q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  if (s == 1) return powm(a, (p + 1) / 4);

  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;

  Integer c = powm(z, q);
  Integer r = powm(a, (q + 1) / 2);
  Integer t = powm(a, q);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Integer t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Integer b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

}  // namespace uset
