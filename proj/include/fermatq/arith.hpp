#pragma once

#include "fermatq/bigint.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fq {
using u32 = std::uint32_t;
}

namespace fq::arith {

inline constexpr u64 kDefaultRhoBudget = u64(1) << 26;
inline constexpr u64 kDefaultSieveBlock = u64(1) << 20;

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
u128 mul_mod_u128(u128 a, u128 b, u128 m); // any modulus below 2^128
u128 pow_mod_u128(u128 base, u128 exp, u128 m);
u64 inv_mod(u64 a, u64 m); // gcd(a,m)=1

bool is_prime(u64 n);
bool is_prime_u128(u128 n);
bool is_prime(const BigUint& n);
u64 next_prime(u64 n);
BigUint next_prime(const BigUint& n);

std::vector<u32> small_primes(u32 limit);
std::vector<u32> spf_sieve(u32 limit);

// Segmented sieve over [lo, hi], ascending.
void prime_range(u64 lo, u64 hi, const std::function<void(u64)>& fn,
                 u64 block = kDefaultSieveBlock);
std::vector<u64> primes_in(u64 lo, u64 hi);
u64 count_primes(u64 lo, u64 hi);

// Enumerates p <- smallest prime >= p+2 starting from `start`, while the
// previous p < limit; the first prime at or past the limit is still visited
// and a start of 2 skips 3. The range surveys use exactly these stepping
// semantics so cumulative tallies land on reproducible values.
void walk_primes(u64 start, u64 limit, const std::function<void(u64)>& fn);

struct PrimeModulus {
    u64 p;
    u128 p_squared;
    explicit PrimeModulus(u64 prime);
};

class BudgetExhausted : public std::runtime_error {
  public:
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct Factorization {
    BigUint value;
    std::vector<std::pair<BigUint, unsigned>> factors; // primes ascending
};

struct FactorizationU64 {
    u64 value = 0;
    std::vector<std::pair<u64, unsigned>> factors;
};

FactorizationU64 factorize(u64 n);
Factorization factorize(const BigUint& n, u64 rho_budget = kDefaultRhoBudget);

u64 euler_phi(u64 n);
u64 euler_phi(const FactorizationU64& f);
int moebius(u64 n);

struct DivisorSet {
    u64 n = 0;
    std::vector<u64> divisors; // sorted, complete
};
DivisorSet divisors(const FactorizationU64& f);

u64 multiplicative_order(u64 a, u64 p);
u64 multiplicative_order(u64 a, u64 p, const FactorizationU64& pm1);

// largest h with base^h <= value
u64 floor_log(u64 value, u64 base);

// sum over d | p-1 of phi(d)^2; exact for p-1 < 2^32
u64 phi_squared_sum(u64 p);
// same sum for n given in factored form (multiplicative evaluation)
BigUint phi_squared_sum_of(const Factorization& n_factored);

} // namespace fq::arith
