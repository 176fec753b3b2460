#pragma once

#include "fermatq/arith.hpp"
#include "fermatq/bigint.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fq::fermat {

using arith::PrimeModulus;

// q_p(a) = ((a^{p-1} mod p^2) - 1)/p, the quotient residue in [0, p).
// q_p(1) = 0 and the p = 2 case (zero exactly when a == 1 mod 4) both fall
// out of the same formula. Throws when p divides a.
u64 fermat_quotient(u64 a, const PrimeModulus& p);
u64 fermat_quotient(const BigUint& a, const PrimeModulus& p);
bool is_quotient_zero(u64 a, const PrimeModulus& p);

struct QuotientVariants {
    u64 q = 0;        // (a^{p-1} - 1)/p mod p
    u64 q_prime = 0;  // (a^d - 1)/p mod p, d the order of a
    u64 q_dprime = 0; // Phi_d(a)/p mod p
    u64 order = 0;
    u64 t = 0; // p-1 = t * order
    bool vanish_together = false;
};
// The three quotient forms with the congruence q == t*q' (mod p) verified.
QuotientVariants quotient_variants(u64 a, const PrimeModulus& p);

struct SolutionRecord {
    u64 p = 0;
    u64 z = 0;      // residue in [1, p)
    u64 lambda = 0; // lift coefficient in [0, p)
    u64 order = 0;  // multiplicative order of z mod p
};

struct Lift {
    u64 z = 0;
    u64 u = 0;
    u64 lambda = 0;
    u128 value = 0; // Z = z + lambda*p, the unique lift in [1, p^2) with q_p(Z) = u
};
Lift lift_to_solution(u64 z, u64 u, const PrimeModulus& p);

// Smallest-prime-factor sieve shared by the per-prime experiments: quotients
// are computed by modular exponentiation only at prime z and by
// q_p(uv) = q_p(u) + q_p(v) (mod p) along the factor chain otherwise.
class QuotientSieve {
  public:
    explicit QuotientSieve(u32 max_p);
    // calls fn(z, q_p(z)) for every z in [2, p); p must be <= max_p
    void for_each_quotient(u64 p, const std::function<void(u64 z, u64 q)>& fn);
    // direct powmod loop, same contract; the oracle for the sieve path
    static void for_each_quotient_direct(u64 p, const std::function<void(u64 z, u64 q)>& fn);
    u32 max_p() const { return max_p_; }

  private:
    u32 max_p_;
    std::vector<u32> spf_;
    std::vector<u32> q_; // quotient per z, reused across primes
};

// All z in [2, p) with q_p(z) = 0, each with its multiplicative order.
// Uses the sieve when p fits below `sieve_limit`, otherwise direct powmods.
std::vector<SolutionRecord> solutions_in_range(const PrimeModulus& p,
                                               u32 sieve_limit = u32(1) << 27);

// The p-1 values z^p mod p^2 for z in [1, p), sorted; requires p < 2^31.
std::vector<u64> solutions_mod_p2(const PrimeModulus& p);

struct CrtSolutionSet {
    std::vector<u64> primes;
    BigUint modulus;               // product of p^2
    std::vector<BigUint> residues; // sorted, one per combination, count = prod (p-1)
};
CrtSolutionSet crt_solutions(const std::vector<u64>& primes);

// multiplicative orders of g, g^2, g^3, ... while the integer power stays < p
std::vector<u64> orders_of_powers(u64 g, const PrimeModulus& p);

struct ThetaOffset {
    u64 j = 0;
    u64 a_j = 0;   // a^j mod p
    u64 theta = 0; // a^j * a_j^{-1} = 1 + theta*p (mod p^2)
};
// Offsets for j = 1 .. ord_p(a)-1, with q_p(a_j) == j*q_p(a) + theta_j (mod p)
// verified for every j.
std::vector<ThetaOffset> theta_offsets(u64 a, const PrimeModulus& p);

struct SearchOptions {
    unsigned threads = 1;
    u64 chunk = u64(1) << 22;
    // called after each finished chunk with the highest bound fully scanned
    std::function<void(u64 scanned_to)> progress;
};
// Least prime p in [lo, hi] with p not dividing a and q_p(a) = 0.
std::optional<u64> first_solution_search(u64 a, u64 lo, u64 hi, const SearchOptions& opts = {});

struct AverageCount {
    u64 zero_pairs = 0; // pairs (a, p) with q_p(a) = 0, p = 2 counted via a == 1 mod 4
    u64 a_values = 0;
    double mean = 0.0;
};
// Mean number of zero quotients per base over a in [a_lo, a_hi], primes
// stepped to p_bound with the walk semantics (p = 2 handled up front).
AverageCount average_solution_count(u64 a_lo, u64 a_hi, u64 p_bound);

} // namespace fq::fermat
