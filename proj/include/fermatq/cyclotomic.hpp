#pragma once

#include "fermatq/arith.hpp"
#include "fermatq/bigint.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace fq::cyclo {

class StructuralViolation : public std::logic_error {
  public:
    explicit StructuralViolation(const std::string& what) : std::logic_error(what) {}
};

// Phi_m(a) for a >= 2, evaluated exactly through the Moebius product
// prod_{d|m} (a^d - 1)^{mu(m/d)}; every division is exact.
BigUint phi_m_eval(u64 m, const BigUint& a);
BigUint phi_m_eval(u64 m, u64 a);

// Coefficients of the m-th cyclotomic polynomial, constant term first.
// Coefficients fit i64 comfortably for the index range this toolkit uses.
std::vector<long long> cyclotomic_coeffs(u64 m);

// Phi_m(a) mod modulus via Horner on the coefficient vector; valid for any
// a >= 0 including the a = 0 and a = 1 edge values.
u128 phi_m_eval_mod(u64 m, u128 a, u128 modulus);

struct CyclotomicEvaluation {
    u64 m = 0;
    u64 a = 0;
    BigUint value;       // Phi_m(a)
    u64 gcd_with_m = 1;  // 1 or a single prime r
    BigUint reduced;     // value / gcd_with_m
};

// Populates a CyclotomicEvaluation and checks the structural facts: the gcd
// is 1 or a prime r, and in the latter case m = r^e * ord_r(a).
CyclotomicEvaluation reduce(u64 m, u64 a);

struct FactorCongruence {
    bool all_congruent = false;             // every recovered prime factor is 1 mod m
    std::vector<std::pair<BigUint, unsigned>> factors;
    std::optional<BigUint> unfactored_cofactor; // set when the rho budget ran out
};

// Factors the reduced value and checks that every prime factor l satisfies
// l == 1 (mod m). Requires m != 2.
FactorCongruence factor_congruence_check(u64 m, u64 a, u64 rho_budget = arith::kDefaultRhoBudget);

struct CoprimalityReport {
    bool ok = false;             // all pairs coprime, the (1,2) pair excepted
    bool strict_ok = false;      // all pairs coprime including (1,2)
    std::vector<std::tuple<u64, u64, BigUint>> violations;
};

// gcd(reduced(m), reduced(m')) over 1 <= m < m' <= m_max. With the division-
// by-gcd reduction convention, (m, m') = (1, 2) can share a factor of 2 when
// a == 3 (mod 4); that pair is reported separately from all others.
CoprimalityReport pairwise_coprime_check(u64 a, u64 m_max);

// Confirms (q_p(a) = 0) <=> (p^2 | reduced value at m = ord_p(a)) and returns
// the shared truth value; throws StructuralViolation if the sides disagree.
bool wieferich_equivalence_check(u64 a, const arith::PrimeModulus& p);

} // namespace fq::cyclo
