#pragma once

#include "fermatq/arith.hpp"
#include "fermatq/fermat.hpp"

#include <functional>
#include <vector>

namespace fq::dens {

using arith::PrimeModulus;

struct DensityReport {
    u64 bound = 0;
    double value = 0;
    double reference = 0; // asymptotic comparator (or tail-extrapolated limit)
    u64 terms_used = 0;
};

struct LocalDensityCoefficient {
    u64 m = 0;
    u64 p = 0;
    u64 c = 0; // 0, 1, or phi(m)
};
// Number of residues A in [1, p^2) with Phi_m(A) == 0 (mod p^2), by case
// analysis: phi(m) when p == 1 (mod m) and p does not divide m, 1 only at
// (m, p) = (2, 2), otherwise 0.
LocalDensityCoefficient c_p(u64 m, u64 p);
// Direct count over all A in [1, p^2); the oracle for c_p (p small).
u64 c_p_bruteforce(u64 m, u64 p);

// prod over primes q = 1 + n*m, n <= n_max, of (1 - phi(m)/q^2); the loop
// bound is part of the contract so reported digits are reproducible.
DensityReport p_m_product(u64 m, u64 n_max = 2000000);

struct LocalTableEntry {
    u64 value = 0; // A in [1, p^2) with q_p(A) = 0
    u64 order = 0; // multiplicative order of A mod p
};
// All p-1 local solutions with their orders, sorted by value; each order
// class d | p-1 carries exactly phi(d) entries.
std::vector<LocalTableEntry> local_solution_table(const PrimeModulus& p);

struct DpReport {
    u64 bound = 0;
    u64 terms = 0;
    double product = 0;    // prod_{p<=x} (1 - (p-1)/p^2)
    double mertens = 0;    // prod (1 - 1/p)
    double correction = 0; // prod (1 + 1/(p(p-1)))
    double comparator = 0; // 1.09125 / log x
    double product_times_log = 0;
};
DpReport dp_product(u64 x);

struct CrtCount {
    BigUint count;   // integers in [1, prod p^2) with every quotient nonzero
    BigUint modulus; // prod_{p<=x} p^2
};
CrtCount crt_exact_count(u64 x);

struct SurveyOptions {
    unsigned threads = 1;
    std::function<void(u64 done, u64 total)> progress;
};
// Count of A in [2, y] whose quotient is nonzero at every prime up to x
// (multiples of p count as nonzero; the prime walk runs one prime past x).
u64 survey_nonzero(u64 y, u64 x, const SurveyOptions& opts = {});

// (2 log(p-1) - log(sum over d | p-1 of phi(d)^2)) / log(p)
double upsilon(u64 p);
double upsilon(const BigUint& p, const arith::Factorization& p_minus_1);
// C * log(log(log2(p))) / log(p); the innermost logarithm is base 2
double eta(const BigUint& p, double C);

struct EtaUpsilon {
    double eta_value = 0;
    double upsilon_value = 0;
    double difference = 0;
};
EtaUpsilon eta_minus_upsilon(const BigUint& p, double C,
                             u64 rho_budget = arith::kDefaultRhoBudget);

// Partial sum over primes p <= x of phi-squared divisor sums over p(p-1)^2,
// via a segmented factor sieve; reference = log(log(x))/2.
DensityReport s_partial(u64 x, u64 segment = u64(1) << 22);

struct SeriesSums {
    double binom_sum = 0;    // sum over p of C(p-2,h)/p^h, h = floor(log_a p)
    double stirling_sum = 0; // sum of h/h!
    double full_tail_sum = 0; // limit estimate: e^{-1} times binom_sum
};
SeriesSums series_sums(u64 a, u64 bound);

// next prime at or past the root of
// (loglog x - loglog a - 1)/log a - (loglog x - loglog a)/(2 log x) = C,
// bracketed from [100, 1e12] (auto-widened) and bisected to convergence.
u64 p0_solver(u64 a, double C);

} // namespace fq::dens
