#pragma once

#include "fermatq/arith.hpp"
#include "fermatq/fermat.hpp"

#include <array>
#include <string>
#include <vector>

namespace fq::stats {

using arith::PrimeModulus;

struct ClassificationCounts {
    u64 range_b = 0;
    u64 range_h = 0;
    u64 n0 = 0;
    u64 n1 = 0;
    u64 n2 = 0;
    u64 n3_plus = 0;
    u64 n_total = 0;
    double frac_none() const { return double(n0) / double(n_total); }
    double frac_at_least1() const { return double(n1 + n2 + n3_plus) / double(n_total); }
    double frac_at_least2() const { return double(n2 + n3_plus) / double(n_total); }
    double frac_at_least3() const { return double(n3_plus) / double(n_total); }
};

// Model probabilities for 0 / >=1 / >=2 / >=3 solutions under the
// Binomial(p-2, 1/p) law at large p.
std::array<double, 4> classification_model();

// Tallies primes stepped through (B, B+H] by their number of solutions
// z in [2, p) with q_p(z) = 0.
ClassificationCounts classify_primes(u64 B, u64 H, unsigned threads = 1);

struct CoverageReport {
    u64 p = 0;
    std::vector<u64> missing;    // u in [0, p) never attained by q_p(z), z in [2, p)
    double missing_fraction = 0; // |missing| / p
    double missing_per_base = 0; // |missing| / (p-1), the survey-program ratio
};
CoverageReport value_coverage(const PrimeModulus& p);

// all z in [2, p) with lambda(z) = v
std::vector<u64> lambda_multiplicity(const PrimeModulus& p, u64 v);

struct MultiplicitySurvey {
    std::vector<std::pair<u64, u64>> counts; // (v, K = primes with >= threshold witnesses)
    u64 prime_count = 0;
    u64 k_total = 0;
    double cumulative_ratio = 0; // k_total / (|v_list| * prime_count)
};
MultiplicitySurvey multiplicity_survey(u64 B, u64 H, const std::vector<u64>& v_list,
                                       u64 threshold = 4, unsigned threads = 1);

struct Equidistribution {
    u64 n_t = 0; // solutions with z < (p-1)/t, cumulative
    u64 n = 0;   // all solutions, cumulative
    double t = 0;
    u64 n_over_t_floor = 0;
};
Equidistribution equidistribution_nt(u64 B, double t, unsigned threads = 1);

struct MomentReport {
    u64 p = 0;
    unsigned n = 0;
    double sigma = 0;
    std::string sigma_digits; // 40 significant digits from the exact integer sum
};
MomentReport sigma_moment(const PrimeModulus& p, unsigned n);

// largest h with a^h <= p
u64 floor_log(u64 p, u64 a);

// P(X >= n) for X ~ Binomial(p-2, 1/p), summed upward from the n-th term so
// tiny tails keep full relative accuracy.
double binomial_tail(u64 p, u64 n);

// tail < C(p-2, n) / p^n (strict for n >= 1; n = 0 sits on the boundary)
bool tail_upper_bound_check(u64 p, u64 n);

// Ratio of the tail at n = h to C(p-2,h)/p^h, h = floor(log p / log a),
// computed by the backward term recurrence times e^{-1}.
double ratio_encadre(u64 p, u64 a);
double ratio_encadre_lower_bound(u64 p, u64 a); // exp(-1 + (h + 3/2)/p)

// epsilon with P(X >= h+1) = p^{-(1+epsilon)}; the summation runs j = 0..h
// inclusive, so this reports the tail one past the h-th term.
double epsilon_exponent(u64 p, u64 a);

} // namespace fq::stats
