#include "fermatq/stats.hpp"

#include "fermatq/parallel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace fq::stats {

using fermat::QuotientSieve;

std::array<double, 4> classification_model() {
    double e1 = std::exp(-1.0);
    return {e1, 1 - e1, 1 - 2 * e1, 1 - 2.5 * e1};
}

namespace {

std::vector<u64> walk_list(u64 start, u64 limit) {
    std::vector<u64> primes;
    arith::walk_primes(start, limit, [&](u64 p) { primes.push_back(p); });
    return primes;
}

// Applies fn(p, sieve) to every prime in the list, chunked across threads;
// each chunk owns a sieve sized to its largest prime so merges stay ordered.
template <typename State, typename Fn>
std::vector<State> over_primes(const std::vector<u64>& primes, unsigned threads, Fn fn) {
    unsigned jobs = std::max(1u, threads);
    std::size_t chunk = (primes.size() + jobs - 1) / std::max<std::size_t>(1, jobs);
    chunk = std::max<std::size_t>(chunk, 1);
    std::size_t njobs = (primes.size() + chunk - 1) / chunk;
    return run_jobs<State>(njobs, threads, [&](std::size_t j) {
        std::size_t lo = j * chunk, hi = std::min(primes.size(), lo + chunk);
        QuotientSieve sieve(static_cast<u32>(primes[hi - 1]));
        State state{};
        for (std::size_t i = lo; i < hi; ++i) fn(primes[i], sieve, state);
        return state;
    });
}

} // namespace

ClassificationCounts classify_primes(u64 B, u64 H, unsigned threads) {
    if (B < 2 || H < 1) throw std::domain_error("classify_primes: B >= 2 and H >= 1 required");
    ClassificationCounts out;
    out.range_b = B;
    out.range_h = H;
    auto primes = walk_list(B, B + H);
    struct Tally {
        u64 n[4] = {0, 0, 0, 0};
        u64 total = 0;
    };
    auto parts = over_primes<Tally>(primes, threads, [](u64 p, QuotientSieve& sieve, Tally& t) {
        u64 zeros = 0;
        sieve.for_each_quotient(p, [&](u64, u64 q) { zeros += q == 0; });
        ++t.n[std::min<u64>(zeros, 3)];
        ++t.total;
    });
    for (const auto& t : parts) {
        out.n0 += t.n[0];
        out.n1 += t.n[1];
        out.n2 += t.n[2];
        out.n3_plus += t.n[3];
        out.n_total += t.total;
    }
    return out;
}

CoverageReport value_coverage(const PrimeModulus& p) {
    CoverageReport out;
    out.p = p.p;
    std::vector<bool> hit(p.p, false);
    auto mark = [&](u64, u64 q) { hit[q] = true; };
    if (p.p <= (u64(1) << 27)) {
        QuotientSieve sieve(static_cast<u32>(p.p));
        sieve.for_each_quotient(p.p, mark);
    } else {
        QuotientSieve::for_each_quotient_direct(p.p, mark);
    }
    for (u64 u = 0; u < p.p; ++u) {
        if (!hit[u]) out.missing.push_back(u);
    }
    out.missing_fraction = double(out.missing.size()) / double(p.p);
    out.missing_per_base = double(out.missing.size()) / double(p.p - 1);
    return out;
}

std::vector<u64> lambda_multiplicity(const PrimeModulus& p, u64 v) {
    if (v >= p.p) throw std::domain_error("lambda_multiplicity: v must lie in [0, p)");
    std::vector<u64> out;
    auto collect = [&](u64 z, u64 q) {
        if (arith::mul_mod(z, q, p.p) == v) out.push_back(z);
    };
    if (p.p <= (u64(1) << 27)) {
        QuotientSieve sieve(static_cast<u32>(p.p));
        sieve.for_each_quotient(p.p, collect);
    } else {
        QuotientSieve::for_each_quotient_direct(p.p, collect);
    }
    return out;
}

MultiplicitySurvey multiplicity_survey(u64 B, u64 H, const std::vector<u64>& v_list,
                                       u64 threshold, unsigned threads) {
    MultiplicitySurvey out;
    auto primes = walk_list(B, B + H);
    out.prime_count = primes.size();
    std::vector<u64> sorted = v_list;
    std::sort(sorted.begin(), sorted.end());
    struct KState {
        std::vector<u64> k;
    };
    auto parts = over_primes<KState>(primes, threads, [&](u64 p, QuotientSieve& sieve, KState& st) {
        if (st.k.empty()) st.k.assign(sorted.size(), 0);
        std::vector<u64> count(sorted.size(), 0);
        sieve.for_each_quotient(p, [&](u64 z, u64 q) {
            u64 lam = arith::mul_mod(z, q, p);
            auto it = std::lower_bound(sorted.begin(), sorted.end(), lam);
            if (it != sorted.end() && *it == lam) ++count[it - sorted.begin()];
        });
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (count[i] >= threshold) ++st.k[i];
        }
    });
    std::vector<u64> k_sorted(sorted.size(), 0);
    for (const auto& st : parts) {
        for (std::size_t i = 0; i < st.k.size(); ++i) k_sorted[i] += st.k[i];
    }
    out.counts.reserve(v_list.size());
    for (u64 v : v_list) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
        u64 k = k_sorted[it - sorted.begin()];
        out.counts.emplace_back(v, k);
        out.k_total += k;
    }
    out.cumulative_ratio =
        double(out.k_total) / (double(v_list.size()) * double(out.prime_count));
    return out;
}

Equidistribution equidistribution_nt(u64 B, double t, unsigned threads) {
    if (t <= 0) throw std::domain_error("equidistribution_nt: t must be positive");
    Equidistribution out;
    out.t = t;
    auto primes = walk_list(1, B);
    struct Acc {
        u64 nt = 0, n = 0;
    };
    auto parts = over_primes<Acc>(primes, threads, [&](u64 p, QuotientSieve& sieve, Acc& acc) {
        double cut = double(p - 1) / t;
        sieve.for_each_quotient(p, [&](u64 z, u64 q) {
            if (q == 0) {
                ++acc.n;
                if (double(z) < cut) ++acc.nt;
            }
        });
    });
    for (const auto& a : parts) {
        out.n_t += a.nt;
        out.n += a.n;
    }
    out.n_over_t_floor = static_cast<u64>(std::floor(double(out.n) / t));
    return out;
}

MomentReport sigma_moment(const PrimeModulus& p, unsigned n) {
    if (n < 1) throw std::domain_error("sigma_moment: n >= 1 required");
    if (p.p >= (u64(1) << 31)) throw std::length_error("sigma_moment: p beyond 2^31");
    MomentReport out;
    out.p = p.p;
    out.n = n;
    u64 p2 = p.p * p.p;
    BigUint sum(0);
    for (u64 z = 1; z <= (p.p - 1) / 2; ++z) {
        u64 Z = arith::pow_mod(z, p.p, p2);
        u64 lambda = (Z - z) / p.p;
        sum += BigUint(lambda).pow(n);
    }
    BigUint num = sum;
    num.mul_u64(2 * (n + 1));
    BigUint den = BigUint(p.p - 1).pow(n + 1);
    out.sigma = num.to_double() / den.to_double();
    // 40 significant digits via scaled integer division
    BigUint scaled = num * BigUint(10).pow(39);
    std::string digits = (scaled / den).to_decimal();
    if (digits.size() <= 39) {
        out.sigma_digits = "0." + std::string(39 - digits.size(), '0') + digits;
    } else {
        out.sigma_digits = digits.substr(0, digits.size() - 39) + "." + digits.substr(digits.size() - 39);
    }
    return out;
}

u64 floor_log(u64 p, u64 a) {
    return arith::floor_log(p, a);
}

double binomial_tail(u64 p, u64 n) {
    if (n == 0) return 1.0;
    if (n > p - 2) return 0.0;
    double dp = double(p);
    double lt = std::lgamma(double(p - 1)) - std::lgamma(double(n + 1)) -
                std::lgamma(double(p - 1 - n)) - double(n) * std::log(dp) +
                double(p - 2 - n) * std::log1p(-1.0 / dp);
    double term = std::exp(lt);
    double sum = 0.0;
    for (u64 j = n; j <= p - 2; ++j) {
        sum += term;
        if (term < sum * 1e-20) break;
        term *= double(p - 2 - j) / (double(j + 1) * double(p - 1));
    }
    return sum;
}

bool tail_upper_bound_check(u64 p, u64 n) {
    if (n == 0) return binomial_tail(p, 0) == 1.0; // boundary: bound holds with equality
    if (n > p - 2) return true;
    double bound = std::exp(std::lgamma(double(p - 1)) - std::lgamma(double(n + 1)) -
                            std::lgamma(double(p - 1 - n)) - double(n) * std::log(double(p)));
    double tail = binomial_tail(p, n);
    if (n == p - 2) return tail <= bound * (1 + 1e-9); // single-term tail equals the bound
    return tail < bound;
}

double ratio_encadre(u64 p, u64 a) {
    if (a < 2 || p <= a) throw std::domain_error("ratio_encadre requires 2 <= a < p");
    u64 h = floor_log(p, a);
    double s = 0.0;
    double pm1 = double(p - 1);
    for (u64 k = 1; k + h <= p - 2; ++k) {
        s = (s + 1.0) * double(k) / (pm1 * double(p - 1 - k));
    }
    return std::exp(-1.0) * (s + 1.0);
}

double ratio_encadre_lower_bound(u64 p, u64 a) {
    u64 h = floor_log(p, a);
    return std::exp(-1.0 + (double(h) + 1.5) / double(p));
}

double epsilon_exponent(u64 p, u64 a) {
    if (a < 2 || p <= a) throw std::domain_error("epsilon_exponent requires 2 <= a < p");
    u64 h = floor_log(p, a);
    double tail = binomial_tail(p, h + 1);
    return -1.0 - std::log(tail) / std::log(double(p));
}

} // namespace fq::stats
