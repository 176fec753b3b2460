#include "CLI11.hpp"
#include "json.hpp"

#include "fermatq/cyclotomic.hpp"
#include "fermatq/densities.hpp"
#include "fermatq/fermat.hpp"
#include "fermatq/stats.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace fq;
using json = nlohmann::json;

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string fmt_u128(u128 v) {
    return BigUint::from_u128(v).to_decimal();
}

struct Report {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void cfg(const std::string& k, const std::string& v) { config.emplace_back(k, v); }
    void cfg(const std::string& k, u64 v) { config.emplace_back(k, std::to_string(v)); }
    void cfg_d(const std::string& k, double v) { config.emplace_back(k, fmt_double(v)); }
    void row(std::vector<std::string> r) { rows.push_back(std::move(r)); }
};

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct Output {
    std::string format = "csv";
    void emit(const Report& r, double runtime_seconds) const {
        if (format == "json") {
            json doc;
            doc["config"] = json::object();
            for (auto& [k, v] : r.config) doc["config"][k] = v;
            json hdr = json::array();
            for (auto& h : r.header) hdr.push_back(h);
            doc["header"] = hdr;
            doc["rows"] = json::array();
            for (auto& row : r.rows) {
                json jr = json::array();
                for (auto& cell : row) jr.push_back(cell);
                doc["rows"].push_back(jr);
            }
            doc["runtime_seconds"] = runtime_seconds;
            std::cout << doc.dump(1) << "\n";
            return;
        }
        for (std::size_t i = 0; i < r.header.size(); ++i) {
            if (i) std::cout << ",";
            std::cout << csv_quote(r.header[i]);
        }
        std::cout << "\n";
        for (auto& row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) std::cout << ",";
                std::cout << csv_quote(row[i]);
            }
            std::cout << "\n";
        }
    }
};

struct Common {
    std::string format = "csv";
    unsigned threads = 1;
    u64 seed = 0;
    std::string checkpoint;
};

// operation -> subcommand map; printed by --list-ops and pinned by the
// dispatch coverage test
const std::vector<std::pair<const char*, const char*>> kDispatch = {
    {"phi_m_eval", "phi"},
    {"reduce", "reduce"},
    {"factor_congruence_check", "factor-check"},
    {"pairwise_coprime_check", "coprime"},
    {"wieferich_equivalence_check", "wieferich-check"},
    {"fermat_quotient", "quotient"},
    {"quotient_variants", "variants"},
    {"lift_to_solution", "lift"},
    {"solutions_in_range", "solutions"},
    {"solutions_mod_p2", "solutions"},
    {"crt_solutions", "crt"},
    {"orders_of_powers", "orders-of-powers"},
    {"theta_offsets", "theta"},
    {"first_solution_search", "first-zero"},
    {"average_solution_count", "avg-count"},
    {"classify_primes", "classify"},
    {"value_coverage", "coverage"},
    {"lambda_multiplicity", "lambda-stats"},
    {"multiplicity_survey", "lambda-stats"},
    {"equidistribution_nt", "nt-equidist"},
    {"sigma_moment", "moments"},
    {"binomial_tail", "binom-tail"},
    {"tail_upper_bound_check", "binom-tail"},
    {"ratio_encadre", "ratio"},
    {"epsilon_exponent", "epsilon"},
    {"c_p", "cp"},
    {"c_p_bruteforce", "cp"},
    {"p_m_product", "pm-product"},
    {"local_solution_table", "local-table"},
    {"dp_product", "dp-product"},
    {"crt_exact_count", "crt-count"},
    {"survey_nonzero", "survey"},
    {"upsilon_eta", "upsilon-eta"},
    {"s_partial", "s-partial"},
    {"series_sums", "series"},
    {"p0_solver", "p0"},
    {"zero_pair_table", "table-small"},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fq: Fermat quotient and cyclotomic value experiments"};
    app.require_subcommand(0, 1);
    bool list_ops = false;
    app.add_flag("--list-ops", list_ops, "print the operation/subcommand dispatch table");

    Report report;
    Common common;
    std::function<void()> run;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", common.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 1024u));
        cmd->add_option("--seed", common.seed, "seed for randomized modes");
        cmd->add_option("--checkpoint", common.checkpoint, "checkpoint file (plain JSON)");
    };

    // ---- fermat ----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("quotient", "Fermat quotient q_p(a)");
        auto a = std::make_shared<std::string>();
        auto p = std::make_shared<u64>();
        cmd->add_option("--a", *a, "base (any size)")->required();
        cmd->add_option("--p", *p, "prime modulus")->required();
        add_common(cmd);
        cmd->callback([&, a, p] {
            run = [&, a, p] {
                arith::PrimeModulus pm(*p);
                u64 q = fermat::fermat_quotient(BigUint::from_decimal(*a), pm);
                report.cfg("subcommand", "quotient");
                report.cfg("a", *a);
                report.cfg("p", *p);
                report.header = {"p", "a", "q"};
                report.row({std::to_string(*p), *a, std::to_string(q)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("variants", "the three quotient forms q, q', q''");
        auto a = std::make_shared<u64>();
        auto p = std::make_shared<u64>();
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--p", *p)->required();
        add_common(cmd);
        cmd->callback([&, a, p] {
            run = [&, a, p] {
                auto v = fermat::quotient_variants(*a, arith::PrimeModulus(*p));
                report.cfg("subcommand", "variants");
                report.cfg("a", *a);
                report.cfg("p", *p);
                report.header = {"q", "q_prime", "q_dprime", "order", "t", "vanish_together"};
                report.row({std::to_string(v.q), std::to_string(v.q_prime),
                            std::to_string(v.q_dprime), std::to_string(v.order),
                            std::to_string(v.t), v.vanish_together ? "1" : "0"});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("first-zero", "least prime in [lo, hi] with q_p(a) = 0");
        auto a = std::make_shared<u64>();
        auto lo = std::make_shared<u64>(2);
        auto hi = std::make_shared<u64>();
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--lo", *lo);
        cmd->add_option("--hi", *hi)->required();
        add_common(cmd);
        cmd->callback([&, a, lo, hi] {
            run = [&, a, lo, hi] {
                u64 start = *lo;
                fermat::SearchOptions opts;
                opts.threads = common.threads;
                if (!common.checkpoint.empty()) {
                    std::ifstream in(common.checkpoint);
                    if (in) {
                        json ck;
                        in >> ck;
                        if (ck.value("a", u64(0)) == *a && ck.value("hi", u64(0)) == *hi &&
                            ck.contains("next_lo"))
                            start = ck["next_lo"].get<u64>();
                    }
                }
                u64 units = 0;
                opts.progress = [&](u64 scanned_to) {
                    if (++units % 8 == 0)
                        std::cerr << "progress: scanned to " << scanned_to << "\n";
                    if (!common.checkpoint.empty()) {
                        json out{{"subcommand", "first-zero"}, {"a", *a},
                                 {"lo", *lo},                  {"hi", *hi},
                                 {"next_lo", scanned_to + 1}};
                        std::ofstream o(common.checkpoint);
                        o << out.dump(1);
                    }
                };
                auto found = fermat::first_solution_search(*a, start, *hi, opts);
                report.cfg("subcommand", "first-zero");
                report.cfg("a", *a);
                report.cfg("lo", *lo);
                report.cfg("hi", *hi);
                report.header = {"a", "p"};
                if (found) report.row({std::to_string(*a), std::to_string(*found)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("solutions", "all z in [2, p) with q_p(z) = 0");
        auto p = std::make_shared<u64>();
        auto full = std::make_shared<bool>(false);
        cmd->add_option("--p", *p)->required();
        cmd->add_flag("--p2", *full, "list the p-1 lifted solutions in [1, p^2) instead");
        add_common(cmd);
        cmd->callback([&, p, full] {
            run = [&, p, full] {
                arith::PrimeModulus pm(*p);
                report.cfg("subcommand", "solutions");
                report.cfg("p", *p);
                if (*full) {
                    report.cfg("mode", "p2");
                    report.header = {"Z"};
                    for (u64 Z : fermat::solutions_mod_p2(pm)) report.row({std::to_string(Z)});
                } else {
                    report.header = {"z", "d", "lambda"};
                    for (const auto& s : fermat::solutions_in_range(pm))
                        report.row({std::to_string(s.z), std::to_string(s.order),
                                    std::to_string(s.lambda)});
                }
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("lift", "lift z to the residue with quotient v mod p^2");
        auto z = std::make_shared<u64>();
        auto u = std::make_shared<u64>(0);
        auto p = std::make_shared<u64>();
        cmd->add_option("--a", *z, "the base z in [1, p)")->required();
        cmd->add_option("--v", *u, "target quotient u in [0, p)");
        cmd->add_option("--p", *p)->required();
        add_common(cmd);
        cmd->callback([&, z, u, p] {
            run = [&, z, u, p] {
                auto l = fermat::lift_to_solution(*z, *u, arith::PrimeModulus(*p));
                report.cfg("subcommand", "lift");
                report.cfg("p", *p);
                report.header = {"z", "u", "lambda", "Z"};
                report.row({std::to_string(l.z), std::to_string(l.u), std::to_string(l.lambda),
                            fmt_u128(l.value)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("crt", "simultaneous zero-quotient residues mod prod p^2");
        auto ps = std::make_shared<std::vector<u64>>();
        cmd->add_option("--p", *ps, "distinct primes")->required()->delimiter(',');
        add_common(cmd);
        cmd->callback([&, ps] {
            run = [&, ps] {
                auto c = fermat::crt_solutions(*ps);
                report.cfg("subcommand", "crt");
                report.cfg("modulus", c.modulus.to_decimal());
                report.cfg("count", static_cast<u64>(c.residues.size()));
                report.header = {"A"};
                for (const auto& r : c.residues) report.row({r.to_decimal()});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("orders-of-powers", "orders of g^i while g^i < p");
        auto g = std::make_shared<u64>();
        auto p = std::make_shared<u64>();
        cmd->add_option("--a", *g, "the base g")->required();
        cmd->add_option("--p", *p)->required();
        add_common(cmd);
        cmd->callback([&, g, p] {
            run = [&, g, p] {
                auto os = fermat::orders_of_powers(*g, arith::PrimeModulus(*p));
                report.cfg("subcommand", "orders-of-powers");
                report.cfg("g", *g);
                report.cfg("p", *p);
                report.header = {"i", "order"};
                for (std::size_t i = 0; i < os.size(); ++i)
                    report.row({std::to_string(i + 1), std::to_string(os[i])});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("theta", "offsets linking q_p(a^j mod p) to j*q_p(a)");
        auto a = std::make_shared<u64>();
        auto p = std::make_shared<u64>();
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--p", *p)->required();
        add_common(cmd);
        cmd->callback([&, a, p] {
            run = [&, a, p] {
                auto ts = fermat::theta_offsets(*a, arith::PrimeModulus(*p));
                report.cfg("subcommand", "theta");
                report.cfg("a", *a);
                report.cfg("p", *p);
                report.header = {"j", "a_j", "theta"};
                for (const auto& t : ts)
                    report.row({std::to_string(t.j), std::to_string(t.a_j),
                                std::to_string(t.theta)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("avg-count", "mean zero-quotient count per base");
        auto lo = std::make_shared<u64>();
        auto hi = std::make_shared<u64>();
        auto bound = std::make_shared<u64>();
        cmd->add_option("--lo", *lo, "first base")->required();
        cmd->add_option("--hi", *hi, "last base")->required();
        cmd->add_option("--bound", *bound, "prime bound")->required();
        add_common(cmd);
        cmd->callback([&, lo, hi, bound] {
            run = [&, lo, hi, bound] {
                auto avg = fermat::average_solution_count(*lo, *hi, *bound);
                report.cfg("subcommand", "avg-count");
                report.cfg("a_lo", *lo);
                report.cfg("a_hi", *hi);
                report.cfg("p_bound", *bound);
                report.header = {"zero_pairs", "a_values", "mean"};
                report.row({std::to_string(avg.zero_pairs), std::to_string(avg.a_values),
                            fmt_double(avg.mean)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("table-small", "zero pairs (a, p) over a base range");
        auto lo = std::make_shared<u64>(2);
        auto hi = std::make_shared<u64>(14);
        auto bound = std::make_shared<u64>(100);
        cmd->add_option("--lo", *lo, "first base");
        cmd->add_option("--hi", *hi, "last base");
        cmd->add_option("--bound", *bound, "prime bound");
        add_common(cmd);
        cmd->callback([&, lo, hi, bound] {
            run = [&, lo, hi, bound] {
                report.cfg("subcommand", "table-small");
                report.cfg("a_lo", *lo);
                report.cfg("a_hi", *hi);
                report.cfg("p_bound", *bound);
                report.header = {"a", "p"};
                for (u64 a = *lo; a <= *hi; ++a) {
                    u64 p = 0;
                    while (p < *bound) {
                        p = arith::next_prime(p);
                        if (a % p != 0 && fermat::is_quotient_zero(a, arith::PrimeModulus(p)))
                            report.row({std::to_string(a), std::to_string(p)});
                    }
                }
            };
        });
    }

    // ---- stats -----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("classify", "tally primes by solution count");
        auto lo = std::make_shared<u64>();
        auto hi = std::make_shared<u64>();
        cmd->add_option("--lo", *lo, "range start B")->required();
        cmd->add_option("--hi", *hi, "range end B+H")->required();
        add_common(cmd);
        cmd->callback([&, lo, hi] {
            run = [&, lo, hi] {
                if (*hi <= *lo) throw std::domain_error("--hi must exceed --lo");
                auto c = stats::classify_primes(*lo, *hi - *lo, common.threads);
                auto model = stats::classification_model();
                report.cfg("subcommand", "classify");
                report.cfg("lo", *lo);
                report.cfg("hi", *hi);
                report.cfg("primes", c.n_total);
                report.header = {"bucket", "count", "observed", "model"};
                report.row({"none", std::to_string(c.n0), fmt_double(c.frac_none()),
                            fmt_double(model[0])});
                report.row({"at_least_1", std::to_string(c.n1 + c.n2 + c.n3_plus),
                            fmt_double(c.frac_at_least1()), fmt_double(model[1])});
                report.row({"at_least_2", std::to_string(c.n2 + c.n3_plus),
                            fmt_double(c.frac_at_least2()), fmt_double(model[2])});
                report.row({"at_least_3", std::to_string(c.n3_plus),
                            fmt_double(c.frac_at_least3()), fmt_double(model[3])});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("coverage", "values u never attained by q_p(z)");
        auto p = std::make_shared<u64>();
        cmd->add_option("--p", *p)->required();
        add_common(cmd);
        cmd->callback([&, p] {
            run = [&, p] {
                auto c = stats::value_coverage(arith::PrimeModulus(*p));
                report.cfg("subcommand", "coverage");
                report.cfg("p", *p);
                report.cfg("missing", static_cast<u64>(c.missing.size()));
                report.cfg_d("missing_fraction", c.missing_fraction);
                report.cfg_d("missing_per_base", c.missing_per_base);
                report.header = {"u"};
                for (u64 u : c.missing) report.row({std::to_string(u)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("lambda-stats", "lambda multiplicities");
        auto p = std::make_shared<u64>(0);
        auto lo = std::make_shared<u64>(0);
        auto hi = std::make_shared<u64>(0);
        auto vs = std::make_shared<std::vector<u64>>();
        auto n = std::make_shared<u64>(0);
        auto vbound = std::make_shared<u64>(10000);
        cmd->add_option("--p", *p, "single-prime mode: list witnesses of lambda(z) = v");
        cmd->add_option("--lo", *lo, "survey mode: range start B");
        cmd->add_option("--hi", *hi, "survey mode: range end B+H");
        cmd->add_option("--v", *vs, "lambda values")->delimiter(',');
        cmd->add_option("--n", *n, "survey: number of random draws (used with --seed)");
        cmd->add_option("--x", *vbound, "survey: bound for random draws");
        add_common(cmd);
        cmd->callback([&, p, lo, hi, vs, n, vbound] {
            run = [&, p, lo, hi, vs, n, vbound] {
                if (*p != 0) {
                    if (vs->size() != 1)
                        throw std::domain_error("single-prime mode needs exactly one --v");
                    auto w = stats::lambda_multiplicity(arith::PrimeModulus(*p), vs->front());
                    report.cfg("subcommand", "lambda-stats");
                    report.cfg("p", *p);
                    report.cfg("v", vs->front());
                    report.cfg("count", static_cast<u64>(w.size()));
                    report.header = {"z"};
                    for (u64 z : w) report.row({std::to_string(z)});
                    return;
                }
                if (*hi <= *lo) throw std::domain_error("survey mode needs --lo < --hi");
                std::vector<u64> list = *vs;
                if (list.empty() && *n > 0) {
                    std::mt19937_64 rng(common.seed);
                    for (u64 i = 0; i < *n; ++i) list.push_back(rng() % *vbound);
                }
                if (list.empty()) throw std::domain_error("no lambda values given");
                auto s = stats::multiplicity_survey(*lo, *hi - *lo, list, 4, common.threads);
                report.cfg("subcommand", "lambda-stats");
                report.cfg("lo", *lo);
                report.cfg("hi", *hi);
                report.cfg("seed", common.seed);
                report.cfg("primes", s.prime_count);
                report.cfg_d("cumulative_ratio", s.cumulative_ratio);
                report.header = {"v", "K"};
                for (auto [v, k] : s.counts) report.row({std::to_string(v), std::to_string(k)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("nt-equidist", "equidistribution of solutions");
        auto hi = std::make_shared<u64>();
        auto t = std::make_shared<double>(25.0);
        cmd->add_option("--hi", *hi, "cumulate over primes below this bound")->required();
        cmd->add_option("--t", *t, "interval divisor");
        add_common(cmd);
        cmd->callback([&, hi, t] {
            run = [&, hi, t] {
                auto e = stats::equidistribution_nt(*hi, *t, common.threads);
                report.cfg("subcommand", "nt-equidist");
                report.cfg("hi", *hi);
                report.cfg_d("t", *t);
                report.header = {"n_t", "n", "n_over_t"};
                report.row({std::to_string(e.n_t), std::to_string(e.n),
                            std::to_string(e.n_over_t_floor)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("moments", "alternating moment sums of lambda");
        auto p = std::make_shared<u64>();
        auto n = std::make_shared<u64>(11);
        cmd->add_option("--p", *p)->required();
        cmd->add_option("--n", *n, "moment exponent");
        add_common(cmd);
        cmd->callback([&, p, n] {
            run = [&, p, n] {
                auto m = stats::sigma_moment(arith::PrimeModulus(*p), static_cast<unsigned>(*n));
                report.cfg("subcommand", "moments");
                report.cfg("p", *p);
                report.cfg("n", *n);
                report.header = {"p", "n", "sigma", "sigma_digits"};
                report.row({std::to_string(*p), std::to_string(*n), fmt_double(m.sigma),
                            m.sigma_digits});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("binom-tail", "binomial tail P(X >= n)");
        auto p = std::make_shared<u64>();
        auto n = std::make_shared<u64>();
        auto check = std::make_shared<bool>(false);
        cmd->add_option("--p", *p)->required();
        cmd->add_option("--n", *n)->required();
        cmd->add_flag("--check", *check, "also verify the C(p-2,n)/p^n upper bound");
        add_common(cmd);
        cmd->callback([&, p, n, check] {
            run = [&, p, n, check] {
                double tail = stats::binomial_tail(*p, *n);
                report.cfg("subcommand", "binom-tail");
                report.cfg("p", *p);
                report.cfg("n", *n);
                report.header = {"p", "n", "tail"};
                std::vector<std::string> row{std::to_string(*p), std::to_string(*n),
                                             fmt_double(tail)};
                if (*check) {
                    report.header.push_back("bound_holds");
                    row.push_back(stats::tail_upper_bound_check(*p, *n) ? "1" : "0");
                }
                report.row(std::move(row));
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("ratio", "tail over C(p-2,h)/p^h with its bounds");
        auto p = std::make_shared<u64>();
        auto a = std::make_shared<u64>(2);
        cmd->add_option("--p", *p)->required();
        cmd->add_option("--a", *a);
        add_common(cmd);
        cmd->callback([&, p, a] {
            run = [&, p, a] {
                double r = stats::ratio_encadre(*p, *a);
                double lower = stats::ratio_encadre_lower_bound(*p, *a);
                report.cfg("subcommand", "ratio");
                report.cfg("p", *p);
                report.cfg("a", *a);
                report.header = {"h", "ratio", "lower_bound", "within_bounds"};
                u64 h = stats::floor_log(*p, *a);
                bool ok = r > lower && r <= 1.0;
                report.row({std::to_string(h), fmt_double(r), fmt_double(lower), ok ? "1" : "0"});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("epsilon", "exponent with tail = p^-(1+eps)");
        auto p = std::make_shared<u64>();
        auto a = std::make_shared<u64>(2);
        cmd->add_option("--p", *p)->required();
        cmd->add_option("--a", *a);
        add_common(cmd);
        cmd->callback([&, p, a] {
            run = [&, p, a] {
                u64 h = stats::floor_log(*p, *a);
                double tail = stats::binomial_tail(*p, h + 1);
                double eps = stats::epsilon_exponent(*p, *a);
                report.cfg("subcommand", "epsilon");
                report.cfg("p", *p);
                report.cfg("a", *a);
                report.header = {"p", "h", "probability", "epsilon"};
                report.row({std::to_string(*p), std::to_string(h), fmt_double(tail),
                            fmt_double(eps)});
            };
        });
    }

    // ---- densities -------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("cp", "local density coefficient");
        auto m = std::make_shared<u64>();
        auto p = std::make_shared<u64>();
        auto brute = std::make_shared<bool>(false);
        cmd->add_option("--m", *m)->required();
        cmd->add_option("--p", *p)->required();
        cmd->add_flag("--brute", *brute, "count residues directly over [1, p^2)");
        add_common(cmd);
        cmd->callback([&, m, p, brute] {
            run = [&, m, p, brute] {
                report.cfg("subcommand", "cp");
                report.cfg("m", *m);
                report.cfg("p", *p);
                if (*brute) report.cfg("mode", "brute");
                report.header = {"m", "p", "c_p"};
                u64 c = *brute ? dens::c_p_bruteforce(*m, *p) : dens::c_p(*m, *p).c;
                report.row({std::to_string(*m), std::to_string(*p), std::to_string(c)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("pm-product", "squarefree density over p = 1 mod m");
        auto m = std::make_shared<u64>();
        auto n = std::make_shared<u64>(2000000);
        cmd->add_option("--m", *m)->required();
        cmd->add_option("--n", *n, "loop bound on the progression index");
        add_common(cmd);
        cmd->callback([&, m, n] {
            run = [&, m, n] {
                auto r = dens::p_m_product(*m, *n);
                report.cfg("subcommand", "pm-product");
                report.cfg("m", *m);
                report.cfg("n_max", *n);
                report.header = {"m", "value", "terms", "tail_estimate"};
                report.row({std::to_string(*m), fmt_double(r.value),
                            std::to_string(r.terms_used), fmt_double(r.reference)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("local-table", "solutions in [1, p^2) grouped by order");
        auto p = std::make_shared<u64>();
        cmd->add_option("--p", *p)->required();
        add_common(cmd);
        cmd->callback([&, p] {
            run = [&, p] {
                auto t = dens::local_solution_table(arith::PrimeModulus(*p));
                report.cfg("subcommand", "local-table");
                report.cfg("p", *p);
                report.header = {"A", "d"};
                for (const auto& e : t)
                    report.row({std::to_string(e.value), std::to_string(e.order)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("dp-product", "density of all-nonzero quotients");
        auto x = std::make_shared<u64>();
        cmd->add_option("--x", *x)->required();
        add_common(cmd);
        cmd->callback([&, x] {
            run = [&, x] {
                auto r = dens::dp_product(*x);
                report.cfg("subcommand", "dp-product");
                report.cfg("x", *x);
                report.header = {"product", "mertens", "correction", "comparator",
                                 "product_times_log", "terms"};
                report.row({fmt_double(r.product), fmt_double(r.mertens),
                            fmt_double(r.correction), fmt_double(r.comparator),
                            fmt_double(r.product_times_log), std::to_string(r.terms)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("crt-count", "exact survivor count mod prod p^2");
        auto x = std::make_shared<u64>();
        cmd->add_option("--x", *x)->required();
        add_common(cmd);
        cmd->callback([&, x] {
            run = [&, x] {
                auto c = dens::crt_exact_count(*x);
                report.cfg("subcommand", "crt-count");
                report.cfg("x", *x);
                report.header = {"count", "modulus"};
                report.row({c.count.to_decimal(), c.modulus.to_decimal()});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("survey", "bases surviving every prime up to x");
        auto y = std::make_shared<u64>();
        auto x = std::make_shared<u64>();
        cmd->add_option("--y", *y, "base bound")->required();
        cmd->add_option("--x", *x, "prime bound")->required();
        add_common(cmd);
        cmd->callback([&, y, x] {
            run = [&, y, x] {
                dens::SurveyOptions opts;
                opts.threads = common.threads;
                u64 last = 0;
                opts.progress = [&](u64 done, u64 total) {
                    if (done - last >= 1000 || done == total) {
                        std::cerr << "progress: " << done << "/" << total << "\n";
                        last = done;
                    }
                };
                u64 n = dens::survey_nonzero(*y, *x, opts);
                report.cfg("subcommand", "survey");
                report.cfg("y", *y);
                report.cfg("x", *x);
                report.header = {"count", "comparator"};
                double comp = double(*y) * 1.09 / std::log(double(*x));
                report.row({std::to_string(n), fmt_double(comp)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("upsilon-eta", "exponent bounds at a large prime");
        auto p = std::make_shared<std::string>();
        auto c = std::make_shared<double>(1.1);
        cmd->add_option("--p", *p, "prime, any size (decimal)")->required();
        cmd->add_option("--c", *c, "constant C in eta");
        add_common(cmd);
        cmd->callback([&, p, c] {
            run = [&, p, c] {
                auto pv = BigUint::from_decimal(*p);
                auto eu = dens::eta_minus_upsilon(pv, *c);
                report.cfg("subcommand", "upsilon-eta");
                report.cfg("p", *p);
                report.cfg_d("c", *c);
                report.header = {"eta", "upsilon", "eta_minus_upsilon"};
                report.row({fmt_double(eu.eta_value), fmt_double(eu.upsilon_value),
                            fmt_double(eu.difference)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("s-partial", "partial sum of the divisor-phi series");
        auto x = std::make_shared<u64>();
        cmd->add_option("--x", *x)->required();
        add_common(cmd);
        cmd->callback([&, x] {
            run = [&, x] {
                auto r = dens::s_partial(*x);
                report.cfg("subcommand", "s-partial");
                report.cfg("x", *x);
                report.header = {"value", "comparator", "terms"};
                report.row({fmt_double(r.value), fmt_double(r.reference),
                            std::to_string(r.terms_used)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("series", "binomial-term series over primes");
        auto a = std::make_shared<u64>(2);
        auto bound = std::make_shared<u64>(1000000);
        cmd->add_option("--a", *a);
        cmd->add_option("--bound", *bound);
        add_common(cmd);
        cmd->callback([&, a, bound] {
            run = [&, a, bound] {
                auto s = dens::series_sums(*a, *bound);
                report.cfg("subcommand", "series");
                report.cfg("a", *a);
                report.cfg("bound", *bound);
                report.header = {"binom_sum", "stirling_sum", "full_tail_sum"};
                report.row({fmt_double(s.binom_sum), fmt_double(s.stirling_sum),
                            fmt_double(s.full_tail_sum)});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("p0", "threshold prime for series convergence rate");
        auto a = std::make_shared<u64>();
        auto c = std::make_shared<double>();
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--c", *c)->required();
        add_common(cmd);
        cmd->callback([&, a, c] {
            run = [&, a, c] {
                u64 p0 = dens::p0_solver(*a, *c);
                report.cfg("subcommand", "p0");
                report.cfg("a", *a);
                report.cfg_d("c", *c);
                report.header = {"p0"};
                report.row({std::to_string(p0)});
            };
        });
    }

    // ---- cyclotomic ------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("phi", "exact cyclotomic value");
        auto m = std::make_shared<u64>();
        auto a = std::make_shared<u64>();
        cmd->add_option("--m", *m)->required();
        cmd->add_option("--a", *a)->required();
        add_common(cmd);
        cmd->callback([&, m, a] {
            run = [&, m, a] {
                report.cfg("subcommand", "phi");
                report.cfg("m", *m);
                report.cfg("a", *a);
                report.header = {"value"};
                report.row({cyclo::phi_m_eval(*m, *a).to_decimal()});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("reduce", "cyclotomic value with its gcd stripped");
        auto m = std::make_shared<u64>();
        auto a = std::make_shared<u64>();
        cmd->add_option("--m", *m)->required();
        cmd->add_option("--a", *a)->required();
        add_common(cmd);
        cmd->callback([&, m, a] {
            run = [&, m, a] {
                auto r = cyclo::reduce(*m, *a);
                report.cfg("subcommand", "reduce");
                report.cfg("m", *m);
                report.cfg("a", *a);
                report.header = {"value", "gcd_with_m", "reduced"};
                report.row({r.value.to_decimal(), std::to_string(r.gcd_with_m),
                            r.reduced.to_decimal()});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("factor-check", "factor the reduced value, verify 1 mod m");
        auto m = std::make_shared<u64>();
        auto a = std::make_shared<u64>();
        cmd->add_option("--m", *m)->required();
        cmd->add_option("--a", *a)->required();
        add_common(cmd);
        cmd->callback([&, m, a] {
            run = [&, m, a] {
                auto fc = cyclo::factor_congruence_check(*m, *a);
                report.cfg("subcommand", "factor-check");
                report.cfg("m", *m);
                report.cfg("a", *a);
                report.cfg("all_congruent", fc.all_congruent ? "1" : "0");
                if (fc.unfactored_cofactor)
                    report.cfg("unfactored_cofactor", fc.unfactored_cofactor->to_decimal());
                report.header = {"factor", "exponent", "mod_m"};
                for (const auto& [l, e] : fc.factors)
                    report.row({l.to_decimal(), std::to_string(e),
                                std::to_string(l.mod_u64(*m))});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("coprime", "pairwise coprimality of reduced values");
        auto a = std::make_shared<u64>();
        auto m = std::make_shared<u64>();
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--m", *m, "largest index")->required();
        add_common(cmd);
        cmd->callback([&, a, m] {
            run = [&, a, m] {
                auto r = cyclo::pairwise_coprime_check(*a, *m);
                report.cfg("subcommand", "coprime");
                report.cfg("a", *a);
                report.cfg("m_max", *m);
                report.cfg("ok", r.ok ? "1" : "0");
                report.cfg("strict_ok", r.strict_ok ? "1" : "0");
                report.header = {"m", "m_prime", "gcd"};
                for (const auto& [x, y, g] : r.violations)
                    report.row({std::to_string(x), std::to_string(y), g.to_decimal()});
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("wieferich-check", "nullity versus p^2 divisibility");
        auto a = std::make_shared<u64>();
        auto p = std::make_shared<u64>();
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--p", *p)->required();
        add_common(cmd);
        cmd->callback([&, a, p] {
            run = [&, a, p] {
                bool zero = cyclo::wieferich_equivalence_check(*a, arith::PrimeModulus(*p));
                report.cfg("subcommand", "wieferich-check");
                report.cfg("a", *a);
                report.cfg("p", *p);
                report.header = {"quotient_zero"};
                report.row({zero ? "1" : "0"});
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // help requested
        app.exit(e);
        return 2;
    }

    if (list_ops) {
        std::cout << "operation,subcommand\n";
        for (const auto& [op, sub] : kDispatch) std::cout << op << "," << sub << "\n";
        return 0;
    }
    if (!run) {
        std::cerr << app.help() << "\n";
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        run();
    } catch (const arith::BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Output out;
    out.format = common.format;
    out.emit(report, secs);
    return 0;
}
