#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fermatq/cyclotomic.hpp"
#include "fermatq/densities.hpp"
#include "fermatq/fermat.hpp"
#include "fermatq/stats.hpp"

namespace py = pybind11;
using namespace fq;

namespace {

BigUint big_from_object(const py::object& o) {
    return BigUint::from_decimal(py::str(o).cast<std::string>());
}

py::int_ big_to_int(const BigUint& v) {
    std::string dec = v.to_decimal();
    return py::reinterpret_steal<py::int_>(PyLong_FromString(dec.c_str(), nullptr, 10));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fermat quotient and cyclotomic value experiments";

    // arith
    m.def("is_prime", [](const py::object& n) { return arith::is_prime(big_from_object(n)); },
          py::arg("n"));
    m.def("next_prime", [](const py::object& n) { return big_to_int(arith::next_prime(big_from_object(n))); },
          py::arg("n"));
    m.def("primes_in", &arith::primes_in, py::arg("lo"), py::arg("hi"));
    m.def("pow_mod", [](const py::object& b, const py::object& e, const py::object& mod) {
              return big_to_int(pow_mod(big_from_object(b), big_from_object(e), big_from_object(mod)));
          },
          py::arg("base"), py::arg("exp"), py::arg("mod"));
    m.def("factorize", [](const py::object& n, u64 budget) {
              auto f = arith::factorize(big_from_object(n), budget);
              std::vector<std::pair<py::int_, unsigned>> out;
              for (auto& [p, e] : f.factors) out.emplace_back(big_to_int(p), e);
              return out;
          },
          py::arg("n"), py::arg("rho_budget") = arith::kDefaultRhoBudget);
    m.def("multiplicative_order", [](u64 a, u64 p) { return arith::multiplicative_order(a, p); },
          py::arg("a"), py::arg("p"));
    m.def("phi_squared_sum", &arith::phi_squared_sum, py::arg("p"));

    // cyclotomic
    m.def("phi_m_eval", [](u64 mm, u64 a) { return big_to_int(cyclo::phi_m_eval(mm, a)); },
          py::arg("m"), py::arg("a"));
    m.def("cyclotomic_reduce", [](u64 mm, u64 a) {
              auto r = cyclo::reduce(mm, a);
              return py::make_tuple(big_to_int(r.value), r.gcd_with_m, big_to_int(r.reduced));
          },
          py::arg("m"), py::arg("a"), "returns (value, gcd_with_m, reduced)");
    m.def("wieferich_equivalence_check", [](u64 a, u64 p) {
              return cyclo::wieferich_equivalence_check(a, arith::PrimeModulus(p));
          },
          py::arg("a"), py::arg("p"));

    // fermat
    m.def("fermat_quotient", [](const py::object& a, u64 p) {
              return fermat::fermat_quotient(big_from_object(a), arith::PrimeModulus(p));
          },
          py::arg("a"), py::arg("p"));
    m.def("lift_to_solution", [](u64 z, u64 u, u64 p) {
              auto l = fermat::lift_to_solution(z, u, arith::PrimeModulus(p));
              return py::make_tuple(l.lambda, big_to_int(BigUint::from_u128(l.value)));
          },
          py::arg("z"), py::arg("u"), py::arg("p"), "returns (lambda, Z)");
    m.def("solutions_in_range", [](u64 p) {
              auto sols = fermat::solutions_in_range(arith::PrimeModulus(p));
              std::vector<std::pair<u64, u64>> out;
              for (auto& s : sols) out.emplace_back(s.z, s.order);
              return out;
          },
          py::arg("p"), "returns [(z, order)]");
    m.def("solutions_mod_p2", [](u64 p) { return fermat::solutions_mod_p2(arith::PrimeModulus(p)); },
          py::arg("p"));
    m.def("crt_solutions", [](const std::vector<u64>& primes) {
              auto c = fermat::crt_solutions(primes);
              std::vector<py::int_> out;
              for (auto& r : c.residues) out.push_back(big_to_int(r));
              return py::make_tuple(big_to_int(c.modulus), out);
          },
          py::arg("primes"), "returns (modulus, residues)");
    m.def("orders_of_powers", [](u64 g, u64 p) {
              return fermat::orders_of_powers(g, arith::PrimeModulus(p));
          },
          py::arg("g"), py::arg("p"));
    m.def("first_solution_search", [](u64 a, u64 lo, u64 hi, unsigned threads) -> py::object {
              fermat::SearchOptions opts;
              opts.threads = threads;
              auto f = fermat::first_solution_search(a, lo, hi, opts);
              if (!f) return py::none();
              return py::cast(*f);
          },
          py::arg("a"), py::arg("lo"), py::arg("hi"), py::arg("threads") = 1);

    // stats
    m.def("classify_primes", [](u64 B, u64 H, unsigned threads) {
              auto c = stats::classify_primes(B, H, threads);
              py::dict d;
              d["n0"] = c.n0;
              d["n1"] = c.n1;
              d["n2"] = c.n2;
              d["n3_plus"] = c.n3_plus;
              d["n_total"] = c.n_total;
              return d;
          },
          py::arg("B"), py::arg("H"), py::arg("threads") = 1);
    m.def("value_coverage", [](u64 p) {
              auto c = stats::value_coverage(arith::PrimeModulus(p));
              return py::make_tuple(c.missing_fraction, c.missing);
          },
          py::arg("p"), "returns (missing_fraction, missing_values)");
    m.def("lambda_multiplicity", [](u64 p, u64 v) {
              return stats::lambda_multiplicity(arith::PrimeModulus(p), v);
          },
          py::arg("p"), py::arg("v"));
    m.def("sigma_moment", [](u64 p, unsigned n) {
              auto r = stats::sigma_moment(arith::PrimeModulus(p), n);
              return py::make_tuple(r.sigma, r.sigma_digits);
          },
          py::arg("p"), py::arg("n"), "returns (sigma, digits)");
    m.def("binomial_tail", &stats::binomial_tail, py::arg("p"), py::arg("n"));
    m.def("ratio_encadre", &stats::ratio_encadre, py::arg("p"), py::arg("a"));
    m.def("epsilon_exponent", &stats::epsilon_exponent, py::arg("p"), py::arg("a"));

    // densities
    m.def("c_p", [](u64 mm, u64 p) { return dens::c_p(mm, p).c; }, py::arg("m"), py::arg("p"));
    m.def("p_m_product", [](u64 mm, u64 n_max) { return dens::p_m_product(mm, n_max).value; },
          py::arg("m"), py::arg("n_max") = 2000000);
    m.def("dp_product", [](u64 x) {
              auto r = dens::dp_product(x);
              py::dict d;
              d["product"] = r.product;
              d["mertens"] = r.mertens;
              d["correction"] = r.correction;
              d["comparator"] = r.comparator;
              return d;
          },
          py::arg("x"));
    m.def("crt_exact_count", [](u64 x) {
              auto c = dens::crt_exact_count(x);
              return py::make_tuple(big_to_int(c.count), big_to_int(c.modulus));
          },
          py::arg("x"));
    m.def("survey_nonzero", [](u64 y, u64 x, unsigned threads) {
              dens::SurveyOptions opts;
              opts.threads = threads;
              return dens::survey_nonzero(y, x, opts);
          },
          py::arg("y"), py::arg("x"), py::arg("threads") = 1);
    m.def("eta_minus_upsilon", [](const py::object& p, double C) {
              auto r = dens::eta_minus_upsilon(big_from_object(p), C);
              return r.difference;
          },
          py::arg("p"), py::arg("C") = 1.1);
    m.def("s_partial", [](u64 x) { return dens::s_partial(x).value; }, py::arg("x"));
    m.def("series_sums", [](u64 a, u64 bound) {
              auto s = dens::series_sums(a, bound);
              return py::make_tuple(s.binom_sum, s.stirling_sum, s.full_tail_sum);
          },
          py::arg("a"), py::arg("bound"));
    m.def("p0_solver", &dens::p0_solver, py::arg("a"), py::arg("C"));
}
