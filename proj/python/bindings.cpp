#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rsverify/appendix.hpp"
#include "rsverify/gamma_factors.hpp"
#include "rsverify/model_form.hpp"
#include "rsverify/proof_chain.hpp"
#include "rsverify/special_fn.hpp"
#include "rsverify/sweep.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using rsv::Complex;

namespace {

rsv::GL3Parameter gl3(const std::array<Complex, 3>& l, bool strict) {
  return rsv::GL3Parameter::make(l[0], l[1], l[2], strict ? rsv::Locus::Strict : rsv::Locus::Lenient);
}

rsv::GL2Parameter gl2(Complex tau, bool strict) {
  return rsv::GL2Parameter::make(tau, strict ? rsv::Locus::Strict : rsv::Locus::Lenient);
}

py::dict report_dict(const rsv::IdentityReport& r) {
  py::dict params;
  for (const auto& [k, v] : r.params) params[py::str(k)] = v;
  return py::dict("id"_a = r.id, "params"_a = params, "lhs"_a = r.lhs, "rhs"_a = r.rhs, "abs_err"_a = r.abs_err,
                  "rel_err"_a = r.rel_err, "tol"_a = r.tol, "pass"_a = r.pass, "seed"_a = r.seed,
                  "diagnostic"_a = r.diagnostic);
}

rsv::appendix::IdentityId identity(const std::string& name) {
  auto id = rsv::appendix::parse_identity(name);
  if (!id) throw py::value_error("unknown identity " + name);
  return *id;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical checks of the GL(3)xGL(2) model bilinear form and its ingredients";

  py::register_exception<rsv::PoleError>(m, "PoleError", PyExc_ValueError);
  py::register_exception<rsv::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<rsv::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<rsv::QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);

  m.def("log_gamma", &rsv::sf::log_gamma, "z"_a);
  m.def("gamma", &rsv::sf::gamma, "z"_a);
  m.def("rgamma", &rsv::sf::rgamma, "z"_a);
  m.def("beta_fn", &rsv::sf::beta_fn, "a"_a, "b"_a);
  m.def(
      "gamma_quotient",
      [](const std::vector<Complex>& num, const std::vector<Complex>& den) { return rsv::sf::gamma_quotient(num, den); },
      "numerators"_a, "denominators"_a);
  m.def("gauss_2f1", &rsv::sf::gauss_2f1, "a"_a, "b"_a, "c"_a, "x"_a);
  m.def("gauss_sum", &rsv::sf::gauss_sum, "a"_a, "b"_a, "c"_a);
  m.def(
      "hyp_unit",
      [](const std::vector<Complex>& upper, const std::vector<Complex>& lower) {
        return rsv::sf::hyp_unit({upper, lower});
      },
      "upper"_a, "lower"_a);

  m.def(
      "alpha_to_lambda",
      [](Complex a1, Complex a2, bool strict) {
        const auto p = rsv::gf::alpha_to_lambda({a1, a2}, strict ? rsv::Locus::Strict : rsv::Locus::Lenient);
        return std::array<Complex, 3>{p[0], p[1], p[2]};
      },
      "a1"_a, "a2"_a, "strict"_a = true);
  m.def(
      "stade_gamma",
      [](const std::array<Complex, 3>& l, Complex tau, Complex s, bool strict) {
        return rsv::gf::stade_gamma(gl3(l, strict), gl2(tau, strict), s);
      },
      "lam"_a, "tau"_a, "s"_a, "strict"_a = true);
  m.def(
      "completed_prefactor",
      [](const std::array<Complex, 3>& l, Complex tau, Complex s, bool strict) {
        return rsv::gf::completed_prefactor(gl3(l, strict), gl2(tau, strict), s);
      },
      "lam"_a, "tau"_a, "s"_a, "strict"_a = true);

  m.def(
      "model_value_closed",
      [](const std::array<Complex, 3>& l, Complex nu1, Complex nu2) {
        return rsv::model::model_value_closed(rsv::GL3Parameter::unchecked(l[0], l[1], l[2]), {nu1, nu2});
      },
      "lam"_a, "nu1"_a, "nu2"_a);
  m.def(
      "model_value_closed_t",
      [](const std::array<Complex, 3>& l, Complex tau, double t, bool strict) {
        return rsv::model::model_value_closed_t(gl3(l, strict), gl2(tau, strict), t);
      },
      "lam"_a, "tau"_a, "t"_a = 0.0, "strict"_a = true);
  m.def(
      "reciprocity_modulus",
      [](const std::array<Complex, 3>& l, Complex tau, double t) {
        return rsv::model::reciprocity_modulus(gl3(l, true), gl2(tau, true), t);
      },
      "lam"_a, "tau"_a, "t"_a = 0.0);
  m.def(
      "chain_step",
      [](int k, const std::array<Complex, 3>& l, Complex tau) {
        if (k < 7 || k > 9) throw py::value_error("only the cheap steps 7, 8 and 9 are exposed");
        const auto v = rsv::chain::chain_step(k, gl3(l, true), rsv::NuPair::from(gl2(tau, true)),
                                               rsv::chain::ChainSpecs::defaults());
        return v.value;
      },
      "k"_a, "lam"_a, "tau"_a);

  m.def("identities", [] {
    std::vector<std::string> out;
    for (auto id : rsv::appendix::kAllIdentities) out.emplace_back(rsv::appendix::identity_name(id));
    return out;
  });
  m.def(
      "sample_params",
      [](const std::string& name, std::uint64_t seed) {
        py::dict d;
        for (const auto& [k, v] : rsv::appendix::sample_params(identity(name), seed)) d[py::str(k)] = v;
        return d;
      },
      "identity"_a, "seed"_a);
  m.def(
      "verify_identity",
      [](const std::string& name, std::uint64_t seed) {
        const auto id = identity(name);
        auto r = rsv::appendix::verify_identity(id, rsv::appendix::sample_params(id, seed), rsv::appendix::default_spec());
        r.seed = static_cast<std::int64_t>(seed);
        return report_dict(r);
      },
      "identity"_a, "seed"_a);

  m.def("report_schema", &rsv::sweep::report_schema);
  m.def(
      "run",
      [](const std::string& suite, std::int64_t seed, std::optional<int> samples, const std::string& out,
         const std::string& format, const std::map<std::string, double>& tol, int parallelism, bool hard) {
        rsv::sweep::RunConfig cfg;
        auto s = rsv::sweep::parse_suite(suite);
        auto f = rsv::sweep::parse_format(format);
        if (!s) throw py::value_error("unknown suite " + suite);
        if (!f) throw py::value_error("unknown format " + format);
        cfg.suite = *s;
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.output_dir = out;
        cfg.format = *f;
        cfg.tol_overrides = tol;
        cfg.parallelism = parallelism;
        cfg.hard = hard;
        std::ostringstream log;
        int code = rsv::sweep::kExitConfig;
        try {
          py::gil_scoped_release release;
          code = rsv::sweep::run(cfg, log);
        } catch (const rsv::sweep::ConfigError& e) {
          throw py::value_error(e.what());
        }
        return py::make_tuple(code, log.str());
      },
      "suite"_a, "seed"_a = 0, "samples"_a = py::none(), "out"_a = "reports", "format"_a = "json", "tol"_a = py::dict(),
      "parallelism"_a = 1, "hard"_a = false);
}
