#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heinzcert/certify.hpp"
#include "heinzcert/hs_inequalities.hpp"
#include "heinzcert/operator_means.hpp"
#include "heinzcert/scalar.hpp"

namespace py = pybind11;
using namespace heinzcert;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const nlohmann::json& j) { return j.dump(); }

HermitianMatrix herm(const CMatrix& m) { return HermitianMatrix::from(m, kHermitianTol); }

}  // namespace

PYBIND11_MODULE(_heinzcert, m) {
  m.doc() = "Certifier for weighted mean inequalities (scalar, Loewner order, Hilbert-Schmidt norm).";
  m.attr("__version__") = kToolVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<gen::SpecError>(m, "SpecError", PyExc_ValueError);

  m.def("weighted_arith", &scalar::weighted_arith, py::arg("a"), py::arg("b"), py::arg("nu"));
  m.def("weighted_geom", &scalar::weighted_geom, py::arg("a"), py::arg("b"), py::arg("nu"));
  m.def("heinz", &scalar::heinz, py::arg("a"), py::arg("b"), py::arg("nu"));
  m.def("heron", &scalar::heron, py::arg("a"), py::arg("b"), py::arg("alpha"));

  m.def("list_cases_json", [] {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : list_cases())
      arr.push_back({{"id", c.id}, {"eq", c.citation}, {"domain", c.domain}, {"group", to_string(c.group)}});
    return dump(arr);
  });

  m.def(
      "evaluate_scalar_json",
      [](const std::string& id, double a, double b, double nu, double tol) {
        return dump(to_json(scalar::evaluate(scalar::find_case(id), a, b, nu, tol)));
      },
      py::arg("case_id"), py::arg("a"), py::arg("b"), py::arg("nu"), py::arg("tol") = kScalarTol);

  m.def(
      "geom", [](const CMatrix& a, const CMatrix& b, double nu) { return op::geom(herm(a), herm(b), nu).data(); },
      py::arg("a"), py::arg("b"), py::arg("nu"));
  m.def(
      "mat_pow", [](const CMatrix& a, double p) { return mat_pow(herm(a), p).data(); }, py::arg("a"),
      py::arg("p"));

  m.def(
      "certify_operator_json",
      [](const std::string& id, const CMatrix& a, const CMatrix& b, double nu, double tol) {
        const auto& c = op::find_case(id);
        auto pair = c.wants_ordered_pair ? op::OperatorPair::make_ordered(herm(a), herm(b))
                                         : op::OperatorPair::make(herm(a), herm(b));
        return dump(to_json(op::certify_operator(c, pair, nu, tol)));
      },
      py::arg("case_id"), py::arg("a"), py::arg("b"), py::arg("nu"), py::arg("tol") = kOperatorTol);

  m.def(
      "certify_hs_json",
      [](const std::string& id, const CMatrix& a, const CMatrix& b, const CMatrix& x, double nu, double tol,
         bool lenient_x) {
        hs::CertifyOptions opts;
        opts.tol = tol;
        opts.lenient_x = lenient_x;
        return dump(to_json(hs::certify_hs(hs::find_case(id), hs::NormTriple{herm(a), herm(b), GeneralMatrix(x)},
                                           nu, opts)));
      },
      py::arg("case_id"), py::arg("a"), py::arg("b"), py::arg("x"), py::arg("nu"), py::arg("tol") = kNormTol,
      py::arg("lenient_x") = false);

  m.def(
      "scalar_sweep_json",
      [](const std::vector<std::string>& cases, std::optional<std::vector<double>> nus) {
        ScalarSweepConfig cfg;
        cfg.cases = cases;
        if (nus) cfg.nu_grid = *nus;
        return dump(to_json(scalar_sweep(cfg)));
      },
      py::arg("cases"), py::arg("nu_grid") = py::none());

  m.def(
      "matrix_verify_json",
      [](const std::vector<std::string>& cases, std::vector<std::size_t> dims, std::size_t trials,
         std::uint64_t seed, unsigned threads) {
        VerifyConfig cfg;
        cfg.cases = cases;
        cfg.dims = std::move(dims);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.threads = threads;
        py::gil_scoped_release nogil;
        return dump(to_json(matrix_verify(cfg)));
      },
      py::arg("cases"), py::arg("dims") = std::vector<std::size_t>{1, 2, 3, 5, 8}, py::arg("trials") = 100,
      py::arg("seed") = 42, py::arg("threads") = 1);

  m.def(
      "replay_json",
      [](const std::string& digest) {
        const auto r = replay(digest);
        auto j = to_json(r.report);
        j["fingerprint_match"] = r.fingerprint_match();
        return dump(j);
      },
      py::arg("digest"));

  m.def(
      "gap_profile_csv",
      [](const std::vector<std::string>& cases, double a, double b, std::optional<std::vector<double>> nus) {
        GapProfileConfig cfg;
        cfg.cases = cases;
        cfg.a = a;
        cfg.b = b;
        if (nus) cfg.nu_grid = *nus;
        return gap_profile(cfg).to_csv();
      },
      py::arg("cases"), py::arg("a") = 4.0, py::arg("b") = 1.0, py::arg("nu_grid") = py::none());

  m.def(
      "validate_report",
      [](const std::string& text) { return validate_report(nlohmann::json::parse(text)); }, py::arg("report_json"));

  m.def(
      "gen_pd",
      [](std::size_t dim, const std::string& law, std::uint64_t seed, const std::string& structure,
         const std::string& field) {
        gen::GenSpec s;
        s.dim = dim;
        s.spectrum = gen::SpectrumLaw::parse(law);
        s.seed = seed;
        s.structure = gen::parse_structure(structure);
        s.field = gen::parse_field(field);
        return gen::gen_pd(s).data();
      },
      py::arg("dim"), py::arg("law") = "log-uniform(0.001,1000)", py::arg("seed") = 0,
      py::arg("structure") = "general-pd", py::arg("field") = "real");
}
