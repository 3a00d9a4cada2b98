#include "splitcm/central.hpp"
#include "splitcm/cli.hpp"
#include "splitcm/errors.hpp"
#include "splitcm/hecke.hpp"
#include "splitcm/quadratic.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace splitcm;

namespace {

HeckeContext context(std::int64_t D, std::int64_t N, int prec, const std::string& eta, bool conjugate,
                     std::optional<std::int64_t> b1) {
  HeckeContext ctx = HeckeContext::make(D, N, prec, b1);
  ctx.eta = parse_eta_convention(eta);
  ctx.point = conjugate ? PointConvention::Conjugate : PointConvention::Direct;
  return ctx;
}

py::dict row_dict(const ClassRow& r) {
  py::dict d;
  d["N"] = r.N;
  d["class_id"] = r.classId;
  d["abs_theta"] = r.absTheta;
  d["count"] = r.count;
  d["h_eps"] = r.hEps;
  d["h_R"] = r.hR;
  d["omega"] = r.omega;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Theta series at split-CM points and central Hecke L-values";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto input = py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<SplitError>(m, "SplitError", input.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", input.ptr());
  auto resource = py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<IncompleteClassListError>(m, "IncompleteClassListError", resource.ptr());
  py::register_exception<ConventionError>(m, "ConventionError", base.ptr());
  py::register_exception<InternalError>(m, "InternalError", base.ptr());

  m.def("class_number", &class_number, py::arg("D"));
  m.def(
      "reduced_forms",
      [](std::int64_t D) {
        std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
        for (const auto& f : reduced_forms(D)) out.emplace_back(f.a, f.b, f.c);
        return out;
      },
      py::arg("D"));
  m.def("admissible_levels", &admissible_levels, py::arg("D"), py::arg("nmax"));

  m.def(
      "classify",
      [](std::int64_t D, std::int64_t N, int prec, const std::string& eta, bool conjugate,
         std::optional<std::int64_t> b1, unsigned threads) {
        const HeckeContext ctx = context(D, N, prec, eta, conjugate, b1);
        Classification c;
        {
          py::gil_scoped_release release;
          c = classify(ctx, threads);
        }
        py::list rows;
        for (const auto& r : c.rows) rows.append(row_dict(r));
        py::list points;
        for (const auto& r : c.records) {
          py::dict p;
          p["form"] = py::make_tuple(r.form.a, r.form.b, r.form.c);
          p["value"] = r.snapped;
          p["class_id"] = r.classId;
          p["theta_hat"] = r.thetaHat.to_complex();
          points.append(p);
        }
        py::dict d;
        d["b1"] = ctx.b1;
        d["classes"] = rows;
        d["points"] = points;
        return d;
      },
      py::arg("D"), py::arg("N"), py::arg("prec") = 80, py::arg("eta") = "ideal", py::arg("conjugate_point") = false,
      py::arg("b1") = py::none(), py::arg("threads") = 0);

  m.def(
      "l_value",
      [](std::int64_t D, std::int64_t N, int prec, const std::string& eta, bool conjugate,
         std::optional<std::int64_t> b1, unsigned threads) {
        const HeckeContext ctx = context(D, N, prec, eta, conjugate, b1);
        std::optional<LValue> L;
        {
          py::gil_scoped_release release;
          L = l_value(ctx, threads);
        }
        py::dict d;
        d["value"] = L->value.to_complex();
        d["re"] = L->value.re().to_string(prec);
        d["im"] = L->value.im().to_string(prec);
        d["consistency"] = L->diff.to_double();
        return d;
      },
      py::arg("D"), py::arg("N"), py::arg("prec") = 80, py::arg("eta") = "ideal", py::arg("conjugate_point") = false,
      py::arg("b1") = py::none(), py::arg("threads") = 0);

  m.def(
      "oracle_l_value",
      [](std::int64_t D, std::int64_t N, double cutoff, bool conjugate) {
        const HeckeContext ctx = context(D, N, 30, "ideal", conjugate, std::nullopt);
        py::gil_scoped_release release;
        return oracle_l_value(ctx, cutoff);
      },
      py::arg("D"), py::arg("N"), py::arg("cutoff") = 1e5, py::arg("conjugate_point") = false);

  m.def(
      "table",
      [](std::int64_t D, std::int64_t nmax, int prec, const std::string& eta, bool conjugate, unsigned threads) {
        TableOptions opts;
        opts.digits = prec;
        opts.eta = parse_eta_convention(eta);
        opts.point = conjugate ? PointConvention::Conjugate : PointConvention::Direct;
        opts.threads = threads;
        std::optional<Table> t;
        {
          py::gil_scoped_release release;
          t = make_table(D, nmax, opts);
        }
        py::list rows;
        for (const auto& r : t->rows()) rows.append(row_dict(r));
        py::list errors;
        for (const auto& e : t->errors) errors.append(py::make_tuple(e.N, e.kind, e.message));
        py::dict d;
        d["rows"] = rows;
        d["errors"] = errors;
        return d;
      },
      py::arg("D"), py::arg("nmax"), py::arg("prec") = 80, py::arg("eta") = "ideal",
      py::arg("conjugate_point") = false, py::arg("threads") = 0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
