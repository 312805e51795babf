// Python bindings for the main toolkit operations.  Vectors cross the
// boundary as plain lists of floats; reports as JSON strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "g2sp/ambient.hpp"
#include "g2sp/curvature.hpp"
#include "g2sp/hyperpoint.hpp"
#include "g2sp/models.hpp"
#include "g2sp/verify.hpp"

namespace py = pybind11;
using namespace g2sp;

namespace {

py::dict subspace_dict(const HypersurfacePoint& point, double tol) {
    const SubspaceReport rep = subspace_analysis(point, tol);
    py::dict d;
    d["hperp_dim"] = static_cast<int>(rep.hperp_basis.size());
    d["h_dim"] = rep.h_dim;
    d["position"] = std::string(to_string(rep.position));
    d["near_threshold"] = rep.near_threshold;
    py::list ha;
    for (int a = 0; a < 3; ++a) {
        py::dict e;
        e["plus"] = static_cast<int>(rep.ha_eigenbases[static_cast<size_t>(a)][0].size());
        e["minus"] = static_cast<int>(rep.ha_eigenbases[static_cast<size_t>(a)][1].size());
        ha.append(e);
    }
    d["ha_dims"] = ha;
    return d;
}

py::dict defect_dict(const HypersurfacePoint& point, const ShapeOperator& A) {
    const DefectReport rep = semiparallel_defect(point, A);
    py::dict d;
    d["frobenius"] = rep.frobenius;
    d["max_abs"] = rep.max_abs;
    d["argmax"] = py::make_tuple(rep.argmax[0], rep.argmax[1], rep.argmax[2], rep.argmax[3]);
    return d;
}

} // namespace

PYBIND11_MODULE(g2sp, m) {
    m.doc() = "pointwise semi-parallel hypersurface toolkit for the complex two-plane "
              "Grassmannian model space";
    m.attr("__version__") = kToolkitVersion;

    py::class_<AmbientModel>(m, "AmbientModel")
        .def_readonly("m", &AmbientModel::m)
        .def_readonly("dim", &AmbientModel::dim);

    py::class_<HypersurfacePoint>(m, "HypersurfacePoint")
        .def_property_readonly("u",
                               [](const HypersurfacePoint& p) {
                                   return py::make_tuple(p.u[0], p.u[1], p.u[2]);
                               })
        .def("u_norm", &HypersurfacePoint::u_norm)
        .def("tangent_dim", &HypersurfacePoint::tangent_dim)
        .def_property_readonly("normal", [](const HypersurfacePoint& p) { return p.N; });

    py::class_<ShapeOperator>(m, "ShapeOperator");

    py::class_<ModelSurface>(m, "ModelSurface")
        .def_readonly("point", &ModelSurface::point)
        .def_readonly("A", &ModelSurface::A);

    m.def("build_ambient_model", &build_ambient_model, py::arg("m"));
    m.def("ambient_invariant_residuals",
          [](const AmbientModel& model) {
              py::dict d;
              for (const auto& [k, v] : ambient_invariant_residuals(model)) d[k.c_str()] = v;
              return d;
          });
    m.def("quaternion_unit", &quaternion_unit, py::arg("model"), py::arg("coord"), py::arg("slot"));
    m.def("oblique_normal", &oblique_normal, py::arg("model"), py::arg("t"));
    m.def("build_point", &build_point, py::arg("model"), py::arg("N"));
    m.def("adapt_gauge",
          [](const HypersurfacePoint& p) { return adapt_gauge(p).first; });
    m.def("point_identity_residuals",
          [](const HypersurfacePoint& p) {
              py::dict d;
              for (const auto& [k, v] : point_identity_residuals(p)) d[k.c_str()] = v;
              return d;
          });
    m.def("subspace_analysis", &subspace_dict, py::arg("point"), py::arg("tol") = 1e-6);

    m.def("zero_shape", &zero_shape, py::arg("point"));
    m.def("projector_shape", &projector_shape, py::arg("point"), py::arg("c"));
    m.def("random_shape",
          [](const HypersurfacePoint& p, uint64_t seed, double scale) {
              SplitRng rng(seed, 0);
              return random_shape(p, rng, scale);
          },
          py::arg("point"), py::arg("seed") = 0, py::arg("scale") = 1.0);

    m.def("build_type_a",
          [](const AmbientModel& model, int mm, double r) {
              return build_type_a(model, TypeASpec{mm, r});
          },
          py::arg("model"), py::arg("m"), py::arg("r"));
    m.def("build_type_b",
          [](const AmbientModel& model, int mm, double r, uint64_t seed) {
              return build_type_b(model, TypeBSpec{mm, r}, seed);
          },
          py::arg("model"), py::arg("m"), py::arg("r"), py::arg("seed") = 0);

    m.def("principal_spectrum",
          [](const HypersurfacePoint& p, const ShapeOperator& A, double tol) {
              py::list out;
              for (const auto& c : principal_spectrum(p, A, tol).clusters)
                  out.append(py::make_tuple(c.value, c.multiplicity));
              return out;
          },
          py::arg("point"), py::arg("A"), py::arg("cluster_tol") = 1e-7);

    m.def("semiparallel_defect", &defect_dict, py::arg("point"), py::arg("A"));
    m.def("defect_objective", &defect_objective, py::arg("point"), py::arg("A"));
    m.def("scalar_summary",
          [](const HypersurfacePoint& p, const ShapeOperator& A) {
              const ScalarSummary s = scalar_summary(p, A);
              py::dict d;
              d["alpha"] = s.alpha;
              d["alpha_a"] = py::make_tuple(s.alpha_a[0], s.alpha_a[1], s.alpha_a[2]);
              d["u"] = py::make_tuple(s.u[0], s.u[1], s.u[2]);
              return d;
          },
          py::arg("point"), py::arg("A"));

    m.def("residual_pair",
          [](const HypersurfacePoint& p, const ShapeOperator& A, const std::string& id,
             const Vec& Y, const Vec& Z, int b, double lambda_j, double lambda_k) {
              ResidualArgs args;
              args.Y = Y;
              args.Z = Z;
              args.b = b;
              args.lambda_j = lambda_j;
              args.lambda_k = lambda_k;
              const ResidualPair pr = residual_pair(p, A, parse_residual_id(id), args);
              return py::make_tuple(pr.expanded, pr.direct);
          },
          py::arg("point"), py::arg("A"), py::arg("id"), py::arg("Y"), py::arg("Z"),
          py::arg("b") = 1, py::arg("lambda_j") = 0.0, py::arg("lambda_k") = 0.0);

    m.def("proof_step",
          [](const HypersurfacePoint& p, const ShapeOperator& A, const std::string& id) {
              py::dict d;
              for (const auto& [k, v] : proof_step(p, A, parse_proof_step(id))) d[k.c_str()] = v;
              return d;
          },
          py::arg("point"), py::arg("A"), py::arg("step"));

    m.def("minimize_defect",
          [](const HypersurfacePoint& p, const ShapeOperator& A0, uint64_t seed, int restarts,
             int max_iters) {
              MinimizeOptions opts;
              opts.seed = seed;
              opts.restarts = restarts;
              opts.max_iters = max_iters;
              const MinimizeResult res = minimize_defect(p, A0, opts);
              py::dict d;
              d["value"] = res.value;
              d["iterations"] = static_cast<int>(res.trace.size()) - 1;
              d["restarts_used"] = res.restarts_used;
              return d;
          },
          py::arg("point"), py::arg("A0"), py::arg("seed") = 0, py::arg("restarts") = 0,
          py::arg("max_iters") = 4000);

    m.def("run_suite",
          [](const std::string& suite, int mm, uint64_t seed, int trials, int steps, int threads) {
              SuiteParams params;
              params.m = mm;
              params.seed = seed;
              params.trials = trials;
              params.steps = steps;
              params.threads = threads;
              return report_to_json(run_suite(parse_suite(suite), params));
          },
          py::arg("suite"), py::arg("m") = 3, py::arg("seed") = 0, py::arg("trials") = 0,
          py::arg("steps") = 50, py::arg("threads") = 1);
}
