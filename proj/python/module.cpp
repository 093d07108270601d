#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coxmy/analysis.hpp"
#include "coxmy/finite.hpp"
#include "coxmy/model.hpp"
#include "coxmy/oracle.hpp"
#include "coxmy/solver.hpp"

namespace py = pybind11;
using namespace coxmy;

PYBIND11_MODULE(_coxmy, m) {
    m.doc() = "Stationary analysis of Cox(k)/M^Y/1 batch-service queues";

    py::register_exception<NotErgodic>(m, "NotErgodic");
    py::register_exception<NoConvergence>(m, "NoConvergence");
    py::register_exception<SchemaError>(m, "SchemaError");

    py::class_<CoxianArrival>(m, "CoxianArrival")
        .def_static("finite", &CoxianArrival::finite, py::arg("lambdas"), py::arg("qs"))
        .def_static("infinite", &CoxianArrival::infinite, py::arg("lam"), py::arg("q"))
        .def_static("exponential", &CoxianArrival::exponential, py::arg("lam"))
        .def_static("erlang", &CoxianArrival::erlang, py::arg("k"), py::arg("lam"))
        .def_static("homogeneous", &CoxianArrival::homogeneous, py::arg("k"), py::arg("lam"),
                    py::arg("q"))
        .def_property_readonly("is_infinite", &CoxianArrival::is_infinite)
        .def_property_readonly("order", &CoxianArrival::order)
        .def("lam", &CoxianArrival::lambda, py::arg("i"))
        .def("q", &CoxianArrival::q, py::arg("i"));

    py::class_<BatchService>(m, "BatchService")
        .def(py::init<double, std::vector<double>>(), py::arg("mu"), py::arg("pmf"))
        .def_property_readonly("mu", &BatchService::mu)
        .def_property_readonly("max_batch", &BatchService::max_batch)
        .def("mean_batch", &BatchService::mean_batch)
        .def("phi", &BatchService::phi, py::arg("x"));

    py::class_<QueueModel>(m, "QueueModel")
        .def(py::init([](CoxianArrival a, BatchService s) { return QueueModel{a, s}; }),
             py::arg("arrival"), py::arg("service"))
        .def_readonly("arrival", &QueueModel::arrival)
        .def_readonly("service", &QueueModel::service);

    m.def("model_from_json", &model_from_json, py::arg("text"));
    m.def("model_to_json", &model_to_json, py::arg("model"));
    m.def("mean_interarrival", &mean_interarrival, py::arg("arrival"));
    m.def("is_ergodic", &is_ergodic, py::arg("model"));

    py::enum_<RootMethod>(m, "RootMethod")
        .value("FixedPoint", RootMethod::FixedPoint)
        .value("Newton", RootMethod::Newton)
        .value("Bisection", RootMethod::Bisection);

    py::class_<SpectralSolution>(m, "SpectralSolution")
        .def_readonly("gamma", &SpectralSolution::gamma)
        .def_readonly("alphas", &SpectralSolution::alphas)
        .def_readonly("iterations", &SpectralSolution::iterations)
        .def_readonly("residual", &SpectralSolution::residual)
        .def("alpha", &SpectralSolution::alpha, py::arg("i"));

    m.def("fixpoint_F", &fixpoint_F, py::arg("model"), py::arg("gamma"));
    m.def("solve_gamma", &solve_gamma, py::arg("model"),
          py::arg("method") = RootMethod::FixedPoint, py::arg("gamma0") = 0.5,
          py::arg("tol") = 1e-12, py::arg("max_iter") = -1);

    py::class_<StationaryDistribution>(m, "StationaryDistribution")
        .def(py::init<QueueModel, SpectralSolution>(), py::arg("model"), py::arg("solution"))
        .def_property_readonly("pi00", &StationaryDistribution::pi00)
        .def("boundary", &StationaryDistribution::boundary, py::arg("i"))
        .def("prob", &StationaryDistribution::prob, py::arg("m"), py::arg("i"))
        .def("level_marginal", &StationaryDistribution::level_marginal, py::arg("m"))
        .def("total_mass", &StationaryDistribution::total_mass);

    py::enum_<BlockingPolicy>(m, "BlockingPolicy")
        .value("PhaseFreeze", BlockingPolicy::PhaseFreeze)
        .value("LossRestart", BlockingPolicy::LossRestart);

    py::class_<FiniteSolution>(m, "FiniteSolution")
        .def_readonly("capacity", &FiniteSolution::capacity)
        .def_readonly("pi", &FiniteSolution::pi)
        .def("prob", &FiniteSolution::prob, py::arg("m"), py::arg("i"))
        .def("level_marginal", &FiniteSolution::level_marginal, py::arg("m"));

    m.def("solve_finite", &solve_finite, py::arg("model"), py::arg("capacity"),
          py::arg("policy") = BlockingPolicy::PhaseFreeze);

    py::class_<MetricsRow>(m, "MetricsRow")
        .def_readonly("k", &MetricsRow::k)
        .def_readonly("lambda_k", &MetricsRow::lambda_k)
        .def_readonly("gamma", &MetricsRow::gamma)
        .def_readonly("alpha", &MetricsRow::alpha)
        .def_readonly("pi0_bar", &MetricsRow::pi0_bar)
        .def_readonly("L", &MetricsRow::L)
        .def_readonly("W", &MetricsRow::W)
        .def_readonly("V", &MetricsRow::V);

    m.def("calibrate", &calibrate, py::arg("lambda_star"), py::arg("q"), py::arg("k"));
    m.def("metrics", &metrics, py::arg("model"), py::arg("solution"), py::arg("lambda_star"));
    m.def("gamma_star", &gamma_star, py::arg("rho"), py::arg("service"));

    py::class_<Dm1Distribution>(m, "Dm1Distribution")
        .def_readonly("rho", &Dm1Distribution::rho)
        .def_readonly("sigma", &Dm1Distribution::sigma)
        .def("marginal", &Dm1Distribution::marginal, py::arg("m"));

    m.def("dm1_distribution", &dm1_distribution, py::arg("rho"), py::arg("service"));

    m.def(
        "oracle_stationary",
        [](const QueueModel& model, int cap) { return oracle_stationary(model, cap); },
        py::arg("model"), py::arg("level_cap"));

    py::class_<OracleReport>(m, "OracleReport")
        .def_readonly("level_cap", &OracleReport::level_cap)
        .def_readonly("max_abs_error", &OracleReport::max_abs_error)
        .def_readonly("max_rel_error", &OracleReport::max_rel_error)
        .def_readonly("tail_mass_bound", &OracleReport::tail_mass_bound);

    m.def("compare_with_oracle", &compare_with_oracle, py::arg("dist"), py::arg("level_cap"),
          py::arg("level_limit"));
}
