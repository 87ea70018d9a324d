// Copyright 2026 The paulispec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paulispec/circuits.hpp"
#include "paulispec/experiments.hpp"
#include "paulispec/rmpu_analytic.hpp"
#include "paulispec/rtn.hpp"
#include "paulispec/spectrum.hpp"
#include "paulispec/truncation.hpp"
#include "paulispec/weingarten.hpp"

namespace py = pybind11;
using namespace paulispec;

namespace {

PauliCoefficients to_coeffs(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    const auto n = static_cast<std::size_t>(a.size());
    std::size_t sites = 0;
    while ((std::size_t{1} << (2 * sites)) < n) ++sites;
    if ((std::size_t{1} << (2 * sites)) != n) throw std::invalid_argument("length must be 4^N");
    return {sites, std::vector<double>(a.data(), a.data() + n)};
}

py::array_t<double> to_array(const PauliCoefficients &c) {
    py::array_t<double> out(static_cast<py::ssize_t>(c.size()));
    std::copy(c.values.begin(), c.values.end(), out.mutable_data());
    return out;
}

RmpuParams rmpu_params(std::size_t n, std::size_t r, int k, double gamma) {
    RmpuParams p;
    p.n_sites = n;
    p.overlap = r;
    p.k = k;
    p.gamma = gamma;
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pauli spectra of operators in noisy random circuits.";
    m.attr("__version__") = code_version();

    py::enum_<NoisePlacement>(m, "NoisePlacement")
        .value("per_qubit_per_layer", NoisePlacement::PerQubitPerLayer)
        .value("per_gate_support", NoisePlacement::PerGateSupport)
        .value("none", NoisePlacement::None);

    py::class_<CircuitSpec>(m, "CircuitSpec")
        .def_static("chain", &CircuitSpec::chain, py::arg("n"), py::arg("depth"), py::arg("gamma") = 0.0)
        .def_static("grid", &CircuitSpec::grid, py::arg("lx"), py::arg("ly"), py::arg("depth"), py::arg("gamma") = 0.0)
        .def_static("rmpu", &CircuitSpec::rmpu, py::arg("n"), py::arg("r"), py::arg("gamma") = 0.0)
        .def_readwrite("gamma", &CircuitSpec::gamma)
        .def_readwrite("depth", &CircuitSpec::depth)
        .def_readwrite("master_seed", &CircuitSpec::master_seed)
        .def_readwrite("noise", &CircuitSpec::noise)
        .def_readwrite("initial_site", &CircuitSpec::initial_site)
        .def_property_readonly("sites", &CircuitSpec::sites)
        .def_property_readonly("num_layers", &CircuitSpec::num_layers);

    m.def(
        "evolve", [](const CircuitSpec &spec, std::uint64_t realization) {
            return to_array(run_circuit(spec, realization).pauli_coefficients());
        },
        py::arg("spec"), py::arg("realization") = 0, "Pauli coefficients of one evolved operator.");
    m.def("circuit_fidelity", &circuit_fidelity, py::arg("spec"), py::arg("layers"));

    m.def("moment_mu", [](py::array_t<double> c, int k) { return moment_mu(to_coeffs(c), k); });
    m.def("moment_nu", [](py::array_t<double> c, int k) { return moment_nu(to_coeffs(c), k); });
    m.def("ose", [](py::array_t<double> c, double k) { return ose(to_coeffs(c), k); });
    m.def("haar_moment", &haar_moment);
    m.def("opt_density", py::vectorize(&opt_density));

    m.def("weingarten_matrix", [](int n, double q) { return weingarten_matrix(n, q).entries; });
    m.def("noisy_weingarten", [](int n, double q, double g) { return noisy_weingarten(n, q, g).entries; });
    m.def("gram_matrix", [](int n, double q) { return gram_matrix(n, q).entries; });

    m.def(
        "rmpu_moment_exact", [](std::size_t n, std::size_t r, int k, double g) {
            return rmpu_moment_exact(rmpu_params(n, r, k, g));
        },
        py::arg("n"), py::arg("r"), py::arg("k") = 2, py::arg("gamma") = 0.0);
    m.def(
        "rmpu_moment_asymptotic", [](std::size_t n, std::size_t r, int k, double g) {
            return rmpu_moment_asymptotic(rmpu_params(n, r, k, g));
        },
        py::arg("n"), py::arg("r"), py::arg("k") = 2, py::arg("gamma") = 0.0);
    m.def("global_haar_moment", &global_haar_moment, py::arg("n"), py::arg("k"), py::arg("d") = 2);
    m.def(
        "scaling_predictions", [](int d, int k) {
            const auto s = scaling_predictions(d, k);
            py::dict out;
            out["tau"] = s.tau;
            out["gamma_c_times_n"] = s.gamma_c_times_n;
            return out;
        },
        py::arg("d") = 2, py::arg("k") = 2);

    m.def(
        "contract_brickwork", [](std::size_t n, std::size_t t, double g, std::size_t chi) {
            RtnOptions opt;
            opt.chi_mps = chi;
            const auto r = contract_brickwork(n, t, 2, 2, g, opt);
            return py::make_tuple(r.value, r.truncation_error);
        },
        py::arg("n"), py::arg("t"), py::arg("gamma") = 0.0, py::arg("chi") = 256,
        "Ensemble nu_2 of the brickwork chain and its truncation error.");

    m.def("dropped_weight", [](py::array_t<double> c, std::size_t np) {
        return truncate_top(to_coeffs(c), np).dropped_weight;
    });
    m.def("simulability_bound", &simulability_bound, py::arg("norm"), py::arg("m2"), py::arg("n_p"),
          py::arg("n_sites"));

    m.def(
        "fit_kappa", [](const std::vector<double> &t, const std::vector<double> &v, const std::vector<double> &se,
                        double reference, double t_min, double t_max) {
            std::vector<SeriesPoint> s;
            for (std::size_t i = 0; i < t.size(); ++i) s.push_back({t.at(i), v.at(i), se.at(i)});
            const auto f = fit_kappa(s, reference, t_min, t_max);
            return py::make_tuple(f.kappa, f.kappa_stderr);
        },
        py::arg("t"), py::arg("values"), py::arg("stderr"), py::arg("reference"), py::arg("t_min"), py::arg("t_max"));
}
