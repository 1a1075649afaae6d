#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heunwell/dynamics.hpp"
#include "heunwell/errors.hpp"
#include "heunwell/fd_oracle.hpp"
#include "heunwell/quantiser.hpp"

namespace py = pybind11;
using namespace heunwell;

namespace {

struct Session {
    PotentialConfig potential;
    Spectrum spectrum;
    std::vector<Eigenstate> states;
};

Session make_session(double V0, double d) {
    Session s;
    s.potential = PotentialConfig::make(V0, d);
    s.spectrum = full_spectrum(s.potential);
    s.states = build_eigenstates(s.potential, s.spectrum);
    return s;
}

EvolvedState evolved(const Session& s, const WavepacketSpec& spec, const std::vector<int>& indices) {
    const Wavepacket packet(spec, s.potential);
    EvolvedState es = make_evolved_state(compute_overlaps(packet, s.states), s.spectrum, s.states);
    if (!indices.empty()) es = partial_superposition(es, std::set<int>(indices.begin(), indices.end()));
    return es;
}

WavepacketSpec with_d(WavepacketSpec spec, double d) {
    if (auto* o = std::get_if<DloSpec>(&spec)) o->d = d;
    if (auto* m = std::get_if<MixedSpec>(&spec)) m->odd.d = d;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hyperbolic double-well spectra and wavepacket dynamics";

    auto base = py::register_exception<Error>(m, "HeunwellError");
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    py::class_<DleSpec>(m, "DLE")
        .def(py::init([](double c, double Omega) { return DleSpec{c, Omega}; }), py::arg("c"), py::arg("Omega"))
        .def_readwrite("c", &DleSpec::c)
        .def_readwrite("Omega", &DleSpec::Omega);
    py::class_<DloSpec>(m, "DLO")
        .def(py::init([](double W, double tau) { return DloSpec{W, tau, 1.0}; }), py::arg("W"), py::arg("tau"))
        .def_readwrite("W", &DloSpec::W)
        .def_readwrite("tau", &DloSpec::tau);
    py::class_<MixedSpec>(m, "Mixed")
        .def(py::init([](double Delta, DleSpec e, DloSpec o) { return MixedSpec{Delta, e, o}; }), py::arg("Delta"),
             py::arg("even"), py::arg("odd"))
        .def_readwrite("Delta", &MixedSpec::Delta);

    m.def("refine_root", [](double alpha, const std::string& parity, double beta0) {
        return static_cast<double>(refine_root_cf(static_cast<long double>(alpha), parity_from_string(parity),
                                                  static_cast<long double>(beta0)));
    }, py::arg("alpha"), py::arg("parity"), py::arg("beta0"));

    py::class_<Session>(m, "Well")
        .def(py::init(&make_session), py::arg("V0") = 74.785, py::arg("d") = 1.0)
        .def_property_readonly("V0", [](const Session& s) { return s.potential.V0; })
        .def_property_readonly("d", [](const Session& s) { return s.potential.d; })
        .def_property_readonly("alpha", [](const Session& s) { return static_cast<double>(s.potential.alpha); })
        .def_property_readonly("bounds", [](const Session& s) {
            return py::make_tuple(s.spectrum.bounds.lower, s.spectrum.bounds.upper);
        })
        .def("spectrum", [](const Session& s) {
            py::list out;
            for (const auto& st : s.spectrum.states) {
                py::dict row;
                row["n"] = st.index;
                row["parity"] = std::string(to_string(st.parity));
                row["beta"] = static_cast<double>(st.beta);
                row["E"] = static_cast<double>(st.energy);
                out.append(row);
            }
            return out;
        })
        .def("energies", [](const Session& s) {
            std::vector<double> e;
            for (const auto& st : s.spectrum.states) e.push_back(static_cast<double>(st.energy));
            return e;
        })
        .def("wavefunction", [](const Session& s, int n, py::array_t<double> x) {
            if (n < 0 || n >= static_cast<int>(s.states.size())) throw DomainError("state index out of range");
            auto in = x.unchecked<1>();
            py::array_t<double> out(in.shape(0));
            auto o = out.mutable_unchecked<1>();
            for (py::ssize_t i = 0; i < in.shape(0); ++i) o(i) = eval_wavefunction(s.states[static_cast<std::size_t>(n)], in(i));
            return out;
        }, py::arg("n"), py::arg("x"))
        .def("overlaps", [](const Session& s, const WavepacketSpec& spec) {
            const OverlapSet ov = compute_overlaps(Wavepacket(with_d(spec, s.potential.d), s.potential), s.states);
            return py::make_tuple(ov.values, ov.bound_fraction);
        }, py::arg("packet"))
        .def("autocorrelation", [](const Session& s, const WavepacketSpec& spec, const std::vector<double>& times,
                                   const std::vector<int>& indices) {
            return autocorrelation(evolved(s, with_d(spec, s.potential.d), indices), times).values;
        }, py::arg("packet"), py::arg("times"), py::arg("indices") = std::vector<int>{})
        .def("frequencies", [](const Session& s, const WavepacketSpec& spec, const std::vector<double>& times, int k) {
            const auto a = autocorrelation(evolved(s, with_d(spec, s.potential.d), {}), times);
            std::vector<std::pair<double, double>> out;
            for (const auto& p : dominant_frequencies(a, k)) out.emplace_back(p.omega, p.amplitude);
            return out;
        }, py::arg("packet"), py::arg("times"), py::arg("k") = 5)
        .def("wigner", [](const Session& s, const WavepacketSpec& spec, double t, const std::vector<double>& x,
                          const std::vector<double>& p, const std::vector<int>& indices) {
            WignerGrid g;
            {
                py::gil_scoped_release release;
                g = wigner(evolved(s, with_d(spec, s.potential.d), indices), t, x, p);
            }
            py::array_t<double> out({x.size(), p.size()});
            std::copy(g.values.begin(), g.values.end(), out.mutable_data());
            return out;
        }, py::arg("packet"), py::arg("t"), py::arg("x"), py::arg("p"), py::arg("indices") = std::vector<int>{})
        .def("fd_energies", [](const Session& s, double L, int n) {
            return fd_spectrum_richardson(s.potential, FdGrid{L, n}, static_cast<int>(s.spectrum.size())).extrapolated;
        }, py::arg("L") = 12.0, py::arg("n") = 4001);

    m.attr("__version__") = "0.1.0";
}
