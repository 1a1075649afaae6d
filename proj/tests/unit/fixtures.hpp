#pragma once

#include "heunwell/dynamics.hpp"
#include "heunwell/eigenstates.hpp"
#include "heunwell/quantiser.hpp"

namespace fixtures {

struct Well {
    heunwell::PotentialConfig cfg;
    heunwell::Spectrum spectrum;
    std::vector<heunwell::Eigenstate> states;
};

// V0 = 74.785, d = 1, built once per test binary.
inline const Well& standard_well() {
    static const Well w = [] {
        Well x;
        x.cfg = heunwell::PotentialConfig::make(74.785, 1.0);
        x.spectrum = heunwell::full_spectrum(x.cfg);
        x.states = heunwell::build_eigenstates(x.cfg, x.spectrum);
        return x;
    }();
    return w;
}

inline heunwell::EvolvedState evolved(const heunwell::WavepacketSpec& spec) {
    const Well& w = standard_well();
    const heunwell::Wavepacket p(spec, w.cfg);
    return heunwell::make_evolved_state(heunwell::compute_overlaps(p, w.states), w.spectrum, w.states);
}

}  // namespace fixtures
