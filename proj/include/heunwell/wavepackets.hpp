#pragma once

// Delocalised initial packets:
//   DLE(xi)   ~ xi^(c Omega) e^(-c xi)                      (even in x)
//   DLO(zeta) ~ zeta e^(-W zeta^2) (1 - zeta^2)^P           (odd in x)
// and their mixtures cos(Delta) DLE + sin(Delta) DLO.

#include <map>
#include <variant>
#include <vector>

#include "heunwell/eigenstates.hpp"
#include "heunwell/potential.hpp"

namespace heunwell {

struct DleSpec {
    double c = 7.0;
    double Omega = 0.25;
};

struct DloSpec {
    double W = 0.0;
    double tau = 0.8;
    double d = 1.0;
};

struct MixedSpec {
    double Delta = 0.0;
    DleSpec even;
    DloSpec odd;
};

using WavepacketSpec = std::variant<DleSpec, DloSpec, MixedSpec>;

/// Throws DomainError when c <= 0, Omega outside (0,1), tau outside (0,1),
/// W >= 1/(2 tau^2) or d <= 0.
void validate(const WavepacketSpec& spec);

/// p = c Omega.
double dle_exponent(const DleSpec& s);
/// P = (tau^2 - 1)(2 tau^2 W - 1) / (2 tau^2).
double dlo_exponent(const DloSpec& s);

/// Closed-form packets with their closed-form normalisation constants.
double eval_dle(const DleSpec& s, double xi);
double eval_dlo(const DloSpec& s, double zeta);
double eval_dlo(const DloSpec& s, double zeta, double one_minus_zeta_sq);

/// x-space peak positions (positive root).
double dle_peak_x(const DleSpec& s, double d);
double dlo_peak_x(const DloSpec& s);

/// Packet with its normalisation re-verified on the full x-line. The even
/// closed-form constant is only exact for d = 1, so each component carries a
/// numerical correction factor.
class Wavepacket {
public:
    Wavepacket(WavepacketSpec spec, const PotentialConfig& cfg);

    const WavepacketSpec& spec() const { return spec_; }
    double d() const { return d_; }

    bool has_even() const { return even_.has_value(); }
    bool has_odd() const { return odd_.has_value(); }
    double even_weight() const;  // cos(Delta) for mixed, 1 for DLE, 0 for DLO
    double odd_weight() const;

    /// Normalised components (each of unit norm over the real line).
    double even_in_xi(double xi) const;
    double odd_in_zeta(double zeta, double one_minus_zeta_sq) const;

    /// Full packet in x-space.
    double operator()(double x) const;

    /// int |closed-form component|^2 dx before correction.
    double raw_even_norm() const { return raw_even_norm_; }
    double raw_odd_norm() const { return raw_odd_norm_; }
    double even_scale() const { return even_scale_; }
    double odd_scale() const { return odd_scale_; }

private:
    WavepacketSpec spec_;
    double d_ = 1.0;
    std::optional<DleSpec> even_;
    std::optional<DloSpec> odd_;
    double raw_even_norm_ = 0.0;
    double raw_odd_norm_ = 0.0;
    double even_scale_ = 1.0;
    double odd_scale_ = 1.0;
};

struct OverlapSet {
    std::map<int, double> values;  // state index -> Lambda_n (or chi_n)
    double bound_fraction = 0.0;   // sum |Lambda_n|^2

    void recompute_bound_fraction();
};

/// Both overlap routes for one normalised component, for diagnostics.
struct OverlapRoutes {
    double quadrature = 0.0;
    double series = 0.0;
};

/// Lambda_n of a packet component with a same-parity state: adaptive
/// quadrature in xi (zeta) and the term-by-term closed form
/// sum_k v_k B(a_k, b) M(a_k; a_k + b; kappa).
OverlapRoutes overlap_routes(const Wavepacket& packet, const Eigenstate& state);

/// Overlap <packet | state> over the real line. Unlike parity gives exactly 0.
/// Mixed packets return the cos/sin-weighted value. Throws
/// NumericalInconsistencyError if the two routes disagree by more than 1e-6.
double overlap(const Wavepacket& packet, const Eigenstate& state);
double overlap(const WavepacketSpec& spec, const Eigenstate& state, const PotentialConfig& cfg);

/// Overlaps with every state.
OverlapSet compute_overlaps(const Wavepacket& packet, const std::vector<Eigenstate>& states);

/// chi_n = Lambda_n cos(Delta) for even n, Lambda_n sin(Delta) for odd n.
OverlapSet mixed_overlaps(double Delta, const OverlapSet& even_overlaps, const OverlapSet& odd_overlaps);

}  // namespace heunwell
