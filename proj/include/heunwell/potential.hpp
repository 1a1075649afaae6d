#pragma once

// V(x) = -V0 sinh^4(x/d) / cosh^6(x/d) in atomic units (hbar = m = 1).

namespace heunwell {

struct PotentialConfig {
    double V0 = 74.785;  // hartree
    double d = 1.0;      // bohr
    double mass = 1.0;
    double hbar = 1.0;
    double U0 = 0.0;          // 2 m V0 / hbar^2
    long double alpha = 0.0L;  // -d sqrt(U0)

    /// Validates V0 > 0, d > 0 and fills U0 and alpha.
    static PotentialConfig make(double V0, double d);
    /// Well with a prescribed alpha (kept exactly, in long double); V0 is derived.
    static PotentialConfig from_alpha(long double alpha, double d = 1.0);
};

double potential_value(const PotentialConfig& cfg, double x);

/// -V0 sinh^(2m)(x/d) / cosh^(2m+2)(x/d); m = 2 is the double well,
/// m = 0 the Poschl-Teller well.
double hyperbolic_family_potential(int m, double V0, double d, double x);

/// min_x V = -(4/27) V0, reached where sinh^2(x/d) = 2.
double potential_minimum(const PotentialConfig& cfg);
double potential_minimum_location(const PotentialConfig& cfg);

long double beta_to_energy(const PotentialConfig& cfg, long double beta);
long double energy_to_beta(const PotentialConfig& cfg, long double energy);

/// Largest admissible beta, i.e. the one with E = min V.
long double beta_upper_limit(const PotentialConfig& cfg);

}  // namespace heunwell
