#include "heunwell/potential.hpp"

#include <cmath>

#include "heunwell/errors.hpp"

namespace heunwell {

PotentialConfig PotentialConfig::make(double V0, double d) {
    if (!(V0 > 0.0) || !std::isfinite(V0)) throw DomainError("potential: V0 must be positive");
    if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("potential: d must be positive");
    PotentialConfig c;
    c.V0 = V0;
    c.d = d;
    c.U0 = 2.0 * c.mass * V0 / (c.hbar * c.hbar);
    c.alpha = -static_cast<long double>(d) * std::sqrt(2.0L * c.mass * V0 / (c.hbar * c.hbar));
    return c;
}

PotentialConfig PotentialConfig::from_alpha(long double alpha, double d) {
    if (!(alpha < 0)) throw DomainError("potential: alpha must be negative");
    if (!(d > 0.0)) throw DomainError("potential: d must be positive");
    PotentialConfig c;
    c.d = d;
    const long double u0 = alpha * alpha / (static_cast<long double>(d) * d);
    c.U0 = static_cast<double>(u0);
    c.V0 = static_cast<double>(u0 * c.hbar * c.hbar / (2 * c.mass));
    c.alpha = alpha;
    return c;
}

double potential_value(const PotentialConfig& cfg, double x) {
    return hyperbolic_family_potential(2, cfg.V0, cfg.d, x);
}

double hyperbolic_family_potential(int m, double V0, double d, double x) {
    const double z = std::fabs(x / d);
    if (z > 350.0) return 0.0;
    // tanh^(2m) * sech^2 avoids overflow of the separate powers
    const double t = std::tanh(z);
    const double s = 1.0 / std::cosh(z);
    return -V0 * std::pow(t, 2 * m) * s * s;
}

double potential_minimum(const PotentialConfig& cfg) {
    return -4.0 / 27.0 * cfg.V0;
}

double potential_minimum_location(const PotentialConfig& cfg) {
    return cfg.d * std::asinh(std::sqrt(2.0));
}

long double beta_to_energy(const PotentialConfig& cfg, long double beta) {
    if (beta < 0) throw DomainError("beta_to_energy: beta must be non-negative");
    const long double d = cfg.d;
    return -static_cast<long double>(cfg.hbar) * cfg.hbar * beta * beta / (2 * cfg.mass * d * d);
}

long double energy_to_beta(const PotentialConfig& cfg, long double energy) {
    if (energy > 0) throw DomainError("energy_to_beta: energy must be <= 0");
    return cfg.d * std::sqrt(-2 * cfg.mass * energy) / cfg.hbar;
}

long double beta_upper_limit(const PotentialConfig& cfg) {
    return cfg.d * std::sqrt(4.0L * cfg.U0 / 27.0L);
}

}  // namespace heunwell
