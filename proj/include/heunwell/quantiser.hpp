#pragma once

// Quantisation condition: admissible beta are the large-n roots of
// v_n(alpha, beta), refined on the equivalent continued fraction
//   1/x = 0,  x = b_0 + a_1/(b_1 + a_2/(b_2 + ...)),  a_n = C_n/A_n, b_n = B_n/A_n, b_0 = 0.

#include <vector>

#include "heunwell/heun.hpp"
#include "heunwell/potential.hpp"

namespace heunwell {

struct ScanOptions {
    int n_eval = 1000;
    /// Uniform grid size over (0, beta_max]; 0 derives it from grid_density.
    int grid_points = 0;
    double grid_density = 40.0;  // points per unit beta
    double bisection_tol = 1e-10;
    double stability_tol = 1e-8;
};

/// Ascending beta roots of beta -> v_{n_eval}(alpha, beta) in (0, beta_max],
/// keeping only roots that move by less than stability_tol when n_eval doubles.
std::vector<long double> scan_roots(const PotentialConfig& cfg, Parity parity,
                                    const ScanOptions& opts = {});

/// 1/x for the continued fraction truncated at depth `depth`, evaluated bottom-up.
long double continued_fraction_condition(long double alpha, Parity parity, long double beta,
                                         int depth);

/// Same, with depth doubled (from 64) until two evaluations agree to tol.
long double continued_fraction_condition(long double alpha, Parity parity, long double beta,
                                         long double tol = 1e-17L);

/// Secant iteration on the continued-fraction condition, started at beta0
/// (which must lie within 1e-3 of a root). Throws RefinementError.
long double refine_root_cf(long double alpha, Parity parity, long double beta0,
                           long double tol = 1e-17L);
long double refine_root_cf(const PotentialConfig& cfg, Parity parity, long double beta0,
                           long double tol = 1e-17L);

struct BoundStateBounds {
    int lower = 1;
    int upper = 1;
};

/// 1 <= B <= 1 + ((4/75)(20 + pi^2))^(1/4) (V0 d)^(1/2).
BoundStateBounds bound_state_bounds(const PotentialConfig& cfg);

struct SmoothnessResult {
    long double value = 0;
    bool diverged = false;
    int terms = 0;
};

/// sum_{n <= N} v_n (n + (alpha + beta)/2) for even parameters.
SmoothnessResult smoothness_diagnostic(const HeunParams& params, int N);

/// n^2 |v_n| for n = 1..N (index 0 holds n = 1).
std::vector<double> scaled_coefficient_profile(const HeunParams& params, int N);

struct DecayBound {
    int tail_start = 0;  // k = ceil(2 |alpha|)
    double constant = 0.0;  // sup of n^2 |v_n| over k < n <= N
    double max_excess = 0.0;  // largest n^2 |v_n| over k < n <= N, relative to a reference constant
};

/// sup_{k < n <= N} n^2 |v_n| with k = ceil(2 |alpha|); the coefficients of a
/// quantised state decay at least like 1/n^2 past the initial growth.
DecayBound decay_bound(const HeunParams& params, int N = 1000);

/// Same tail, measured against `constant`: max_excess = sup n^2 |v_n| / constant.
DecayBound decay_excess(const HeunParams& params, double constant, int N = 1000);

struct SpectrumState {
    int index = 0;
    Parity parity = Parity::Even;
    long double beta = 0;
    long double energy = 0;
    long double scan_beta = 0;  // bisection root before refinement
};

struct Spectrum {
    std::vector<SpectrumState> states;
    BoundStateBounds bounds;

    std::size_t size() const { return states.size(); }
    const SpectrumState& operator[](std::size_t i) const { return states[i]; }
};

struct SpectrumOptions {
    ScanOptions scan;
    long double tol = 1e-17L;
};

/// Both parities scanned, refined, merged by energy and validated
/// (count within bounds, parity alternation, energies in (min V, 0)).
/// Throws SpectrumInconsistencyError.
Spectrum full_spectrum(const PotentialConfig& cfg, const SpectrumOptions& opts = {});

}  // namespace heunwell
