#pragma once

// Time evolution in the eigenbasis, autocorrelation, frequency extraction and
// Wigner quasiprobability grids.

#include <complex>
#include <set>
#include <vector>

#include "heunwell/eigenstates.hpp"
#include "heunwell/quantiser.hpp"
#include "heunwell/wavepackets.hpp"

namespace heunwell {

struct EvolvedState {
    OverlapSet overlaps;
    Spectrum spectrum;
    std::vector<Eigenstate> states;
};

/// Checks that every overlap index names a state. Throws DomainError.
EvolvedState make_evolved_state(OverlapSet overlaps, Spectrum spectrum, std::vector<Eigenstate> states);

/// Psi(x, t) = sum chi_n e^(-i E_n t) psi_n(x).
std::complex<double> evolve(const EvolvedState& es, double x, double t);

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
};
using AutocorrSeries = TimeSeries;

/// |a(t)|^2 = |sum |chi_n|^2 e^(i E_n t)|^2.
AutocorrSeries autocorrelation(const EvolvedState& es, const std::vector<double>& times);

/// (max - min) / max of the series values.
double relative_variation(const TimeSeries& s);

/// n points from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int n);

struct FrequencyPeak {
    double omega = 0.0;
    double amplitude = 0.0;
};

struct FrequencyOptions {
    double relative_threshold = 0.1;  // peaks below this fraction of the largest are dropped
    double absolute_floor = 1e-8;     // scaled by max(1, |mean|)
    int zero_pad = 4;
    double max_bin_width = 0.0;  // rad / a.u.; 0 disables the resolution check
};

/// Up to k peaks of the Hann-windowed, mean-subtracted DFT magnitude, sorted
/// by amplitude. Requires uniform sampling. Throws ResolutionError when the
/// series has fewer than 16 samples or its bin width exceeds max_bin_width.
std::vector<FrequencyPeak> dominant_frequencies(const TimeSeries& series, int k,
                                                const FrequencyOptions& opts = {});

struct WignerGrid {
    std::vector<double> x_grid;
    std::vector<double> p_grid;
    double t = 0.0;
    std::vector<double> values;  // row-major, values[i * p_grid.size() + j] = W(x_i, p_j)

    double at(std::size_t i, std::size_t j) const { return values[i * p_grid.size() + j]; }
    double dx() const;
    double dp() const;
    /// sum W dx dp
    double total() const;
    /// sum_j W(x_i, p_j) dp
    std::vector<double> position_marginal() const;
};

struct WignerOptions {
    double decay_threshold = 1e-10;  // |Psi| relative to its peak defining the window edge
    double boundary_threshold = 1e-8;
    double window_cap = 60.0;  // in units of d
    double scan_step = 0.05;   // in units of d
};

/// W(x, p, t) = (1/pi) int Psi*(x + mu) Psi(x - mu) e^(2 i p mu) dmu by the
/// trapezoid rule with dmu = pi / (8 max|p|). Throws WindowError if Psi has not
/// decayed inside the window cap, DomainError for non-uniform grids.
WignerGrid wigner(const EvolvedState& es, double t, const std::vector<double>& x_grid,
                  const std::vector<double>& p_grid, const WignerOptions& opts = {});

/// Overlaps restricted to `indices`. Throws DomainError on an empty set or an
/// unknown index.
EvolvedState partial_superposition(const EvolvedState& es, const std::set<int>& indices);

/// Tilt of the central quantum bridge: the shear moment
/// sum x p W dx dp over |x| < half_width. Linear in W, so a superposition of
/// states n, m contributes only at E_m - E_n.
double bridge_slope(const WignerGrid& grid, double half_width);

/// Orientation (radians) of the principal axis of the second-moment tensor of
/// W over |x| < half_width. W can be negative there, so the tensor may be
/// indefinite and the angle can sweep through pi within one period.
double principal_axis_angle(const WignerGrid& grid, double half_width);

/// bridge_slope over a time series of Wigner grids.
TimeSeries bridge_slope_series(const EvolvedState& es, const std::vector<double>& times,
                               const std::vector<double>& x_grid, const std::vector<double>& p_grid,
                               double half_width);

/// Relative L2 distance ||a - b|| / ||b|| of two grids on the same axes.
double relative_l2(const WignerGrid& a, const WignerGrid& b);

}  // namespace heunwell
