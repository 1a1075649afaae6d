#pragma once

// Brute-force reference: three-point finite differences on [-L, L] with
// Dirichlet ends, Sturm-sequence bisection for eigenvalues and Crank-Nicolson
// for time propagation.

#include <complex>
#include <functional>
#include <vector>

#include "heunwell/potential.hpp"

namespace heunwell {

struct FdGrid {
    double L = 12.0;
    int n = 4001;

    double h() const { return 2.0 * L / (n - 1); }
    double x(int i) const { return -L + i * h(); }
    /// Grid with half the spacing over the same interval.
    FdGrid refined() const { return {L, 2 * n - 1}; }
};

/// n >= 3 odd, L >= 6 d. Throws DomainError.
void validate(const FdGrid& grid, double d);

struct FdSpectrum {
    std::vector<double> energies;  // ascending, all < 0
    int requested = 0;
    bool shortfall = false;  // fewer bound levels than requested
};

FdSpectrum fd_spectrum(const PotentialConfig& cfg, const FdGrid& grid, int k);
/// Same for an arbitrary potential (grid checked only for n >= 3 odd).
FdSpectrum fd_spectrum(const std::function<double(double)>& V, const FdGrid& grid, int k);

/// Number of discrete eigenvalues below E.
int fd_count_below(const std::function<double(double)>& V, const FdGrid& grid, double E);

struct FdRichardson {
    std::vector<double> coarse;
    std::vector<double> fine;
    std::vector<double> extrapolated;  // (4 E_{h/2} - E_h) / 3
    std::vector<double> error_bar;     // |E_{h/2} - E_h| / 3
    bool shortfall = false;
};

FdRichardson fd_spectrum_richardson(const PotentialConfig& cfg, const FdGrid& grid, int k);

/// Eigenvector of the discretisation eigenvalue nearest E (Sturm bisection, then inverse iteration),
/// sampled at all n grid points and normalised to sum |psi|^2 h = 1.
std::vector<double> fd_eigenvector(const std::function<double(double)>& V, const FdGrid& grid, double E);

std::vector<std::complex<double>> sample_on_grid(const FdGrid& grid, const std::function<double(double)>& f);

struct FdPropagation {
    std::vector<std::complex<double>> psi;  // Psi(x_i, T)
    std::vector<double> times;
    std::vector<double> autocorr;  // |a(t)|^2 with a(t) = sum Psi*(x_i, t) Psi(x_i, 0) h
    double norm_drift = 0.0;       // max relative change of sum |Psi|^2 h
};

/// Crank-Nicolson steps of size dt; a(t) recorded every `sample_every` steps
/// (and at t = 0). Throws StabilityError if the norm drifts by more than 1e-6.
FdPropagation fd_propagate(const PotentialConfig& cfg, const FdGrid& grid,
                           std::vector<std::complex<double>> psi0, double dt, int steps, int sample_every = 1);

}  // namespace heunwell
