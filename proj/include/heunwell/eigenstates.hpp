#pragma once

// Bound-state wavefunctions built from quantisation roots:
//   even:  psi(xi)   = xi^(beta/2) e^(alpha xi / 2) H(xi),                 xi = sech^2(x/d)
//   odd:   psi(zeta) = zeta (1 - zeta^2)^(beta/2) e^(-alpha zeta^2 / 2) H'(zeta^2), zeta = tanh(x/d)

#include <vector>

#include "heunwell/heun.hpp"
#include "heunwell/potential.hpp"
#include "heunwell/quantiser.hpp"

namespace heunwell {

struct Coordinates {
    double xi = 1.0;    // sech^2(x/d), in (0, 1]
    double zeta = 0.0;  // tanh(x/d), in (-1, 1)
};

Coordinates coordinate_map(double x, double d);
/// Inverse maps on x >= 0.
double x_from_xi(double xi, double d);
double x_from_zeta(double zeta, double d);

/// Weight functions turning dx into dxi (even) or dzeta (odd):
///   q(xi, d) = d / (2 xi sqrt(1 - xi)),  Q(zeta, d) = d / (1 - zeta^2).
struct Measure {
    enum class Kind { QEven, QOdd };
    Kind kind = Kind::QEven;
    double d = 1.0;

    double operator()(double t) const;
};

struct Eigenstate {
    int index = 0;
    Parity parity = Parity::Even;
    long double beta = 0;
    long double energy = 0;
    long double alpha = 0;  // of the well (negative); coeffs.params holds the mapped one for odd states
    double d = 1.0;
    SeriesCoeffs coeffs;
    double norm_const = 1.0;  // > 0
    int sign = 1;             // fixes the overall phase convention
    int n_trunc = 0;
};

inline constexpr int kDefaultSeriesLength = 800;
inline constexpr int kMaxTruncation = 400;

/// Un-normalised state (norm_const = 1, n_trunc = full series).
Eigenstate make_eigenstate(const PotentialConfig& cfg, Parity parity, long double beta,
                           int n_max = kDefaultSeriesLength);

/// psi(x) with the state's normalisation, truncation and sign.
double eval_wavefunction(const Eigenstate& s, double x);
/// Same with an explicit truncation order.
double eval_wavefunction(const Eigenstate& s, double x, int n_terms);
/// d psi / dx.
double eval_wavefunction_derivative(const Eigenstate& s, double x);

/// Un-signed, un-normalised shape in its natural variable. For odd states
/// `one_minus_zeta_sq` must equal 1 - zeta^2 (pass it to avoid cancellation).
double shape_in_xi(const Eigenstate& s, double xi, int n_terms);
double shape_in_zeta(const Eigenstate& s, double zeta, double one_minus_zeta_sq, int n_terms);

/// Sets norm_const so that int |psi|^2 dx = 1 over the real line, using
/// measure-weighted quadrature in xi (even) or zeta (odd), and applies the
/// sign convention (even: psi > 0 near x = 0; odd: positive slope at 0).
/// Throws NormalisationError.
Eigenstate normalize(Eigenstate s, const PotentialConfig& cfg);

/// sup over 2001 points on [-5d, 5d] of |psi_n1 - psi_n2| / max |psi_n2|.
double truncation_error(const Eigenstate& s, int n1, int n2);

/// Smallest n with truncation_error(n, 2n) < tol, capped at kMaxTruncation.
int select_truncation(const Eigenstate& s, double tol = 1e-8);

/// make_eigenstate + truncation selection + normalize.
Eigenstate build_eigenstate(const PotentialConfig& cfg, const SpectrumState& st);
std::vector<Eigenstate> build_eigenstates(const PotentialConfig& cfg, const Spectrum& spectrum);

/// int psi_a psi_b dx; exactly 0 for opposite parity.
double state_overlap(const Eigenstate& a, const Eigenstate& b);

}  // namespace heunwell
