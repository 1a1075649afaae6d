#include "heunwell/eigenstates.hpp"

#include <algorithm>
#include <cmath>

#include "heunwell/errors.hpp"
#include "heunwell/quadrature.hpp"

namespace heunwell {
namespace {

// log(sech^2 z) without overflow for large |z|.
double log_sech_sq(double z) {
    const double a = std::fabs(z);
    return -2.0 * (a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0));
}

int effective_terms(const Eigenstate& s, int n_terms) {
    const int last = s.coeffs.last_index();
    if (n_terms < 0 || n_terms > last) return last;
    return n_terms;
}

}  // namespace

Coordinates coordinate_map(double x, double d) {
    const double z = x / d;
    return {std::exp(log_sech_sq(z)), std::tanh(z)};
}

double x_from_xi(double xi, double d) {
    if (!(xi > 0.0 && xi <= 1.0)) throw DomainError("x_from_xi: xi must lie in (0, 1]");
    return d * std::acosh(1.0 / std::sqrt(xi));
}

double x_from_zeta(double zeta, double d) {
    if (!(zeta > -1.0 && zeta < 1.0)) throw DomainError("x_from_zeta: zeta must lie in (-1, 1)");
    return d * std::atanh(zeta);
}

double Measure::operator()(double t) const {
    if (kind == Kind::QEven) return d / (2.0 * t * std::sqrt(1.0 - t));
    return d / (1.0 - t * t);
}

Eigenstate make_eigenstate(const PotentialConfig& cfg, Parity parity, long double beta, int n_max) {
    if (!(beta > 0)) throw DomainError("make_eigenstate: beta must be positive");
    Eigenstate s;
    s.parity = parity;
    s.beta = beta;
    s.energy = beta_to_energy(cfg, beta);
    s.alpha = cfg.alpha;
    s.d = cfg.d;
    s.coeffs = series_coeffs(derive_params(cfg.alpha, beta, parity), n_max);
    if (s.coeffs.diverged()) throw NumericalError("make_eigenstate: series coefficients diverged");
    s.n_trunc = s.coeffs.last_index();
    return s;
}

double shape_in_xi(const Eigenstate& s, double xi, int n_terms) {
    if (xi <= 0.0) return 0.0;
    const long double x = xi;
    const long double h = heun_series_eval(s.coeffs, x, effective_terms(s, n_terms)).value;
    return static_cast<double>(std::exp(s.beta / 2 * std::log(x) + s.alpha * x / 2) * h);
}

double shape_in_zeta(const Eigenstate& s, double zeta, double one_minus_zeta_sq, int n_terms) {
    if (one_minus_zeta_sq <= 0.0) return 0.0;
    const long double z2 = static_cast<long double>(zeta) * zeta;
    const long double h = heun_series_eval(s.coeffs, z2, effective_terms(s, n_terms)).value;
    const long double pref = std::exp(s.beta / 2 * std::log(static_cast<long double>(one_minus_zeta_sq)) -
                                      s.alpha * z2 / 2);
    return static_cast<double>(zeta * pref * h);
}

double eval_wavefunction(const Eigenstate& s, double x, int n_terms) {
    const double z = x / s.d;
    const double scale = s.sign * s.norm_const;
    if (s.parity == Parity::Even) {
        return scale * shape_in_xi(s, std::exp(log_sech_sq(z)), n_terms);
    }
    return scale * shape_in_zeta(s, std::tanh(z), std::exp(log_sech_sq(z)), n_terms);
}

double eval_wavefunction(const Eigenstate& s, double x) {
    return eval_wavefunction(s, x, s.n_trunc);
}

double eval_wavefunction_derivative(const Eigenstate& s, double x) {
    const double z = x / s.d;
    const long double xi = std::exp(log_sech_sq(z));
    const long double zeta = std::tanh(z);
    const long double scale = s.sign * s.norm_const;
    const int n = s.n_trunc;
    if (xi <= 0) return 0.0;
    if (s.parity == Parity::Even) {
        const long double h = heun_series_eval(s.coeffs, xi, n).value;
        const long double dh = heun_series_derivative(s.coeffs, xi, n);
        const long double pref = std::exp(s.beta / 2 * std::log(xi) + s.alpha * xi / 2);
        // d/dxi [xi^(b/2) e^(a xi/2) H] = pref * (H (b/(2 xi) + a/2) + H')
        const long double dpsi_dxi = pref * (h * (s.beta / (2 * xi) + s.alpha / 2) + dh);
        const long double dxi_dx = -2 * xi * zeta / s.d;
        return static_cast<double>(scale * dpsi_dxi * dxi_dx);
    }
    const long double z2 = zeta * zeta;
    const long double h = heun_series_eval(s.coeffs, z2, n).value;
    const long double dh = heun_series_derivative(s.coeffs, z2, n);
    const long double pref = std::exp(s.beta / 2 * std::log(xi) - s.alpha * z2 / 2);
    // d/dzeta [zeta (1-zeta^2)^(b/2) e^(-a zeta^2/2) H(zeta^2)]
    const long double dpsi_dzeta =
        pref * (h * (1 - s.beta * z2 / xi - s.alpha * z2) + 2 * z2 * dh);
    const long double dzeta_dx = xi / s.d;
    return static_cast<double>(scale * dpsi_dzeta * dzeta_dx);
}

Eigenstate normalize(Eigenstate s, const PotentialConfig& cfg) {
    const double d = cfg.d;
    const int n = s.n_trunc;
    quad::Result r;
    if (s.parity == Parity::Even) {
        // 2 int_0^1 psi(xi)^2 q(xi) dxi with xi = 1 - u^2, q dxi = d / xi du
        r = quad::unit_interval([&](double u, double, double right) {
            const double xi = right * (1.0 + u);
            if (xi <= 0.0) return 0.0;
            const double f = shape_in_xi(s, xi, n);
            return 2.0 * f * f * d / xi;
        });
    } else {
        r = quad::unit_interval([&](double zeta, double, double right) {
            const double w = right * (1.0 + zeta);  // 1 - zeta^2
            if (w <= 0.0) return 0.0;
            const double f = shape_in_zeta(s, zeta, w, n);
            return 2.0 * f * f * d / w;
        });
    }
    if (!std::isfinite(r.value) || !(r.value > 0.0) || r.error > 1e-8 * r.value)
        throw NormalisationError("normalize: quadrature failed for state with beta = " +
                                 std::to_string(static_cast<double>(s.beta)));
    s.norm_const = 1.0 / std::sqrt(r.value);

    if (s.parity == Parity::Even) {
        // sign of psi(0) = sign of H(1); fall back to the largest lobe when psi(0) ~ 0
        const double at0 = shape_in_xi(s, 1.0, n);
        double peak = 0.0;
        double peak_val = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double v = shape_in_xi(s, std::exp(log_sech_sq(8.0 * i / 400.0)), n);
            if (std::fabs(v) > peak) {
                peak = std::fabs(v);
                peak_val = v;
            }
        }
        const double ref = std::fabs(at0) > 1e-8 * peak ? at0 : peak_val;
        s.sign = ref < 0 ? -1 : 1;
    } else {
        s.sign = 1;  // slope at 0 is norm_const / d > 0 since v_0 = 1
    }
    return s;
}

double truncation_error(const Eigenstate& s, int n1, int n2) {
    if (n1 < 0 || n2 < n1 || n2 > s.coeffs.last_index())
        throw DomainError("truncation_error: need 0 <= n1 <= n2 <= n_max");
    if (n1 == n2) return 0.0;
    double max_diff = 0.0;
    double max_ref = 0.0;
    constexpr int points = 2001;
    for (int i = 0; i < points; ++i) {
        const double x = s.d * (-5.0 + 10.0 * i / (points - 1));
        const double a = eval_wavefunction(s, x, n1);
        const double b = eval_wavefunction(s, x, n2);
        max_diff = std::max(max_diff, std::fabs(a - b));
        max_ref = std::max(max_ref, std::fabs(b));
    }
    return max_ref > 0.0 ? max_diff / max_ref : max_diff;
}

int select_truncation(const Eigenstate& s, double tol) {
    const int cap = std::min(kMaxTruncation, s.coeffs.last_index() / 2);
    for (int n = 2; n < cap; ++n) {
        if (truncation_error(s, n, 2 * n) < tol) return n;
    }
    return cap;
}

Eigenstate build_eigenstate(const PotentialConfig& cfg, const SpectrumState& st) {
    Eigenstate s = make_eigenstate(cfg, st.parity, st.beta);
    s.index = st.index;
    s.energy = st.energy;
    s.n_trunc = select_truncation(s);
    return normalize(std::move(s), cfg);
}

std::vector<Eigenstate> build_eigenstates(const PotentialConfig& cfg, const Spectrum& spectrum) {
    std::vector<Eigenstate> out;
    out.reserve(spectrum.size());
    for (const auto& st : spectrum.states) out.push_back(build_eigenstate(cfg, st));
    return out;
}

double state_overlap(const Eigenstate& a, const Eigenstate& b) {
    if (a.parity != b.parity) return 0.0;
    const double d = a.d;
    const double scale = a.sign * a.norm_const * b.sign * b.norm_const;
    quad::Result r;
    if (a.parity == Parity::Even) {
        r = quad::unit_interval([&](double u, double, double right) {
            const double xi = right * (1.0 + u);
            if (xi <= 0.0) return 0.0;
            return 2.0 * shape_in_xi(a, xi, a.n_trunc) * shape_in_xi(b, xi, b.n_trunc) * d / xi;
        });
    } else {
        r = quad::unit_interval([&](double zeta, double, double right) {
            const double w = right * (1.0 + zeta);
            if (w <= 0.0) return 0.0;
            return 2.0 * shape_in_zeta(a, zeta, w, a.n_trunc) * shape_in_zeta(b, zeta, w, b.n_trunc) * d / w;
        });
    }
    return scale * r.value;
}

}  // namespace heunwell
