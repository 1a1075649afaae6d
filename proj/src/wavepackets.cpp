#include "heunwell/wavepackets.hpp"

#include <cmath>
#include <numbers>

#include "heunwell/errors.hpp"
#include "heunwell/quadrature.hpp"
#include "heunwell/specfun.hpp"

namespace heunwell {
namespace {

constexpr double kPi = std::numbers::pi;

void validate_dle(const DleSpec& s) {
    if (!(s.c > 0.0)) throw DomainError("DLE packet: c must be positive");
    if (!(s.Omega > 0.0 && s.Omega < 1.0)) throw DomainError("DLE packet: Omega must lie in (0, 1)");
}

void validate_dlo(const DloSpec& s) {
    if (!(s.tau > 0.0 && s.tau < 1.0)) throw DomainError("DLO packet: tau must lie in (0, 1)");
    if (!(s.W < 1.0 / (2.0 * s.tau * s.tau))) throw DomainError("DLO packet: need W < 1/(2 tau^2)");
    if (!(s.d > 0.0)) throw DomainError("DLO packet: d must be positive");
}

double dle_constant(const DleSpec& s) {
    const double p2 = 2.0 * dle_exponent(s);
    const double f = specfun::regularized_1f1(p2, p2 + 0.5, -2.0 * s.c);
    return 1.0 / (std::pow(kPi, 0.25) * std::sqrt(f) * std::exp(0.5 * specfun::ln_gamma(p2)));
}

double dlo_constant(const DloSpec& s) {
    const double t2 = s.tau * s.tau;
    const double b = 2.0 * s.W * (t2 - 1.0) + 1.0 / t2 + 0.5;
    const double g = 2.0 * s.W * (t2 - 1.0) + 1.0 / t2 - 1.0;
    const double f = specfun::regularized_1f1(1.5, b, -2.0 * s.W);
    return std::sqrt(2.0) / (std::pow(kPi, 0.25) * std::sqrt(s.d * f) * std::exp(0.5 * specfun::ln_gamma(g)));
}

double log_sech_sq(double z) {
    const double a = std::fabs(z);
    return -2.0 * (a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0));
}

// 2 int_0^1 f(xi) g(xi) q(xi) dxi via xi = 1 - u^2.
template <class F>
quad::Result even_line_integral(double d, F&& integrand_xi) {
    return quad::unit_interval([&](double u, double, double right) {
        const double xi = right * (1.0 + u);
        if (xi <= 0.0) return 0.0;
        return 2.0 * integrand_xi(xi) * d / xi;
    });
}

// int_{-1}^{1} f(zeta) g(zeta) Q(zeta) dzeta for an even product.
template <class F>
quad::Result odd_line_integral(double d, F&& integrand_zeta) {
    return quad::unit_interval([&](double zeta, double, double right) {
        const double w = right * (1.0 + zeta);
        if (w <= 0.0) return 0.0;
        return 2.0 * integrand_zeta(zeta, w) * d / w;
    });
}

}  // namespace

void validate(const WavepacketSpec& spec) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DleSpec>) {
                validate_dle(s);
            } else if constexpr (std::is_same_v<T, DloSpec>) {
                validate_dlo(s);
            } else {
                if (!std::isfinite(s.Delta)) throw DomainError("mixed packet: Delta must be finite");
                validate_dle(s.even);
                validate_dlo(s.odd);
            }
        },
        spec);
}

double dle_exponent(const DleSpec& s) {
    return s.c * s.Omega;
}

double dlo_exponent(const DloSpec& s) {
    const double t2 = s.tau * s.tau;
    return (t2 - 1.0) * (2.0 * t2 * s.W - 1.0) / (2.0 * t2);
}

double eval_dle(const DleSpec& s, double xi) {
    validate_dle(s);
    if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("eval_dle: xi must lie in [0, 1]");
    if (xi == 0.0) return 0.0;
    return dle_constant(s) * std::exp(dle_exponent(s) * std::log(xi) - s.c * xi);
}

double eval_dlo(const DloSpec& s, double zeta, double one_minus_zeta_sq) {
    validate_dlo(s);
    if (!(zeta >= -1.0 && zeta <= 1.0))
        throw DomainError("eval_dlo: zeta must lie in [-1, 1]");
    if (one_minus_zeta_sq <= 0.0) return 0.0;
    return dlo_constant(s) * zeta *
           std::exp(-s.W * zeta * zeta + dlo_exponent(s) * std::log(one_minus_zeta_sq));
}

double eval_dlo(const DloSpec& s, double zeta) {
    return eval_dlo(s, zeta, (1.0 - zeta) * (1.0 + zeta));
}

double dle_peak_x(const DleSpec& s, double d) {
    return d * std::acosh(1.0 / std::sqrt(s.Omega));
}

double dlo_peak_x(const DloSpec& s) {
    return s.d * std::atanh(s.tau);
}

Wavepacket::Wavepacket(WavepacketSpec spec, const PotentialConfig& cfg) : spec_(std::move(spec)), d_(cfg.d) {
    validate(spec_);
    std::visit(
        [this](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DleSpec>) {
                even_ = s;
            } else if constexpr (std::is_same_v<T, DloSpec>) {
                odd_ = s;
            } else {
                even_ = s.even;
                odd_ = s.odd;
            }
        },
        spec_);
    if (odd_ && std::fabs(odd_->d - d_) > 1e-12 * d_)
        throw DomainError("DLO packet: d differs from the potential's d");

    if (even_) {
        const double k = dle_constant(*even_);
        const double p = dle_exponent(*even_);
        const double c = even_->c;
        const auto r = even_line_integral(d_, [&](double xi) {
            const double v = k * std::exp(p * std::log(xi) - c * xi);
            return v * v;
        });
        raw_even_norm_ = r.value;
        if (!(r.value > 0.0) || !std::isfinite(r.value)) throw NormalisationError("DLE packet norm failed");
        if (std::fabs(r.value - 1.0) > 1e-8) even_scale_ = 1.0 / std::sqrt(r.value);
    }
    if (odd_) {
        const auto r = odd_line_integral(d_, [&](double zeta, double w) {
            const double v = eval_dlo(*odd_, zeta, w);
            return v * v;
        });
        raw_odd_norm_ = r.value;
        if (!(r.value > 0.0) || !std::isfinite(r.value)) throw NormalisationError("DLO packet norm failed");
        if (std::fabs(r.value - 1.0) > 1e-8) odd_scale_ = 1.0 / std::sqrt(r.value);
    }
}

double Wavepacket::even_weight() const {
    if (const auto* m = std::get_if<MixedSpec>(&spec_)) return std::cos(m->Delta);
    return even_ ? 1.0 : 0.0;
}

double Wavepacket::odd_weight() const {
    if (const auto* m = std::get_if<MixedSpec>(&spec_)) return std::sin(m->Delta);
    return odd_ ? 1.0 : 0.0;
}

double Wavepacket::even_in_xi(double xi) const {
    if (!even_ || xi <= 0.0) return 0.0;
    return even_scale_ * dle_constant(*even_) * std::exp(dle_exponent(*even_) * std::log(xi) - even_->c * xi);
}

double Wavepacket::odd_in_zeta(double zeta, double one_minus_zeta_sq) const {
    if (!odd_) return 0.0;
    return odd_scale_ * eval_dlo(*odd_, zeta, one_minus_zeta_sq);
}

double Wavepacket::operator()(double x) const {
    const double z = x / d_;
    const double xi = std::exp(log_sech_sq(z));
    double v = 0.0;
    if (even_) v += even_weight() * even_in_xi(xi);
    if (odd_) v += odd_weight() * odd_in_zeta(std::tanh(z), xi);
    return v;
}

void OverlapSet::recompute_bound_fraction() {
    bound_fraction = 0.0;
    for (const auto& [n, v] : values) bound_fraction += v * v;
}

OverlapRoutes overlap_routes(const Wavepacket& packet, const Eigenstate& state) {
    const double d = packet.d();
    const double state_scale = state.sign * state.norm_const;
    const int nt = state.n_trunc;
    OverlapRoutes out;
    if (state.parity == Parity::Even) {
        if (!packet.has_even()) return out;
        const auto& s = std::get_if<DleSpec>(&packet.spec()) ? std::get<DleSpec>(packet.spec())
                                                             : std::get<MixedSpec>(packet.spec()).even;
        out.quadrature = even_line_integral(d, [&](double xi) {
                             return packet.even_in_xi(xi) * state_scale * shape_in_xi(state, xi, nt);
                         }).value;
        // sum_k v_k int_0^1 xi^(m_k - 1) (1 - xi)^(-1/2) e^(K xi) dxi,  m_k = p + beta/2 + k
        const double p = dle_exponent(s);
        const double K = static_cast<double>(state.alpha) / 2.0 - s.c;
        const double beta = static_cast<double>(state.beta);
        long double sum = 0.0L;
        for (int k = 0; k <= nt; ++k) {
            const double m = p + beta / 2.0 + k;
            const double term = std::exp(specfun::ln_beta(m, 0.5)) * specfun::kummer_m(m, m + 0.5, K);
            sum += state.coeffs.v[static_cast<std::size_t>(k)] * static_cast<long double>(term);
        }
        const double pref = packet.even_scale() * dle_constant(s) * state_scale * d;
        out.series = pref * static_cast<double>(sum);
    } else {
        if (!packet.has_odd()) return out;
        const auto& s = std::get_if<DloSpec>(&packet.spec()) ? std::get<DloSpec>(packet.spec())
                                                             : std::get<MixedSpec>(packet.spec()).odd;
        out.quadrature = odd_line_integral(d, [&](double zeta, double w) {
                             return packet.odd_in_zeta(zeta, w) * state_scale * shape_in_zeta(state, zeta, w, nt);
                         }).value;
        // sum_k v_k int_0^1 s^(k + 1/2) (1 - s)^(lambda - 1) e^(kappa s) ds
        const double beta = static_cast<double>(state.beta);
        const double lambda = dlo_exponent(s) + beta / 2.0;
        const double kappa = -(s.W + static_cast<double>(state.alpha) / 2.0);
        const double t2 = s.tau * s.tau;
        const double g = 2.0 * s.W * (t2 - 1.0) + 1.0 / t2 - 1.0;
        const double b = g + 1.5;
        const double pkt_const = std::sqrt(2.0) / (std::pow(kPi, 0.25) *
                                                   std::sqrt(s.d * specfun::regularized_1f1(1.5, b, -2.0 * s.W)) *
                                                   std::exp(0.5 * specfun::ln_gamma(g)));
        long double sum = 0.0L;
        for (int k = 0; k <= nt; ++k) {
            const double a = k + 1.5;
            const double term = std::exp(specfun::ln_beta(a, lambda)) * specfun::kummer_m(a, a + lambda, kappa);
            sum += state.coeffs.v[static_cast<std::size_t>(k)] * static_cast<long double>(term);
        }
        out.series = packet.odd_scale() * pkt_const * state_scale * d * static_cast<double>(sum);
    }
    return out;
}

double overlap(const Wavepacket& packet, const Eigenstate& state) {
    const bool even = state.parity == Parity::Even;
    if (even ? !packet.has_even() : !packet.has_odd()) return 0.0;
    const OverlapRoutes r = overlap_routes(packet, state);
    if (std::fabs(r.quadrature - r.series) > 1e-6)
        throw NumericalInconsistencyError("overlap: quadrature and closed form disagree for state " +
                                          std::to_string(state.index));
    return (even ? packet.even_weight() : packet.odd_weight()) * r.quadrature;
}

double overlap(const WavepacketSpec& spec, const Eigenstate& state, const PotentialConfig& cfg) {
    return overlap(Wavepacket(spec, cfg), state);
}

OverlapSet compute_overlaps(const Wavepacket& packet, const std::vector<Eigenstate>& states) {
    OverlapSet out;
    for (const auto& s : states) out.values[s.index] = overlap(packet, s);
    out.recompute_bound_fraction();
    return out;
}

OverlapSet mixed_overlaps(double Delta, const OverlapSet& even_overlaps, const OverlapSet& odd_overlaps) {
    OverlapSet out;
    for (const auto& [n, v] : even_overlaps.values)
        if (n % 2 == 0) out.values[n] = v * std::cos(Delta);
    for (const auto& [n, v] : odd_overlaps.values)
        if (n % 2 != 0) out.values[n] = v * std::sin(Delta);
    out.recompute_bound_fraction();
    return out;
}

}  // namespace heunwell
