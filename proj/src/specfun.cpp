#include "heunwell/specfun.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

#include "heunwell/errors.hpp"

namespace heunwell::specfun {
namespace {

constexpr long double kEps = LDBL_EPSILON;
constexpr int kMaxTerms = 200000;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && std::floor(x) == x;
}

double checked(long double v, const char* what) {
    const double d = static_cast<double>(v);
    if (!std::isfinite(d)) throw OverflowError(std::string(what) + ": result not representable");
    return d;
}

// sum_{k>=k0} (a)_k z^k / (Gamma(b+k) k!) or, when regularised is false,
// sum_k (a)_k z^k / ((b)_k k!). Returns the sum and the size of the last
// term included.
struct SeriesSum {
    long double sum;
    long double last;
    int terms;
};

SeriesSum hypergeometric_series(long double a, long double b, long double z, bool regularised) {
    int k = 0;
    long double term = 1.0L;
    if (regularised) {
        if (is_nonpositive_integer(static_cast<double>(b))) {
            // 1/Gamma(b + k) vanishes for k <= -b.
            const int k0 = static_cast<int>(-b) + 1;
            long double poch = 1.0L;
            long double kfact = 1.0L;
            long double zp = 1.0L;
            for (int j = 0; j < k0; ++j) {
                poch *= a + j;
                kfact *= j + 1;
                zp *= z;
            }
            k = k0;
            term = poch * zp / (kfact * std::tgamma(b + k0));
        } else {
            term = 1.0L / std::tgamma(b);
            if (!std::isfinite(term)) term = 0.0L;
        }
    }
    long double sum = term;
    int n = 0;
    for (; n < kMaxTerms; ++n, ++k) {
        if (term == 0.0L && a + k == 0.0L) break;  // terminating series
        const long double ratio = (a + k) * z / ((b + k) * (k + 1));
        term *= ratio;
        sum += term;
        if (std::fabs(term) <= kEps * std::fabs(sum) && std::fabs(ratio) < 0.5L) break;
        if (term == 0.0L) break;
    }
    if (n == kMaxTerms) throw NumericalError("hypergeometric series did not converge");
    return {sum, term, n + 1};
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: x must be positive");
    return std::lgamma(x);
}

double ln_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ln_beta: arguments must be positive");
    return static_cast<double>(std::lgamma(static_cast<long double>(a)) +
                               std::lgamma(static_cast<long double>(b)) -
                               std::lgamma(static_cast<long double>(a) + b));
}

SpecFunResult lower_incomplete_gamma_ex(double a, double u) {
    if (!(a > 0.0) || !(u >= 0.0) || std::isnan(u))
        throw DomainError("lower_incomplete_gamma: need a > 0 and u >= 0");
    if (u == 0.0) return {0.0, 0.0};
    const long double al = a;
    const long double ul = u;
    if (std::isinf(u)) {
        const long double g = std::exp(std::lgamma(al));
        return {checked(g, "lower_incomplete_gamma"), 0.0};
    }
    const long double log_prefactor = al * std::log(ul) - ul;
    if (ul < al + 1.0L) {
        long double term = 1.0L / al;
        long double sum = term;
        int n = 1;
        for (; n < kMaxTerms; ++n) {
            term *= ul / (al + n);
            sum += term;
            if (std::fabs(term) < kEps * std::fabs(sum)) break;
        }
        if (n == kMaxTerms) throw NumericalError("lower_incomplete_gamma: series did not converge");
        const long double v = std::exp(log_prefactor) * sum;
        return {checked(v, "lower_incomplete_gamma"), static_cast<double>(4 * n * kEps * v)};
    }
    // Modified Lentz on the continued fraction for Gamma(a, u).
    constexpr long double tiny = 1e-4000L;
    long double b = ul + 1.0L - al;
    long double c = 1.0L / tiny;
    long double d = 1.0L / b;
    long double h = d;
    int i = 1;
    for (; i < kMaxTerms; ++i) {
        const long double an = -i * (i - al);
        b += 2.0L;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0L / d;
        const long double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0L) < kEps) break;
    }
    if (i == kMaxTerms) throw NumericalError("lower_incomplete_gamma: continued fraction did not converge");
    const long double upper = std::exp(log_prefactor) * h;
    const long double full = std::exp(std::lgamma(al));
    const long double v = full - upper;
    return {checked(v, "lower_incomplete_gamma"),
            static_cast<double>(4 * i * kEps * (std::fabs(full) + std::fabs(upper)))};
}

double lower_incomplete_gamma(double a, double u) {
    return lower_incomplete_gamma_ex(a, u).value;
}

double upper_incomplete_gamma(double a, double u) {
    const long double full = std::exp(std::lgamma(static_cast<long double>(a)));
    return checked(full - lower_incomplete_gamma(a, u), "upper_incomplete_gamma");
}

SpecFunResult regularized_1f1_ex(double a, double b, double z) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z))
        throw DomainError("regularized_1f1: arguments must be finite");
    if (a == 0.0) {
        const long double v = is_nonpositive_integer(b) ? 0.0L : 1.0L / std::tgamma(static_cast<long double>(b));
        return {checked(v, "regularized_1f1"), 0.0};
    }
    if (z < 0.0 && !is_nonpositive_integer(a)) {
        const SeriesSum s = hypergeometric_series(b - a, b, -static_cast<long double>(z), true);
        const long double scale = std::exp(static_cast<long double>(z));
        const long double v = scale * s.sum;
        return {checked(v, "regularized_1f1"),
                static_cast<double>(scale * (std::fabs(s.last) + s.terms * kEps * std::fabs(s.sum)))};
    }
    const SeriesSum s = hypergeometric_series(a, b, z, true);
    return {checked(s.sum, "regularized_1f1"),
            static_cast<double>(std::fabs(s.last) + s.terms * kEps * std::fabs(s.sum))};
}

double regularized_1f1(double a, double b, double z) {
    return regularized_1f1_ex(a, b, z).value;
}

double kummer_m(double a, double b, double z) {
    if (is_nonpositive_integer(b)) throw DomainError("kummer_m: b must not be a non-positive integer");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z))
        throw DomainError("kummer_m: arguments must be finite");
    if (z < 0.0 && !is_nonpositive_integer(a)) {
        const SeriesSum s = hypergeometric_series(b - a, b, -static_cast<long double>(z), false);
        return checked(std::exp(static_cast<long double>(z)) * s.sum, "kummer_m");
    }
    return checked(hypergeometric_series(a, b, z, false).sum, "kummer_m");
}

}  // namespace heunwell::specfun
