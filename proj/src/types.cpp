#include "horn/types.hpp"

#include <algorithm>
#include <numeric>

namespace horn {

std::string ensemble_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::HermitianU: return "hermitian";
        case EnsembleKind::SymmetricO: return "symmetric";
        case EnsembleKind::SkewO: return "skew-o";
        case EnsembleKind::SkewSO: return "skew-so";
    }
    return "?";
}

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

Spectrum::Spectrum(std::vector<double> values, double tol) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("Spectrum: needs at least one value");
    const double gap_floor = tol * std::max(1.0, inf_norm(values_));
    for (size_t i = 0; i + 1 < values_.size(); ++i) {
        if (values_[i] - values_[i + 1] < gap_floor)
            throw std::invalid_argument("Spectrum: values must be strictly decreasing");
    }
}

Spectrum Spectrum::unchecked(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("Spectrum: needs at least one value");
    Spectrum s;
    s.values_ = std::move(values);
    return s;
}

double Spectrum::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

double Spectrum::scale() const { return std::max(1.0, inf_norm(values_)); }

bool Spectrum::degenerate() const {
    const double gap_floor = 1e-12 * scale();
    for (size_t i = 0; i + 1 < values_.size(); ++i)
        if (values_[i] - values_[i + 1] < gap_floor) return true;
    return false;
}

std::string skew_group_name(SkewGroup g) {
    switch (g) {
        case SkewGroup::O_even: return "O(2m)";
        case SkewGroup::SO_even: return "SO(2m)";
        case SkewGroup::O_odd: return "O(2m+1)";
        case SkewGroup::SO_odd: return "SO(2m+1)";
    }
    return "?";
}

bool skew_group_is_even(SkewGroup g) {
    return g == SkewGroup::O_even || g == SkewGroup::SO_even;
}

bool skew_group_is_special(SkewGroup g) {
    return g == SkewGroup::SO_even || g == SkewGroup::SO_odd;
}

SkewSpectrum::SkewSpectrum(std::vector<double> values, SkewGroup group, double tol)
    : values_(std::move(values)), group_(group) {
    if (values_.empty()) throw std::invalid_argument("SkewSpectrum: needs at least one value");
    const double gap_floor = tol * std::max(1.0, inf_norm(values_));
    const size_t m = values_.size();
    // All entries but possibly the last must be strictly decreasing positives;
    // SO(2m) alone allows a sign on the last entry.
    for (size_t i = 0; i + 1 < m; ++i) {
        const double next = (i + 2 == m && group_ == SkewGroup::SO_even)
                                ? std::abs(values_[i + 1])
                                : values_[i + 1];
        if (values_[i] - next < gap_floor)
            throw std::invalid_argument("SkewSpectrum: values must be strictly decreasing");
    }
    const double last = (group_ == SkewGroup::SO_even) ? std::abs(values_.back()) : values_.back();
    if (last < gap_floor)
        throw std::invalid_argument("SkewSpectrum: values must be nonzero positive (in magnitude)");
}

SkewSpectrum SkewSpectrum::unchecked(std::vector<double> values, SkewGroup group) {
    if (values.empty()) throw std::invalid_argument("SkewSpectrum: needs at least one value");
    SkewSpectrum s;
    s.values_ = std::move(values);
    s.group_ = group;
    return s;
}

int SkewSpectrum::n() const {
    return skew_group_is_even(group_) ? 2 * m() : 2 * m() + 1;
}

double SkewSpectrum::scale() const { return std::max(1.0, inf_norm(values_)); }

bool SkewSpectrum::degenerate() const {
    const double gap_floor = 1e-12 * scale();
    for (size_t i = 0; i + 1 < values_.size(); ++i)
        if (std::abs(values_[i]) - std::abs(values_[i + 1]) < gap_floor) return true;
    return std::abs(values_.back()) < gap_floor;
}

double vandermonde(const std::vector<double>& x) {
    double p = 1.0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j) p *= x[i] - x[j];
    return p;
}

double vandermonde_O(const std::vector<double>& x, Parity parity) {
    double p = 1.0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j) p *= x[i] * x[i] - x[j] * x[j];
    if (parity == Parity::Odd)
        for (double xi : x) p *= xi;
    return p;
}

namespace {

long long gcd_ll(long long a, long long b) {
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

long long factorial_ll(int n) {
    long long f = 1;
    for (int p = 2; p <= n; ++p) f *= p;
    return f;
}

// prod_{p=1}^{k} p!
long long superfactorial_ll(int k) {
    long long f = 1;
    for (int p = 1; p <= k; ++p) f *= factorial_ll(p);
    return f;
}

}  // namespace

Rational make_rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = gcd_ll(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

Rational prefactor_hermitian(int n) {
    if (n < 2 || n > 9) throw std::invalid_argument("prefactor_hermitian: n out of range");
    return make_rational(superfactorial_ll(n - 1), factorial_ll(n));
}

Rational j_normalization(int n) {
    if (n < 2 || n > 5) throw std::invalid_argument("j_normalization: n out of range");
    return make_rational(1, superfactorial_ll(n - 1));
}

NormConstants appendix_constants(ConstantFamily family, int n_or_m) {
    if (n_or_m < 1) throw std::invalid_argument("appendix_constants: size must be >= 1");
    const double pi = 3.14159265358979323846;
    switch (family) {
        case ConstantFamily::Hermitian: {
            const int n = n_or_m;
            const double kappa = std::pow(2.0 * pi, n * (n - 1) / 2) /
                                 static_cast<double>(superfactorial_ll(n));
            const double kappa_hat = static_cast<double>(superfactorial_ll(n - 1));
            return {kappa, kappa_hat};
        }
        case ConstantFamily::SkewEven: {
            const int m = n_or_m;
            double odd_fact = 1.0, even_fact = 1.0;
            for (int p = 1; p <= m - 1; ++p) {
                odd_fact *= static_cast<double>(factorial_ll(2 * p - 1));
                even_fact *= static_cast<double>(factorial_ll(2 * p));
            }
            const double kappa = std::pow(2.0, 2.0 * m * m - 1.5 * m) * std::pow(pi, m * (m - 1)) /
                                 (static_cast<double>(factorial_ll(m)) * even_fact);
            const double kappa_hat = static_cast<double>(factorial_ll(m - 1)) * odd_fact /
                                     std::pow(2.0, (m - 1) * (m - 1));
            return {kappa, kappa_hat};
        }
        case ConstantFamily::SkewOdd: {
            const int m = n_or_m;
            double odd_fact = 1.0, even_fact = 1.0;
            for (int p = 1; p <= m; ++p) {
                odd_fact *= static_cast<double>(factorial_ll(2 * p - 1));
                even_fact *= static_cast<double>(factorial_ll(2 * p));
            }
            const double kappa = std::pow(2.0, 2.0 * m * m + 0.5 * m) * std::pow(pi, m * m) /
                                 (static_cast<double>(factorial_ll(m)) * even_fact);
            const double kappa_hat = odd_fact / std::pow(2.0, m * m);
            return {kappa, kappa_hat};
        }
    }
    throw std::invalid_argument("appendix_constants: bad family");
}

}  // namespace horn
