#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace horn {

/// Which matrix class + acting group an experiment refers to.
enum class EnsembleKind { HermitianU, SymmetricO, SkewO, SkewSO };

struct Ensemble {
    EnsembleKind kind;
    int n;  // ambient matrix size

    Ensemble(EnsembleKind k, int size) : kind(k), n(size) {
        if (n < 1) throw std::invalid_argument("Ensemble: n must be >= 1");
    }
};

std::string ensemble_name(EnsembleKind kind);

/// Strictly ordered real eigenvalue multiplet, values[0] > values[1] > ...
/// The strictness gap defaults to 1e-12 * max(1, |values|_inf) because the
/// assembled densities divide by the Vandermonde of these values.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> values, double tol = 1e-12);

    /// Bypasses the strictness check; used by the sampler, where coincident
    /// eigenvalues are a measure-zero event that must not abort a run.
    static Spectrum unchecked(std::vector<double> values);

    int n() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    const std::vector<double>& values() const { return values_; }
    double sum() const;
    double scale() const;  // max(1, |values|_inf)

    /// True when some gap is below 1e-12 * scale (only possible for
    /// unchecked construction).
    bool degenerate() const;

private:
    Spectrum() = default;
    std::vector<double> values_;
};

enum class SkewGroup { O_even, SO_even, O_odd, SO_odd };

std::string skew_group_name(SkewGroup g);
bool skew_group_is_even(SkewGroup g);
bool skew_group_is_special(SkewGroup g);

/// Block "eigenvalues" of a real skew-symmetric matrix: the m parameters of
/// its 2x2-block canonical form, plus the group whose orbit is meant.
/// For O(2m), O(2m+1), SO(2m+1): strictly decreasing and positive.
/// For SO(2m): values[0] > ... > values[m-2] > |values[m-1]| > 0 (only an
/// even number of sign changes is allowed, so one sign survives).
class SkewSpectrum {
public:
    SkewSpectrum(std::vector<double> values, SkewGroup group, double tol = 1e-12);

    static SkewSpectrum unchecked(std::vector<double> values, SkewGroup group);

    int m() const { return static_cast<int>(values_.size()); }
    int n() const;  // ambient matrix size, 2m or 2m+1
    SkewGroup group() const { return group_; }
    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    const std::vector<double>& values() const { return values_; }
    double scale() const;
    bool degenerate() const;

private:
    SkewSpectrum() : group_(SkewGroup::O_even) {}
    std::vector<double> values_;
    SkewGroup group_;
};

// ---------------------------------------------------------------------------
// Vandermonde-type products

/// prod_{i<j} (x_i - x_j); the empty product (length 1) is 1.
double vandermonde(const std::vector<double>& x);

enum class Parity { Even, Odd };

/// prod_{i<j} (x_i^2 - x_j^2), times prod_i x_i when odd.
/// For m = 1 the pair product is 1 by convention.
double vandermonde_O(const std::vector<double>& x, Parity parity);

// ---------------------------------------------------------------------------
// Exact rational normalization constants

struct Rational {
    long long num = 0;
    long long den = 1;

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

Rational make_rational(long long num, long long den);

/// prod_{p=1}^{n-1} p! / n!  (1/2, 1/3, 1/2, 12/5 for n = 2..5).
Rational prefactor_hermitian(int n);

/// 1 / prod_{p=1}^{n-1} p!  (1, 1/2, 1/12, 1/288 for n = 2..5).
Rational j_normalization(int n);

enum class ConstantFamily { Hermitian, SkewEven, SkewOdd };

struct NormConstants {
    double kappa;      // Lebesgue-measure Jacobian constant
    double kappa_hat;  // Harish-Chandra prefactor
};

/// Normalization constants per family:
///   Hermitian (size n): kappa = (2pi)^{n(n-1)/2} / prod_1^n p!,
///                       kappa_hat = prod_1^{n-1} p!
///   SkewEven (n = 2m):  kappa = 2^{2m^2 - 3m/2} pi^{m(m-1)} / (m! prod_1^{m-1}(2p)!),
///                       kappa_hat = (m-1)! prod_1^{m-1}(2p-1)! / 2^{(m-1)^2}
///   SkewOdd (n = 2m+1): kappa = 2^{2m^2 + m/2} pi^{m^2} / (m! prod_1^m(2p)!),
///                       kappa_hat = prod_1^m(2p-1)! / 2^{m^2}
NormConstants appendix_constants(ConstantFamily family, int n_or_m);

}  // namespace horn
