#pragma once

#include <complex>
#include <vector>

#include "horn/support.hpp"
#include "horn/types.hpp"

namespace horn {

enum class Region { Interior, Boundary, Outside };

std::string region_name(Region r);

/// Density value w.r.t. Lebesgue measure on the chart recorded in `chart`.
/// `singular` marks an integrable edge singularity (value is meaningless
/// there; plot emitters should clip deliberately, never overflow silently).
struct DensityValue {
    double value = 0.0;
    Region region = Region::Outside;
    std::string chart;
    bool singular = false;
    bool conditioning_warning = false;  // near-degenerate alpha/beta input
};

/// Piecewise-polynomial kernel value; derivative_break flags points lying
/// within tolerance of a non-differentiability line.
struct KernelValue {
    double value = 0.0;
    bool derivative_break = false;
};

// ---------------------------------------------------------------------------
// Orbital integrals

/// HCIZ integral H(alpha, ix) = kappa_hat i^{-n(n-1)/2} det(e^{i x_i alpha_j})
/// / (Delta(x) Delta(alpha)). Both argument vectors must be strictly ordered.
std::complex<double> hciz_unitary(const Spectrum& alpha, const std::vector<double>& x);

/// Orthogonal-group Harish-Chandra integral over skew-symmetric orbits:
/// the cosh / primed-sum / sinh determinant cases. The group is taken from
/// the spectra, which must agree.
double hc_orthogonal(const SkewSpectrum& alpha, const SkewSpectrum& beta);

// ---------------------------------------------------------------------------
// J kernels (box-spline factors of the Hermitian densities)

/// J_n for n = 2, 3, 4. gamma is assumed sorted descending and (for n >= 3)
/// on the trace hyperplane; callers project first. Conventions: sign(0) = 0
/// in kernel sums, indicators take the value 1/2 at interval endpoints.
KernelValue j_kernel(int n, const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma);

/// n=3 closed form (4 terms), valid for ordered gamma inside the support;
/// exposed separately so tests can pit it against the full signed sum and
/// the honeycomb length.
double j3_closed_form(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma);

/// n=3 full 72-term signed sum, valid anywhere on the trace plane.
double j3_signed_sum(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma);

/// n=4 576-term signed sum (Appendix form with cubes), with cached
/// permutation/sign tables.
double j4_signed_sum(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma);

// ---------------------------------------------------------------------------
// Assembled densities

/// Hermitian density on the trace hyperplane, w.r.t. d(gamma_1..gamma_{n-1})
/// with gamma_n eliminated. Reports the unordered-gamma density by default;
/// ordered_sector multiplies by n! and vanishes off the ordered chart.
DensityValue pdf_hermitian(const Spectrum& alpha, const Spectrum& beta,
                           const std::vector<double>& gamma_free, bool ordered_sector = false);

/// Symmetric n=2 gap density rho(gamma12) = (2/pi) g / sqrt((gmax^2-g^2)(g^2-gmin^2)).
DensityValue pdf_symmetric_n2(const Spectrum& alpha, const Spectrum& beta, double gamma12);

/// Atom of a pure-point density (skew n=2).
struct Atom {
    double location;
    double weight;
};

/// Skew n=2 atom list: weights 1/4 at +-alpha+-beta for O(2), weight 1 at
/// alpha+beta for SO(2).
std::vector<Atom> skew_atoms_n2(const SkewSpectrum& alpha, const SkewSpectrum& beta);

/// Skew densities: n=3 piecewise-linear, n=4 SO / O indicator-bracket forms.
/// gamma is a point in block-eigenvalue coordinates (length m), sign
/// convention as produced by skew_canonical_form. n=2 has atoms, not a
/// density (use skew_atoms_n2); n=5 analytic form is out of scope -> throws.
DensityValue pdf_skew(const SkewSpectrum& alpha, const SkewSpectrum& beta,
                      const std::vector<double>& gamma);

/// Multiplier taking the sign-symmetric density of pdf_skew to the density of
/// the canonical-sector spectrum returned by the sampler (2 for n=3, 4 for
/// SO(4), 8 for O(4)); apply it only inside the canonical sector.
double skew_canonical_fold(const SkewSpectrum& alpha);

/// A straight segment in the (gamma1, gamma2) plane.
struct Segment {
    std::array<double, 2> a;
    std::array<double, 2> b;
    std::string label;
};

/// The seven enhancement half-lines/segments of the symmetric-matrix
/// experiments, clipped to the n=3 support polygon. Plotting overlay only.
std::vector<Segment> enhancement_lines_n3(const Spectrum& alpha, const Spectrum& beta);

}  // namespace horn
