#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "horn/analytic.hpp"
#include "horn/sampling.hpp"
#include "horn/support.hpp"
#include "horn/types.hpp"

namespace horn {

struct GridSpec {
    double xmin = 0.0, xmax = 1.0;
    double ymin = 0.0, ymax = 1.0;
    int nx = 100, ny = 100;

    double bin_width_x() const { return (xmax - xmin) / nx; }
    double bin_width_y() const { return (ymax - ymin) / ny; }
    double bin_area() const { return bin_width_x() * bin_width_y(); }

    bool operator==(const GridSpec&) const = default;
};

/// What spectra an MC run sums. Exactly one of the two representations is
/// used depending on the ensemble kind.
struct RunConfig {
    Ensemble ensemble{EnsembleKind::HermitianU, 2};
    std::optional<Spectrum> alpha, beta;             // Hermitian / symmetric
    std::optional<SkewSpectrum> skew_alpha, skew_beta;  // skew ensembles
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    GridSpec grid;
    int threads = 0;  // 0: HORN_THREADS env or hardware concurrency
};

/// 2-D binned empirical density over the ordered (gamma_1, gamma_2)
/// projection. Samples outside the window land in the overflow bucket.
struct HistogramGrid {
    GridSpec grid;
    std::vector<std::uint64_t> counts;  // nx * ny, row-major in x
    std::uint64_t overflow = 0;
    std::uint64_t total = 0;
    std::uint64_t degenerate_samples = 0;  // flagged, still binned

    // metadata
    std::string ensemble;
    int n = 0;
    std::vector<double> alpha, beta;
    std::uint64_t seed = 0;

    std::uint64_t& at(int ix, int iy) { return counts[static_cast<size_t>(iy) * nx() + ix]; }
    std::uint64_t at(int ix, int iy) const { return counts[static_cast<size_t>(iy) * nx() + ix]; }
    int nx() const { return grid.nx; }
    int ny() const { return grid.ny; }
    double density(int ix, int iy) const;

    bool operator==(const HistogramGrid&) const = default;
};

/// Grid window covering the analytic support with a 5% margin.
GridSpec support_window(const RunConfig& cfg, int nx = 100, int ny = 100);

/// Deterministic MC run: sample index k draws from RngStream(seed, k), so the
/// result is identical for any thread count.
HistogramGrid run_mc(const RunConfig& cfg);

struct ComparisonReport {
    double l1_distance = 0.0;  // sum over bins |emp - ana| + overflow + missed mass
    double chi_square = 0.0;
    int dof = 0;
    double chi_square_p = 1.0;
    double max_cell_deviation = 0.0;  // in Poisson sigma units
    int bins_used = 0;
};

/// Density callback on the histogram's (gamma1, gamma2) chart.
using Density2D = std::function<double(double, double)>;

/// The ordered-sector analytic density on the chart matching run_mc's
/// binning for the given configuration; throws for ensembles without an
/// analytic form (e.g. symmetric n >= 3).
Density2D analytic_density_for(const RunConfig& cfg);

/// Bin masses are integrated adaptively (break-line-aware refinement).
/// Chi-square retains bins with expected count >= expected_floor.
ComparisonReport compare(const HistogramGrid& hist, const Density2D& pdf,
                         double expected_floor = 10.0);

/// Adaptive quadrature of Delta(gamma)/(Delta(alpha)Delta(beta)) J_n over the
/// ordered sector; equals 1, 1/2, 1/12 for n = 2, 3, 4.
double normalization_check(const Spectrum& alpha, const Spectrum& beta, double rel_tol = 1e-7);

/// Quadrature of the symmetric n=2 gap density over its support with
/// endpoint substitution for the edge singularities.
double symmetric_n2_normalization(const Spectrum& alpha, const Spectrum& beta);

// ---------------------------------------------------------------------------
// Histogram file format: '#'-prefixed metadata lines, then
// "bin_x_low,bin_y_low,count" rows. Lossless for counts and metadata.

void write_histogram_csv(std::ostream& os, const HistogramGrid& hist);
HistogramGrid read_histogram_csv(std::istream& is);

// ---------------------------------------------------------------------------
// Adaptive quadrature helpers (exposed for reuse and tests)

/// Adaptive Gauss-Kronrod style 1-D quadrature by interval bisection.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double rel_tol = 1e-10, int max_depth = 40);

/// Adaptive integration over a triangle by recursive 4-way subdivision with a
/// degree-5 rule.
double integrate_triangle(const std::function<double(double, double)>& f,
                          const std::array<double, 2>& a, const std::array<double, 2>& b,
                          const std::array<double, 2>& c, double abs_tol, int max_depth = 14);

}  // namespace horn
