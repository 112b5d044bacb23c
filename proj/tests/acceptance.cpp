// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds are fixed here, not tuned per run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <thread>
#include <vector>

#include "horn/analytic.hpp"
#include "horn/experiment.hpp"
#include "horn/sampling.hpp"
#include "horn/support.hpp"

using namespace horn;

namespace {

int failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %d %-34s %s  %s\n", index, name, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Spectrum random_strict(int n, RngStream& rng, double min_gap = 0.15) {
    std::vector<double> v(static_cast<size_t>(n));
    for (double& x : v) x = 4.0 * rng.uniform() - 2.0;
    std::sort(v.begin(), v.end(), std::greater<double>());
    for (int i = 1; i < n; ++i)
        if (v[static_cast<size_t>(i - 1)] - v[static_cast<size_t>(i)] < min_gap)
            v[static_cast<size_t>(i)] = v[static_cast<size_t>(i - 1)] - min_gap;
    return Spectrum(v);
}

// 1. Normalization constants for >= 5 random strict spectra pairs per n.
void criterion_normalization() {
    RngStream rng(101, 0);
    const double targets[3] = {1.0, 0.5, 1.0 / 12.0};
    const double tols[3] = {1e-8, 1e-6, 1e-4};
    double worst[3] = {0.0, 0.0, 0.0};
    bool pass = true;
    for (int n = 2; n <= 4; ++n) {
        for (int pair = 0; pair < 5; ++pair) {
            const Spectrum a = random_strict(n, rng), b = random_strict(n, rng);
            const double value = normalization_check(a, b, n == 4 ? 1e-5 : 1e-8);
            const double err = std::abs(value - targets[n - 2]);
            worst[n - 2] = std::max(worst[n - 2], err);
            pass = pass && err < tols[n - 2];
        }
    }
    report(1, "normalization 1, 1/2, 1/12", pass,
           "max err n=2:" + fmt(worst[0]) + " n=3:" + fmt(worst[1]) + " n=4:" + fmt(worst[2]));
}

// 2. n=2 Hermitian gap CDF at alpha12=1, beta12=2: KS < 0.002 at 1e6 samples.
void criterion_n2_exactness() {
    const Spectrum alpha({1.0, 0.0}), beta({2.0, 0.0});
    const std::uint64_t n = 1000000;
    std::vector<double> gaps(n);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> workers;
    const std::uint64_t chunk = n / hw;
    for (unsigned t = 0; t < hw; ++t) {
        const std::uint64_t lo = chunk * t, hi = (t + 1 == hw) ? n : lo + chunk;
        workers.emplace_back([&, lo, hi] {
            for (std::uint64_t k = lo; k < hi; ++k) {
                RngStream rng(202, k);
                const Spectrum g = sample_gamma_hermitian(alpha, beta, rng);
                gaps[k] = g[0] - g[1];
            }
        });
    }
    for (auto& w : workers) w.join();
    std::sort(gaps.begin(), gaps.end());
    // analytic CDF of the gap on (1, 3): F(g) = (g^2 - 1)/8
    double ks = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double g = std::clamp(gaps[i], 1.0, 3.0);
        const double f = (g * g - 1.0) / 8.0;
        const double e_hi = static_cast<double>(i + 1) / static_cast<double>(n);
        const double e_lo = static_cast<double>(i) / static_cast<double>(n);
        ks = std::max({ks, std::abs(e_hi - f), std::abs(e_lo - f)});
    }
    report(2, "n=2 hermitian gap CDF", ks < 0.002, "KS = " + fmt(ks));
}

// 3. Six n=3 spectra pairs: L1 < 0.02 and no retained bin beyond 5 sigma at 1e6.
void criterion_n3_figures() {
    const std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs = {
        {{2.0, 1.2, 1.0}, {2.0, 1.6, 1.0}},       {{1.55, 1.5, 1.0}, {2.0, 1.5, -3.5}},
        {{1.5, 1.0, -2.0}, {2.0, 1.5, -3.5}},     {{2.0, 1.99, -0.5}, {1.5, -1.0, -2.0}},
        {{2.0, 1.5, 1.0}, {2.0, 1.5, -4.0}},      {{1.5, 1.49, -3.0}, {1.6, 1.2, 0.2}}};
    bool pass = true;
    std::string detail;
    int index = 0;
    for (const auto& [av, bv] : pairs) {
        RunConfig cfg;
        cfg.ensemble = Ensemble(EnsembleKind::HermitianU, 3);
        cfg.alpha = Spectrum(av);
        cfg.beta = Spectrum(bv);
        cfg.n_samples = 1000000;
        cfg.seed = 303 + static_cast<std::uint64_t>(index);
        cfg.grid = support_window(cfg, 25, 25);
        const ComparisonReport rep = compare(run_mc(cfg), analytic_density_for(cfg));
        const bool ok = rep.l1_distance < 0.02 && rep.max_cell_deviation < 5.0;
        pass = pass && ok;
        detail += fmt(rep.l1_distance) + (ok ? " " : "! ");
        ++index;
    }
    report(3, "n=3 hermitian histograms", pass, "L1 per pair: " + detail);
}

// 4. |J3 - max(xi length, 0)| < 1e-10, 1e4 points x 20 random pairs.
void criterion_spline_honeycomb() {
    RngStream rng(404, 0);
    double worst = 0.0;
    for (int pair = 0; pair < 20; ++pair) {
        const Spectrum a = random_strict(3, rng, 0.05), b = random_strict(3, rng, 0.05);
        const double s = a.sum() + b.sum();
        for (int pt = 0; pt < 10000; ++pt) {
            const double g1 = a[0] + b[0] + 0.5 - 5.0 * rng.uniform();
            const double g2 = g1 - 4.0 * rng.uniform();
            const double g3 = s - g1 - g2;
            if (!(g2 > g3)) continue;
            const Spectrum g = Spectrum::unchecked({g1, g2, g3});
            const auto [lo, hi] = xi_interval(a, b, g);
            worst = std::max(worst,
                             std::abs(j3_signed_sum(a, b, g) - std::max(hi - lo, 0.0)));
        }
    }
    report(4, "spline = honeycomb length", worst < 1e-10, "max |diff| = " + fmt(worst));
}

// 5. 1e5 hermitian samples for n = 2, 3, 4 all inside with margin >= -1e-8.
void criterion_support_containment() {
    const std::vector<std::pair<std::vector<double>, std::vector<double>>> spectra = {
        {{1.0, -0.3}, {0.7, 0.0}},
        {{1.5, 1.0, -2.0}, {2.0, 1.5, -3.5}},
        {{2.0, 1.0, 0.0, -3.0}, {1.0, 0.0, -0.4, -0.6}}};
    bool pass = true;
    double worst = 0.0;
    for (const auto& [av, bv] : spectra) {
        const Spectrum alpha(av), beta(bv);
        const std::uint64_t n = 100000;
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        std::vector<double> worst_local(hw, 0.0);
        std::vector<std::thread> workers;
        const std::uint64_t chunk = n / hw;
        for (unsigned t = 0; t < hw; ++t) {
            const std::uint64_t lo = chunk * t, hi = (t + 1 == hw) ? n : lo + chunk;
            workers.emplace_back([&, t, lo, hi] {
                for (std::uint64_t k = lo; k < hi; ++k) {
                    RngStream rng(505, k);
                    const Spectrum g = sample_gamma_hermitian(alpha, beta, rng);
                    const SupportVerdict v = check_horn(alpha, beta, g);
                    if (!v.inside) worst_local[t] = std::min(worst_local[t], v.margin);
                }
            });
        }
        for (auto& w : workers) w.join();
        for (double wl : worst_local) worst = std::min(worst, wl);
        pass = pass && worst >= -1e-8;
    }
    report(5, "MC support containment", pass, "worst margin = " + fmt(worst));
}

// 6. hciz within 5 SE of the MC orbital average, 10 random (alpha, x), n = 2, 3.
void criterion_hciz_oracle() {
    RngStream spec_rng(606, 0);
    bool pass = true;
    double worst_ratio = 0.0;
    for (int n = 2; n <= 3; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const Spectrum alpha = random_strict(n, spec_rng, 0.2);
            std::vector<double> x = random_strict(n, spec_rng, 0.2).values();
            const std::complex<double> exact = hciz_unitary(alpha, x);
            Eigen::MatrixXcd da = Eigen::MatrixXcd::Zero(n, n);
            for (int i = 0; i < n; ++i) da(i, i) = alpha[i];
            const int n_mc = 100000;
            double sum_re = 0.0, sum_im = 0.0, sq_re = 0.0, sq_im = 0.0;
            for (int k = 0; k < n_mc; ++k) {
                RngStream rng(707 + static_cast<std::uint64_t>(trial),
                              static_cast<std::uint64_t>(k) + 1000000ULL * n);
                const Eigen::MatrixXcd u = haar_unitary(n, rng);
                const Eigen::MatrixXcd m = u * da * u.adjoint();
                std::complex<double> tr = 0.0;
                for (int i = 0; i < n; ++i) tr += x[static_cast<size_t>(i)] * m(i, i);
                const std::complex<double> v = std::exp(std::complex<double>(0.0, 1.0) * tr);
                sum_re += v.real();
                sum_im += v.imag();
                sq_re += v.real() * v.real();
                sq_im += v.imag() * v.imag();
            }
            const double mean_re = sum_re / n_mc, mean_im = sum_im / n_mc;
            const double se_re =
                std::sqrt(std::max(sq_re / n_mc - mean_re * mean_re, 1e-30) / n_mc);
            const double se_im =
                std::sqrt(std::max(sq_im / n_mc - mean_im * mean_im, 1e-30) / n_mc);
            const double r_re = std::abs(mean_re - exact.real()) / se_re;
            const double r_im = std::abs(mean_im - exact.imag()) / se_im;
            worst_ratio = std::max({worst_ratio, r_re, r_im});
            pass = pass && r_re < 5.0 && r_im < 5.0;
        }
    }
    report(6, "orbital integral vs MC", pass, "worst deviation = " + fmt(worst_ratio) + " SE");
}

// 7. Skew cases: SO(2) atom, SO(4) L1 < 0.03 at 1e6, O(4) non-convex support.
void criterion_skew() {
    bool atom_ok = true;
    {
        const SkewSpectrum a({1.25}, SkewGroup::SO_even), b({0.75}, SkewGroup::SO_even);
        for (int k = 0; k < 1000; ++k) {
            RngStream rng(808, static_cast<std::uint64_t>(k));
            atom_ok = atom_ok && std::abs(sample_gamma_skew(a, b, rng)[0] - 2.0) < 1e-9;
        }
    }

    RunConfig so4;
    so4.ensemble = Ensemble(EnsembleKind::SkewSO, 4);
    so4.skew_alpha = SkewSpectrum({2.0, 1.0}, SkewGroup::SO_even);
    so4.skew_beta = SkewSpectrum({1.0, 0.5}, SkewGroup::SO_even);
    so4.n_samples = 1000000;
    so4.seed = 809;
    so4.grid = support_window(so4, 25, 25);
    const ComparisonReport rep = compare(run_mc(so4), analytic_density_for(so4));
    const bool so4_ok = rep.l1_distance < 0.03;

    // O(4): two sampled support points whose midpoint has zero density
    RunConfig o4;
    o4.ensemble = Ensemble(EnsembleKind::SkewO, 4);
    o4.skew_alpha = SkewSpectrum({2.0, 1.0}, SkewGroup::O_even);
    o4.skew_beta = SkewSpectrum({1.0, 0.5}, SkewGroup::O_even);
    const Density2D o4_pdf = analytic_density_for(o4);
    const std::array<double, 2> p = {1.4, 0.4}, q = {2.5, 0.1};
    bool near_p = false, near_q = false;
    for (int k = 0; k < 200000 && !(near_p && near_q); ++k) {
        RngStream rng(810, static_cast<std::uint64_t>(k));
        const SkewSpectrum g = sample_gamma_skew(*o4.skew_alpha, *o4.skew_beta, rng);
        near_p = near_p || (std::abs(g[0] - p[0]) < 0.05 && std::abs(g[1] - p[1]) < 0.05);
        near_q = near_q || (std::abs(g[0] - q[0]) < 0.05 && std::abs(g[1] - q[1]) < 0.05);
    }
    const double mid_x = 0.5 * (p[0] + q[0]), mid_y = 0.5 * (p[1] + q[1]);
    const bool nonconvex_ok = near_p && near_q && o4_pdf(mid_x, mid_y) == 0.0;

    report(7, "skew SO(2)/SO(4)/O(4)", atom_ok && so4_ok && nonconvex_ok,
           "atom " + std::string(atom_ok ? "ok" : "FAIL") + ", SO(4) L1 = " +
               fmt(rep.l1_distance) + ", non-convex witness " +
               (nonconvex_ok ? "ok" : "FAIL"));
}

// 8. Symmetric n=2 quadrature = 1 +- 1e-8 for 10 random spectra.
void criterion_symmetric_normalization() {
    RngStream rng(909, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Spectrum a = random_strict(2, rng), b = random_strict(2, rng);
        worst = std::max(worst, std::abs(symmetric_n2_normalization(a, b) - 1.0));
    }
    report(8, "symmetric n=2 quadrature", worst < 1e-8, "max |mass - 1| = " + fmt(worst));
}

// 9. Symmetric n=3 ridges: top-decile bins concentrate on the overlay lines.
void criterion_enhancement_ridges() {
    RunConfig cfg;
    cfg.ensemble = Ensemble(EnsembleKind::SymmetricO, 3);
    cfg.alpha = Spectrum({1.0, 0.0, -1.0});
    cfg.beta = Spectrum({1.0, 0.0, -1.0});
    cfg.n_samples = 1000000;
    cfg.seed = 910;
    cfg.grid = support_window(cfg, 100, 100);
    const HistogramGrid hist = run_mc(cfg);

    const auto lines = enhancement_lines_n3(*cfg.alpha, *cfg.beta);
    const double wx = cfg.grid.bin_width_x(), wy = cfg.grid.bin_width_y();

    auto segment_distance = [&](double x, double y) {
        double best = 1e300;
        for (const Segment& seg : lines) {
            const double dx = seg.b[0] - seg.a[0], dy = seg.b[1] - seg.a[1];
            const double len2 = dx * dx + dy * dy;
            double t = len2 > 0 ? ((x - seg.a[0]) * dx + (y - seg.a[1]) * dy) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const double px = seg.a[0] + t * dx - x, py = seg.a[1] + t * dy - y;
            // distance in bin units
            best = std::min(best, std::hypot(px / wx, py / wy));
        }
        return best;
    };

    std::vector<std::uint64_t> occupied;
    for (std::uint64_t c : hist.counts)
        if (c > 0) occupied.push_back(c);
    std::sort(occupied.begin(), occupied.end());
    const std::uint64_t cutoff = occupied[occupied.size() - occupied.size() / 10];

    int top = 0, near = 0;
    for (int iy = 0; iy < hist.ny(); ++iy) {
        for (int ix = 0; ix < hist.nx(); ++ix) {
            if (hist.at(ix, iy) < cutoff) continue;
            ++top;
            const double x = cfg.grid.xmin + (ix + 0.5) * wx;
            const double y = cfg.grid.ymin + (iy + 0.5) * wy;
            if (segment_distance(x, y) <= 2.0) ++near;
        }
    }
    const double frac = top > 0 ? static_cast<double>(near) / top : 0.0;
    report(9, "symmetric n=3 ridges", frac >= 0.6,
           fmt(100.0 * frac) + "% of " + std::to_string(top) + " top-decile bins on overlay");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_normalization();
    criterion_n2_exactness();
    criterion_n3_figures();
    criterion_spline_honeycomb();
    criterion_support_containment();
    criterion_hciz_oracle();
    criterion_skew();
    criterion_symmetric_normalization();
    criterion_enhancement_ridges();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/9 criteria passed in %.1f s\n", 9 - failures, secs);
    return failures == 0 ? 0 : 1;
}
