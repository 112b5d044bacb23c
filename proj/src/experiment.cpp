#include "horn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace horn {

namespace {

constexpr double kPi = 3.14159265358979323846;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HORN_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

bool is_spectrum_ensemble(EnsembleKind kind) {
    return kind == EnsembleKind::HermitianU || kind == EnsembleKind::SymmetricO;
}

void validate_config(const RunConfig& cfg) {
    if (is_spectrum_ensemble(cfg.ensemble.kind)) {
        if (!cfg.alpha || !cfg.beta)
            throw std::invalid_argument("run config: alpha/beta spectra required");
        if (cfg.alpha->n() != cfg.ensemble.n || cfg.beta->n() != cfg.ensemble.n)
            throw std::invalid_argument("run config: spectrum size does not match ensemble n");
    } else {
        if (!cfg.skew_alpha || !cfg.skew_beta)
            throw std::invalid_argument("run config: skew spectra required");
        if (cfg.skew_alpha->n() != cfg.ensemble.n)
            throw std::invalid_argument("run config: skew spectrum size does not match ensemble n");
        const bool want_special = cfg.ensemble.kind == EnsembleKind::SkewSO;
        if (skew_group_is_special(cfg.skew_alpha->group()) != want_special)
            throw std::invalid_argument("run config: skew group does not match ensemble kind");
    }
}

/// The (x, y) point a sample contributes to the histogram.
/// n=2 charts are 1-D: x = gamma_1 - gamma_2 (or the single block eigenvalue),
/// y = 0 in a unit-height window.
std::pair<double, double> project_sample(const RunConfig& cfg, RngStream& rng,
                                         bool& degenerate) {
    switch (cfg.ensemble.kind) {
        case EnsembleKind::HermitianU: {
            const Spectrum g = sample_gamma_hermitian(*cfg.alpha, *cfg.beta, rng);
            degenerate = g.degenerate();
            if (cfg.ensemble.n == 2) return {g[0] - g[1], 0.0};
            return {g[0], g[1]};
        }
        case EnsembleKind::SymmetricO: {
            const Spectrum g = sample_gamma_symmetric(*cfg.alpha, *cfg.beta, false, rng);
            degenerate = g.degenerate();
            if (cfg.ensemble.n == 2) return {g[0] - g[1], 0.0};
            return {g[0], g[1]};
        }
        case EnsembleKind::SkewO:
        case EnsembleKind::SkewSO: {
            const SkewSpectrum g = sample_gamma_skew(*cfg.skew_alpha, *cfg.skew_beta, rng);
            degenerate = g.degenerate();
            if (g.m() == 1) return {g[0], 0.0};
            return {g[0], g[1]};
        }
    }
    throw std::logic_error("project_sample: unreachable");
}

}  // namespace

double HistogramGrid::density(int ix, int iy) const {
    if (total == 0) return 0.0;
    return static_cast<double>(at(ix, iy)) /
           (static_cast<double>(total) * grid.bin_area());
}

GridSpec support_window(const RunConfig& cfg, int nx, int ny) {
    validate_config(cfg);
    double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
    bool one_d = false;

    if (is_spectrum_ensemble(cfg.ensemble.kind)) {
        const Spectrum& a = *cfg.alpha;
        const Spectrum& b = *cfg.beta;
        const int n = cfg.ensemble.n;
        if (n == 2) {
            const double a12 = a[0] - a[1], b12 = b[0] - b[1];
            xlo = std::abs(a12 - b12);
            xhi = a12 + b12;
            one_d = true;
        } else if (n == 3) {
            const auto bb = polygon_n3(a, b).bounding_box();
            xlo = bb[0];
            xhi = bb[1];
            ylo = bb[2];
            yhi = bb[3];
        } else {
            // generic single-row Horn bounds for gamma_1 and gamma_2
            xhi = a[0] + b[0];
            xlo = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) xlo = std::max(xlo, a[i] + b[n - 1 - i]);
            yhi = std::min(a[0] + b[1], a[1] + b[0]);
            ylo = -std::numeric_limits<double>::infinity();
            for (int i = 1; i < n; ++i) ylo = std::max(ylo, a[i] + b[n - i]);
        }
    } else {
        const SkewSpectrum& a = *cfg.skew_alpha;
        const SkewSpectrum& b = *cfg.skew_beta;
        if (a.m() == 1) {
            const double av = std::abs(a[0]), bv = std::abs(b[0]);
            xlo = std::abs(av - bv);
            xhi = av + bv;
            one_d = true;
        } else if (a.m() == 2) {
            // union of the (s, t) = (g1+g2, g1-g2) interval products
            double g1lo = std::numeric_limits<double>::infinity(), g1hi = -g1lo;
            double g2lo = g1lo, g2hi = -g1lo;
            const bool so = skew_group_is_special(a.group());
            for (double e1 : {1.0, -1.0}) {
                for (double e2 : {1.0, -1.0}) {
                    if (so && (e1 != 1.0 || e2 != 1.0)) continue;
                    const double as = a[0] + e1 * a[1], bs = b[0] + e2 * b[1];
                    const double at = a[0] - e1 * a[1], bt = b[0] - e2 * b[1];
                    const double shi = as + bs, slo = std::abs(as - bs);
                    const double thi = at + bt, tlo = std::abs(at - bt);
                    g1lo = std::min(g1lo, (slo + tlo) / 2.0);
                    g1hi = std::max(g1hi, (shi + thi) / 2.0);
                    g2lo = std::min(g2lo, (slo - thi) / 2.0);
                    g2hi = std::max(g2hi, (shi - tlo) / 2.0);
                }
            }
            xlo = g1lo;
            xhi = g1hi;
            ylo = g2lo;
            yhi = g2hi;
        } else {
            throw std::invalid_argument("support_window: skew m > 2 not supported");
        }
    }

    GridSpec g;
    const double mx = 0.05 * std::max(xhi - xlo, 1e-9);
    g.xmin = xlo - mx;
    g.xmax = xhi + mx;
    g.nx = nx;
    if (one_d) {
        g.ymin = -0.5;
        g.ymax = 0.5;
        g.ny = 1;
    } else {
        const double my = 0.05 * std::max(yhi - ylo, 1e-9);
        g.ymin = ylo - my;
        g.ymax = yhi + my;
        g.ny = ny;
    }
    return g;
}

HistogramGrid run_mc(const RunConfig& cfg) {
    validate_config(cfg);
    if (cfg.n_samples < 1) throw std::invalid_argument("run_mc: n_samples must be >= 1");

    HistogramGrid hist;
    hist.grid = cfg.grid;
    hist.counts.assign(static_cast<size_t>(cfg.grid.nx) * cfg.grid.ny, 0);
    hist.total = cfg.n_samples;
    hist.seed = cfg.seed;
    hist.ensemble = ensemble_name(cfg.ensemble.kind);
    hist.n = cfg.ensemble.n;
    if (is_spectrum_ensemble(cfg.ensemble.kind)) {
        hist.alpha = cfg.alpha->values();
        hist.beta = cfg.beta->values();
    } else {
        hist.alpha = cfg.skew_alpha->values();
        hist.beta = cfg.skew_beta->values();
    }

    const int n_threads = resolve_threads(cfg.threads);
    const double wx = cfg.grid.bin_width_x();
    const double wy = cfg.grid.bin_width_y();

    auto worker = [&](std::uint64_t begin, std::uint64_t end, HistogramGrid& local) {
        for (std::uint64_t k = begin; k < end; ++k) {
            RngStream rng(cfg.seed, k);
            bool degenerate = false;
            const auto [x, y] = project_sample(cfg, rng, degenerate);
            if (degenerate) ++local.degenerate_samples;
            const double fx = (x - cfg.grid.xmin) / wx;
            const double fy = (y - cfg.grid.ymin) / wy;
            const int ix = static_cast<int>(std::floor(fx));
            const int iy = static_cast<int>(std::floor(fy));
            if (ix < 0 || ix >= cfg.grid.nx || iy < 0 || iy >= cfg.grid.ny)
                ++local.overflow;
            else
                ++local.at(ix, iy);
        }
    };

    if (n_threads <= 1 || cfg.n_samples < 1000) {
        worker(0, cfg.n_samples, hist);
        return hist;
    }

    std::vector<HistogramGrid> shards(static_cast<size_t>(n_threads));
    std::vector<std::thread> threads;
    const std::uint64_t chunk = cfg.n_samples / static_cast<std::uint64_t>(n_threads);
    for (int t = 0; t < n_threads; ++t) {
        shards[static_cast<size_t>(t)].grid = cfg.grid;
        shards[static_cast<size_t>(t)].counts.assign(hist.counts.size(), 0);
        const std::uint64_t begin = chunk * static_cast<std::uint64_t>(t);
        const std::uint64_t end =
            (t == n_threads - 1) ? cfg.n_samples : begin + chunk;
        threads.emplace_back(worker, begin, end, std::ref(shards[static_cast<size_t>(t)]));
    }
    for (auto& th : threads) th.join();
    for (const auto& shard : shards) {
        for (size_t i = 0; i < hist.counts.size(); ++i) hist.counts[i] += shard.counts[i];
        hist.overflow += shard.overflow;
        hist.degenerate_samples += shard.degenerate_samples;
    }
    return hist;
}

Density2D analytic_density_for(const RunConfig& cfg) {
    validate_config(cfg);
    switch (cfg.ensemble.kind) {
        case EnsembleKind::HermitianU: {
            const int n = cfg.ensemble.n;
            if (n == 2) {
                const Spectrum a = *cfg.alpha, b = *cfg.beta;
                const double a12 = a[0] - a[1], b12 = b[0] - b[1];
                const double lo = std::abs(a12 - b12), hi = a12 + b12;
                return [=](double x, double) {
                    return (x > lo && x < hi) ? x / (2.0 * a12 * b12) : 0.0;
                };
            }
            if (n == 3) {
                const Spectrum a = *cfg.alpha, b = *cfg.beta;
                return [=](double g1, double g2) {
                    return pdf_hermitian(a, b, {g1, g2}, /*ordered_sector=*/true).value;
                };
            }
            throw std::invalid_argument(
                "analytic_density_for: 2-D projection of the Hermitian n=4 density is not "
                "available; use normalization_check / support tests");
        }
        case EnsembleKind::SymmetricO: {
            if (cfg.ensemble.n != 2)
                throw std::invalid_argument(
                    "analytic_density_for: no analytic symmetric density for n >= 3");
            const Spectrum a = *cfg.alpha, b = *cfg.beta;
            return [=](double x, double) { return pdf_symmetric_n2(a, b, x).value; };
        }
        case EnsembleKind::SkewO:
        case EnsembleKind::SkewSO: {
            const SkewSpectrum a = *cfg.skew_alpha, b = *cfg.skew_beta;
            if (a.m() == 1 && !skew_group_is_even(a.group())) {
                return [=](double x, double) {
                    return x <= 0.0 ? 0.0
                                    : skew_canonical_fold(a) * pdf_skew(a, b, {x}).value;
                };
            }
            if (a.m() == 2) {
                // The plane formula is Weyl invariant; the sampler only emits
                // canonical representatives, so gate to that sector.
                const bool so = a.group() == SkewGroup::SO_even;
                return [=](double g1, double g2) {
                    const bool canonical = so ? g1 >= std::abs(g2) : g1 >= g2 && g2 >= 0.0;
                    if (!canonical) return 0.0;
                    const DensityValue dv = pdf_skew(a, b, {g1, g2});
                    return skew_canonical_fold(a) * std::max(dv.value, 0.0);
                };
            }
            throw std::invalid_argument(
                "analytic_density_for: skew case is pure point (n=2) or out of scope (n>=5)");
        }
    }
    throw std::logic_error("analytic_density_for: unreachable");
}

namespace {

// 2-point Gauss-Legendre nodes on [0,1]
constexpr double kG2a = 0.21132486540518711775;
constexpr double kG2b = 0.78867513459481288225;

double gauss2_mass(const Density2D& f, double x0, double x1, double y0, double y1) {
    const double dx = x1 - x0, dy = y1 - y0;
    double s = 0.0;
    for (double u : {kG2a, kG2b})
        for (double v : {kG2a, kG2b}) s += f(x0 + u * dx, y0 + v * dy);
    return s * 0.25 * dx * dy;
}

double adaptive_mass(const Density2D& f, double x0, double x1, double y0, double y1,
                     double abs_tol, int depth) {
    const double whole = gauss2_mass(f, x0, x1, y0, y1);
    const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    const double parts = gauss2_mass(f, x0, xm, y0, ym) + gauss2_mass(f, xm, x1, y0, ym) +
                         gauss2_mass(f, x0, xm, ym, y1) + gauss2_mass(f, xm, x1, ym, y1);
    if (depth <= 0 || std::abs(whole - parts) <= abs_tol) return parts;
    const double child_tol = abs_tol / 2.0;
    return adaptive_mass(f, x0, xm, y0, ym, child_tol, depth - 1) +
           adaptive_mass(f, xm, x1, y0, ym, child_tol, depth - 1) +
           adaptive_mass(f, x0, xm, ym, y1, child_tol, depth - 1) +
           adaptive_mass(f, xm, x1, ym, y1, child_tol, depth - 1);
}

// Regularized upper incomplete gamma Q(a, x), for the chi-square tail.
double upper_gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) return 1.0;
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) {
        // series for P(a,x)
        double term = 1.0 / a, sum = term, ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return 1.0 - p;
    }
    // continued fraction for Q(a,x)
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

ComparisonReport compare(const HistogramGrid& hist, const Density2D& pdf,
                         double expected_floor) {
    if (hist.total == 0) throw std::invalid_argument("compare: empty histogram");
    ComparisonReport rep;
    const GridSpec& g = hist.grid;
    const double wx = g.bin_width_x(), wy = g.bin_width_y();
    const double total = static_cast<double>(hist.total);

    double ana_sum = 0.0;
    double l1 = 0.0;
    for (int iy = 0; iy < g.ny; ++iy) {
        const double y0 = g.ymin + iy * wy;
        for (int ix = 0; ix < g.nx; ++ix) {
            const double x0 = g.xmin + ix * wx;
            const double ana =
                adaptive_mass(pdf, x0, x0 + wx, y0, y0 + wy, 1e-7, 8);
            const double emp = static_cast<double>(hist.at(ix, iy)) / total;
            ana_sum += ana;
            l1 += std::abs(emp - ana);
            const double expected = ana * total;
            if (expected >= expected_floor) {
                const double dev = (static_cast<double>(hist.at(ix, iy)) - expected);
                rep.chi_square += dev * dev / expected;
                rep.max_cell_deviation =
                    std::max(rep.max_cell_deviation, std::abs(dev) / std::sqrt(expected));
                ++rep.bins_used;
            }
        }
    }
    l1 += static_cast<double>(hist.overflow) / total;
    l1 += std::max(0.0, 1.0 - ana_sum);
    rep.l1_distance = l1;
    rep.dof = std::max(rep.bins_used - 1, 1);
    rep.chi_square_p = upper_gamma_q(rep.dof / 2.0, rep.chi_square / 2.0);
    return rep;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b, double rel_tol,
                    int max_depth) {
    // 5-point Gauss-Legendre (open rule: endpoints never evaluated)
    static const double nodes[5] = {-0.90617984593866399280, -0.53846931010568309104, 0.0,
                                    0.53846931010568309104, 0.90617984593866399280};
    static const double weights[5] = {0.23692688505618908751, 0.47862867049936646804,
                                      0.56888888888888888889, 0.47862867049936646804,
                                      0.23692688505618908751};
    auto g5 = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        double s = 0.0;
        for (int i = 0; i < 5; ++i) s += weights[i] * f(c + h * nodes[i]);
        return s * h;
    };
    std::function<double(double, double, double, int)> rec = [&](double lo, double hi,
                                                                 double whole, int depth) {
        const double mid = 0.5 * (lo + hi);
        const double left = g5(lo, mid), right = g5(mid, hi);
        if (depth <= 0 ||
            std::abs(left + right - whole) <= rel_tol * std::max(std::abs(left + right), 1e-12))
            return left + right;
        return rec(lo, mid, left, depth - 1) + rec(mid, hi, right, depth - 1);
    };
    return rec(a, b, g5(a, b), max_depth);
}

namespace {

// degree-5 7-point rule
double triangle_rule_deg5(const std::function<double(double, double)>& f,
                          const std::array<double, 2>& p, const std::array<double, 2>& q,
                          const std::array<double, 2>& r) {
    static const double w0 = 0.225;
    static const double wa = 0.13239415278850618074;
    static const double wb = 0.12593918054482715260;
    static const double la = 0.05971587178976982045;  // and (1-la)/2
    static const double lb = 0.79742698535308732240;  // and (1-lb)/2
    const double area =
        0.5 * std::abs((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]));
    auto eval = [&](double l1, double l2, double l3) {
        return f(l1 * p[0] + l2 * q[0] + l3 * r[0], l1 * p[1] + l2 * q[1] + l3 * r[1]);
    };
    double s = w0 * eval(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
    const double ma = (1.0 - la) / 2.0;
    s += wa * (eval(la, ma, ma) + eval(ma, la, ma) + eval(ma, ma, la));
    const double mb = (1.0 - lb) / 2.0;
    s += wb * (eval(lb, mb, mb) + eval(mb, lb, mb) + eval(mb, mb, lb));
    return s * area;
}

}  // namespace

double integrate_triangle(const std::function<double(double, double)>& f,
                          const std::array<double, 2>& a, const std::array<double, 2>& b,
                          const std::array<double, 2>& c, double abs_tol, int max_depth) {
    auto rule = [&](const std::array<double, 2>& p, const std::array<double, 2>& q,
                    const std::array<double, 2>& r) { return triangle_rule_deg5(f, p, q, r); };
    std::function<double(const std::array<double, 2>&, const std::array<double, 2>&,
                         const std::array<double, 2>&, double, double, int)>
        rec = [&](const std::array<double, 2>& p, const std::array<double, 2>& q,
                  const std::array<double, 2>& r, double whole, double tol, int depth) {
            const std::array<double, 2> pq = {0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
            const std::array<double, 2> qr = {0.5 * (q[0] + r[0]), 0.5 * (q[1] + r[1])};
            const std::array<double, 2> rp = {0.5 * (r[0] + p[0]), 0.5 * (r[1] + p[1])};
            const double s1 = rule(p, pq, rp), s2 = rule(pq, q, qr), s3 = rule(rp, qr, r),
                         s4 = rule(pq, qr, rp);
            const double sum = s1 + s2 + s3 + s4;
            if (depth <= 0 || std::abs(sum - whole) <= tol) return sum;
            const double ct = tol / 4.0;
            return rec(p, pq, rp, s1, ct, depth - 1) + rec(pq, q, qr, s2, ct, depth - 1) +
                   rec(rp, qr, r, s3, ct, depth - 1) + rec(pq, qr, rp, s4, ct, depth - 1);
        };
    return rec(a, b, c, rule(a, b, c), abs_tol, max_depth);
}

namespace {

double normalization_n4(const Spectrum& alpha, const Spectrum& beta, double rel_tol) {
    const double s = alpha.sum() + beta.sum();
    const double a1 = alpha[0], a2 = alpha[1], a3 = alpha[2], a4 = alpha[3];
    const double b1 = beta[0], b2 = beta[1], b3 = beta[2], b4 = beta[3];
    const double g1lo = std::max({a1 + b4, a2 + b3, a3 + b2, a4 + b1});
    const double g1hi = a1 + b1;
    const double g2lo = std::max({a2 + b4, a3 + b3, a4 + b2});
    const double g2hi = std::min(a1 + b2, a2 + b1);
    const double g3lo = std::max(a3 + b4, a4 + b3);
    const double g3hi = std::min({a1 + b3, a2 + b2, a3 + b1});

    std::vector<double> av = alpha.values(), bv = beta.values();
    const double denom = vandermonde(av) * vandermonde(bv);
    const double tol = support_tolerance(std::max(alpha.scale(), beta.scale()));

    auto integrand = [&](double g1, double g2, double g3) {
        const double g4 = s - g1 - g2 - g3;
        if (!(g1 >= g2 && g2 >= g3 && g3 >= g4)) return 0.0;
        const Spectrum g = Spectrum::unchecked({g1, g2, g3, g4});
        const SupportVerdict v = check_horn_n4(alpha, beta, g, tol);
        if (!v.inside) return 0.0;
        std::vector<double> gv = g.values();
        return vandermonde(gv) / denom * j4_signed_sum(alpha, beta, g);
    };

    auto composite = [&](int n) {
        const double hx = (g1hi - g1lo) / n, hy = (g2hi - g2lo) / n, hz = (g3hi - g3lo) / n;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x0 = g1lo + i * hx;
            for (int j = 0; j < n; ++j) {
                const double y0 = g2lo + j * hy;
                for (int k = 0; k < n; ++k) {
                    const double z0 = g3lo + k * hz;
                    for (double u : {kG2a, kG2b})
                        for (double v : {kG2a, kG2b})
                            for (double w : {kG2a, kG2b})
                                sum += integrand(x0 + u * hx, y0 + v * hy, z0 + w * hz);
                }
            }
        }
        return sum * hx * hy * hz / 8.0;
    };

    double prev = composite(12);
    for (int n : {18, 27, 40}) {
        const double cur = composite(n);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

double normalization_check(const Spectrum& alpha, const Spectrum& beta, double rel_tol) {
    const int n = alpha.n();
    if (beta.n() != n) throw std::invalid_argument("normalization_check: size mismatch");
    switch (n) {
        case 2: {
            const double a12 = alpha[0] - alpha[1], b12 = beta[0] - beta[1];
            const double s = alpha.sum() + beta.sum();
            const double lo = std::abs(a12 - b12), hi = a12 + b12;
            auto f = [&](double g1) {
                const double g12 = 2.0 * g1 - s;
                return g12 / (a12 * b12);
            };
            return integrate_1d(f, (s + lo) / 2.0, (s + hi) / 2.0, rel_tol);
        }
        case 3: {
            // The kernel is max(lo_i) .. min(hi_j) of linear forms, so on each
            // cell where one (i, j) pair is active the integrand is a degree-4
            // polynomial and the degree-5 triangle rule is exact. Decompose the
            // support polygon into those cells by half-plane clipping.
            const PolygonN3 poly = polygon_n3(alpha, beta);
            std::vector<double> av = alpha.values(), bv = beta.values();
            const double denom = vandermonde(av) * vandermonde(bv);
            const double s = alpha.sum() + beta.sum();
            const double a1 = alpha[0], a2 = alpha[1], a3 = alpha[2];
            const double b1 = beta[0], b2 = beta[1], b3 = beta[2];
            using Lin = std::array<double, 3>;  // c0 + c1 g1 + c2 g2
            std::vector<Lin> lov = {{a1, -1.0, 1.0},          {s - b3, -1.0, -1.0},
                                    {a2, 0.0, 0.0},           {-b2, 0.0, 1.0},
                                    {a1 + a3 + b1, -1.0, 0.0}, {a1 + a2 + b2, -1.0, 0.0}};
            std::vector<Lin> hiv = {{a1, 0.0, 0.0}, {-b3, 0.0, 1.0}, {a1 + a2 + b1, -1.0, 0.0}};
            auto dedupe = [](std::vector<Lin>& v) {
                std::vector<Lin> out;
                for (const auto& l : v) {
                    bool dup = false;
                    for (const auto& o : out)
                        dup = dup || (std::abs(l[0] - o[0]) < 1e-12 &&
                                      std::abs(l[1] - o[1]) < 1e-12 &&
                                      std::abs(l[2] - o[2]) < 1e-12);
                    if (!dup) out.push_back(l);
                }
                v = out;
            };
            dedupe(lov);
            dedupe(hiv);
            using Pt = std::array<double, 2>;
            auto clip = [](std::vector<Pt> pts, const Lin& h) {
                std::vector<Pt> out;
                const size_t np = pts.size();
                auto val = [&](const Pt& p) { return h[0] + h[1] * p[0] + h[2] * p[1]; };
                for (size_t i = 0; i < np; ++i) {
                    const Pt& p = pts[i];
                    const Pt& q = pts[(i + 1) % np];
                    const double vp = val(p), vq = val(q);
                    if (vp >= 0.0) out.push_back(p);
                    if ((vp > 0.0 && vq < 0.0) || (vp < 0.0 && vq > 0.0)) {
                        const double t = vp / (vp - vq);
                        out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
                    }
                }
                return out;
            };
            double total = 0.0;
            for (size_t i = 0; i < lov.size(); ++i) {
                for (size_t j = 0; j < hiv.size(); ++j) {
                    std::vector<Pt> cell = poly.vertices;
                    for (size_t k = 0; k < lov.size() && cell.size() >= 3; ++k)
                        if (k != i)
                            cell = clip(cell, {lov[i][0] - lov[k][0], lov[i][1] - lov[k][1],
                                               lov[i][2] - lov[k][2]});
                    for (size_t l = 0; l < hiv.size() && cell.size() >= 3; ++l)
                        if (l != j)
                            cell = clip(cell, {hiv[l][0] - hiv[j][0], hiv[l][1] - hiv[j][1],
                                               hiv[l][2] - hiv[j][2]});
                    if (cell.size() >= 3)
                        cell = clip(cell, {hiv[j][0] - lov[i][0], hiv[j][1] - lov[i][1],
                                           hiv[j][2] - lov[i][2]});
                    if (cell.size() < 3) continue;
                    auto f = [&](double g1, double g2) {
                        const double g3 = s - g1 - g2;
                        const double len = (hiv[j][0] - lov[i][0]) + (hiv[j][1] - lov[i][1]) * g1 +
                                           (hiv[j][2] - lov[i][2]) * g2;
                        const double vdm = (g1 - g2) * (g1 - g3) * (g2 - g3);
                        return vdm / denom * len;
                    };
                    for (size_t k = 1; k + 1 < cell.size(); ++k)
                        total += triangle_rule_deg5(f, cell[0], cell[k], cell[k + 1]);
                }
            }
            (void)rel_tol;
            return total;
        }
        case 4: return normalization_n4(alpha, beta, std::max(rel_tol, 1e-5));
        default:
            throw std::invalid_argument("normalization_check: only n = 2, 3, 4 supported");
    }
}

double symmetric_n2_normalization(const Spectrum& alpha, const Spectrum& beta) {
    const double a12 = alpha[0] - alpha[1], b12 = beta[0] - beta[1];
    const double m = std::abs(a12 - b12), M = a12 + b12;
    // gamma = sqrt(m^2 + (M^2 - m^2) sin^2 phi) turns the edge singularities
    // into a bounded integrand on (0, pi/2); Gauss nodes avoid the endpoints.
    auto f = [&](double phi) {
        const double sp = std::sin(phi);
        const double g = std::sqrt(m * m + (M * M - m * m) * sp * sp);
        const double dg = (M * M - m * m) * sp * std::cos(phi) / g;
        return pdf_symmetric_n2(alpha, beta, g).value * dg;
    };
    return integrate_1d(f, 0.0, kPi / 2.0, 1e-10);
}

// ---------------------------------------------------------------------------
// Histogram CSV

void write_histogram_csv(std::ostream& os, const HistogramGrid& hist) {
    os.precision(17);
    os << "# ensemble " << hist.ensemble << "\n";
    os << "# n " << hist.n << "\n";
    os << "# alpha";
    for (double a : hist.alpha) os << " " << a;
    os << "\n# beta";
    for (double b : hist.beta) os << " " << b;
    os << "\n# seed " << hist.seed << "\n";
    os << "# total " << hist.total << "\n";
    os << "# overflow " << hist.overflow << "\n";
    os << "# degenerate " << hist.degenerate_samples << "\n";
    os << "# grid " << hist.grid.xmin << " " << hist.grid.xmax << " " << hist.grid.nx << " "
       << hist.grid.ymin << " " << hist.grid.ymax << " " << hist.grid.ny << "\n";
    os << "bin_x_low,bin_y_low,count\n";
    for (int iy = 0; iy < hist.ny(); ++iy) {
        for (int ix = 0; ix < hist.nx(); ++ix) {
            os << hist.grid.xmin + ix * hist.grid.bin_width_x() << ","
               << hist.grid.ymin + iy * hist.grid.bin_width_y() << "," << hist.at(ix, iy)
               << "\n";
        }
    }
}

HistogramGrid read_histogram_csv(std::istream& is) {
    HistogramGrid hist;
    std::string line;
    bool have_grid = false;
    std::vector<std::uint64_t> counts;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "ensemble") ls >> hist.ensemble;
            else if (key == "n") ls >> hist.n;
            else if (key == "alpha") {
                double v;
                while (ls >> v) hist.alpha.push_back(v);
            } else if (key == "beta") {
                double v;
                while (ls >> v) hist.beta.push_back(v);
            } else if (key == "seed") ls >> hist.seed;
            else if (key == "total") ls >> hist.total;
            else if (key == "overflow") ls >> hist.overflow;
            else if (key == "degenerate") ls >> hist.degenerate_samples;
            else if (key == "grid") {
                ls >> hist.grid.xmin >> hist.grid.xmax >> hist.grid.nx >> hist.grid.ymin >>
                    hist.grid.ymax >> hist.grid.ny;
                have_grid = true;
            }
            continue;
        }
        if (line.rfind("bin_x_low", 0) == 0) continue;
        const size_t c1 = line.find(','), c2 = line.rfind(',');
        if (c1 == std::string::npos || c2 == c1) continue;
        counts.push_back(std::stoull(line.substr(c2 + 1)));
    }
    if (!have_grid) throw std::runtime_error("read_histogram_csv: missing grid metadata");
    if (counts.size() != static_cast<size_t>(hist.grid.nx) * hist.grid.ny)
        throw std::runtime_error("read_histogram_csv: count rows do not match grid");
    hist.counts = std::move(counts);
    return hist;
}

}  // namespace horn
