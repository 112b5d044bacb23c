#include "horn/analytic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace horn {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sgn0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// Indicator of (lo, hi) with value 1/2 at the endpoints.
double indicator(double x, double lo, double hi, double tol) {
    if (std::abs(x - lo) <= tol || std::abs(x - hi) <= tol) return 0.5;
    return (x > lo && x < hi) ? 1.0 : 0.0;
}

struct Permutation {
    std::array<int, 5> idx;
    double sign;
};

const std::vector<Permutation>& permutations(int n) {
    static std::vector<Permutation> cache[6];
    auto& perms = cache[n];
    if (perms.empty()) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            Permutation perm{};
            int inversions = 0;
            for (int i = 0; i < n; ++i) {
                perm.idx[static_cast<size_t>(i)] = p[static_cast<size_t>(i)];
                for (int j = i + 1; j < n; ++j)
                    if (p[static_cast<size_t>(i)] > p[static_cast<size_t>(j)]) ++inversions;
            }
            perm.sign = (inversions % 2 == 0) ? 1.0 : -1.0;
            perms.push_back(perm);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return perms;
}

void require_strict(const Spectrum& s, const char* who) {
    if (s.degenerate())
        throw std::invalid_argument(std::string(who) + ": repeated eigenvalues are out of scope");
}

void require_strict(const SkewSpectrum& s, const char* who) {
    if (s.degenerate())
        throw std::invalid_argument(std::string(who) + ": degenerate block eigenvalues");
}

double factorial(int n) {
    double f = 1.0;
    for (int p = 2; p <= n; ++p) f *= p;
    return f;
}

}  // namespace

std::string region_name(Region r) {
    switch (r) {
        case Region::Interior: return "interior";
        case Region::Boundary: return "boundary";
        case Region::Outside: return "outside";
    }
    return "?";
}

std::complex<double> hciz_unitary(const Spectrum& alpha, const std::vector<double>& x) {
    const int n = alpha.n();
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("hciz_unitary: size mismatch");
    require_strict(alpha, "hciz_unitary");
    Spectrum xs = Spectrum::unchecked([&] {
        std::vector<double> sx = x;
        std::sort(sx.begin(), sx.end(), std::greater<double>());
        return sx;
    }());
    if (xs.degenerate())
        throw std::invalid_argument("hciz_unitary: repeated x entries");
    if (n == 1) return std::exp(std::complex<double>(0.0, alpha[0] * x[0]));

    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = std::exp(std::complex<double>(0.0, x[static_cast<size_t>(i)] * alpha[j]));
    const std::complex<double> det = m.determinant();

    double kappa_hat = 1.0;
    for (int p = 1; p <= n - 1; ++p) kappa_hat *= factorial(p);

    // i^{-n(n-1)/2}
    static const std::complex<double> ipow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    const int k = (n * (n - 1) / 2) % 4;

    std::vector<double> alpha_vals = alpha.values();
    return kappa_hat * ipow[k] * det / (vandermonde(x) * vandermonde(alpha_vals));
}

double hc_orthogonal(const SkewSpectrum& alpha, const SkewSpectrum& beta) {
    if (alpha.m() != beta.m() || alpha.group() != beta.group())
        throw std::invalid_argument("hc_orthogonal: spectra must share size and group");
    require_strict(alpha, "hc_orthogonal");
    require_strict(beta, "hc_orthogonal");
    const int m = alpha.m();
    const Parity parity = skew_group_is_even(alpha.group()) ? Parity::Even : Parity::Odd;
    const double denom =
        vandermonde_O(alpha.values(), parity) * vandermonde_O(beta.values(), parity);

    switch (alpha.group()) {
        case SkewGroup::O_even: {
            Eigen::MatrixXd mat(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) mat(i, j) = std::cosh(2.0 * alpha[i] * beta[j]);
            const double kappa_hat = appendix_constants(ConstantFamily::SkewEven, m).kappa_hat;
            return kappa_hat * mat.determinant() / denom;
        }
        case SkewGroup::SO_even: {
            double sum = 0.0;
            for (int mask = 0; mask < (1 << m); ++mask) {
                if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
                Eigen::MatrixXd mat(m, m);
                for (int i = 0; i < m; ++i) {
                    const double eps_i = (mask >> i) & 1 ? -1.0 : 1.0;
                    for (int j = 0; j < m; ++j)
                        mat(i, j) = std::exp(-2.0 * eps_i * alpha[i] * beta[j]);
                }
                sum += mat.determinant();
            }
            const double kappa_hat = appendix_constants(ConstantFamily::SkewEven, m).kappa_hat;
            return kappa_hat / std::pow(2.0, m - 1) * sum / denom;
        }
        case SkewGroup::O_odd:
        case SkewGroup::SO_odd: {
            Eigen::MatrixXd mat(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) mat(i, j) = std::sinh(2.0 * alpha[i] * beta[j]);
            const double kappa_hat = appendix_constants(ConstantFamily::SkewOdd, m).kappa_hat;
            return kappa_hat * mat.determinant() / denom;
        }
    }
    throw std::logic_error("hc_orthogonal: unreachable");
}

// ---------------------------------------------------------------------------
// J kernels

namespace {

/// A_j(P, P', I) = sum_{k<=j} (alpha_{P(k)} + beta_{P'(k)} - gamma_k)
///              - (j/n) sum_k (alpha_k + beta_k - gamma_k).
/// The trace term drops on the trace hyperplane but keeps shift covariance
/// exact for callers slightly off it.
struct PartialSums {
    // sums[p][j] = sum_{k<=j+1} alpha_{P(k)}, one row per permutation
    std::vector<std::array<double, 4>> sums;
    std::vector<double> signs;
};

PartialSums partial_sums(const Spectrum& s, int n) {
    const auto& perms = permutations(n);
    PartialSums ps;
    ps.sums.resize(perms.size());
    ps.signs.resize(perms.size());
    for (size_t p = 0; p < perms.size(); ++p) {
        double acc = 0.0;
        for (int j = 0; j < n - 1; ++j) {
            acc += s[perms[p].idx[static_cast<size_t>(j)]];
            ps.sums[p][static_cast<size_t>(j)] = acc;
        }
        ps.signs[p] = perms[p].sign;
    }
    return ps;
}

}  // namespace

double j3_signed_sum(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma) {
    const double t = alpha.sum() + beta.sum() - gamma.sum();
    const double g1 = gamma[0] + t / 3.0;
    const double g12 = gamma[0] + gamma[1] + 2.0 * t / 3.0;
    const PartialSums pa = partial_sums(alpha, 3);
    const PartialSums pb = partial_sums(beta, 3);
    double sum = 0.0;
    for (size_t p = 0; p < pa.sums.size(); ++p) {
        for (size_t q = 0; q < pb.sums.size(); ++q) {
            const double a1 = pa.sums[p][0] + pb.sums[q][0] - g1;
            const double a2 = pa.sums[p][1] + pb.sums[q][1] - g12;
            sum += pa.signs[p] * pb.signs[q] * sgn0(a1) * (std::abs(a2) - std::abs(a2 - a1));
        }
    }
    return 0.25 * sum;
}

double j3_closed_form(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma) {
    const double a1 = alpha[0], a2 = alpha[1], a3 = alpha[2];
    const double b1 = beta[0], b2 = beta[1], b3 = beta[2];
    const double g1 = gamma[0], g2 = gamma[1], g3 = gamma[2];

    // psi sector function; its three arguments sum to zero on the trace plane.
    auto psi = [](double u, double v, double w) {
        // u = g1 - a1 - b2, v = g2 - a3 - b1, w = g3 - a2 - b3
        if (v >= 0.0 && u < 0.0) return v - u;
        if (w >= 0.0 && v < 0.0) return w - v;
        if (u >= 0.0 && w < 0.0) return u - w;
        return 0.0;  // all three vanish
    };

    const double psi_ab = psi(g1 - a1 - b2, g2 - a3 - b1, g3 - a2 - b3);
    const double psi_ba = psi(g1 - b1 - a2, g2 - b3 - a1, g3 - b2 - a3);
    return (a1 - a3 + b1 - b3 + g1 - g3) / 6.0 - 0.5 * std::abs(a2 + b2 - g2) -
           psi_ab / 3.0 - psi_ba / 3.0;
}

double j4_signed_sum(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma) {
    const double t = alpha.sum() + beta.sum() - gamma.sum();
    const double g1 = gamma[0] + t * 0.25;
    const double g12 = gamma[0] + gamma[1] + t * 0.5;
    const double g123 = gamma[0] + gamma[1] + gamma[2] + t * 0.75;
    const PartialSums pa = partial_sums(alpha, 4);
    const PartialSums pb = partial_sums(beta, 4);
    double sum = 0.0;
    for (size_t p = 0; p < pa.sums.size(); ++p) {
        const double pa1 = pa.sums[p][0], pa2 = pa.sums[p][1], pa3 = pa.sums[p][2];
        const double sp = pa.signs[p];
        for (size_t q = 0; q < pb.sums.size(); ++q) {
            const double a1 = pa1 + pb.sums[q][0] - g1;
            if (a1 == 0.0) continue;  // sign(0) = 0 annihilates the term
            const double a2 = pa2 + pb.sums[q][1] - g12;
            const double a3 = pa3 + pb.sums[q][2] - g123;
            const double a31 = a3 - a1;
            const double a321 = a3 - a2 + a1;
            const double a32 = a3 - a2;
            const double cube1 = std::abs(a31) * a31 * a31;
            const double cube2 = std::abs(a321) * a321 * a321;
            const double cube3 = std::abs(a32) * a32 * a32;
            const double cube4 = std::abs(a3) * a3 * a3;
            const double bracket =
                (1.0 / 6.0) * sgn0(a2 - a1) * (cube1 - cube2 - cube3 + cube4) -
                (1.0 / 3.0) * sgn0(a2) * (cube4 - cube3) -
                0.5 * (std::abs(a2 - a1) - std::abs(a2)) * (std::abs(a32) * a32 + std::abs(a3) * a3);
            sum += sp * pb.signs[q] * sgn0(a1) * bracket;
        }
    }
    return 0.125 * sum;
}

KernelValue j_kernel(int n, const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma) {
    if (alpha.n() != n || beta.n() != n || gamma.n() != n)
        throw std::invalid_argument("j_kernel: size mismatch");
    require_strict(alpha, "j_kernel");
    require_strict(beta, "j_kernel");
    const double scale = std::max({alpha.scale(), beta.scale(), gamma.scale()});
    const double tol = 1e-9 * scale;

    KernelValue kv;
    switch (n) {
        case 2: {
            const double a12 = alpha[0] - alpha[1];
            const double b12 = beta[0] - beta[1];
            const double g12 = gamma[0] - gamma[1];
            const double lo = std::abs(a12 - b12), hi = a12 + b12;
            kv.value = indicator(g12, lo, hi, tol) - indicator(g12, -hi, -lo, tol);
            kv.derivative_break = std::min({std::abs(g12 - lo), std::abs(g12 - hi),
                                            std::abs(g12 + lo), std::abs(g12 + hi)}) <= tol;
            return kv;
        }
        case 3: {
            const SupportVerdict v = check_horn_n3(alpha, beta, gamma, tol);
            kv.value = v.inside ? j3_closed_form(alpha, beta, gamma)
                                : j3_signed_sum(alpha, beta, gamma);
            const double u = gamma[0] - alpha[0] - beta[1];
            const double vv = gamma[1] - alpha[2] - beta[0];
            const double w = gamma[2] - alpha[1] - beta[2];
            const double us = gamma[0] - beta[0] - alpha[1];
            const double vs = gamma[1] - beta[2] - alpha[0];
            const double ws = gamma[2] - beta[1] - alpha[2];
            const double mid = gamma[1] - alpha[1] - beta[1];
            kv.derivative_break =
                std::min({std::abs(u), std::abs(vv), std::abs(w), std::abs(us), std::abs(vs),
                          std::abs(ws), std::abs(mid)}) <= tol;
            return kv;
        }
        case 4: {
            kv.value = j4_signed_sum(alpha, beta, gamma);
            // Break locus not enumerated in closed form: compare one-sided
            // second differences along two directions on the trace plane.
            const double h = 1e-4 * scale;
            auto eval = [&](double d1, double d2, double d3, double step) {
                std::vector<double> g = gamma.values();
                g[0] += d1 * step;
                g[1] += d2 * step;
                g[2] += d3 * step;
                g[3] -= (d1 + d2 + d3) * step;
                return j4_signed_sum(alpha, beta, Spectrum::unchecked(g));
            };
            const double f0 = kv.value;
            bool broke = false;
            const double dirs[2][3] = {{1.0, -1.0, 0.0}, {0.0, 1.0, -1.0}};
            for (const auto& d : dirs) {
                const double fp1 = eval(d[0], d[1], d[2], h);
                const double fp2 = eval(d[0], d[1], d[2], 2.0 * h);
                const double fm1 = eval(d[0], d[1], d[2], -h);
                const double fm2 = eval(d[0], d[1], d[2], -2.0 * h);
                const double d2p = (fp2 - 2.0 * fp1 + f0) / (h * h);
                const double d2m = (fm2 - 2.0 * fm1 + f0) / (h * h);
                if (std::abs(d2p - d2m) > 1e-2 * scale) {
                    broke = true;
                    break;
                }
            }
            kv.derivative_break = broke;
            return kv;
        }
        default:
            throw std::invalid_argument("j_kernel: only n = 2, 3, 4 supported");
    }
}

// ---------------------------------------------------------------------------
// Assembled densities

DensityValue pdf_hermitian(const Spectrum& alpha, const Spectrum& beta,
                           const std::vector<double>& gamma_free, bool ordered_sector) {
    const int n = alpha.n();
    if (beta.n() != n) throw std::invalid_argument("pdf_hermitian: size mismatch");
    if (n < 2 || n > 4)
        throw std::invalid_argument("pdf_hermitian: analytic kernel only for n = 2, 3, 4");
    if (static_cast<int>(gamma_free.size()) != n - 1)
        throw std::invalid_argument("pdf_hermitian: gamma_free must have length n-1");
    require_strict(alpha, "pdf_hermitian");
    require_strict(beta, "pdf_hermitian");

    DensityValue dv;
    dv.chart = "(gamma_1..gamma_" + std::to_string(n - 1) + "); gamma_" + std::to_string(n) +
               " = trace identity";

    const double scale = std::max(alpha.scale(), beta.scale());
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n; ++i) {
        min_gap = std::min(min_gap, alpha[i] - alpha[i + 1]);
        min_gap = std::min(min_gap, beta[i] - beta[i + 1]);
    }
    dv.conditioning_warning = min_gap < 1e-9 * scale;

    std::vector<double> g(gamma_free);
    const double last = alpha.sum() + beta.sum() - std::accumulate(g.begin(), g.end(), 0.0);
    g.push_back(last);

    if (ordered_sector) {
        for (size_t i = 0; i + 1 < g.size(); ++i) {
            if (g[i] < g[i + 1]) {
                dv.value = 0.0;
                dv.region = Region::Outside;
                return dv;
            }
        }
    }

    std::vector<double> sorted_g = g;
    std::sort(sorted_g.begin(), sorted_g.end(), std::greater<double>());
    const Spectrum gs = Spectrum::unchecked(sorted_g);

    const double tol = support_tolerance(scale);
    const SupportVerdict verdict = check_horn(alpha, beta, gs, tol);
    dv.region = !verdict.inside ? Region::Outside
                                : (verdict.margin <= tol ? Region::Boundary : Region::Interior);
    if (dv.region == Region::Outside) {
        dv.value = 0.0;
        return dv;
    }

    std::vector<double> av = alpha.values(), bv = beta.values();
    const double pref = prefactor_hermitian(n).to_double();
    const KernelValue kv = j_kernel(n, alpha, beta, gs);
    double value = pref * vandermonde(sorted_g) / (vandermonde(av) * vandermonde(bv)) * kv.value;
    if (value < 0.0 && value > -1e-12) value = 0.0;
    if (ordered_sector) value *= factorial(n);
    dv.value = value;
    return dv;
}

DensityValue pdf_symmetric_n2(const Spectrum& alpha, const Spectrum& beta, double gamma12) {
    if (alpha.n() != 2 || beta.n() != 2)
        throw std::invalid_argument("pdf_symmetric_n2: spectra must have n=2");
    const double a12 = alpha[0] - alpha[1];
    const double b12 = beta[0] - beta[1];
    const double gmin = std::abs(a12 - b12);
    const double gmax = a12 + b12;
    const double tol = support_tolerance(std::max(alpha.scale(), beta.scale()));

    DensityValue dv;
    dv.chart = "(gamma12); gap of the ordered pair, gamma12 >= 0";
    const double g = gamma12;
    if (std::abs(g - gmax) <= tol || (gmin > tol && std::abs(g - gmin) <= tol)) {
        dv.region = Region::Boundary;
        dv.singular = true;  // integrable edge singularity
        dv.value = std::numeric_limits<double>::infinity();
        return dv;
    }
    if (g <= gmin || g >= gmax) {
        dv.region = std::abs(g - gmin) <= tol ? Region::Boundary : Region::Outside;
        dv.value = 0.0;
        return dv;
    }
    dv.region = Region::Interior;
    dv.value = (2.0 / kPi) * g / std::sqrt((gmax * gmax - g * g) * (g * g - gmin * gmin));
    return dv;
}

std::vector<Atom> skew_atoms_n2(const SkewSpectrum& alpha, const SkewSpectrum& beta) {
    if (alpha.m() != 1 || beta.m() != 1 || !skew_group_is_even(alpha.group()) ||
        alpha.group() != beta.group())
        throw std::invalid_argument("skew_atoms_n2: expects m=1 even spectra of equal group");
    const double a = alpha[0], b = beta[0];
    if (alpha.group() == SkewGroup::SO_even) return {{a + b, 1.0}};
    return {{a + b, 0.25}, {a - b, 0.25}, {-a + b, 0.25}, {-a - b, 0.25}};
}

namespace {

// (1_I - 1_{-I})(x) with I = (lo, hi), endpoint value 1/2.
double interval_bracket(double x, double lo, double hi, double tol) {
    return indicator(x, lo, hi, tol) - indicator(x, -hi, -lo, tol);
}

}  // namespace

DensityValue pdf_skew(const SkewSpectrum& alpha, const SkewSpectrum& beta,
                      const std::vector<double>& gamma) {
    if (alpha.m() != beta.m() || alpha.group() != beta.group())
        throw std::invalid_argument("pdf_skew: spectra must share size and group");
    require_strict(alpha, "pdf_skew");
    require_strict(beta, "pdf_skew");
    const int m = alpha.m();
    if (static_cast<int>(gamma.size()) != m)
        throw std::invalid_argument("pdf_skew: gamma must have length m");
    const double tol = support_tolerance(std::max(alpha.scale(), beta.scale()));

    DensityValue dv;
    if (skew_group_is_even(alpha.group())) {
        if (m == 1)
            throw std::invalid_argument(
                "pdf_skew: n=2 density is pure point; use skew_atoms_n2");
        if (m != 2)
            throw std::invalid_argument(
                "pdf_skew: analytic form unsupported for n >= 5; use the Monte-Carlo sampler");
        dv.chart = "(gamma_1, gamma_2) block eigenvalues";
        const double s = gamma[0] + gamma[1];
        const double t = gamma[0] - gamma[1];
        const double a_s = alpha[0] + alpha[1], a_t = alpha[0] - alpha[1];
        const double b_s = beta[0] + beta[1], b_t = beta[0] - beta[1];
        std::vector<double> gv = gamma;
        const double delta_ratio = vandermonde_O(gv, Parity::Even) /
                                   (vandermonde_O(alpha.values(), Parity::Even) *
                                    vandermonde_O(beta.values(), Parity::Even));
        double bracket;
        if (alpha.group() == SkewGroup::SO_even) {
            bracket = interval_bracket(s, std::abs(a_s - b_s), a_s + b_s, tol) *
                      interval_bracket(t, std::abs(a_t - b_t), a_t + b_t, tol);
        } else {
            bracket = 0.0;
            for (double eps : {1.0, -1.0}) {
                for (double eps2 : {1.0, -1.0}) {
                    const double ae = alpha[0] + eps * alpha[1];
                    const double be = beta[0] + eps2 * beta[1];
                    const double ae2 = alpha[0] - eps * alpha[1];
                    const double be2 = beta[0] - eps2 * beta[1];
                    bracket += interval_bracket(s, std::abs(ae - be), ae + be, tol) *
                               interval_bracket(t, std::abs(ae2 - be2), ae2 + be2, tol);
                }
            }
            bracket *= 0.25;
        }
        double value = 0.125 * delta_ratio * bracket;
        if (value < 0.0 && value > -1e-12) value = 0.0;
        dv.value = value;
        // Boundary iff (s, t) sits on an interval endpoint of any contributing
        // bracket term.
        bool on_edge = false;
        auto near_endpoint = [&](double x, double lo, double hi) {
            return std::abs(std::abs(x) - lo) <= tol || std::abs(std::abs(x) - hi) <= tol;
        };
        if (alpha.group() == SkewGroup::SO_even) {
            on_edge = near_endpoint(s, std::abs(a_s - b_s), a_s + b_s) ||
                      near_endpoint(t, std::abs(a_t - b_t), a_t + b_t);
        } else {
            for (double eps : {1.0, -1.0}) {
                for (double eps2 : {1.0, -1.0}) {
                    const double ae = alpha[0] + eps * alpha[1];
                    const double be = beta[0] + eps2 * beta[1];
                    const double ae2 = alpha[0] - eps * alpha[1];
                    const double be2 = beta[0] - eps2 * beta[1];
                    on_edge = on_edge || near_endpoint(s, std::abs(ae - be), ae + be) ||
                              near_endpoint(t, std::abs(ae2 - be2), ae2 + be2);
                }
            }
        }
        dv.region = on_edge ? Region::Boundary
                            : (value != 0.0 ? Region::Interior : Region::Outside);
        return dv;
    }

    // Odd ambient size
    if (m != 1)
        throw std::invalid_argument(
            "pdf_skew: analytic form unsupported for n >= 5; use the Monte-Carlo sampler");
    dv.chart = "(gamma) block eigenvalue, either sign";
    const double a = alpha[0], b = beta[0], g = gamma[0];
    const double lo = std::abs(a - b), hi = a + b;
    const double bracket = interval_bracket(g, lo, hi, tol);
    const double value = 0.25 * g / (a * b) * bracket;
    dv.value = value;
    if (bracket == 0.0) {
        dv.region = Region::Outside;
    } else if (std::abs(std::abs(g) - lo) <= tol || std::abs(std::abs(g) - hi) <= tol) {
        dv.region = Region::Boundary;
    } else {
        dv.region = Region::Interior;
    }
    return dv;
}

double skew_canonical_fold(const SkewSpectrum& alpha) {
    if (!skew_group_is_even(alpha.group()) && alpha.m() == 1) return 2.0;
    if (alpha.group() == SkewGroup::SO_even && alpha.m() == 2) return 4.0;
    // O(4): swaps and both single sign flips identify 8 plane points with one
    // canonical (gamma_1 >= gamma_2 >= 0) representative.
    if (alpha.group() == SkewGroup::O_even && alpha.m() == 2) return 8.0;
    throw std::invalid_argument("skew_canonical_fold: only n = 3, 4 supported");
}

std::vector<Segment> enhancement_lines_n3(const Spectrum& alpha, const Spectrum& beta) {
    if (alpha.n() != 3 || beta.n() != 3)
        throw std::invalid_argument("enhancement_lines_n3: spectra must have n=3");
    const PolygonN3 poly = polygon_n3(alpha, beta);

    struct Line {
        // point + direction, optional half-line bound dot(normal, p) >= c
        std::array<double, 2> p0;
        std::array<double, 2> dir;
        bool bounded;
        std::array<double, 2> normal;
        double cmin;
        std::string label;
    };

    auto make_lines = [](const Spectrum& a, const Spectrum& b, const char* tag) {
        const double a1 = a[0], a3 = a[2];
        const double b1 = b[0], b2 = b[1];
        std::vector<Line> lines;
        // g1 = a1+b2, g2 >= a3+b1
        lines.push_back({{a1 + b2, a3 + b1}, {0, 1}, true, {0, 1}, a3 + b1,
                         std::string("g1=a1+b2") + tag});
        // g2 = a3+b1, g1 <= a1+b2
        lines.push_back({{a1 + b2, a3 + b1}, {-1, 0}, true, {-1, 0}, -(a1 + b2),
                         std::string("g2=a3+b1") + tag});
        // g1+g2 = a1+a3+b1+b2, g1 >= a1+b2
        lines.push_back({{a1 + b2, a3 + b1}, {1, -1}, true, {1, 0}, a1 + b2,
                         std::string("g1+g2=a1+a3+b1+b2") + tag});
        return lines;
    };

    std::vector<Line> lines = make_lines(alpha, beta, "");
    auto swapped = make_lines(beta, alpha, " (swap)");
    lines.insert(lines.end(), swapped.begin(), swapped.end());
    // segment of g2 = a2+b2, full line clipped to the polygon
    lines.push_back({{0.0, alpha[1] + beta[1]}, {1, 0}, false, {0, 0}, 0.0, "g2=a2+b2"});

    const auto bb = poly.bounding_box();
    const double diag = std::hypot(bb[1] - bb[0], bb[3] - bb[2]);

    std::vector<Segment> out;
    for (const auto& line : lines) {
        // Clip p0 + t*dir against the polygon edges (and the half-line bound).
        double tmin = -2.0 * diag, tmax = 2.0 * diag;
        if (line.bounded) {
            // normal . (p0 + t dir) >= cmin
            const double nd = line.normal[0] * line.dir[0] + line.normal[1] * line.dir[1];
            const double np = line.normal[0] * line.p0[0] + line.normal[1] * line.p0[1];
            if (std::abs(nd) > 1e-14) {
                const double tb = (line.cmin - np) / nd;
                if (nd > 0)
                    tmin = std::max(tmin, tb);
                else
                    tmax = std::min(tmax, tb);
            }
        }
        const size_t nv = poly.vertices.size();
        bool empty = false;
        for (size_t i = 0; i < nv && !empty; ++i) {
            const auto& p = poly.vertices[i];
            const auto& q = poly.vertices[(i + 1) % nv];
            // inward normal halfplane: cross(edge, x - p) >= 0 for CCW ring
            const double ex = q[0] - p[0], ey = q[1] - p[1];
            const double nd = ex * line.dir[1] - ey * line.dir[0];
            const double np = ex * (line.p0[1] - p[1]) - ey * (line.p0[0] - p[0]);
            if (std::abs(nd) < 1e-14) {
                if (np < -1e-12 * std::max(1.0, diag)) empty = true;
                continue;
            }
            const double tb = -np / nd;
            if (nd > 0)
                tmin = std::max(tmin, tb);
            else
                tmax = std::min(tmax, tb);
        }
        if (empty || tmax - tmin <= 1e-9 * std::max(1.0, diag)) continue;
        Segment seg;
        seg.a = {line.p0[0] + tmin * line.dir[0], line.p0[1] + tmin * line.dir[1]};
        seg.b = {line.p0[0] + tmax * line.dir[0], line.p0[1] + tmax * line.dir[1]};
        seg.label = line.label;
        out.push_back(seg);
    }
    return out;
}

}  // namespace horn
