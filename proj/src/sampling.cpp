#include "horn/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace horn {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

std::vector<double> sorted_descending(Eigen::VectorXd v) {
    std::vector<double> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

}  // namespace

Eigen::MatrixXcd haar_unitary(int n, RngStream& rng) {
    require(n >= 1, "haar_unitary: n must be >= 1");
    Eigen::MatrixXcd g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const std::complex<double> d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

Eigen::MatrixXd haar_orthogonal(int n, bool special, RngStream& rng) {
    require(n >= 1, "haar_orthogonal: n must be >= 1");
    for (;;) {
        Eigen::MatrixXd g(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
        const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < n; ++j)
            if (r(j, j) < 0.0) q.col(j) = -q.col(j);
        if (!special || q.determinant() > 0.0) return q;
    }
}

Spectrum hermitian_eigenvalues(const Eigen::MatrixXcd& a) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    require((a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
            "hermitian_eigenvalues: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    return Spectrum::unchecked(sorted_descending(solver.eigenvalues()));
}

Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& a) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    require((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
            "symmetric_eigenvalues: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    return Spectrum::unchecked(sorted_descending(solver.eigenvalues()));
}

double pfaffian(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    require(n % 2 == 0, "pfaffian: size must be even");
    if (n == 0) return 1.0;
    if (n == 2) return a(0, 1);
    double pf = 0.0;
    for (int j = 1; j < n; ++j) {
        if (a(0, j) == 0.0) continue;
        Eigen::MatrixXd minor(n - 2, n - 2);
        int r = 0;
        for (int i = 1; i < n; ++i) {
            if (i == j) continue;
            int c = 0;
            for (int k = 1; k < n; ++k) {
                if (k == j) continue;
                minor(r, c++) = a(i, k);
            }
            ++r;
        }
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        pf += sign * a(0, j) * pfaffian(minor);
    }
    return pf;
}

SkewSpectrum skew_canonical_form(const Eigen::MatrixXd& a, SkewGroup group) {
    const int n = static_cast<int>(a.rows());
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    require((a + a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
            "skew_canonical_form: matrix is not skew-symmetric");
    const bool even = (n % 2 == 0);
    require(even ? skew_group_is_even(group) : !skew_group_is_even(group),
            "skew_canonical_form: group parity does not match matrix size");
    const int m = n / 2;

    // i*A is Hermitian with eigenvalues {+-alpha_j} (plus 0 for odd n).
    Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    std::vector<double> all = sorted_descending(solver.eigenvalues());
    std::vector<double> blocks(all.begin(), all.begin() + m);

    if (group == SkewGroup::SO_even) {
        const double pf = pfaffian(a);
        double prod = 1.0;
        for (double b : blocks) prod *= b;
        if (std::abs(pf) >= 1e-12 * std::pow(scale, m)) {
            if (pf * prod < 0.0) blocks.back() = -blocks.back();
        }
        // Indeterminate Pfaffian: keep the positive branch; the spectrum will
        // report itself degenerate.
    }
    return SkewSpectrum::unchecked(std::move(blocks), group);
}

Eigen::MatrixXd skew_block_embed(const SkewSpectrum& s) {
    const int n = s.n();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < s.m(); ++i) {
        a(2 * i, 2 * i + 1) = s[i];
        a(2 * i + 1, 2 * i) = -s[i];
    }
    return a;
}

Spectrum sample_gamma_hermitian(const Spectrum& alpha, const Spectrum& beta, RngStream& rng) {
    require(alpha.n() == beta.n(), "sample_gamma: size mismatch");
    const int n = alpha.n();
    const Eigen::MatrixXcd u = haar_unitary(n, rng);
    Eigen::MatrixXcd c = u * Eigen::Map<const Eigen::VectorXd>(beta.values().data(), n)
                                 .cast<std::complex<double>>()
                                 .asDiagonal() *
                         u.adjoint();
    for (int i = 0; i < n; ++i) c(i, i) += alpha[i];
    // Symmetrize away QR roundoff before the eigensolve.
    c = 0.5 * (c + c.adjoint()).eval();
    return hermitian_eigenvalues(c);
}

Spectrum sample_gamma_symmetric(const Spectrum& alpha, const Spectrum& beta, bool special,
                                RngStream& rng) {
    require(alpha.n() == beta.n(), "sample_gamma: size mismatch");
    const int n = alpha.n();
    const Eigen::MatrixXd o = haar_orthogonal(n, special, rng);
    Eigen::MatrixXd c =
        o * Eigen::Map<const Eigen::VectorXd>(beta.values().data(), n).asDiagonal() *
        o.transpose();
    for (int i = 0; i < n; ++i) c(i, i) += alpha[i];
    c = (0.5 * (c + c.transpose())).eval();
    return symmetric_eigenvalues(c);
}

SkewSpectrum sample_gamma_skew(const SkewSpectrum& alpha, const SkewSpectrum& beta,
                               RngStream& rng) {
    require(alpha.m() == beta.m() && alpha.group() == beta.group(),
            "sample_gamma: skew spectra must share size and group");
    const int n = alpha.n();
    const bool special = skew_group_is_special(alpha.group());
    const Eigen::MatrixXd o = haar_orthogonal(n, special, rng);
    Eigen::MatrixXd c = skew_block_embed(alpha) + o * skew_block_embed(beta) * o.transpose();
    c = (0.5 * (c - c.transpose())).eval();
    return skew_canonical_form(c, alpha.group());
}

}  // namespace horn
