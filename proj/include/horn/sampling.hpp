#pragma once

#include <Eigen/Dense>

#include "horn/rng.hpp"
#include "horn/types.hpp"

namespace horn {

/// Haar-uniform U(n): complex Ginibre + QR with the triangular diagonal
/// rephased to real positive (the phase fix required for exact uniformity).
Eigen::MatrixXcd haar_unitary(int n, RngStream& rng);

/// Haar-uniform O(n); with special=true, rejection on det until +1, giving
/// Haar on SO(n) at acceptance rate 1/2.
Eigen::MatrixXd haar_orthogonal(int n, bool special, RngStream& rng);

/// Eigenvalues of a Hermitian (or real symmetric) matrix, sorted descending.
/// Throws if the input is not Hermitian to 1e-12 relative tolerance.
Spectrum hermitian_eigenvalues(const Eigen::MatrixXcd& a);
Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& a);

/// Pfaffian of a real skew-symmetric matrix of even size, by recursive
/// cofactor expansion along the first row (sizes here are <= 6).
double pfaffian(const Eigen::MatrixXd& a);

/// Block eigenvalues of a real skew-symmetric matrix: the m positive members
/// of the +-alpha_j pairs of i*A, sorted descending. For SO with even n the
/// sign of the last entry is fixed so that prod alpha_i matches sign(Pf(A)).
/// Throws on non-skew input; a Pfaffian below 1e-12*scale comes back as a
/// degenerate (unchecked) spectrum with positive last entry.
SkewSpectrum skew_canonical_form(const Eigen::MatrixXd& a, SkewGroup group);

/// Embeds the block eigenvalues as the canonical block-diagonal matrix
/// (2x2 rotation generators, plus a zero row/column when n is odd).
Eigen::MatrixXd skew_block_embed(const SkewSpectrum& s);

/// diag(alpha) + U diag(beta) U^dagger for Haar U in U(n); canonical spectrum.
Spectrum sample_gamma_hermitian(const Spectrum& alpha, const Spectrum& beta, RngStream& rng);

/// diag(alpha) + O diag(beta) O^T for Haar O; special selects SO(n).
Spectrum sample_gamma_symmetric(const Spectrum& alpha, const Spectrum& beta, bool special,
                                RngStream& rng);

/// Skew orbit sum under the group recorded in the spectra.
SkewSpectrum sample_gamma_skew(const SkewSpectrum& alpha, const SkewSpectrum& beta,
                               RngStream& rng);

}  // namespace horn
