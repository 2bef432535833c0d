// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#include "hermitana/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace hermitana {

BiorthogonalSystem biorthogonal_eigensystem(const ComplexMatrix& h, const ComplexMatrix& eta,
                                            double gap_tol)
{
    const Eigen::Index n = h.rows();
    if (h.cols() != n || eta.rows() != n || eta.cols() != n)
        throw DimensionMismatch("biorthogonal_eigensystem: H and eta must be square, same dim");

    Eigen::ComplexEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success)
        throw Error("biorthogonal_eigensystem: eigensolver failed");

    // Exceptional-point guard: defective H shows up as a numerically
    // singular eigenvector matrix.
    {
        Eigen::JacobiSVD<ComplexMatrix> svd(es.eigenvectors());
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(svd.singularValues().size() - 1);
        if (!(smin > 1e-12 * smax))
            throw NonDiagonalizable("biorthogonal_eigensystem: eigenvector matrix singular "
                                    "(exceptional point?)");
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return es.eigenvalues()(a).real() < es.eigenvalues()(b).real();
    });

    const double scale = std::max(1.0, h.norm());
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const Complex gap =
            es.eigenvalues()(order[i + 1]) - es.eigenvalues()(order[i]);
        if (std::abs(gap) <= gap_tol * scale)
            throw DegenerateSpectrum("biorthogonal_eigensystem: eigenvalue gap " +
                                     std::to_string(std::abs(gap)));
    }

    BiorthogonalSystem out;
    out.energies.resize(n);
    out.right_vecs.resize(n);
    out.left_vecs.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.energies(i) = es.eigenvalues()(order[i]);
        if (std::abs(out.energies(i).imag()) > 1e-8)
            out.complex_spectrum_warning = true;

        ComplexVector psi = es.eigenvectors().col(order[i]);
        const Complex norm2 = psi.dot(eta * psi); // conjugates the left argument
        if (!(norm2.real() > 0.0))
            throw MetricInvalid("biorthogonal_eigensystem: eigenvector has non-positive "
                                "eta-norm; metric is not positive-definite");
        psi /= std::sqrt(norm2.real());

        // phase convention: largest-magnitude component real positive;
        // ties resolve to the smallest index so the gauge stays smooth
        // for families with symmetric components
        const double cmax = psi.cwiseAbs().maxCoeff();
        Eigen::Index pivot = 0;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (std::abs(psi(k)) >= (1.0 - 1e-6) * cmax) {
                pivot = k;
                break;
            }
        }
        psi *= std::polar(1.0, -std::arg(psi(pivot)));
        out.right_vecs[i] = psi;
        out.left_vecs[i] = eta * psi;
    }

    double resid = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex overlap = out.left_vecs[i].dot(out.right_vecs[j]);
            const double target = (i == j) ? 1.0 : 0.0;
            resid = std::max(resid, std::abs(overlap - target));
        }
    out.biorth_residual = resid;
    return out;
}

} // namespace hermitana
