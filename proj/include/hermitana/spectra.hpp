// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_SPECTRA_HPP
#define HERMITANA_SPECTRA_HPP

#include "hermitana/errors.hpp"
#include "hermitana/types.hpp"

#include <vector>

namespace hermitana {

/// Right/left eigensystem of a quasi-Hermitian pair (H, eta).
///
/// Eigenpairs are sorted ascending by Re(E). Right vectors carry unit
/// eta-norm <Psi|eta|Psi> = 1 with the largest-magnitude component made
/// real positive; left vectors are Phi_n = eta Psi_n.
struct BiorthogonalSystem {
    ComplexVector energies;
    std::vector<ComplexVector> right_vecs;
    std::vector<ComplexVector> left_vecs;
    double biorth_residual = 0.0;        // max |<Phi_n|Psi_m> - delta_nm|
    bool complex_spectrum_warning = false; // some |Im E| > 1e-8
};

/// Throws NonDiagonalizable when the eigenvector matrix is numerically
/// singular (exceptional point), DegenerateSpectrum when eigenvalue gaps
/// fall below gap_tol * max(1, ||H||), and MetricInvalid when an
/// eigenvector has non-positive eta-norm.
BiorthogonalSystem biorthogonal_eigensystem(const ComplexMatrix& h, const ComplexMatrix& eta,
                                            double gap_tol = 1e-10);

} // namespace hermitana

#endif
