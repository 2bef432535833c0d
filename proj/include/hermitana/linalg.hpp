// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_LINALG_HPP
#define HERMITANA_LINALG_HPP

#include "hermitana/errors.hpp"
#include "hermitana/types.hpp"

namespace hermitana {

struct SqrtPair {
    ComplexMatrix sqrt;
    ComplexMatrix inv_sqrt;
};

/// Principal square root of a Hermitian positive-definite matrix, via
/// eigendecomposition, together with its inverse.
///
/// Throws NotHermitian if ||M - M^dag||_F > tol * max(1, ||M||_F) and
/// NotPositiveDefinite if the smallest eigenvalue is <= tol * ||M||_F.
SqrtPair hermitian_sqrt(const ComplexMatrix& m, double tol = 1e-10);

/// exp(A) by Pade approximation with scaling and squaring.
/// Throws Overflow for non-finite input or when the result overflows.
ComplexMatrix matrix_exponential(const ComplexMatrix& a);

/// exp(A) for 2x2 matrices through the closed form on the Pauli basis.
/// Cross-check route for matrix_exponential; dim must be 2.
ComplexMatrix matrix_exponential_2x2(const ComplexMatrix& a);

/// AB - BA. Throws DimensionMismatch.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Principal logarithm of a diagonalizable matrix (intended for unitaries
/// near the identity, e.g. small Wilson loops).
ComplexMatrix principal_log(const ComplexMatrix& m);

struct MetricValidation {
    double hermiticity_residual = 0.0; // ||eta - eta^dag||_F
    double min_eigenvalue = 0.0;       // of the Hermitian part
    double condition_number = 0.0;     // |lambda|_max / |lambda|_min
    bool ok = false;
};

/// Checks that eta is a valid metric (Hermitian, positive-definite).
/// tol < 0 selects the default threshold 1e-10 * ||eta||_F. Never throws;
/// failures are carried in the report.
MetricValidation validate_metric(const ComplexMatrix& eta, double tol = -1.0);

} // namespace hermitana

#endif
