// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_TYPES_HPP
#define HERMITANA_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace hermitana {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// A point in a model's parameter space, one coordinate per axis.
using ParameterPoint = Eigen::VectorXd;

inline ComplexMatrix pauli_x()
{
    ComplexMatrix s(2, 2);
    s << 0, 1, 1, 0;
    return s;
}

inline ComplexMatrix pauli_y()
{
    ComplexMatrix s(2, 2);
    s << 0, Complex(0, -1), Complex(0, 1), 0;
    return s;
}

inline ComplexMatrix pauli_z()
{
    ComplexMatrix s(2, 2);
    s << 1, 0, 0, -1;
    return s;
}

inline ComplexMatrix identity2() { return ComplexMatrix::Identity(2, 2); }

/// Coefficients (c0, cx, cy, cz) of M = c0*I + cx*sx + cy*sy + cz*sz.
inline Eigen::Vector4cd pauli_decompose(const ComplexMatrix& m)
{
    Eigen::Vector4cd c;
    c(0) = (m(0, 0) + m(1, 1)) / 2.0;
    c(1) = (m(0, 1) + m(1, 0)) / 2.0;
    c(2) = Complex(0, 1) * (m(0, 1) - m(1, 0)) / 2.0;
    c(3) = (m(0, 0) - m(1, 1)) / 2.0;
    return c;
}

} // namespace hermitana

#endif
