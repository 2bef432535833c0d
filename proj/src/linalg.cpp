// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#include "hermitana/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace hermitana {

namespace {

bool all_finite(const ComplexMatrix& m)
{
    return m.allFinite();
}

// (p,q)-Pade numerator/denominator pairs for exp, Higham's coefficients.
void pade3(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v)
{
    static const double b[] = {120., 60., 12., 1.};
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix id = ComplexMatrix::Identity(a.rows(), a.cols());
    u = a * (b[3] * a2 + b[1] * id);
    v = b[2] * a2 + b[0] * id;
}

void pade5(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v)
{
    static const double b[] = {30240., 15120., 3360., 420., 30., 1.};
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix id = ComplexMatrix::Identity(a.rows(), a.cols());
    u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade7(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v)
{
    static const double b[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const ComplexMatrix id = ComplexMatrix::Identity(a.rows(), a.cols());
    u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade9(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v)
{
    static const double b[] = {17643225600., 8821612800., 2075673600., 302702400.,
                               30270240.,    2162160.,    110880.,     3960.,
                               90.,          1.};
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const ComplexMatrix a8 = a6 * a2;
    const ComplexMatrix id = ComplexMatrix::Identity(a.rows(), a.cols());
    u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade13(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v)
{
    static const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                               1187353796428800.,  129060195264000.,   10559470521600.,
                               670442572800.,      33522128640.,       1323241920.,
                               40840800.,          960960.,            16380.,
                               182.,               1.};
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const ComplexMatrix id = ComplexMatrix::Identity(a.rows(), a.cols());
    u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
             b[1] * id);
    v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

} // namespace

SqrtPair hermitian_sqrt(const ComplexMatrix& m, double tol)
{
    const double scale = m.norm();
    const double herm_res = (m - m.adjoint()).norm();
    if (herm_res > tol * std::max(1.0, scale))
        throw NotHermitian("hermitian_sqrt: hermiticity residual " + std::to_string(herm_res));

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((m + m.adjoint()) / 2.0);
    if (es.info() != Eigen::Success)
        throw Error("hermitian_sqrt: eigendecomposition failed");
    const Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() <= tol * scale)
        throw NotPositiveDefinite("hermitian_sqrt: min eigenvalue " +
                                  std::to_string(ev.minCoeff()));

    const ComplexMatrix& vecs = es.eigenvectors();
    SqrtPair out;
    out.sqrt = vecs * ev.cwiseSqrt().asDiagonal() * vecs.adjoint();
    out.inv_sqrt = vecs * ev.cwiseSqrt().cwiseInverse().asDiagonal() * vecs.adjoint();
    // exact Hermitian symmetry keeps downstream commutators anti-Hermitian
    out.sqrt = (out.sqrt + out.sqrt.adjoint().eval()) / 2.0;
    out.inv_sqrt = (out.inv_sqrt + out.inv_sqrt.adjoint().eval()) / 2.0;
    return out;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& a)
{
    if (!all_finite(a))
        throw Overflow("matrix_exponential: non-finite entries");
    const Eigen::Index n = a.rows();
    if (n != a.cols())
        throw DimensionMismatch("matrix_exponential: matrix not square");

    const double l1 = a.cwiseAbs().colwise().sum().maxCoeff();
    ComplexMatrix u, v;
    int squarings = 0;
    if (l1 < 1.495585217958292e-2) {
        pade3(a, u, v);
    } else if (l1 < 2.539398330063230e-1) {
        pade5(a, u, v);
    } else if (l1 < 9.504178996162932e-1) {
        pade7(a, u, v);
    } else if (l1 < 2.097847961257068) {
        pade9(a, u, v);
    } else {
        const double theta13 = 5.371920351148152;
        if (l1 > theta13)
            squarings = static_cast<int>(std::ceil(std::log2(l1 / theta13)));
        const ComplexMatrix scaled = a / std::pow(2.0, squarings);
        pade13(scaled, u, v);
    }
    ComplexMatrix result = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i)
        result = (result * result).eval();
    if (!all_finite(result))
        throw Overflow("matrix_exponential: result overflowed");
    return result;
}

ComplexMatrix matrix_exponential_2x2(const ComplexMatrix& a)
{
    if (a.rows() != 2 || a.cols() != 2)
        throw DimensionMismatch("matrix_exponential_2x2: dim must be 2");
    if (!all_finite(a))
        throw Overflow("matrix_exponential_2x2: non-finite entries");

    const Eigen::Vector4cd c = pauli_decompose(a);
    // exp(c0 I + w.sigma) = e^{c0} (cosh(m) I + sinh(m)/m w.sigma), m^2 = w.w
    const Complex m2 = c(1) * c(1) + c(2) * c(2) + c(3) * c(3);
    const Complex m = std::sqrt(m2);
    Complex ch, shm; // cosh(m), sinh(m)/m -- both even in m, branch-free
    if (std::abs(m) < 1e-8) {
        ch = 1.0 + m2 / 2.0 + m2 * m2 / 24.0;
        shm = 1.0 + m2 / 6.0 + m2 * m2 / 120.0;
    } else {
        ch = std::cosh(m);
        shm = std::sinh(m) / m;
    }
    const Complex e0 = std::exp(c(0));
    ComplexMatrix out = e0 * (ch * identity2() +
                              shm * (c(1) * pauli_x() + c(2) * pauli_y() + c(3) * pauli_z()));
    if (!all_finite(out))
        throw Overflow("matrix_exponential_2x2: result overflowed");
    return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("commutator: dimensions differ");
    return a * b - b * a;
}

ComplexMatrix principal_log(const ComplexMatrix& m)
{
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m);
    if (es.info() != Eigen::Success)
        throw Error("principal_log: eigendecomposition failed");
    const ComplexVector lambda = es.eigenvalues();
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        if (std::abs(lambda(i)) < 1e-300)
            throw Error("principal_log: singular matrix");
    const ComplexMatrix& vecs = es.eigenvectors();
    ComplexVector logs(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        logs(i) = std::log(lambda(i));
    return vecs * logs.asDiagonal() * vecs.inverse();
}

MetricValidation validate_metric(const ComplexMatrix& eta, double tol)
{
    MetricValidation out;
    if (tol < 0.0)
        tol = 1e-10 * eta.norm();
    out.hermiticity_residual = (eta - eta.adjoint()).norm();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((eta + eta.adjoint()) / 2.0,
                                                    Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    out.min_eigenvalue = ev.minCoeff();
    const double abs_max = ev.cwiseAbs().maxCoeff();
    const double abs_min = ev.cwiseAbs().minCoeff();
    out.condition_number =
        abs_min > 0.0 ? abs_max / abs_min : std::numeric_limits<double>::infinity();
    out.ok = out.hermiticity_residual <= tol && out.min_eigenvalue > tol;
    return out;
}

} // namespace hermitana
