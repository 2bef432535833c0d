// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_TESTS_SUPPORT_HPP
#define HERMITANA_TESTS_SUPPORT_HPP

#include "hermitana/model.hpp"
#include "hermitana/types.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace hermitana::test {

inline constexpr double pi = std::numbers::pi;

inline double circular_distance(double a, double b)
{
    return std::abs(std::remainder(a - b, 2.0 * pi));
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int n, double scale = 1.0)
{
    std::normal_distribution<double> gauss(0.0, scale);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int n, double scale = 1.0)
{
    const ComplexMatrix m = random_matrix(rng, n, scale);
    return (m + m.adjoint()) / 2.0;
}

// Hermitian positive-definite with eigenvalues bounded away from zero.
inline ComplexMatrix random_hpd(std::mt19937_64& rng, int n, double scale = 1.0)
{
    const ComplexMatrix m = random_matrix(rng, n, scale);
    return m * m.adjoint() + 0.2 * scale * scale * ComplexMatrix::Identity(n, n);
}

// Plain 2nd-order central difference, kept deliberately independent of
// the library's stencil machinery; oracle for derivative checks.
inline ComplexMatrix central_diff(const std::function<ComplexMatrix(double)>& f, double x,
                                  double h)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline ComplexVector central_diff_vec(const std::function<ComplexVector(double)>& f, double x,
                                      double h)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Ad-hoc model defined by lambdas; test fixture for edge cases the
/// built-ins cannot reach (band crossings, constant metrics, dim > 2).
class InlineModel final : public QuasiHermitianModel {
public:
    using MatrixField = std::function<ComplexMatrix(const ParameterPoint&)>;

    InlineModel(int dim, std::vector<AxisDomain> axes, MatrixField hamiltonian,
                MatrixField metric, MatrixField metric_partial0 = nullptr)
        : dim_(dim), axes_(std::move(axes)), hamiltonian_(std::move(hamiltonian)),
          metric_(std::move(metric)), metric_partial0_(std::move(metric_partial0))
    {
    }

    int dim() const override { return dim_; }
    const std::vector<AxisDomain>& axes() const override { return axes_; }
    std::string name() const override { return "inline"; }
    ComplexMatrix hamiltonian(const ParameterPoint& r) const override { return hamiltonian_(r); }
    ComplexMatrix metric(const ParameterPoint& r) const override { return metric_(r); }
    std::optional<ComplexMatrix> analytic_metric_partial(const ParameterPoint& r,
                                                         int axis) const override
    {
        if (metric_partial0_ && axis == 0)
            return metric_partial0_(r);
        return std::nullopt;
    }

private:
    int dim_;
    std::vector<AxisDomain> axes_;
    MatrixField hamiltonian_;
    MatrixField metric_;
    MatrixField metric_partial0_;
};

/// eta = I, H = x sz + eps sx: bands cross near x = 0 for small eps.
inline std::unique_ptr<InlineModel> crossing_model(double eps = 0.0)
{
    return std::make_unique<InlineModel>(
        2, std::vector<AxisDomain>{{"x", -1.0, 1.0, false}},
        [eps](const ParameterPoint& r) { return (r(0) * pauli_z() + eps * pauli_x()).eval(); },
        [](const ParameterPoint&) { return identity2(); },
        [](const ParameterPoint&) { return ComplexMatrix::Zero(2, 2).eval(); });
}

/// Constant metric, Hermitian Bloch-type Hamiltonian on (x, y).
inline std::unique_ptr<InlineModel> hermitian_bloch_model()
{
    return std::make_unique<InlineModel>(
        2, std::vector<AxisDomain>{{"x", 0.0, 2.0 * pi, true}, {"y", 0.2, pi - 0.2, false}},
        [](const ParameterPoint& r) {
            const double phi = r(0), theta = r(1);
            return (std::sin(theta) * std::cos(phi) * pauli_x() +
                    std::sin(theta) * std::sin(phi) * pauli_y() + std::cos(theta) * pauli_z())
                .eval();
        },
        [](const ParameterPoint&) { return identity2(); },
        [](const ParameterPoint&) { return ComplexMatrix::Zero(2, 2).eval(); });
}

inline std::unique_ptr<QuasiHermitianModel> example1_varying()
{
    return example1(
        [](const ParameterPoint& q) {
            return 2.0 + 0.4 * std::sin(1.7 * q(0) + 0.3) * std::cos(1.3 * q(1) - 0.5);
        },
        [](const ParameterPoint& q) { return 1.0 + 0.3 * std::sin(q(0) + q(1) + 0.2); });
}

inline ParameterPoint point2(double a, double b)
{
    ParameterPoint p(2);
    p << a, b;
    return p;
}

} // namespace hermitana::test

#endif
