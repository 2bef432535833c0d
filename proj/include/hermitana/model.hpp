// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_MODEL_HPP
#define HERMITANA_MODEL_HPP

#include "hermitana/errors.hpp"
#include "hermitana/types.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hermitana {

struct AxisDomain {
    std::string label;
    double lo = 0.0;
    double hi = 1.0;
    bool periodic = false;

    double span() const { return hi - lo; }
};

struct SystemSample {
    ParameterPoint point;
    ComplexMatrix H;
    ComplexMatrix eta;
    double qh_residual = 0.0; // ||eta H - H^dag eta||_F
};

/// A parameterized system R -> (H(R), eta(R)). Implementations must be
/// immutable after construction; evaluation is pure and thread-safe.
class QuasiHermitianModel {
public:
    virtual ~QuasiHermitianModel() = default;

    virtual int dim() const = 0;
    virtual const std::vector<AxisDomain>& axes() const = 0;
    virtual std::string name() const = 0;

    virtual ComplexMatrix hamiltonian(const ParameterPoint& r) const = 0;
    virtual ComplexMatrix metric(const ParameterPoint& r) const = 0;

    /// Analytic d eta / d R[axis], when the model provides one.
    virtual std::optional<ComplexMatrix> analytic_metric_partial(const ParameterPoint& r,
                                                                 int axis) const
    {
        (void)r;
        (void)axis;
        return std::nullopt;
    }

    int param_count() const { return static_cast<int>(axes().size()); }

    /// True when every non-periodic coordinate lies inside its interval.
    /// Periodic coordinates are unconstrained (the maps wrap).
    bool in_domain(const ParameterPoint& r) const;

    /// Throws OutOfDomain with a description of the offending coordinate.
    void require_in_domain(const ParameterPoint& r) const;

    /// Default finite-difference step for the given axis: 1e-4 * span.
    double default_step(int axis) const;
};

/// Evaluates H, eta and the quasi-Hermiticity residual at a point.
/// Does not reject on the residual; the caller decides.
SystemSample eval_point(const QuasiHermitianModel& model, const ParameterPoint& r);

/// d eta / d R[axis]: the analytic partial when the model ships one,
/// otherwise a 4th-order central difference with step h (h <= 0 selects
/// the default). Throws StepTooLarge when the stencil leaves the domain
/// of a non-periodic axis.
ComplexMatrix metric_partial(const QuasiHermitianModel& model, const ParameterPoint& r, int axis,
                             double h = -1.0);

using ScalarField = std::function<double(const ParameterPoint&)>;

/// Two-level system H = B sx + i gamma sz with metric I + (gamma/B) sy,
/// defined on (x, y) in [0,1]^2. Requires B^2 - gamma^2 > 0 pointwise.
std::unique_ptr<QuasiHermitianModel> example1(ScalarField b_field, ScalarField gamma_field);

/// example1 with constant coefficients; validates B^2 - gamma^2 > 0 up
/// front and ships zero analytic metric partials.
std::unique_ptr<QuasiHermitianModel> example1_constant(double b, double gamma);

/// Two-level system on the disk (r, theta), r in [0, 1), theta periodic,
/// with metric I + r cos(theta) sx + r sin(theta) sy. alpha is fixed.
std::unique_ptr<QuasiHermitianModel> example2(double alpha);

/// Two-level system on the annulus (R, phi), R in [1, 2], phi periodic,
/// with metric I + (sqrt3/2)(cos(phi) sx + sin(phi) sy).
std::unique_ptr<QuasiHermitianModel> example3();

/// Seeded smooth random family on the torus (x, y) in [0, 2pi)^2:
/// eta = I + a(R) sx + b(R) sy with sup ||(a,b)|| < 0.9, and
/// H = sqrt(eta)^-1 h(R) sqrt(eta) for a random smooth Hermitian h with a
/// guaranteed spectral gap. Quasi-Hermitian by construction.
std::unique_ptr<QuasiHermitianModel> random_metric_family(std::uint64_t seed);

/// Built-in lookup used by the CLI: example1 (params B, gamma), example2
/// (param alpha), example3, random (param seed). Throws ConfigInvalid on
/// unknown names or missing parameters.
std::unique_ptr<QuasiHermitianModel> make_model(const std::string& name,
                                                const std::map<std::string, double>& params);

} // namespace hermitana

#endif
