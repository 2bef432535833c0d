// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#include "hermitana/model.hpp"

#include "hermitana/linalg.hpp"
#include "hermitana/stencil.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace hermitana {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_point_size(const QuasiHermitianModel& model, const ParameterPoint& r)
{
    if (r.size() != model.param_count()) {
        std::ostringstream msg;
        msg << model.name() << ": point has " << r.size() << " coordinates, model has "
            << model.param_count() << " axes";
        throw OutOfDomain(msg.str());
    }
}

class Example1Model final : public QuasiHermitianModel {
public:
    Example1Model(ScalarField b, ScalarField gamma, bool constant_fields)
        : b_(std::move(b)), gamma_(std::move(gamma)), constant_fields_(constant_fields),
          axes_{{"x", 0.0, 1.0, false}, {"y", 0.0, 1.0, false}}
    {
    }

    int dim() const override { return 2; }
    const std::vector<AxisDomain>& axes() const override { return axes_; }
    std::string name() const override { return "example1"; }

    ComplexMatrix hamiltonian(const ParameterPoint& r) const override
    {
        require_in_domain(r);
        return b_(r) * pauli_x() + Complex(0, 1) * gamma_(r) * pauli_z();
    }

    ComplexMatrix metric(const ParameterPoint& r) const override
    {
        require_in_domain(r);
        const double b = b_(r);
        const double g = gamma_(r);
        if (!(b * b - g * g > 0.0)) {
            std::ostringstream msg;
            msg << "example1: B^2 - gamma^2 = " << b * b - g * g << " must be positive";
            throw MetricInvalid(msg.str());
        }
        return identity2() + (g / b) * pauli_y();
    }

    std::optional<ComplexMatrix> analytic_metric_partial(const ParameterPoint& r,
                                                         int axis) const override
    {
        if (!constant_fields_)
            return std::nullopt;
        require_in_domain(r);
        (void)axis;
        return ComplexMatrix::Zero(2, 2);
    }

private:
    ScalarField b_;
    ScalarField gamma_;
    bool constant_fields_;
    std::vector<AxisDomain> axes_;
};

class Example2Model final : public QuasiHermitianModel {
public:
    explicit Example2Model(double alpha)
        : alpha_(alpha), axes_{{"r", 0.0, 1.0 - 1e-6, false}, {"theta", 0.0, two_pi, true}}
    {
    }

    int dim() const override { return 2; }
    const std::vector<AxisDomain>& axes() const override { return axes_; }
    std::string name() const override { return "example2"; }

    ComplexMatrix hamiltonian(const ParameterPoint& p) const override
    {
        require_in_domain(p);
        const double r = p(0);
        const double th = p(1);
        const double gr = 1.0 / std::sqrt(1.0 - r * r);
        const double sa = std::sin(alpha_);
        const double ca = std::cos(alpha_);
        const Complex i(0, 1);
        const Complex hz = gr * ca + i * gr * r * sa * std::sin(2.0 * th);
        const Complex hx = sa * (0.5 * (gr + 1.0) * std::cos(th) - 0.5 * (gr - 1.0) * std::cos(3.0 * th)) -
                           i * gr * r * ca * std::sin(th);
        const Complex hy = sa * (-0.5 * (gr + 1.0) * std::sin(th) - 0.5 * (gr - 1.0) * std::sin(3.0 * th)) +
                           i * gr * r * ca * std::cos(th);
        return hx * pauli_x() + hy * pauli_y() + hz * pauli_z();
    }

    ComplexMatrix metric(const ParameterPoint& p) const override
    {
        require_in_domain(p);
        const double r = p(0);
        const double th = p(1);
        return identity2() + r * std::cos(th) * pauli_x() + r * std::sin(th) * pauli_y();
    }

    std::optional<ComplexMatrix> analytic_metric_partial(const ParameterPoint& p,
                                                         int axis) const override
    {
        require_in_domain(p);
        const double r = p(0);
        const double th = p(1);
        if (axis == 0)
            return (std::cos(th) * pauli_x() + std::sin(th) * pauli_y()).eval();
        return (r * (-std::sin(th) * pauli_x() + std::cos(th) * pauli_y())).eval();
    }

private:
    double alpha_;
    std::vector<AxisDomain> axes_;
};

class Example3Model final : public QuasiHermitianModel {
public:
    Example3Model() : axes_{{"R", 1.0, 2.0, false}, {"phi", 0.0, two_pi, true}} {}

    int dim() const override { return 2; }
    const std::vector<AxisDomain>& axes() const override { return axes_; }
    std::string name() const override { return "example3"; }

    ComplexMatrix hamiltonian(const ParameterPoint& p) const override
    {
        require_in_domain(p);
        const double phi = p(1);
        const double s = std::sin(phi);
        const double c = std::cos(phi);
        const Complex i(0, 1);
        return (1.0 + s * s) * pauli_x() - s * c * pauli_y() + i * std::sqrt(3.0) * s * pauli_z();
    }

    ComplexMatrix metric(const ParameterPoint& p) const override
    {
        require_in_domain(p);
        const double phi = p(1);
        const double k = std::sqrt(3.0) / 2.0;
        return identity2() + k * (std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y());
    }

    std::optional<ComplexMatrix> analytic_metric_partial(const ParameterPoint& p,
                                                         int axis) const override
    {
        require_in_domain(p);
        if (axis == 0)
            return ComplexMatrix::Zero(2, 2);
        const double phi = p(1);
        const double k = std::sqrt(3.0) / 2.0;
        return (k * (-std::sin(phi) * pauli_x() + std::cos(phi) * pauli_y())).eval();
    }

private:
    std::vector<AxisDomain> axes_;
};

// Smooth 2pi-periodic scalar built from a few random Fourier terms,
// normalized so |value| <= amplitude everywhere.
struct FourierField {
    double amplitude = 0.0;
    double c1 = 0, c2 = 0, c3 = 0;
    double p1 = 0, p2 = 0, p3 = 0;

    static FourierField draw(std::mt19937_64& rng, double amplitude)
    {
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        std::uniform_real_distribution<double> phase(0.0, two_pi);
        FourierField f;
        f.amplitude = amplitude;
        f.c1 = coeff(rng);
        f.c2 = coeff(rng);
        f.c3 = coeff(rng);
        const double total = std::abs(f.c1) + std::abs(f.c2) + std::abs(f.c3);
        if (total > 0) {
            f.c1 /= total;
            f.c2 /= total;
            f.c3 /= total;
        }
        f.p1 = phase(rng);
        f.p2 = phase(rng);
        f.p3 = phase(rng);
        return f;
    }

    double operator()(double x, double y) const
    {
        return amplitude * (c1 * std::sin(x + p1) + c2 * std::cos(y + p2) +
                            c3 * std::sin(x + 2.0 * y + p3));
    }
};

class RandomMetricModel final : public QuasiHermitianModel {
public:
    explicit RandomMetricModel(std::uint64_t seed)
        : seed_(seed), axes_{{"x", 0.0, two_pi, true}, {"y", 0.0, two_pi, true}}
    {
        std::mt19937_64 rng(seed);
        a_ = FourierField::draw(rng, 0.6);
        b_ = FourierField::draw(rng, 0.6);
        // h = sz + perturbation keeps the gap away from zero everywhere
        h0_ = FourierField::draw(rng, 0.3);
        hx_ = FourierField::draw(rng, 0.3);
        hy_ = FourierField::draw(rng, 0.3);
        hz_ = FourierField::draw(rng, 0.3);
    }

    int dim() const override { return 2; }
    const std::vector<AxisDomain>& axes() const override { return axes_; }
    std::string name() const override { return "random(" + std::to_string(seed_) + ")"; }

    ComplexMatrix hamiltonian(const ParameterPoint& p) const override
    {
        require_in_domain(p);
        const double x = p(0), y = p(1);
        const ComplexMatrix h = h0_(x, y) * identity2() + hx_(x, y) * pauli_x() +
                                hy_(x, y) * pauli_y() + (1.0 + hz_(x, y)) * pauli_z();
        const SqrtPair s = hermitian_sqrt(metric(p));
        return s.inv_sqrt * h * s.sqrt;
    }

    ComplexMatrix metric(const ParameterPoint& p) const override
    {
        require_in_domain(p);
        const double x = p(0), y = p(1);
        return identity2() + a_(x, y) * pauli_x() + b_(x, y) * pauli_y();
    }

private:
    std::uint64_t seed_;
    std::vector<AxisDomain> axes_;
    FourierField a_, b_, h0_, hx_, hy_, hz_;
};

} // namespace

bool QuasiHermitianModel::in_domain(const ParameterPoint& r) const
{
    if (r.size() != param_count())
        return false;
    const auto& ax = axes();
    for (int i = 0; i < param_count(); ++i) {
        if (ax[i].periodic)
            continue;
        if (r(i) < ax[i].lo || r(i) > ax[i].hi)
            return false;
    }
    return true;
}

void QuasiHermitianModel::require_in_domain(const ParameterPoint& r) const
{
    check_point_size(*this, r);
    const auto& ax = axes();
    for (int i = 0; i < param_count(); ++i) {
        if (ax[i].periodic)
            continue;
        if (r(i) < ax[i].lo || r(i) > ax[i].hi) {
            std::ostringstream msg;
            msg << name() << ": coordinate " << ax[i].label << " = " << r(i) << " outside ["
                << ax[i].lo << ", " << ax[i].hi << "]";
            throw OutOfDomain(msg.str());
        }
    }
}

double QuasiHermitianModel::default_step(int axis) const
{
    return 1e-4 * axes()[axis].span();
}

SystemSample eval_point(const QuasiHermitianModel& model, const ParameterPoint& r)
{
    SystemSample out;
    out.point = r;
    out.H = model.hamiltonian(r);
    out.eta = model.metric(r);
    out.qh_residual = (out.eta * out.H - out.H.adjoint() * out.eta).norm();
    return out;
}

ComplexMatrix metric_partial(const QuasiHermitianModel& model, const ParameterPoint& r, int axis,
                             double h)
{
    model.require_in_domain(r);
    if (axis < 0 || axis >= model.param_count())
        throw OutOfDomain("metric_partial: axis index out of range");
    if (auto analytic = model.analytic_metric_partial(r, axis))
        return *analytic;

    if (h <= 0.0)
        h = model.default_step(axis);
    const AxisDomain& ax = model.axes()[axis];
    if (!ax.periodic && (r(axis) - 2.0 * h < ax.lo || r(axis) + 2.0 * h > ax.hi))
        throw StepTooLarge("metric_partial: stencil of half-width " + std::to_string(2.0 * h) +
                           " leaves the domain of axis " + ax.label);

    const auto offsets = central4_offsets(h);
    const auto weights = fd_weights(0.0, offsets, 1);
    ComplexMatrix d = ComplexMatrix::Zero(model.dim(), model.dim());
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        ParameterPoint shifted = r;
        shifted(axis) += offsets[k];
        d += weights[k] * model.metric(shifted);
    }
    return d;
}

std::unique_ptr<QuasiHermitianModel> example1(ScalarField b_field, ScalarField gamma_field)
{
    return std::make_unique<Example1Model>(std::move(b_field), std::move(gamma_field), false);
}

std::unique_ptr<QuasiHermitianModel> example1_constant(double b, double gamma)
{
    if (!(b * b - gamma * gamma > 0.0))
        throw ConfigInvalid("example1: B^2 - gamma^2 must be positive");
    return std::make_unique<Example1Model>([b](const ParameterPoint&) { return b; },
                                           [gamma](const ParameterPoint&) { return gamma; }, true);
}

std::unique_ptr<QuasiHermitianModel> example2(double alpha)
{
    return std::make_unique<Example2Model>(alpha);
}

std::unique_ptr<QuasiHermitianModel> example3()
{
    return std::make_unique<Example3Model>();
}

std::unique_ptr<QuasiHermitianModel> random_metric_family(std::uint64_t seed)
{
    return std::make_unique<RandomMetricModel>(seed);
}

std::unique_ptr<QuasiHermitianModel> make_model(const std::string& name,
                                                const std::map<std::string, double>& params)
{
    auto get = [&](const std::string& key, std::optional<double> fallback) {
        auto it = params.find(key);
        if (it != params.end())
            return it->second;
        if (fallback)
            return *fallback;
        throw ConfigInvalid("model " + name + " requires parameter '" + key + "'");
    };
    if (name == "example1")
        return example1_constant(get("B", std::nullopt), get("gamma", std::nullopt));
    if (name == "example2")
        return example2(get("alpha", std::nullopt));
    if (name == "example3")
        return example3();
    if (name == "random")
        return random_metric_family(static_cast<std::uint64_t>(get("seed", 12345.0)));
    throw ConfigInvalid("unknown model '" + name + "'");
}

} // namespace hermitana
