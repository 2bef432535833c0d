// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_DYNAMICS_HPP
#define HERMITANA_DYNAMICS_HPP

#include "hermitana/model.hpp"
#include "hermitana/types.hpp"

#include <functional>
#include <vector>

namespace hermitana {

/// A parameter schedule t in [0, T] -> R(t). The curve must be evaluable
/// slightly outside [0, T] when no analytic derivative is supplied (the
/// fallback is a central difference in t).
struct Schedule {
    std::function<ParameterPoint(double)> curve;
    std::function<ParameterPoint(double)> curve_derivative; // optional
    double T = 1.0;
    double dt = 1e-3;

    /// Loop traversed once, linearly in t: the axis coordinate advances
    /// by 2*pi*winding over [0, T].
    static Schedule circle(const QuasiHermitianModel& model, int axis, const ParameterPoint& base,
                           int winding, double T, double dt);

    ParameterPoint derivative(double t) const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexVector> states;
    std::vector<double> eta_norms; // <Psi|eta|Psi> at each time
    double max_norm_drift = 0.0;   // max |eta_norm(t) - eta_norm(0)|
    bool naive = false;            // correction term switched off (non-physical)
};

/// Integrates i dPsi/dt = (H - (i/2) eta^-1 d eta/dt) Psi with classical
/// RK4. With naive = true the metric correction is dropped, demonstrating
/// the norm drift of the unmodified equation; no stability check applies
/// then. Throws StepUnstable when the corrected evolution drifts by more
/// than 1e-3.
Trajectory evolve_modified(const QuasiHermitianModel& model, const Schedule& schedule,
                           const ComplexVector& psi0, bool naive = false);

struct EvolveComparison {
    double max_deviation = 0.0; // max_t ||S(t) Psi(t) - psi(t)||
    Trajectory modified;        // Psi(t), modified equation
    std::vector<ComplexVector> mapped_states; // psi(t), Hermitian picture
};

/// Evolves Psi by the modified equation and psi by i dpsi/dt = H~ psi in
/// the proper frame S(t) along the schedule (psi(0) = S(0) Psi(0)), and
/// reports the maximal deviation ||S Psi - psi||.
EvolveComparison evolve_compare(const QuasiHermitianModel& model, const Schedule& schedule,
                                const ComplexVector& psi0);

} // namespace hermitana

#endif
