// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_GEOMETRY_HPP
#define HERMITANA_GEOMETRY_HPP

#include "hermitana/model.hpp"
#include "hermitana/types.hpp"

#include <vector>

namespace hermitana {

enum class ConnectionKind { G, K };

struct ConnectionSample {
    ParameterPoint point;
    std::vector<ComplexMatrix> per_axis;
    ConnectionKind kind = ConnectionKind::G;
    /// max over axes of ||X + X^dag||_F; meaningful for kind G, where the
    /// connection is anti-Hermitian up to numerical error.
    double anti_hermiticity_residual = 0.0;
};

struct CurvatureSample {
    ParameterPoint point;
    int mu = 0;
    int nu = 1;
    ComplexMatrix F;
    ConnectionKind kind = ConnectionKind::G;
    /// For kind K: the simplified form -[K_mu, K_nu], which must match F.
    ComplexMatrix F_commutator_form;
};

/// Gauge connection G_mu = (1/2)[d_mu sqrt(eta), sqrt(eta)^-1], one matrix
/// per axis. The derivative of sqrt(eta) uses a 4th-order stencil of
/// half-width 2h per axis (h <= 0: per-axis default). Throws MetricInvalid
/// when the metric fails validation at the point.
ConnectionSample connection_G(const QuasiHermitianModel& model, const ParameterPoint& r,
                              double h = -1.0);

/// Connection K_mu = (1/2) eta^-1 d_mu eta, one matrix per axis.
ConnectionSample connection_K(const QuasiHermitianModel& model, const ParameterPoint& r,
                              double h = -1.0);

/// Curvature F^G_{mu nu} = d_mu G_nu - d_nu G_mu - [G_mu, G_nu].
CurvatureSample curvature_G(const QuasiHermitianModel& model, const ParameterPoint& r, int mu,
                            int nu, double h = -1.0);

/// Curvature F^K_{mu nu} = d_mu K_nu - d_nu K_mu + [K_mu, K_nu]; also
/// carries the simplified form -[K_mu, K_nu] as a cross-check.
CurvatureSample curvature_K(const QuasiHermitianModel& model, const ParameterPoint& r, int mu,
                            int nu, double h = -1.0);

struct IdentityResiduals {
    /// ||(d_mu K_nu - d_nu K_mu) + 2 [K_mu, K_nu]||_F
    double curl_commutator_residual = 0.0;
    /// ||F^K + sqrt(eta)^-1 F^G sqrt(eta)||_F
    double similarity_residual = 0.0;
};

IdentityResiduals check_identities(const QuasiHermitianModel& model, const ParameterPoint& r,
                                   int mu, int nu, double h = -1.0);

struct DeltaCurvature {
    /// Delta_{n, mu nu} = -(1/2) Im <Psi_n| eta F^K |Psi_n>
    double value = 0.0;
    /// |value - (1/2) Im <Psi_n| eta [K_mu, K_nu] |Psi_n>|
    double form_agreement = 0.0;
    /// |Re <Psi_n| eta F^K |Psi_n>|; the expectation is purely imaginary
    double reality_residual = 0.0;
};

/// Difference between the two Berry curvatures for band n at r.
/// Throws DegenerateBand when the gap to the nearest band is below
/// 1e-8 * ||H||.
DeltaCurvature delta_curvature(const QuasiHermitianModel& model, const ParameterPoint& r, int band,
                               int mu, int nu, double h = -1.0);

} // namespace hermitana

#endif
