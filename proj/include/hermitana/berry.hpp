// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_BERRY_HPP
#define HERMITANA_BERRY_HPP

#include "hermitana/model.hpp"
#include "hermitana/spectra.hpp"
#include "hermitana/transport.hpp"
#include "hermitana/types.hpp"

#include <vector>

namespace hermitana {

enum class FrameKind { quasi, hermitian };

/// Samples of one tracked eigenstate along a path. Band identity follows
/// the maximal eta-overlap with the previous sample; phases carry the
/// discrete parallel-transport gauge (<Psi_k| eta_k |Psi_{k+1}> real
/// positive).
struct BandPath {
    int band = 0;
    std::vector<ComplexVector> states;
    std::vector<ComplexMatrix> etas;
    std::vector<double> energies; // Re E along the path
};

/// Throws BandCrossingOnLoop when the tracked band becomes ambiguous or
/// the spectrum degenerates along the path.
BandPath band_path(const QuasiHermitianModel& model, const PathSpec& path, int band);

struct ConnectionValue {
    double value = 0.0;         // Re of the connection formula
    double imag_residual = 0.0; // |Im ...|, zero for eta-normalized states
};

/// The quasi-Hermitian Berry connection formula
///   A = i ( <Psi| eta |dPsi> + (1/2) <Psi| deta |Psi> )
/// for explicitly supplied state and derivatives.
ConnectionValue qh_connection_value(const ComplexVector& psi, const ComplexVector& dpsi,
                                    const ComplexMatrix& eta, const ComplexMatrix& deta);

/// Connection of band n at a point, one value per axis, in the
/// eigensystem's own phase convention. State derivatives use a 4th-order
/// stencil with eta-overlap band matching. Throws DegenerateBand.
std::vector<ConnectionValue> qh_connection(const QuasiHermitianModel& model,
                                           const ParameterPoint& r, int band, double h = -1.0);

/// Per-sample connection -Im <Psi_k| eta_k |dPsi_k/dt> along the path
/// (5-point stencils; one-sided at the ends).
std::vector<double> qh_connection_along(const BandPath& bp, const PathSpec& path);

/// Per-sample connection of the mapped eigenstate psi_k = S_k Psi_k,
/// -Im <psi_k|dpsi_k/dt>. Coincides with qh_connection_along wherever the
/// frame is proper.
std::vector<double> hermitian_connection(const ProperFrame& frame, const BandPath& bp,
                                         const PathSpec& path);

struct BerryPhaseResult {
    double phase = 0.0;       // in (-pi, pi]
    double convergence = -1.0; // circular distance to the half-step result
};

/// Geometric phase of band n around a closed loop, in the chosen frame.
/// Discrete parallel-transport gauge, trapezoid integration of the
/// residual connection, closing mismatch -arg <v_0|m_0|v_N>.
BerryPhaseResult berry_phase(const QuasiHermitianModel& model, const PathSpec& loop, int band,
                             FrameKind frame, double h = -1.0);

/// Gauge-invariant discrete phase of a state sequence under the given
/// per-sample inner-product metrics; building block of berry_phase.
double discrete_berry_phase(const std::vector<ComplexVector>& states,
                            const std::vector<ComplexMatrix>& metrics,
                            const std::vector<double>& t);

struct BerryCurvatures {
    double F = 0.0;        // quasi-Hermitian curvature (explicit Im-form)
    double F_loop = 0.0;   // discrete loop integral of the connection
    double F_tilde = 0.0;  // curvature of the mapped (Hermitian) state
    double delta = 0.0;    // metric-geometry curvature difference
    double curl_agreement = 0.0;     // |F - F_loop|
    double relation_residual = 0.0;  // |F_tilde - F + 2 delta|
};

/// Both Berry curvatures of band n at r for the axis pair (mu, nu), the
/// curvature difference and the consistency residuals.
BerryCurvatures berry_curvatures(const QuasiHermitianModel& model, const ParameterPoint& r,
                                 int band, int mu, int nu, double h = -1.0);

} // namespace hermitana

#endif
