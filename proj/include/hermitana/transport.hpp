// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_TRANSPORT_HPP
#define HERMITANA_TRANSPORT_HPP

#include "hermitana/geometry.hpp"
#include "hermitana/model.hpp"
#include "hermitana/types.hpp"

#include <string>
#include <vector>

namespace hermitana {

/// A discretized curve in parameter space: N+1 samples and the running
/// path parameter at each sample (the swept angle for circles, arc length
/// for waypoint paths).
struct PathSpec {
    std::vector<ParameterPoint> samples;
    std::vector<double> param;
    bool closed = false;
    std::string generator = "waypoints";

    int segments() const { return static_cast<int>(samples.size()) - 1; }

    /// Circle around one (periodic) axis at fixed remaining coordinates.
    /// The axis coordinate advances by 2*pi*winding over `steps` segments.
    static PathSpec circle(const QuasiHermitianModel& model, int axis, const ParameterPoint& base,
                           int winding, int steps);

    /// Same, selecting the axis by its label ("theta", "phi", ...).
    static PathSpec circle_by_label(const QuasiHermitianModel& model, const std::string& label,
                                    const ParameterPoint& base, int winding, int steps);

    /// Piecewise-linear path through the waypoints; `steps` segments are
    /// distributed over the legs proportionally to their length.
    static PathSpec waypoints(const QuasiHermitianModel& model,
                              const std::vector<ParameterPoint>& points, bool closed, int steps);

    /// Same path with each segment split in two.
    PathSpec refined() const;
    /// Every second sample (segments() must be even).
    PathSpec coarsened() const;
    /// The path traversed backwards.
    PathSpec reversed() const;

    /// Validates sample count (>= 8 segments), domain membership and the
    /// closure condition (endpoints equal modulo axis periodicity).
    void validate(const QuasiHermitianModel& model) const;
};

struct TransportResult {
    std::vector<ComplexMatrix> U_samples;
    double unitarity_residual = 0.0; // max_k ||U_k^dag U_k - I||_F
    int step_count = 0;
    /// ||endpoint - endpoint at half the steps||_F; -1 when unavailable.
    double convergence_estimate = -1.0;
};

/// Integrates dU = -U G_mu dR^mu along the path by the midpoint
/// product-of-exponentials rule, U_{k+1} = U_k exp(-G(mid) . dR).
/// Second order; exactly unitary up to rounding.
TransportResult transport_unitary(const QuasiHermitianModel& model, const PathSpec& path,
                                  const ComplexMatrix& u0, double h = -1.0);

struct HolonomyResult {
    ComplexMatrix W;
    double distance_to_identity = 0.0; // ||W - I||_F
    double distance_to_center = 0.0;   // min_phi ||W - e^{i phi} I||_F
    bool nontrivial = false;
    double unitarity_residual = 0.0;
    double convergence_estimate = -1.0;
};

/// Wilson loop W(C): transport endpoint with U0 = I around a closed path.
/// Throws PathNotClosed for open paths.
HolonomyResult wilson_loop(const QuasiHermitianModel& model, const PathSpec& loop, double h = -1.0,
                           double tol = 1e-6);

struct ProperFrame {
    std::vector<ComplexMatrix> S_samples;
    std::vector<ComplexMatrix> U_samples;
    /// max over interior samples of ||S^dag dS/dt - (1/2) d eta/dt||_F,
    /// with path derivatives from a 5-point stencil on the samples.
    double proper_residual = 0.0;
    double factorization_residual = 0.0; // max ||S^dag S - eta||_F
};

/// Proper frame S_k = U_k sqrt(eta(R_k)) along the path.
ProperFrame proper_frame(const QuasiHermitianModel& model, const PathSpec& path,
                         const ComplexMatrix& u0, double h = -1.0);

struct MappedHamiltonian {
    std::vector<ComplexMatrix> H_tilde;
    double hermiticity_residual = 0.0; // max ||H~ - H~^dag||_F
    double periodicity_defect = -1.0;  // ||H~_N - H~_0||_F (closed paths)
    double monodromy_residual = -1.0;  // ||H~_N - V H~_0 V^dag||, V = U_N U_0^dag
};

/// H~_k = S_k H(R_k) S_k^-1 with diagnostics. Throws SingularFrame when
/// some S_k has condition number above 1e12.
MappedHamiltonian mapped_hamiltonian(const QuasiHermitianModel& model, const ProperFrame& frame,
                                     const PathSpec& path);

enum class Verdict { none, geometric, topological };

std::string to_string(Verdict v);

struct LoopFinding {
    std::string id;
    HolonomyResult holonomy;
};

struct ObstructionReport {
    Verdict verdict = Verdict::none;
    double max_curvature_norm = 0.0;
    std::vector<LoopFinding> loop_results;
    std::string notes;
};

/// Classifies the obstruction over a sampled region: geometric when the
/// curvature sup-norm exceeds tol (loops are then skipped), topological
/// when the region is flat but some loop holonomy is nontrivial, none
/// otherwise.
ObstructionReport classify_obstruction(const QuasiHermitianModel& model,
                                       const std::vector<ParameterPoint>& grid,
                                       const std::vector<PathSpec>& loops, double tol = 1e-6,
                                       double h = -1.0);

/// Uniform grid over the model's domain; non-periodic axes are inset by
/// `inset` times the span (stencil clearance), periodic axes cover one
/// full period without the duplicate endpoint. Optional per-axis ranges
/// override the defaults.
std::vector<ParameterPoint> make_grid(const QuasiHermitianModel& model, int points_per_axis,
                                      double inset = 0.02,
                                      const std::vector<std::pair<double, double>>& ranges = {});

} // namespace hermitana

#endif
