#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bongle/bongle.hpp"
#include "bongle/triangulation.hpp"

namespace bongle {

/// Thrown by bongle_volume for non-hyperbolic input; carries the verdict.
struct NotHyperbolicError : Error {
    explicit NotHyperbolicError(HyperbolicityVerdict v)
        : Error(std::string("bongle is not hyperbolic (") +
                std::string(to_string(v.reason)) + ")"),
          verdict(v) {}
    HyperbolicityVerdict verdict;
};

struct OptimizerOptions {
    double tol = 1e-9;            ///< projected-gradient norm target
    int max_iterations = 5000;
    double fd_step = 1e-6;        ///< central-difference step, ideal-ended slots
    double degeneracy_band = 1e-6;  ///< distance from {0, pi} triggering BoundOnly
    double barrier_initial = 1e-3;  ///< log-barrier weight; decays to barrier_min
    double barrier_decay = 0.1;
    double barrier_min = 1e-11;
    int restarts = 0;             ///< extra random feasible starts (uniqueness audit)
    unsigned seed = 12345;
    bool verify = false;          ///< balanced: cross-check closed form vs optimizer
    bool schlafli_everywhere = false;  ///< renormalized analytic lengths for all slots
};

enum class VolumeMethod { KnownLink, BalancedClosedForm, Optimizer, BoundOnly };
std::string_view to_string(VolumeMethod m);

struct VolumeReport {
    double volume = 0;
    VolumeMethod method = VolumeMethod::Optimizer;
    int iterations = 0;
    double projected_gradient_norm = 0;
    /// Max constraint residual over every iterate visited, not just the last.
    double constraint_max_residual = 0;
    std::vector<int> degenerate_slots;  ///< slots within the band of {0, pi}
    std::string convention = "C1";
    bool converged = false;
    std::string note;
    std::optional<double> upper_bound;        ///< V_n^B when method == BoundOnly
    std::optional<double> cross_check_volume; ///< the other route, when verified
    std::optional<double> restart_spread;     ///< max |V_i - V_j| over restarts
    std::optional<AngleAssignment> maximizer;
};

std::string to_json(const VolumeReport& r);
VolumeReport volume_report_from_json(std::string_view json_text);

/// V_n^B = 2n Vol(T_n) = n * bipyramid_volume(pi/3, 4 pi/3n).
/// The volume of every balanced n-bongle for even n >= 2; for odd n it is
/// the abstract upper bound only.
double balanced_closed_form(int n);

/// Objective: sum of signed tetrahedron volumes over the decomposition.
double total_volume(const TriangulatedBongle& t, const AngleAssignment& x);

/// Gradient of total_volume. Equatorial (A) slots use the Schlaefli length
/// -l/2 analytically; the ideal-ended slots use central finite differences
/// of the per-tetrahedron volume (or renormalized Schlaefli lengths when
/// opts.schlafli_everywhere is set).
std::vector<double> volume_gradient(const TriangulatedBongle& t,
                                    const AngleAssignment& x,
                                    const OptimizerOptions& opts = {});

/// Projected-gradient ascent over the angle-structure polytope from
/// feasible_start: steps stay in the nullspace of the constraint matrix,
/// a backtracking line search enforces monotone ascent and realizability,
/// and a logarithmic barrier (decaying to zero) keeps slots off {0, pi}.
/// A slot entering the degeneracy band yields a BoundOnly report carrying
/// V_n^B as the certified upper bound.
VolumeReport maximize_volume(const TriangulatedBongle& t,
                             const OptimizerOptions& opts = {});

/// Dispatch: throws NotHyperbolicError for non-alternating input; n = 2 uses
/// the known link volumes; balanced even n >= 4 uses the closed form (with
/// an optimizer cross-check under opts.verify, disagreement > 1e-6 throws
/// VerificationError); everything else runs the optimizer on the strict
/// system of the orientation-normalized bongle.
VolumeReport bongle_volume(const Bongle& b, const OptimizerOptions& opts = {});

}  // namespace bongle
