#pragma once

#include <string>
#include <vector>

#include "bongle/optimizer.hpp"

namespace bongle {

struct BoundRow {
    int n = 0;
    double v_n_b = 0;              ///< V_n^B = 2n Vol(T_n)
    double five_n_v_tet = 0;       ///< 5 n v_tet
    double per_crossing_bound = 0; ///< (2n/(n-1)) Vol(T_n) = V_n^B/(n-1)
    double v_n_b_over_n = 0;
    bool below_five_n = false;     ///< V_n^B < 5 n v_tet (strict)
    bool inequality_holds = false; ///< per_crossing_bound > 5 v_tet
};

BoundRow bound_row(int n);

struct InequalityCheck {
    bool holds = false;
    double margin = 0;  ///< (2n/(n-1)) Vol(T_n) - 5 v_tet
};

/// The per-crossing inequality (2n/(n-1)) Vol(T_n) > 5 v_tet.
InequalityCheck inequality_check(int n);

/// The two contributions to (2n/(n-1)) Vol(T_n) = z1_term - z2_term:
/// z1_term = (n/(n-1)) Im U(z1, T_n), z2_term = (n/(n-1)) Im U(z2, T_n).
/// Im U(z2) is negative, so the quantity entering the volume with a plus
/// sign is -z2_term; its decrease is equivalent to z2_term increasing.
struct MonotonicityRow {
    int n = 0;
    double z1_term = 0;
    double z2_term = 0;
    double combined = 0;          ///< z1_term - z2_term
    bool z1_decreased = false;    ///< vs the previous row
    bool z2_increased = false;    ///< vs the previous row
    bool combined_decreased = false;
};

/// Per-n scan over [n_min, n_max], 2 <= n_min <= n_max <= 10^6.
std::vector<MonotonicityRow> monotonicity_scan(int n_min, int n_max);

struct LimitRow {
    int n = 0;
    double v_n_b_over_n = 0;
    double gap = 0;  ///< 5 v_tet - V_n^B/n, positive and shrinking
};

std::vector<LimitRow> limit_table(int n_min, int n_max);

struct KOrderRow {
    int k = 0;
    std::string representative;  ///< canonical serialized form
    double volume = 0;
    VolumeMethod method = VolumeMethod::Optimizer;
    bool matches_closed_form = false;  ///< only meaningful at k = n/2
};

struct KOrderScan {
    int n = 0;
    std::vector<KOrderRow> rows;  ///< all classes, sorted by (k, representative)
    /// True when max volume at k <= min volume at k+1 (+1e-9 slack) for all k.
    bool observed_monotone = false;
    std::string note = "conjecture exploration - not a theorem";
};

/// Volumes of all alternating n-bongle classes grouped by innie count k,
/// k = 0..floor(n/2). Classes sharing k are reported separately.
KOrderScan k_order_scan(int n, const OptimizerOptions& opts = {});

}  // namespace bongle
