#include "bongle/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace bongle {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kBoundMargin = 1e-7;     // line-search floor before the band check
constexpr double kVertexBand = 1e-7;      // "vertex within ideality" band for nudging

Eigen::MatrixXd constraint_matrix(const TriangulatedBongle& t) {
    const auto& rows = t.constraints().rows;
    Eigen::MatrixXd m(rows.size(), t.slot_count());
    m.setZero();
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [slot, coeff] : rows[i].coefficients)
            m(static_cast<Eigen::Index>(i), slot) = coeff;
    return m;
}

/// Orthonormal basis of the nullspace of the constraint matrix.
Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    Eigen::MatrixXd kernel = lu.kernel();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(
                                                kernel.rows(), kernel.cols());
    return q;
}

bool all_realizable(const TriangulatedBongle& t, const AngleAssignment& x) {
    for (int j = 0; j < t.crossings(); ++j)
        for (int k = 0; k < 3; ++k)
            if (!admits_realization(t.tetrahedron(x, j, k))) return false;
    return true;
}

bool within_bounds(const AngleAssignment& x, double margin) {
    for (double v : x)
        if (!(v > margin && v < kPi - margin)) return false;
    return true;
}

double barrier_value(const AngleAssignment& x, double mu) {
    if (mu <= 0) return 0;
    double s = 0;
    for (double v : x) s += std::log(v) + std::log(kPi - v);
    return mu * s;
}

/// Angle-sum margins of the two non-constrained vertices r, s of each
/// tetrahedron: positive means truncated.
void vertex_margins(const TriangulatedBongle& t, const AngleAssignment& x, int j,
                    int k, double& mr, double& ms) {
    const GeneralizedTetrahedron tet = t.tetrahedron(x, j, k);
    mr = kPi - (tet.A + tet.B + tet.C);
    ms = kPi - (tet.A + tet.E + tet.F);
}

/// The symmetric start can park the equatorial vertices exactly on the
/// ideality boundary (e.g. the all-outie 3-bongle, inner A = 2 pi/3).
/// Ascent directions computed there are unreliable, so push the affected
/// vertex angle sums strictly below pi along a feasible direction first.
AngleAssignment interior_start(const TriangulatedBongle& t, const Eigen::MatrixXd& ns,
                               const AngleAssignment& x0) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(t.slot_count());
    bool need = false;
    for (int j = 0; j < t.crossings(); ++j)
        for (int k = 0; k < 3; ++k) {
            double mr, ms;
            vertex_margins(t, x0, j, k, mr, ms);
            const int base = (j * 3 + k) * 6;
            if (mr < kVertexBand) {
                need = true;
                w[base + 0] -= 1;  // A
                w[base + 1] -= 1;  // B
                w[base + 2] -= 1;  // C
            }
            if (ms < kVertexBand) {
                need = true;
                w[base + 0] -= 1;  // A
                w[base + 4] -= 1;  // E
                w[base + 5] -= 1;  // F
            }
        }
    if (!need) return x0;
    Eigen::VectorXd d = ns * (ns.transpose() * w);
    const double nd = d.norm();
    if (nd < 1e-12) return x0;
    d /= nd;
    for (double alpha : {0.1, 0.05, 0.02, 0.01, 0.005, 0.001}) {
        AngleAssignment xn = x0;
        for (int i = 0; i < t.slot_count(); ++i) xn[i] += alpha * d[i];
        if (!within_bounds(xn, 1e-6)) continue;
        double worst = kPi;
        for (int j = 0; j < t.crossings(); ++j)
            for (int k = 0; k < 3; ++k) {
                double mr, ms;
                vertex_margins(t, xn, j, k, mr, ms);
                worst = std::min({worst, mr, ms});
            }
        if (worst > kVertexBand && all_realizable(t, xn)) return xn;
    }
    return x0;
}

struct AscentResult {
    AngleAssignment x;
    double volume = 0;
    double grad_norm = 0;
    int iterations = 0;
    double max_residual = 0;
    bool converged = false;
    bool hit_band = false;
    bool stalled = false;  // no improving step despite a nonzero projected gradient
};

AscentResult ascend(const TriangulatedBongle& t, const Eigen::MatrixXd& ns,
                    AngleAssignment x, const OptimizerOptions& opts) {
    AscentResult res;
    res.max_residual = constraint_residuals(t, x).max_norm;

    for (double v : x)
        if (v < opts.degeneracy_band || v > kPi - opts.degeneracy_band) res.hit_band = true;
    if (res.hit_band) {
        res.x = std::move(x);
        res.volume = total_volume(t, res.x);
        return res;
    }

    double mu = opts.barrier_initial;
    double volume = total_volume(t, x);
    double objective = volume + barrier_value(x, mu);
    int it = 0;
    const auto decayed = [&opts](double m) {
        const double next = m * opts.barrier_decay;
        return next < opts.barrier_min ? 0.0 : next;
    };

    while (it < opts.max_iterations) {
        ++it;
        std::vector<double> g = volume_gradient(t, x, opts);
        if (mu > 0)
            for (int i = 0; i < t.slot_count(); ++i)
                g[i] += mu * (1.0 / x[i] - 1.0 / (kPi - x[i]));
        Eigen::Map<const Eigen::VectorXd> gv(g.data(), g.size());
        const Eigen::VectorXd gy = ns.transpose() * gv;
        const double gn = gy.norm();

        const double inner_tol = mu > 0 ? std::max(opts.tol, 0.1 * mu) : opts.tol;
        if (gn < inner_tol) {
            if (mu <= 0) {
                res.converged = true;
                break;
            }
            mu = decayed(mu);
            objective = volume + barrier_value(x, mu);
            continue;
        }

        const Eigen::VectorXd dir = ns * gy;
        double step = 1.0;
        bool accepted = false;
        AngleAssignment xn(t.slot_count());
        double vol_n = 0, obj_n = 0;
        while (step > 1e-14) {
            for (int i = 0; i < t.slot_count(); ++i) xn[i] = x[i] + step * dir[i];
            if (within_bounds(xn, kBoundMargin) && all_realizable(t, xn)) {
                vol_n = total_volume(t, xn);
                obj_n = vol_n + barrier_value(xn, mu);
                if (obj_n > objective + 1e-4 * step * gn * gn) {
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (mu > 0) {  // barrier exhausted at this weight; relax it
                mu = decayed(mu);
                objective = volume + barrier_value(x, mu);
                continue;
            }
            res.grad_norm = gn;
            res.stalled = true;
            break;
        }
        x.swap(xn);
        volume = vol_n;
        objective = obj_n;
        res.grad_norm = gn;
        res.max_residual =
            std::max(res.max_residual, constraint_residuals(t, x).max_norm);

        for (double v : x)
            if (v < opts.degeneracy_band || v > kPi - opts.degeneracy_band) {
                res.hit_band = true;
                break;
            }
        if (res.hit_band) break;
    }

    // Final pure projected-gradient norm (no barrier term).
    {
        std::vector<double> g = volume_gradient(t, x, opts);
        Eigen::Map<const Eigen::VectorXd> gv(g.data(), g.size());
        res.grad_norm = (ns.transpose() * gv).norm();
    }
    res.x = std::move(x);
    res.volume = total_volume(t, res.x);
    res.iterations = it;
    if (!res.converged) res.converged = res.grad_norm < 10 * opts.tol;
    return res;
}

AngleAssignment random_feasible_start(const TriangulatedBongle& t,
                                      const Eigen::MatrixXd& ns,
                                      const AngleAssignment& x0, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double scale : {0.05, 0.02, 0.01, 0.005, 0.002}) {
        for (int attempt = 0; attempt < 20; ++attempt) {
            Eigen::VectorXd y(ns.cols());
            for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = scale * gauss(rng);
            const Eigen::VectorXd d = ns * y;
            AngleAssignment x = x0;
            for (int i = 0; i < t.slot_count(); ++i) x[i] += d[i];
            if (within_bounds(x, 1e-4) && all_realizable(t, x)) return x;
        }
    }
    return x0;
}

}  // namespace

std::string_view to_string(VolumeMethod m) {
    switch (m) {
        case VolumeMethod::KnownLink: return "KnownLink";
        case VolumeMethod::BalancedClosedForm: return "BalancedClosedForm";
        case VolumeMethod::Optimizer: return "Optimizer";
        case VolumeMethod::BoundOnly: return "BoundOnly";
    }
    return "?";
}

double balanced_closed_form(int n) {
    if (n < 2) throw Error("balanced_closed_form requires n >= 2");
    return 2.0 * n * tn_volume(n);
}

double total_volume(const TriangulatedBongle& t, const AngleAssignment& x) {
    if (static_cast<int>(x.size()) != t.slot_count())
        throw DimensionMismatchError("angle assignment size mismatch");
    double s = 0;
    for (int j = 0; j < t.crossings(); ++j)
        for (int k = 0; k < 3; ++k)
            s += ushijima_volume_ex(t.tetrahedron(x, j, k)).signed_volume;
    return s;
}

std::vector<double> volume_gradient(const TriangulatedBongle& t,
                                    const AngleAssignment& x,
                                    const OptimizerOptions& opts) {
    std::vector<double> g(t.slot_count(), 0.0);
    const double h = opts.fd_step;
    for (int j = 0; j < t.crossings(); ++j) {
        for (int k = 0; k < 3; ++k) {
            const int base = (j * 3 + k) * 6;
            GeneralizedTetrahedron tet = t.tetrahedron(x, j, k);
            const auto lengths = schlafli_lengths(tet);
            if (opts.schlafli_everywhere) {
                for (int l = 0; l < 6; ++l) g[base + l] = -0.5 * lengths[l];
                continue;
            }
            // A edge joins the two truncated equatorial vertices: Schlaefli.
            g[base + 0] = -0.5 * lengths[0];
            // The remaining edges end at an ideal apex; central differences.
            // A probe can step outside the realizable region near its
            // boundary; the renormalized length stands in there.
            auto angles = tet.angles();
            for (int l = 1; l < 6; ++l) {
                auto ap = angles, am = angles;
                ap[l] += h;
                am[l] -= h;
                try {
                    const double vp =
                        ushijima_volume_ex(GeneralizedTetrahedron::from_angles(ap)).signed_volume;
                    const double vm =
                        ushijima_volume_ex(GeneralizedTetrahedron::from_angles(am)).signed_volume;
                    g[base + l] = (vp - vm) / (2.0 * h);
                } catch (const NotRealizableError&) {
                    g[base + l] = -0.5 * lengths[l];
                }
            }
        }
    }
    return g;
}

VolumeReport maximize_volume(const TriangulatedBongle& t, const OptimizerOptions& opts) {
    if (t.level() != ConstraintLevel::Strict)
        throw Error("maximize_volume requires the strict constraint system; the "
                    "loosened rows do not confine the per-tetrahedron angles");
    const Eigen::MatrixXd m = constraint_matrix(t);
    const Eigen::MatrixXd ns = nullspace_basis(m);

    AngleAssignment x0 = interior_start(t, ns, feasible_start(t));
    AscentResult best = ascend(t, ns, x0, opts);
    double spread = 0;

    if (opts.restarts > 0) {
        std::mt19937 rng(opts.seed);
        for (int r = 0; r < opts.restarts; ++r) {
            AscentResult alt =
                ascend(t, ns, random_feasible_start(t, ns, x0, rng), opts);
            if (alt.hit_band) continue;
            spread = std::max(spread, std::abs(alt.volume - best.volume));
            if (alt.volume > best.volume) best = std::move(alt);
        }
    }

    VolumeReport rep;
    rep.iterations = best.iterations;
    rep.projected_gradient_norm = best.grad_norm;
    rep.constraint_max_residual = best.max_residual;
    rep.converged = best.converged;
    if (opts.restarts > 0) rep.restart_spread = spread;
    if (best.stalled && best.grad_norm > 100 * opts.tol)
        rep.note = "ascent stalled with projected gradient above tolerance; either the "
                   "gradient noise floor was reached or a step direction was not an "
                   "ascent direction (concavity monitor)";

    for (int i = 0; i < t.slot_count(); ++i)
        if (best.x[i] < opts.degeneracy_band || best.x[i] > kPi - opts.degeneracy_band)
            rep.degenerate_slots.push_back(i);

    if (best.hit_band) {
        rep.method = VolumeMethod::BoundOnly;
        rep.volume = balanced_closed_form(t.crossings());
        rep.upper_bound = rep.volume;
        rep.note = "interior ascent degenerated; reporting the certified upper bound V_n^B";
        return rep;
    }
    rep.method = VolumeMethod::Optimizer;
    rep.volume = best.volume;
    rep.maximizer = std::move(best.x);
    return rep;
}

VolumeReport bongle_volume(const Bongle& b, const OptimizerOptions& opts) {
    const HyperbolicityVerdict verdict = decide_hyperbolic(b);
    if (!verdict.is_hyperbolic) throw NotHyperbolicError(verdict);

    if (b.size() == 2) {
        VolumeReport rep;
        rep.method = VolumeMethod::KnownLink;
        rep.volume = *verdict.known_volume;
        rep.converged = true;
        rep.note = verdict.reason == VerdictReason::Whitehead
                       ? "Whitehead link exterior"
                       : "6_2^2 link exterior";
        return rep;
    }

    const Bongle nb = normalize_orientation(b);
    const int n = nb.size();
    const int k = innie_count(nb);
    const bool balanced = (n % 2 == 0) && (2 * k == n);

    if (balanced) {
        VolumeReport rep;
        rep.method = VolumeMethod::BalancedClosedForm;
        rep.volume = balanced_closed_form(n);
        rep.converged = true;
        if (opts.verify) {
            const auto t = build_decomposition(nb);
            const VolumeReport opt = maximize_volume(t, opts);
            rep.cross_check_volume = opt.volume;
            if (std::abs(opt.volume - rep.volume) > 1e-6)
                throw VerificationError(
                    "balanced cross-check failed: closed form " +
                    std::to_string(rep.volume) + " vs optimizer " +
                    std::to_string(opt.volume));
            rep.note = "verified against the optimizer";
        }
        return rep;
    }

    const auto t = build_decomposition(nb);
    return maximize_volume(t, opts);
}

std::string to_json(const VolumeReport& r) {
    nlohmann::json j;
    j["volume"] = r.volume;
    j["method"] = std::string(to_string(r.method));
    j["iterations"] = r.iterations;
    j["projected_gradient_norm"] = r.projected_gradient_norm;
    j["constraint_max_residual"] = r.constraint_max_residual;
    j["degenerate_slots"] = r.degenerate_slots;
    j["convention"] = r.convention;
    j["converged"] = r.converged;
    if (!r.note.empty()) j["note"] = r.note;
    if (r.upper_bound) j["upper_bound"] = *r.upper_bound;
    if (r.cross_check_volume) j["cross_check_volume"] = *r.cross_check_volume;
    if (r.restart_spread) j["restart_spread"] = *r.restart_spread;
    if (r.maximizer) j["maximizer"] = *r.maximizer;
    return j.dump();
}

VolumeReport volume_report_from_json(std::string_view json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    VolumeReport r;
    r.volume = j.at("volume").get<double>();
    const std::string m = j.at("method").get<std::string>();
    if (m == "KnownLink") r.method = VolumeMethod::KnownLink;
    else if (m == "BalancedClosedForm") r.method = VolumeMethod::BalancedClosedForm;
    else if (m == "Optimizer") r.method = VolumeMethod::Optimizer;
    else if (m == "BoundOnly") r.method = VolumeMethod::BoundOnly;
    else throw ParseError("unknown volume method \"" + m + "\"", 0);
    r.iterations = j.at("iterations").get<int>();
    r.projected_gradient_norm = j.at("projected_gradient_norm").get<double>();
    r.constraint_max_residual = j.at("constraint_max_residual").get<double>();
    r.degenerate_slots = j.at("degenerate_slots").get<std::vector<int>>();
    r.convention = j.at("convention").get<std::string>();
    r.converged = j.at("converged").get<bool>();
    if (j.contains("note")) r.note = j["note"].get<std::string>();
    if (j.contains("upper_bound")) r.upper_bound = j["upper_bound"].get<double>();
    if (j.contains("cross_check_volume"))
        r.cross_check_volume = j["cross_check_volume"].get<double>();
    if (j.contains("restart_spread"))
        r.restart_spread = j["restart_spread"].get<double>();
    if (j.contains("maximizer"))
        r.maximizer = j["maximizer"].get<AngleAssignment>();
    return r;
}

}  // namespace bongle
