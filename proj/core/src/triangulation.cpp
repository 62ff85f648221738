#include "bongle/triangulation.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace bongle {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int wrap(int j, int n) { return ((j % n) + n) % n; }

}  // namespace

int TriangulatedBongle::slot_index(const AngleSlot& s) const {
    return (wrap(s.bipyramid, crossings()) * 3 + s.tet) * 6 +
           static_cast<int>(s.label);
}

AngleSlot TriangulatedBongle::slot_at(int index) const {
    AngleSlot s;
    s.label = static_cast<EdgeLabel>(index % 6);
    const int t = index / 6;
    s.tet = t % 3;
    s.bipyramid = t / 3;
    return s;
}

EquatorialClass TriangulatedBongle::a_class(int bipyramid, int tet) const {
    return a_class_[wrap(bipyramid, crossings()) * 3 + tet];
}

GeneralizedTetrahedron TriangulatedBongle::tetrahedron(const AngleAssignment& x,
                                                       int bipyramid,
                                                       int tet) const {
    const int base = (wrap(bipyramid, crossings()) * 3 + tet) * 6;
    GeneralizedTetrahedron t;
    t.A = x[base + 0];
    t.B = x[base + 1];
    t.C = x[base + 2];
    t.D = x[base + 3];
    t.E = x[base + 4];
    t.F = x[base + 5];
    return t;
}

TriangulatedBongle::TriangulatedBongle(Bongle source, ConstraintLevel level)
    : source_(std::move(source)), level_(level) {
    const int n = crossings();
    constraints_.slot_count = 18 * n;

    auto idx = [&](int j, int k, EdgeLabel l) {
        return (wrap(j, n) * 3 + k) * 6 + static_cast<int>(l);
    };

    // Equatorial class assignment. Tetrahedra 0 and 1 carry the two
    // equatorial edges flanking the monogon; they join the class on the
    // monogon's side of the bracelet. Tetrahedron 2 joins the other side.
    a_class_.resize(3 * n);
    for (int j = 0; j < n; ++j) {
        const bool innie = source_.charm(j).side == Side::Innie;
        a_class_[j * 3 + 0] = innie ? EquatorialClass::Inner : EquatorialClass::Outer;
        a_class_[j * 3 + 1] = innie ? EquatorialClass::Inner : EquatorialClass::Outer;
        a_class_[j * 3 + 2] = innie ? EquatorialClass::Outer : EquatorialClass::Inner;
    }
    inner_size_ = 0;
    for (const auto c : a_class_)
        if (c == EquatorialClass::Inner) ++inner_size_;
    outer_size_ = 3 * n - inner_size_;

    if (level_ == ConstraintLevel::Loosened) {
        ConstraintRow rd, rbcef, ra;
        rd.name = "sum D = 2n pi";
        rbcef.name = "sum B+C+E+F = 2n pi";
        ra.name = "sum A = 4 pi";
        rd.rhs = 2.0 * n * kPi;
        rbcef.rhs = 2.0 * n * kPi;
        ra.rhs = 4.0 * kPi;
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < 3; ++k) {
                rd.coefficients.emplace_back(idx(j, k, EdgeLabel::D), 1.0);
                ra.coefficients.emplace_back(idx(j, k, EdgeLabel::A), 1.0);
                for (EdgeLabel l : {EdgeLabel::B, EdgeLabel::C, EdgeLabel::E, EdgeLabel::F})
                    rbcef.coefficients.emplace_back(idx(j, k, l), 1.0);
            }
        }
        constraints_.rows = {rd, rbcef, ra};
        ideal_classes_.clear();
        return;
    }

    // Per-tetrahedron ideal-vertex rows and per-bipyramid central-edge rows.
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < 3; ++k) {
            ConstraintRow top;
            top.name = "tet(" + std::to_string(j) + "," + std::to_string(k) + ") B+F+D = pi";
            top.rhs = kPi;
            top.coefficients = {{idx(j, k, EdgeLabel::B), 1.0},
                                {idx(j, k, EdgeLabel::F), 1.0},
                                {idx(j, k, EdgeLabel::D), 1.0}};
            constraints_.rows.push_back(std::move(top));
            ConstraintRow bot;
            bot.name = "tet(" + std::to_string(j) + "," + std::to_string(k) + ") C+E+D = pi";
            bot.rhs = kPi;
            bot.coefficients = {{idx(j, k, EdgeLabel::C), 1.0},
                                {idx(j, k, EdgeLabel::E), 1.0},
                                {idx(j, k, EdgeLabel::D), 1.0}};
            constraints_.rows.push_back(std::move(bot));
        }
        ConstraintRow central;
        central.name = "bipyramid " + std::to_string(j) + " central edge";
        central.rhs = 2.0 * kPi;
        central.coefficients = {{idx(j, 0, EdgeLabel::D), 1.0},
                                {idx(j, 1, EdgeLabel::D), 1.0},
                                {idx(j, 2, EdgeLabel::D), 1.0}};
        constraints_.rows.push_back(std::move(central));
    }

    // Equatorial (central / exterior) classes.
    ConstraintRow inner, outer;
    inner.name = "inner equatorial class";
    outer.name = "outer equatorial class";
    inner.rhs = outer.rhs = 2.0 * kPi;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < 3; ++k) {
            auto& row = a_class_[j * 3 + k] == EquatorialClass::Inner ? inner : outer;
            row.coefficients.emplace_back(idx(j, k, EdgeLabel::A), 1.0);
        }
    constraints_.rows.push_back(std::move(inner));
    constraints_.rows.push_back(std::move(outer));

    // Ideal edge classes, convention C1. Within bipyramid j the six side
    // edges carry two slots each:
    //   top    N-P_m: (tet m, B) and (tet m-1, F)
    //   bottom S-P_m: (tet m, C) and (tet m-1, E)
    // Class j keeps the four own edges N-P2, N-P3, S-P1, S-P2 and receives
    // S-P3 from bipyramid j-1 and N-P1 from bipyramid j+1.
    ideal_classes_.resize(n);
    for (int j = 0; j < n; ++j) {
        auto& cls = ideal_classes_[j];
        cls = {
            idx(j, 1, EdgeLabel::B), idx(j, 0, EdgeLabel::F),      // N-P2
            idx(j, 2, EdgeLabel::B), idx(j, 1, EdgeLabel::F),      // N-P3
            idx(j, 0, EdgeLabel::C), idx(j, 2, EdgeLabel::E),      // S-P1
            idx(j, 1, EdgeLabel::C), idx(j, 0, EdgeLabel::E),      // S-P2
            idx(j - 1, 2, EdgeLabel::C), idx(j - 1, 1, EdgeLabel::E),  // S-P3 of j-1
            idx(j + 1, 0, EdgeLabel::B), idx(j + 1, 2, EdgeLabel::F),  // N-P1 of j+1
        };
        ConstraintRow row;
        row.name = "ideal edge class " + std::to_string(j);
        row.rhs = 2.0 * kPi;
        for (int s : cls) row.coefficients.emplace_back(s, 1.0);
        constraints_.rows.push_back(std::move(row));
    }
}

TriangulatedBongle build_decomposition(const Bongle& b, ConstraintLevel level) {
    if (!is_alternating(b))
        throw NonAlternatingError("only alternating bongles triangulate");
    if (b.size() < 3)
        throw NTooSmallError("triangulation requires n >= 3; n = 2 bongles are "
                             "handled as known link exteriors");
    return TriangulatedBongle(b, level);
}

AngleAssignment feasible_start(const TriangulatedBongle& t) {
    const int n = t.crossings();
    AngleAssignment x(t.slot_count());
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < 3; ++k) {
            const int base = (j * 3 + k) * 6;
            const int cls = t.a_class(j, k) == EquatorialClass::Inner
                                ? t.inner_class_size()
                                : t.outer_class_size();
            x[base + static_cast<int>(EdgeLabel::A)] = 2.0 * kPi / cls;
            x[base + static_cast<int>(EdgeLabel::B)] = kPi / 6.0;
            x[base + static_cast<int>(EdgeLabel::C)] = kPi / 6.0;
            x[base + static_cast<int>(EdgeLabel::D)] = 2.0 * kPi / 3.0;
            x[base + static_cast<int>(EdgeLabel::E)] = kPi / 6.0;
            x[base + static_cast<int>(EdgeLabel::F)] = kPi / 6.0;
        }
    }
    return x;
}

Residuals constraint_residuals(const TriangulatedBongle& t, const AngleAssignment& x) {
    if (static_cast<int>(x.size()) != t.slot_count())
        throw DimensionMismatchError(
            "angle assignment has " + std::to_string(x.size()) + " entries, expected " +
            std::to_string(t.slot_count()));
    Residuals r;
    r.rows.reserve(t.constraints().rows.size());
    for (const auto& row : t.constraints().rows) {
        double s = -row.rhs;
        for (const auto& [slot, coeff] : row.coefficients) s += coeff * x[slot];
        r.rows.push_back(std::abs(s));
        r.max_norm = std::max(r.max_norm, r.rows.back());
    }
    return r;
}

int constraint_rank(const TriangulatedBongle& t) {
    const auto& rows = t.constraints().rows;
    Eigen::MatrixXd m(rows.size(), t.slot_count());
    m.setZero();
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [slot, coeff] : rows[i].coefficients)
            m(static_cast<Eigen::Index>(i), slot) = coeff;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

std::string dump_triangulation_json(const TriangulatedBongle& t) {
    nlohmann::json j;
    j["bongle"] = to_string(t.source());
    j["crossings"] = t.crossings();
    j["slot_count"] = t.slot_count();
    j["level"] = t.level() == ConstraintLevel::Strict ? "strict" : "loosened";
    j["inner_class_size"] = t.inner_class_size();
    j["outer_class_size"] = t.outer_class_size();

    static constexpr const char* kLabels = "ABCDEF";
    j["slots"] = nlohmann::json::array();
    for (int s = 0; s < t.slot_count(); ++s) {
        const AngleSlot a = t.slot_at(s);
        nlohmann::json js{{"index", s},
                          {"bipyramid", a.bipyramid},
                          {"tet", a.tet},
                          {"label", std::string(1, kLabels[static_cast<int>(a.label)])}};
        if (a.label == EdgeLabel::A)
            js["equatorial_class"] =
                t.a_class(a.bipyramid, a.tet) == EquatorialClass::Inner ? "inner" : "outer";
        j["slots"].push_back(std::move(js));
    }

    j["rows"] = nlohmann::json::array();
    for (const auto& row : t.constraints().rows) {
        nlohmann::json jr{{"name", row.name}, {"rhs", row.rhs}};
        jr["slots"] = nlohmann::json::array();
        for (const auto& [slot, coeff] : row.coefficients)
            jr["slots"].push_back({{"slot", slot}, {"coeff", coeff}});
        j["rows"].push_back(std::move(jr));
    }

    if (t.level() == ConstraintLevel::Strict) {
        j["ideal_classes"] = nlohmann::json::array();
        for (int c = 0; c < t.crossings(); ++c) j["ideal_classes"].push_back(t.ideal_class(c));
    }
    return j.dump(2);
}

}  // namespace bongle
