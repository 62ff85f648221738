#pragma once

#include <string>
#include <vector>

#include "bongle/bongle.hpp"
#include "bongle/tetrahedron.hpp"

namespace bongle {

/// Edge label of an angle slot within its tetrahedron, in the incidence of
/// GeneralizedTetrahedron: D is the central vertical edge shared by the
/// three tetrahedra of a bipyramid, A the equatorial edge, B/F the edges at
/// the top ideal apex, C/E at the bottom.
enum class EdgeLabel : int { A = 0, B = 1, C = 2, D = 3, E = 4, F = 5 };

struct AngleSlot {
    int bipyramid = 0;            ///< crossing index j in [0, n)
    int tet = 0;                  ///< tetrahedron index k in {0, 1, 2}
    EdgeLabel label = EdgeLabel::A;
};

enum class EquatorialClass { Inner, Outer };

struct ConstraintRow {
    std::vector<std::pair<int, double>> coefficients;  ///< (slot, coefficient)
    double rhs = 0;
    std::string name;
};

struct ConstraintSystem {
    int slot_count = 0;
    std::vector<ConstraintRow> rows;
    // Every slot additionally carries the open bounds (0, pi).
};

/// Strict: per-tetrahedron ideal-vertex rows, per-bipyramid central-edge
/// rows, the two equatorial class rows and one row per ideal edge class.
/// Loosened: only the three global sums (sum D = 2n pi,
/// sum B+C+E+F = 2n pi, sum A = 4 pi).
enum class ConstraintLevel { Strict, Loosened };

/// Angle values indexed by flat slot index (bipyramid*3 + tet)*6 + label.
using AngleAssignment = std::vector<double>;

/// The bipyramid decomposition of an alternating n-bongle (n >= 3):
/// one triangular bipyramid per crossing, cut into three tetrahedra around
/// the added vertical edge, 18n angle slots in total.
class TriangulatedBongle {
  public:
    TriangulatedBongle(Bongle source, ConstraintLevel level);

    const Bongle& source() const { return source_; }
    int crossings() const { return source_.size(); }
    int slot_count() const { return 18 * crossings(); }
    ConstraintLevel level() const { return level_; }
    const ConstraintSystem& constraints() const { return constraints_; }

    int slot_index(const AngleSlot& s) const;
    AngleSlot slot_at(int index) const;

    /// Equatorial class of the A slot of tetrahedron (j, k).
    EquatorialClass a_class(int bipyramid, int tet) const;
    int inner_class_size() const { return inner_size_; }
    int outer_class_size() const { return outer_size_; }

    /// Slot indices of ideal edge class j (12 slots, drawn from bipyramids
    /// j-1, j, j+1).
    const std::vector<int>& ideal_class(int j) const { return ideal_classes_[j]; }

    GeneralizedTetrahedron tetrahedron(const AngleAssignment& x, int bipyramid,
                                       int tet) const;

  private:
    Bongle source_;
    ConstraintLevel level_;
    ConstraintSystem constraints_;
    std::vector<EquatorialClass> a_class_;      // (j*3 + k)
    std::vector<std::vector<int>> ideal_classes_;
    int inner_size_ = 0, outer_size_ = 0;
};

/// Builds the decomposition. Throws NonAlternatingError / NTooSmallError.
/// The bongle should be orientation-normalized (k <= n/2); the class sizes
/// are n+k inner and 2n-k outer for the innie count k as given.
TriangulatedBongle build_decomposition(const Bongle& b,
                                       ConstraintLevel level = ConstraintLevel::Strict);

/// The symmetric interior point: D = 2 pi/3, B = C = E = F = pi/6 on every
/// tetrahedron, and A = 2 pi / (its equatorial class size).
AngleAssignment feasible_start(const TriangulatedBongle& t);

struct Residuals {
    std::vector<double> rows;
    double max_norm = 0;
};

/// Row-wise |sum coeff * x - rhs|. Throws DimensionMismatchError.
Residuals constraint_residuals(const TriangulatedBongle& t, const AngleAssignment& x);

/// Numeric row rank of the constraint matrix. The strict system carries one
/// documented redundancy (the ideal-class rows sum to a combination of the
/// per-tetrahedron and central rows), so its expected rank is 8n + 1.
int constraint_rank(const TriangulatedBongle& t);

/// JSON debug dump: slots, rows, class memberships.
std::string dump_triangulation_json(const TriangulatedBongle& t);

}  // namespace bongle
