#pragma once

#include <array>
#include <complex>

#include "bongle/errors.hpp"

namespace bongle {

enum class VertexType { Ideal, Finite, Truncated };

/// Generalized hyperbolic tetrahedron given by its six dihedral angles.
///
/// Vertices are named p, q, r, s with a fixed edge/angle incidence:
///
///     D = pq   A = rs   (opposite pair)
///     B = pr   E = qs   (opposite pair)
///     F = ps   C = qr   (opposite pair)
///
/// Angle sums at the vertices are therefore p: B+F+D, q: C+E+D,
/// r: A+B+C, s: A+E+F. A vertex is ideal when its sum equals pi,
/// finite above pi, truncated (hyperideal) below.
struct GeneralizedTetrahedron {
    double A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;

    std::array<double, 6> angles() const { return {A, B, C, D, E, F}; }

    static GeneralizedTetrahedron from_angles(const std::array<double, 6>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }

    /// Half of the n-family bipyramid, cut along its equator: one ideal
    /// apex p (edges D = B = F = pi/3) over a triangle of truncated
    /// vertices (edges A = C = E = 2*pi/(3n)).
    static GeneralizedTetrahedron tn(int n);
};

/// Vertex pair (indices into p,q,r,s order) of each edge label A..F.
constexpr std::array<std::pair<int, int>, 6> kEdgeVertices = {{
    {2, 3},  // A = rs
    {0, 2},  // B = pr
    {1, 2},  // C = qr
    {0, 1},  // D = pq
    {1, 3},  // E = qs
    {0, 3},  // F = ps
}};

/// 4x4 Gram matrix of the face normals: unit diagonal, entry (i,j) equal to
/// -cos of the dihedral angle along the edge shared by faces i and j, i.e.
/// the edge joining the two vertices other than i and j. Rows follow the
/// vertex order p, q, r, s.
struct GramMatrix {
    std::array<std::array<double, 4>, 4> m{};

    double det() const;
    /// Signed cofactor (adjugate entry with the (-1)^{i+j} sign).
    double cofactor(int i, int j) const;
};

GramMatrix gram_matrix(const GeneralizedTetrahedron& t);

/// Cofactor sign convention: zero (within 1e-9) is Ideal, positive is
/// Finite, negative is Truncated.
std::array<VertexType, 4> vertex_types_from_gram(const GramMatrix& g);
std::array<VertexType, 4> vertex_types(const GeneralizedTetrahedron& t);

struct TetrahedronVolume {
    double volume = 0;         ///< magnitude
    double signed_volume = 0;  ///< negative for reversed orientation
    bool degenerate = false;   ///< flat (det G within tolerance of 0); volume 0
};

/// Volume of a generalized hyperbolic tetrahedron by the dilogarithm
/// formula (eight Li2 terms evaluated at the two critical points of U).
/// Throws NotRealizableError when det G is positive beyond tolerance.
TetrahedronVolume ushijima_volume_ex(const GeneralizedTetrahedron& t);

/// Magnitude-only convenience wrapper around ushijima_volume_ex.
double ushijima_volume(const GeneralizedTetrahedron& t);

/// True when the angles describe a realizable generalized tetrahedron with
/// pairwise disjoint (or tangent) truncation planes: det G < 0 and every
/// truncated-truncated edge has cosh(length) >= 1.
bool admits_realization(const GeneralizedTetrahedron& t) noexcept;

/// Geodesic edge lengths, indexed by label A..F.
/// Edges with an ideal endpoint are reported infinite (finite[e] = false).
/// Between two truncated vertices: cosh(l) = c_ij / sqrt(c_ii c_jj);
/// between finite and truncated: sinh(l) = c_ij / sqrt(|c_ii c_jj|).
struct EdgeLengths {
    std::array<double, 6> length{};
    std::array<bool, 6> finite{};
};
EdgeLengths edge_lengths(const GeneralizedTetrahedron& t);

/// Schlaefli lengths for gradient work: finite edges carry their true
/// length; edges with ideal endpoints carry the renormalized value
/// log(2|c_ij|) - sum over non-ideal endpoints of log|c_vv|/2. The dropped
/// per-vertex terms are constant across the edges at a vertex, so they
/// cancel in any direction that preserves the ideal-vertex angle sums.
std::array<double, 6> schlafli_lengths(const GeneralizedTetrahedron& t);

/// Volume of T_n by the specialized two-dilogarithm route:
///   U(z, T_n) = 3/2 [ Li2(e^{2 pi i/3} e^{4 pi i/3n} z)
///                   - Li2(-e^{pi i/3} e^{4 pi i/3n} z) ],
///   Vol(T_n)  = Im[U(z1) - U(z2)] / 2
/// at the critical points z1 = 1 and z2 = -e^{-4 pi i/3n}.
double tn_volume(int n);

/// U(z, T_n) as above; exposed for the bounds scans.
std::complex<double> tn_u(std::complex<double> z, int n);
std::complex<double> tn_z1(int n);
std::complex<double> tn_z2(int n);

/// Volume of the triangular bipyramid with both apices ideal: the six
/// apex edges share `apex_angle`, the three equatorial edges share
/// `equatorial_angle`. Computed as twice the equatorial half-tetrahedron.
double bipyramid_volume(double apex_angle, double equatorial_angle);

struct Constants {
    double v_tet;           ///< volume of the regular ideal tetrahedron
    double five_v_tet;      ///< 5 v_tet, the bipyramid volume supremum
    double vol_whitehead;   ///< Whitehead link exterior
    double vol_622;         ///< 6_2^2 link exterior (= 4 v_tet)
};

/// Anchor volumes, computed from the dilogarithm at first use.
const Constants& constants();

}  // namespace bongle
