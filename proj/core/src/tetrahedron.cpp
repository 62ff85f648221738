#include "bongle/tetrahedron.hpp"

#include <cmath>
#include <limits>

#include "bongle/dilog.hpp"

namespace bongle {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kIdealTol = 1e-9;   // cofactor band treated as an ideal vertex
constexpr double kDegenTol = 1e-12;  // |det G| band treated as flat

using cplx = std::complex<double>;

double det3(double a, double b, double c, double d, double e, double f, double g,
            double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// The volume formula uses the labeling in which the first three angles meet
// at one vertex and oppose the last three: (D,B,F | A,E,C) in our labels.
struct MyAngles {
    double a1, a2, a3, d1, d2, d3;  // a_i at the common vertex, d_i opposite a_i
};

MyAngles relabel(const GeneralizedTetrahedron& t) {
    return {t.D, t.B, t.F, t.A, t.E, t.C};
}

}  // namespace

GeneralizedTetrahedron GeneralizedTetrahedron::tn(int n) {
    if (n < 2) throw Error("T_n requires n >= 2");
    const double base = 2.0 * kPi / (3.0 * n);
    GeneralizedTetrahedron t;
    t.D = t.B = t.F = kPi / 3.0;  // edges at the ideal apex p
    t.A = t.C = t.E = base;       // edges of the truncated base triangle
    return t;
}

double GramMatrix::det() const {
    double s = 0.0;
    for (int j = 0; j < 4; ++j) s += m[0][j] * cofactor(0, j);
    return s;
}

double GramMatrix::cofactor(int i, int j) const {
    double sub[3][3];
    int r = 0;
    for (int a = 0; a < 4; ++a) {
        if (a == i) continue;
        int c = 0;
        for (int b = 0; b < 4; ++b) {
            if (b == j) continue;
            sub[r][c++] = m[a][b];
        }
        ++r;
    }
    const double d = det3(sub[0][0], sub[0][1], sub[0][2], sub[1][0], sub[1][1],
                          sub[1][2], sub[2][0], sub[2][1], sub[2][2]);
    return ((i + j) % 2 == 0) ? d : -d;
}

GramMatrix gram_matrix(const GeneralizedTetrahedron& t) {
    GramMatrix g;
    for (int i = 0; i < 4; ++i) g.m[i][i] = 1.0;
    const auto ang = t.angles();
    for (int e = 0; e < 6; ++e) {
        const auto [u, v] = kEdgeVertices[e];
        // Faces i and j meet along the edge joining the other two vertices.
        int others[2];
        int k = 0;
        for (int w = 0; w < 4; ++w)
            if (w != u && w != v) others[k++] = w;
        g.m[others[0]][others[1]] = g.m[others[1]][others[0]] = -std::cos(ang[e]);
    }
    return g;
}

std::array<VertexType, 4> vertex_types_from_gram(const GramMatrix& g) {
    std::array<VertexType, 4> out{};
    for (int i = 0; i < 4; ++i) {
        const double c = g.cofactor(i, i);
        if (std::abs(c) <= kIdealTol)
            out[i] = VertexType::Ideal;
        else
            out[i] = c > 0 ? VertexType::Finite : VertexType::Truncated;
    }
    return out;
}

std::array<VertexType, 4> vertex_types(const GeneralizedTetrahedron& t) {
    return vertex_types_from_gram(gram_matrix(t));
}

TetrahedronVolume ushijima_volume_ex(const GeneralizedTetrahedron& t) {
    const GramMatrix g = gram_matrix(t);
    const double detG = g.det();
    if (detG > kDegenTol)
        throw NotRealizableError("det G = " + std::to_string(detG) +
                                 " >= 0: no generalized hyperbolic realization");
    if (detG > -kDegenTol) return {0.0, 0.0, true};

    const MyAngles m = relabel(t);
    const cplx a = std::polar(1.0, m.a1), b = std::polar(1.0, m.a2),
               c = std::polar(1.0, m.a3);
    const cplx d = std::polar(1.0, m.d1), e = std::polar(1.0, m.d2),
               f = std::polar(1.0, m.d3);

    const double sinsum = std::sin(m.a1) * std::sin(m.d1) +
                          std::sin(m.a2) * std::sin(m.d2) +
                          std::sin(m.a3) * std::sin(m.d3);
    const cplx denom =
        a * d + b * e + c * f + a * b * f + a * c * e + b * c * d + d * e * f +
        a * b * c * d * e * f;
    const cplx sqdet(0.0, std::sqrt(-detG));  // principal sqrt of det G < 0
    const cplx z1 = -2.0 * (sinsum - sqdet) / denom;
    const cplx z2 = -2.0 * (sinsum + sqdet) / denom;

    const cplx w1 = a * b * d * e, w2 = a * c * d * f, w3 = b * c * e * f;
    const cplx v1 = -a * b * c, v2 = -a * e * f, v3 = -b * d * f, v4 = -c * d * e;
    auto U = [&](const cplx& z) {
        return 0.5 * (dilog(z) + dilog(w1 * z) + dilog(w2 * z) + dilog(w3 * z) -
                      dilog(v1 * z) - dilog(v2 * z) - dilog(v3 * z) - dilog(v4 * z));
    };

    const double sv = 0.5 * std::imag(U(z1) - U(z2));
    return {std::abs(sv), sv, false};
}

double ushijima_volume(const GeneralizedTetrahedron& t) {
    return ushijima_volume_ex(t).volume;
}

bool admits_realization(const GeneralizedTetrahedron& t) noexcept {
    const GramMatrix g = gram_matrix(t);
    if (g.det() > -kDegenTol) return false;
    double diag[4];
    for (int i = 0; i < 4; ++i) diag[i] = g.cofactor(i, i);
    for (const auto& [u, v] : kEdgeVertices) {
        if (diag[u] < -kIdealTol && diag[v] < -kIdealTol) {
            const double x = g.cofactor(u, v) / std::sqrt(diag[u] * diag[v]);
            if (x < 1.0 - 1e-12) return false;  // truncation planes intersect
        }
    }
    return true;
}

EdgeLengths edge_lengths(const GeneralizedTetrahedron& t) {
    const GramMatrix g = gram_matrix(t);
    if (g.det() > -kDegenTol)
        throw NotRealizableError("det G >= 0: no realization, no edge lengths");

    double diag[4];
    for (int i = 0; i < 4; ++i) diag[i] = g.cofactor(i, i);

    EdgeLengths out;
    for (int e = 0; e < 6; ++e) {
        const auto [u, v] = kEdgeVertices[e];
        const bool iu = std::abs(diag[u]) <= kIdealTol;
        const bool iv = std::abs(diag[v]) <= kIdealTol;
        if (iu || iv) {
            out.length[e] = std::numeric_limits<double>::infinity();
            out.finite[e] = false;
            continue;
        }
        const double x = g.cofactor(u, v) / std::sqrt(std::abs(diag[u] * diag[v]));
        if (diag[u] < 0 && diag[v] < 0) {
            out.length[e] = std::acosh(std::max(x, 1.0));  // plane-to-plane
        } else if (diag[u] > 0 && diag[v] > 0) {
            out.length[e] = std::acosh(std::max(x, 1.0));  // point-to-point
        } else {
            out.length[e] = std::asinh(x);  // point-to-plane
        }
        out.finite[e] = true;
    }
    return out;
}

std::array<double, 6> schlafli_lengths(const GeneralizedTetrahedron& t) {
    const GramMatrix g = gram_matrix(t);
    double diag[4];
    for (int i = 0; i < 4; ++i) diag[i] = g.cofactor(i, i);

    std::array<double, 6> out{};
    for (int e = 0; e < 6; ++e) {
        const auto [u, v] = kEdgeVertices[e];
        const bool iu = std::abs(diag[u]) <= kIdealTol;
        const bool iv = std::abs(diag[v]) <= kIdealTol;
        const double cij = g.cofactor(u, v);
        if (!iu && !iv) {
            const double x = cij / std::sqrt(std::abs(diag[u] * diag[v]));
            if (diag[u] < 0 && diag[v] < 0)
                out[e] = std::acosh(std::max(x, 1.0));
            else if (diag[u] > 0 && diag[v] > 0)
                out[e] = std::acosh(std::max(x, 1.0));
            else
                out[e] = std::asinh(x);
        } else {
            double l = std::log(2.0 * std::abs(cij));
            if (!iu) l -= 0.5 * std::log(std::abs(diag[u]));
            if (!iv) l -= 0.5 * std::log(std::abs(diag[v]));
            out[e] = l;
        }
    }
    return out;
}

std::complex<double> tn_u(std::complex<double> z, int n) {
    const double s = 4.0 * kPi / (3.0 * n);
    const cplx w_plus = std::polar(1.0, 2.0 * kPi / 3.0 + s);
    const cplx w_minus = -std::polar(1.0, kPi / 3.0 + s);
    return 1.5 * (dilog(w_plus * z) - dilog(w_minus * z));
}

std::complex<double> tn_z1(int) { return {1.0, 0.0}; }

std::complex<double> tn_z2(int n) {
    return -std::polar(1.0, -4.0 * kPi / (3.0 * n));
}

double tn_volume(int n) {
    if (n < 2) throw Error("tn_volume requires n >= 2");
    return 0.5 * std::imag(tn_u(tn_z1(n), n) - tn_u(tn_z2(n), n));
}

double bipyramid_volume(double apex_angle, double equatorial_angle) {
    if (!(apex_angle > 0.0 && apex_angle < kPi))
        throw Error("bipyramid apex angle must lie in (0, pi)");
    if (!(equatorial_angle > 0.0 && equatorial_angle < kPi))
        throw Error("bipyramid equatorial angle must lie in (0, pi)");
    GeneralizedTetrahedron half;
    half.D = half.B = half.F = apex_angle;
    half.A = half.C = half.E = 0.5 * equatorial_angle;
    return 2.0 * ushijima_volume(half);
}

const Constants& constants() {
    static const Constants c = [] {
        Constants k;
        k.v_tet = 3.0 * lobachevsky(kPi / 3.0);
        k.five_v_tet = 5.0 * k.v_tet;
        k.vol_whitehead = 8.0 * lobachevsky(kPi / 4.0);  // ideal octahedron
        k.vol_622 = 4.0 * k.v_tet;                       // 2 * 2 * Vol(T_2)
        return k;
    }();
    return c;
}

}  // namespace bongle
