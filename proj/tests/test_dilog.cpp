#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "bongle/dilog.hpp"

using bongle::dilog;
using bongle::lobachevsky;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kCatalan = 0.91596559417721901505;
}  // namespace

TEST_CASE("special values") {
    CHECK(std::abs(dilog({0.0, 0.0})) == 0.0);
    CHECK(std::abs(dilog({1.0, 0.0}) - cplx(kPi * kPi / 6.0, 0.0)) < 1e-15);
    CHECK(std::abs(dilog({-1.0, 0.0}) - cplx(-kPi * kPi / 12.0, 0.0)) < 1e-15);
    // Li2(1/2) = pi^2/12 - ln^2(2)/2
    const double half = kPi * kPi / 12.0 - 0.5 * std::log(2.0) * std::log(2.0);
    CHECK(std::abs(dilog({0.5, 0.0}) - cplx(half, 0.0)) < 1e-15);
    // Li2(i) = -pi^2/48 + i G
    CHECK(std::abs(dilog({0.0, 1.0}) - cplx(-kPi * kPi / 48.0, kCatalan)) < 1e-14);
}

TEST_CASE("real axis above one is the limit from below the cut") {
    const cplx v = dilog({2.0, 0.0});
    CHECK(v.imag() < 0);
    CHECK(std::abs(v.imag() + kPi * std::log(2.0)) < 1e-14);
    // continuity with a point just below the axis
    const cplx below = dilog({2.0, -1e-12});
    CHECK(std::abs(v - below) < 1e-10);
    // the branch jump: approaching from above flips the imaginary sign
    const cplx above = dilog({2.0, 1e-12});
    CHECK(above.imag() > 0);
    CHECK(std::abs(above.imag() - kPi * std::log(2.0)) < 1e-10);
}

TEST_CASE("inversion identity on random samples") {
    // Li2(z) + Li2(1/z) = -pi^2/6 - log^2(-z)/2, off the cut
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> mag(0.05, 10.0);
    std::uniform_real_distribution<double> arg(0.02, kPi - 0.02);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int i = 0; i < 1000; ++i) {
        const double th = arg(rng) * (sign(rng) ? 1.0 : -1.0);
        const cplx z = std::polar(mag(rng), th);
        const cplx lhs = dilog(z) + dilog(1.0 / z);
        const cplx mz = -z;
        const cplx rhs = -kPi * kPi / 6.0 - 0.5 * std::log(mz) * std::log(mz);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("reflection identity spot checks") {
    // Li2(z) + Li2(1-z) = pi^2/6 - log(z) log(1-z)
    for (const cplx z : {cplx(0.3, 0.7), cplx(-2.0, 0.4), cplx(0.9, -0.05), cplx(4.0, 3.0)}) {
        const cplx lhs = dilog(z) + dilog(1.0 - z);
        const cplx rhs = kPi * kPi / 6.0 - std::log(z) * std::log(1.0 - z);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("frozen reference values") {
    // multiprecision references, |z| up to 10 and near the cut endpoint
    struct Ref {
        cplx z, v;
    };
    const Ref refs[] = {
        {{10.0, 0.1}, {0.50483210231245075, 7.21196939470521692}},
        {{-7.3, -2.1}, {-3.53833540418208979, -0.602221147517284334}},
        {{0.95, 0.05}, {1.42144486298315808, 0.151379244437998807}},
        {{0.99999, 0.0}, {1.64480893699292704, 0.0}},
    };
    for (const auto& r : refs) CHECK(std::abs(dilog(r.z) - r.v) < 1e-13);
}

TEST_CASE("conjugation symmetry") {
    for (const cplx z : {cplx(0.4, 0.9), cplx(-3.0, 2.0), cplx(7.0, 0.3)}) {
        CHECK(std::abs(dilog(std::conj(z)) - std::conj(dilog(z))) < 1e-14);
    }
}

TEST_CASE("lobachevsky basics") {
    CHECK(lobachevsky(0.0) == 0.0);
    // L(pi/2) = 0 and pi-periodicity-odd symmetry: L(pi - x) = -L(x)
    CHECK(std::abs(lobachevsky(kPi / 2.0)) < 1e-15);
    CHECK(std::abs(lobachevsky(kPi - 0.4) + lobachevsky(0.4)) < 1e-14);
    // v_tet = 3 L(pi/3)
    CHECK(std::abs(3.0 * lobachevsky(kPi / 3.0) - 1.014941606409653625) < 1e-13);
}
