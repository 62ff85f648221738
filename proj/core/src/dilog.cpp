#include "bongle/dilog.hpp"

#include <cmath>

namespace bongle {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kZeta2 = kPi * kPi / 6.0;

// Li2(z) = sum_{n>=0} B_n u^{n+1} / (n+1)!  with u = -log(1-z).
// Coefficients of u^k for the nonzero Bernoulli numbers; the region
// reduction below keeps |u| < 1.7, where the tail beyond u^39 is < 1e-19.
struct SeriesTerm {
    int power;
    double coeff;
};
constexpr SeriesTerm kSeries[] = {
    {39, 2.3940344248961653005e-32},  {37, -9.9621484882846221032e-31},
    {35, 4.1576356446138997196e-29},  {33, -1.740845657234000741e-27},
    {31, 7.3159756527022034204e-26},  {29, -3.0874198024267402932e-24},
    {27, 1.3091507554183212858e-22},  {25, -5.5817858743250093363e-21},
    {23, 2.3952186210261867457e-19},  {21, -1.0356517612181247014e-17},
    {19, 4.5189800296199181917e-16},  {17, -1.9939295860721075687e-14},
    {15, 8.9216910204564525552e-13},  {13, -4.0647616451442255268e-11},
    {11, 1.8978869988970999072e-9},   {9, -9.1857730746619635509e-8},
    {7, 4.7241118669690098262e-6},    {5, -2.7777777777777777778e-4},
    {3, 2.7777777777777777778e-2},    {2, -0.25},
    {1, 1.0},
};

std::complex<double> bernoulli_series(std::complex<double> u) {
    // Horner over the sparse power list.
    std::complex<double> s = 0.0;
    int power = kSeries[0].power;
    for (const auto& t : kSeries) {
        while (power > t.power) {
            s *= u;
            --power;
        }
        s += t.coeff;
    }
    return s * u;  // lowest listed power is u^1
}

}  // namespace

std::complex<double> dilog(std::complex<double> z) {
    const double rz = z.real();
    const double iz = z.imag();

    if (iz == 0.0) {
        if (rz == 0.0) return {0.0, 0.0};
        if (rz == 1.0) return {kZeta2, 0.0};
        if (rz > 1.0) {
            // Limit from below the cut: Li2(x - i0).
            const double lx = std::log(rz);
            const std::complex<double> inv = dilog(std::complex<double>(1.0 / rz, 0.0));
            return {kPi * kPi / 3.0 - 0.5 * lx * lx - inv.real(), -kPi * lx};
        }
    }

    const double nz = std::abs(z);
    if (nz < 1e-150) return z * (1.0 + 0.25 * z);

    if (rz <= 0.5) {
        if (nz > 1.0) {
            const std::complex<double> lz = std::log(-z);
            return -bernoulli_series(-std::log(1.0 - 1.0 / z)) - 0.5 * lz * lz - kZeta2;
        }
        return bernoulli_series(-std::log(1.0 - z));
    }
    if (nz * nz <= 2.0 * rz) {  // |z - 1| <= 1
        const std::complex<double> u = -std::log(z);
        return -bernoulli_series(u) + u * std::log(1.0 - z) + kZeta2;
    }
    const std::complex<double> lz = std::log(-z);
    return -bernoulli_series(-std::log(1.0 - 1.0 / z)) - 0.5 * lz * lz - kZeta2;
}

double lobachevsky(double theta) {
    return 0.5 * dilog(std::polar(1.0, 2.0 * theta)).imag();
}

}  // namespace bongle
