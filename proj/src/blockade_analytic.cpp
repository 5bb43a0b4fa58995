#include "cepqed/blockade_analytic.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "cepqed/errors.hpp"

namespace cepqed {

using std::complex;
using namespace std::complex_literals;

namespace {

struct Detunings {
    complex<double> d0, dc, ke; // ke = i kappa e^{i phi} (0 without cascade)
};

Detunings detunings(const SystemParams& p, const DriveParams& d, bool cascade)
{
    Detunings out;
    out.d0 = complex<double>(p.omega_0 - d.omega_L, -0.5 * p.gamma);
    out.dc = complex<double>(p.omega_c - d.omega_L, -0.5 * p.kappa);
    out.ke = cascade ? 1i * p.kappa * std::exp(1i * p.phi) : complex<double>(0.0);
    return out;
}

Eigen::Matrix3cd first_order_matrix(const Detunings& t, double g)
{
    Eigen::Matrix3cd m;
    m << t.d0, g, g,
         g, t.dc, 0,
         g, -t.ke, t.dc;
    return m;
}

Eigen::Matrix<complex<double>, 5, 5> second_order_matrix(const Detunings& t,
                                                         double g)
{
    const double s2 = std::numbers::sqrt2;
    Eigen::Matrix<complex<double>, 5, 5> m;
    // basis (c011, c110, c101, c020, c002)
    m << 2.0 * t.dc, g, g, -s2 * t.ke, 0,
         g, t.d0 + t.dc, 0, s2 * g, 0,
         g, -t.ke, t.d0 + t.dc, 0, s2 * g,
         0, s2 * g, 0, 2.0 * t.dc, 0,
         -s2 * t.ke, 0, s2 * g, 0, 2.0 * t.dc;
    return m;
}

} // namespace

std::complex<double> determinant_d1(const SystemParams& p, const DriveParams& d,
                                    bool include_cascade)
{
    return first_order_matrix(detunings(p, d, include_cascade), p.g).determinant();
}

std::complex<double> determinant_d2(const SystemParams& p, const DriveParams& d,
                                    bool include_cascade)
{
    return second_order_matrix(detunings(p, d, include_cascade), p.g).determinant();
}

PerturbativeAmplitudes first_order(const SystemParams& p, const DriveParams& d,
                                   bool include_cascade)
{
    if (!(d.Omega > 0.0)) {
        throw Error("SingularSystem", "first-order amplitudes require Omega > 0");
    }
    const Detunings t = detunings(p, d, include_cascade);
    const Eigen::Matrix3cd m = first_order_matrix(t, p.g);
    const complex<double> d1 = m.determinant();
    const double scale = std::pow(m.cwiseAbs().maxCoeff(), 3);
    if (std::abs(d1) < 1e-14 * std::max(scale, 1e-300)) {
        throw Error("SingularSystem",
                    "D1 = 0: drive sits exactly on a lossless bound state "
                    "(single-excitation truncation diverges; add gamma > 0)");
    }
    Eigen::Vector3cd rhs;
    rhs << -d.Omega, 0, 0;
    const Eigen::Vector3cd sol = m.partialPivLu().solve(rhs);

    PerturbativeAmplitudes out;
    out.delta_0 = t.d0;
    out.delta_c = t.dc;
    out.c100_1 = sol(0);
    out.c010_1 = sol(1);
    out.c001_1 = sol(2);

    const complex<double> closed = d.Omega * p.g * (t.dc + t.ke) / d1;
    if (std::abs(closed - out.c001_1) >
        1e-10 * std::max(std::abs(closed), 1e-300)) {
        throw Error("SingularSystem",
                    "first-order closed form disagrees with the linear solve");
    }
    return out;
}

PerturbativeAmplitudes second_order(const SystemParams& p, const DriveParams& d,
                                    const PerturbativeAmplitudes& first,
                                    bool include_cascade)
{
    const Detunings t = detunings(p, d, include_cascade);
    const auto m = second_order_matrix(t, p.g);
    const complex<double> d2 = m.determinant();
    const double scale = std::pow(m.cwiseAbs().maxCoeff(), 5);
    if (std::abs(d2) < 1e-14 * std::max(scale, 1e-300)) {
        throw Error("SingularSystem", "D2 = 0: two-excitation system singular");
    }
    Eigen::Matrix<complex<double>, 5, 1> rhs;
    rhs << 0, -d.Omega * first.c010_1, -d.Omega * first.c001_1, 0, 0;
    const Eigen::Matrix<complex<double>, 5, 1> sol = m.partialPivLu().solve(rhs);

    PerturbativeAmplitudes out = first;
    out.c011_2 = sol(0);
    out.c110_2 = sol(1);
    out.c101_2 = sol(2);
    out.c020_2 = sol(3);
    out.c002_2 = sol(4);

    // Closed forms for D2 and c002 (the ke^2 term is -kappa^2 e^{2 i phi}).
    const complex<double> dc = t.dc, d0 = t.d0, ke = t.ke;
    const double g = p.g;
    const complex<double> d2_closed =
        4.0 * first_order_matrix(t, g).determinant() *
            (-2.0 * g * g + dc * (3.0 * dc + 2.0 * d0)) +
        4.0 * dc * dc * dc * dc * (2.0 * dc + d0);
    if (std::abs(d2_closed - d2) > 1e-9 * std::max(std::abs(d2), 1e-300)) {
        throw Error("SingularSystem",
                    "D2 closed form disagrees with the 5x5 determinant");
    }
    const complex<double> c002_closed =
        2.0 * std::numbers::sqrt2 * g / d2 *
        (first.c001_1 * (dc * (2.0 * dc * (dc + d0) - 3.0 * g * g) +
                         ke * (dc * (dc + d0) - 2.0 * g * g)) +
         first.c010_1 * (dc * g * g + ke * (dc * (3.0 * dc + d0) + g * g) +
                         ke * ke * (2.0 * dc + d0)));
    if (std::abs(c002_closed - out.c002_2) >
        1e-10 * std::max(std::abs(c002_closed), 1e-300)) {
        throw Error("SingularSystem",
                    "second-order closed form disagrees with the linear solve");
    }
    return out;
}

AnalyticBlockade analytic_observables(const SystemParams& p, const DriveParams& d,
                                      bool include_cascade)
{
    const PerturbativeAmplitudes first = first_order(p, d, include_cascade);
    const PerturbativeAmplitudes second = second_order(p, d, first, include_cascade);
    AnalyticBlockade out;
    out.I_c = std::norm(second.c001_1);
    out.g2 = std::norm(second.c002_2) / (out.I_c * out.I_c);
    return out;
}

} // namespace cepqed
