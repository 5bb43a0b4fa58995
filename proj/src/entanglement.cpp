#include "cepqed/entanglement.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "cepqed/errors.hpp"
#include "cepqed/expm.hpp"

namespace cepqed {

using std::complex;
using namespace std::complex_literals;

Eigen::Matrix4cd two_qubit_matrix(const SystemParams& p)
{
    const complex<double> eip = std::exp(1i * p.phi);
    const complex<double> zc(p.omega_c, -0.5 * p.kappa);
    Eigen::Matrix4cd m;
    m << p.omega_c, 0, p.g, p.g,
         0, p.omega_c, p.g, p.g,
         p.g, p.g, zc, 0,
         p.g, p.g, -1i * p.kappa * eip, zc;
    return m;
}

std::vector<TwoQubitAmplitudes> evolve_two_qubit(const SystemParams& p,
                                                 const std::vector<double>& times)
{
    const Eigen::Matrix4cd m = two_qubit_matrix(p);
    Eigen::Vector4cd v0;
    v0 << 1, 0, 0, 0;

    // Spectral expansion; the 4x4 can be defective at special phases, so
    // fall back to matrix-exponential stepping on ill-conditioned bases.
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m);
    const Eigen::Matrix4cd R = es.eigenvectors();
    const bool spectral_ok =
        std::abs(R.determinant()) > 1e-8;

    std::vector<TwoQubitAmplitudes> out;
    out.reserve(times.size());
    if (spectral_ok) {
        const Eigen::Vector4cd c = R.partialPivLu().solve(v0);
        for (double t : times) {
            Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
            for (int k = 0; k < 4; ++k) {
                v += R.col(k) * c(k) * std::exp(-1i * es.eigenvalues()(k) * t);
            }
            out.push_back({v(0), v(1), v(2), v(3)});
        }
    } else {
        double t_prev = 0.0;
        Eigen::Vector4cd v = v0;
        for (double t : times) {
            if (t > t_prev) {
                v = (expm(-1i * (t - t_prev) * m) * v).eval();
                t_prev = t;
            }
            out.push_back({v(0), v(1), v(2), v(3)});
        }
    }
    return out;
}

AnalyticCoefficients analytic_coefficients(const SystemParams& p, double t)
{
    const double w = wrap_phase(p.phi);
    const double dist = std::min(w, 2.0 * std::numbers::pi - w);
    if (dist > 1e-12) {
        throw Error("PhaseOutOfDomain",
                    "closed-form amplitudes require phi = 0 (mod 2 pi)");
    }
    const double g = p.g;
    const double k = p.kappa;
    const double den = 16.0 * g * g + k * k;
    const double damp = std::exp(-0.5 * k * t);
    const double osc = 4.0 * g * std::cos(2.0 * g * t) + k * std::sin(2.0 * g * t);

    AnalyticCoefficients a;
    a.c_eg = (8.0 * g * g + k * k + 2.0 * g * damp * osc) / den;
    a.c_ge = 2.0 * g * (-4.0 * g + damp * osc) / den;
    // The closed forms are written at omega_c = 0; restore the free phase
    // e^{-i w_c t} for general omega_c.
    const complex<double> rot = std::exp(-1i * p.omega_c * t);
    a.c_eg *= rot;
    a.c_ge *= rot;
    return a;
}

double concurrence(const TwoQubitAmplitudes& a)
{
    return 2.0 * std::abs(a.c_eg * std::conj(a.c_ge));
}

double concurrence(const AnalyticCoefficients& a)
{
    return 2.0 * std::abs(a.c_eg * std::conj(a.c_ge));
}

} // namespace cepqed
