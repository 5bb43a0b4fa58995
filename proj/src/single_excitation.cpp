#include "cepqed/single_excitation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cepqed/errors.hpp"
#include "cepqed/expm.hpp"

namespace cepqed {

using std::complex;
using namespace std::complex_literals;

SingleExcitationMatrix build_mc(const SystemParams& p)
{
    const complex<double> eip = std::exp(1i * p.phi);
    SingleExcitationMatrix out;
    out.basis = Basis::Traveling;
    out.m << complex<double>(p.omega_0, -0.5 * p.gamma), p.g, p.g,
             p.g, complex<double>(p.omega_c, -0.5 * p.kappa), 0.0,
             p.g, -1i * p.kappa * eip, complex<double>(p.omega_c, -0.5 * p.kappa);
    return out;
}

SingleExcitationMatrix to_standing_basis(const SingleExcitationMatrix& m)
{
    if (m.basis == Basis::Standing) {
        throw Error("WrongBasis", "matrix is already in the standing basis");
    }
    // p = T s with columns of T the traveling components of (sigma, c1, c2)
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix3cd T;
    T << 1, 0, 0,
         0, r, -r,
         0, r, r;
    SingleExcitationMatrix out;
    out.basis = Basis::Standing;
    out.m = T.transpose() * m.m * T; // T is real orthogonal
    return out;
}

Eigen::Matrix3cd hermitian_part(const SystemParams& p)
{
    const complex<double> eip = std::exp(1i * p.phi);
    Eigen::Matrix3cd h;
    h << p.omega_c, p.g, p.g,
         p.g, p.omega_c, 0.5i * p.kappa / eip,
         p.g, -0.5i * p.kappa * eip, p.omega_c;
    return h;
}

Eigen::RowVector3cd coupling_vector(const SystemParams& p)
{
    const double s = std::sqrt(0.5 * p.kappa);
    Eigen::RowVector3cd d;
    d << 0.0, s, s * std::exp(-1i * p.phi);
    return d;
}

Eigen::Matrix3cd dissipative_part(const SystemParams& p)
{
    const Eigen::RowVector3cd d = coupling_vector(p);
    return d.adjoint() * d;
}

EigenSystem eigensystem(const Eigen::Matrix3cd& m)
{
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> right_solver(m);
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> left_solver(m.transpose());

    std::array<int, 3> ri = {0, 1, 2};
    auto ev = right_solver.eigenvalues();
    std::sort(ri.begin(), ri.end(), [&](int a, int b) {
        if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
        return ev(a).imag() < ev(b).imag();
    });

    EigenSystem sys;
    for (int k = 0; k < 3; ++k) {
        sys.eigenvalues(k) = ev(ri[k]);
        sys.right.col(k) = right_solver.eigenvectors().col(ri[k]);
    }

    // Pair each left vector (right eigenvector of M^T) with the closest
    // eigenvalue of the sorted right set.
    auto lev = left_solver.eigenvalues();
    std::array<bool, 3> used = {false, false, false};
    for (int k = 0; k < 3; ++k) {
        int best = -1;
        double best_dist = 0.0;
        for (int j = 0; j < 3; ++j) {
            if (used[j]) continue;
            const double dist = std::abs(lev(j) - sys.eigenvalues(k));
            if (best < 0 || dist < best_dist) {
                best = j;
                best_dist = dist;
            }
        }
        used[best] = true;
        sys.left.row(k) = left_solver.eigenvectors().col(best).transpose();
    }

    const double scale = m.cwiseAbs().maxCoeff();
    double min_gap = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            min_gap = std::min(min_gap,
                               std::abs(sys.eigenvalues(a) - sys.eigenvalues(b)));
        }
    }
    for (int k = 0; k < 3; ++k) {
        sys.biorthogonal_norms(k) = sys.left.row(k) * sys.right.col(k);
    }
    sys.defective = min_gap < 1e-8 * scale ||
                    sys.biorthogonal_norms.cwiseAbs().minCoeff() < 1e-10;
    return sys;
}

EigenSystem eigensystem(const SingleExcitationMatrix& m)
{
    return eigensystem(m.m);
}

std::vector<Eigen::Vector3cd> evolve(const SingleExcitationMatrix& m,
                                     const Eigen::Vector3cd& p0,
                                     const std::vector<double>& times)
{
    if (!times.empty() && times.front() < 0.0) {
        throw Error("InvalidTimeGrid", "times must start at t >= 0");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] < times[i - 1]) {
            throw Error("InvalidTimeGrid", "times must be ascending");
        }
    }

    std::vector<Eigen::Vector3cd> out;
    out.reserve(times.size());

    const EigenSystem sys = eigensystem(m);
    if (!sys.defective) {
        // Spectral expansion p(t) = sum_k R_k (L_k p0)/(L_k R_k) e^{-i l_k t}
        Eigen::Vector3cd coeff;
        for (int k = 0; k < 3; ++k) {
            coeff(k) = (sys.left.row(k) * p0)(0) / sys.biorthogonal_norms(k);
        }
        for (double t : times) {
            Eigen::Vector3cd p = Eigen::Vector3cd::Zero();
            for (int k = 0; k < 3; ++k) {
                p += sys.right.col(k) * coeff(k) *
                     std::exp(-1i * sys.eigenvalues(k) * t);
            }
            out.push_back(p);
        }
        return out;
    }

    // Defective (e.g. the bare chiral EP itself): step with the matrix
    // exponential instead of the eigenbasis.
    double t_prev = 0.0;
    Eigen::Vector3cd p = p0;
    for (double t : times) {
        const double dt = t - t_prev;
        if (dt > 0.0) {
            p = (expm(-1i * dt * m.m) * p).eval();
            t_prev = t;
        } else if (t == 0.0) {
            p = p0;
        }
        out.push_back(p);
    }
    return out;
}

VacancyResult vacancy_condition(const SystemParams& p)
{
    const double two_pi = 2.0 * std::numbers::pi;
    const double w = wrap_phase(p.phi);
    const double dist = std::min(w, two_pi - w);
    VacancyResult res;
    res.is_vacancy = dist < 1e-12;
    const double norm = std::sqrt(8.0 * p.g * p.g + p.kappa * p.kappa);
    res.eigenstate << -1i * p.kappa / norm, 0.0, 2.0 * std::numbers::sqrt2 * p.g / norm;
    return res;
}

FWSolution fw_solve(double g, double kappa, double omega_c, FWBranch branch)
{
    const double disc = 8.0 * g * g - kappa * kappa;
    if (disc < 0.0) {
        throw Error("NoBoundState",
                    "8 g^2 < kappa^2: no real Friedrich-Wintgen energy");
    }
    const double sign = branch == FWBranch::Plus ? 1.0 : -1.0;
    const double delta = sign * 0.5 * std::sqrt(disc);

    // e^{i phi} = -((4g^2 - k^2) + i k * 2*delta) / (4 g^2), unit modulus
    const complex<double> num(4.0 * g * g - kappa * kappa, 2.0 * kappa * delta);
    const complex<double> eiphi = -num / (4.0 * g * g);

    FWSolution sol;
    sol.branch = branch;
    sol.omega_fw = omega_c + delta;
    sol.phi_fw = wrap_phase(std::arg(eiphi));
    sol.degenerate_with_vacancy = disc == 0.0;
    sol.qe_amplitude_alpha = complex<double>(delta, -0.5 * kappa) / g;
    sol.null_vector << sol.qe_amplitude_alpha, -std::conj(eiphi), 1.0;

    // The construction closes only if M_c at phi_fw really has a real
    // eigenvalue at omega_fw; check it before handing the result out.
    SystemParams p;
    p.omega_c = omega_c;
    p.omega_0 = omega_c;
    p.g = g;
    p.kappa = kappa;
    p.phi = sol.phi_fw;
    const Eigen::Matrix3cd mc = build_mc(p).m;
    const Eigen::Matrix3cd shifted =
        mc - sol.omega_fw * Eigen::Matrix3cd::Identity();
    const double residual = (shifted * sol.null_vector).norm() / sol.null_vector.norm();
    if (residual > 1e-10 * std::max(1.0, kappa)) {
        throw Error("NoBoundState", "bound-state residual " +
                                        std::to_string(residual) +
                                        " exceeds tolerance");
    }
    return sol;
}

EigenSystem match_modes(const EigenSystem& previous, const EigenSystem& current)
{
    std::array<int, 3> perm = {-1, -1, -1};
    std::array<bool, 3> taken = {false, false, false};
    // Greedy maximal-overlap assignment; 3x3 is small enough that greedy
    // over the globally largest overlaps is adequate for band tracking.
    for (int pass = 0; pass < 3; ++pass) {
        int bi = -1, bj = -1;
        double best = -1.0;
        for (int i = 0; i < 3; ++i) {
            if (perm[i] >= 0) continue;
            for (int j = 0; j < 3; ++j) {
                if (taken[j]) continue;
                const double ov = std::abs(
                    (previous.right.col(i).adjoint() * current.right.col(j)).value());
                if (ov > best) {
                    best = ov;
                    bi = i;
                    bj = j;
                }
            }
        }
        perm[bi] = bj;
        taken[bj] = true;
    }
    EigenSystem out = current;
    for (int i = 0; i < 3; ++i) {
        out.eigenvalues(i) = current.eigenvalues(perm[i]);
        out.right.col(i) = current.right.col(perm[i]);
        out.left.row(i) = current.left.row(perm[i]);
        out.biorthogonal_norms(i) = current.biorthogonal_norms(perm[i]);
    }
    return out;
}

} // namespace cepqed
