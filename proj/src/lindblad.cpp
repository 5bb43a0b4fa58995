#include "cepqed/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

#include "cepqed/errors.hpp"

namespace cepqed {

using std::complex;
using namespace std::complex_literals;

HilbertSpace make_space(int n_qubits, int n_max)
{
    if (n_qubits < 1 || n_max < 1) {
        throw Error("DimensionGuard", "need at least one qubit and n_max >= 1");
    }
    HilbertSpace s{n_qubits, n_max};
    if (s.total_dim() > 4096) {
        throw Error("DimensionGuard", "total dimension " +
                                          std::to_string(s.total_dim()) +
                                          " exceeds the 4096 guard");
    }
    return s;
}

int fock_index(const HilbertSpace& s, const std::vector<int>& qubits, int m, int p)
{
    int q = 0;
    for (int b : qubits) {
        q = q * 2 + b;
    }
    return (q * s.mode_dim() + m) * s.mode_dim() + p;
}

namespace {

SpMat sparse_identity(int n)
{
    SpMat id(n, n);
    id.setIdentity();
    return id;
}

SpMat mode_annihilator(int dim)
{
    SpMat a(dim, dim);
    for (int n = 1; n < dim; ++n) {
        a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    a.makeCompressed();
    return a;
}

} // namespace

Operators build_operators(const HilbertSpace& s)
{
    const int md = s.mode_dim();
    const SpMat a = mode_annihilator(md);
    const SpMat id_mode = sparse_identity(md);
    const SpMat id_modes = sparse_identity(md * md);

    SpMat sm2(2, 2);
    sm2.insert(0, 1) = 1.0; // |g><e|, qubit basis (g, e)

    Operators ops;
    for (int q = 0; q < s.n_qubits; ++q) {
        SpMat op = sparse_identity(1);
        for (int j = 0; j < s.n_qubits; ++j) {
            op = kroneckerProduct(op, j == q ? sm2 : sparse_identity(2)).eval();
        }
        op = kroneckerProduct(op, id_modes).eval();
        op.makeCompressed();
        ops.sigma_minus.push_back(std::move(op));
    }
    const SpMat id_qubits = sparse_identity(1 << s.n_qubits);
    ops.c_ccw = kroneckerProduct(id_qubits, kroneckerProduct(a, id_mode).eval()).eval();
    ops.c_cw = kroneckerProduct(id_qubits, kroneckerProduct(id_mode, a).eval()).eval();
    ops.c_ccw.makeCompressed();
    ops.c_cw.makeCompressed();
    return ops;
}

DensityMatrix pure_state(const HilbertSpace& s, int index)
{
    DensityMatrix dm;
    dm.space = s;
    dm.rho = Eigen::MatrixXcd::Zero(s.total_dim(), s.total_dim());
    dm.rho(index, index) = 1.0;
    return dm;
}

void check_density_matrix(const DensityMatrix& dm)
{
    const Eigen::MatrixXcd& r = dm.rho;
    if (r.rows() != dm.space.total_dim() || r.cols() != dm.space.total_dim()) {
        throw Error("InvalidDensityMatrix", "dimension mismatch with space");
    }
    if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw Error("InvalidDensityMatrix", "not Hermitian to 1e-10");
    }
    if (std::abs(r.trace() - 1.0) > 1e-10) {
        throw Error("InvalidDensityMatrix", "trace deviates from 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (r + r.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) {
        throw Error("InvalidDensityMatrix", "negative eigenvalue below -1e-8");
    }
}

std::complex<double> expectation(const SpMat& op, const DensityMatrix& dm)
{
    return (op * dm.rho).trace();
}

SpMat spre(const SpMat& a)
{
    return kroneckerProduct(sparse_identity(static_cast<int>(a.rows())), a).eval();
}

SpMat spost(const SpMat& b)
{
    SpMat bt = SpMat(b.transpose());
    return kroneckerProduct(bt, sparse_identity(static_cast<int>(b.rows()))).eval();
}

SpMat sandwich(const SpMat& a, const SpMat& b)
{
    SpMat bt = SpMat(b.transpose());
    return kroneckerProduct(bt, a).eval();
}

SpMat dissipator(const SpMat& c)
{
    const SpMat cd = SpMat(c.adjoint());
    const SpMat cdc = SpMat(cd * c);
    return SpMat(sandwich(c, cd) - 0.5 * spre(cdc) - 0.5 * spost(cdc));
}

SpMat build_hamiltonian(const SystemParams& p,
                        const std::optional<DriveParams>& drive,
                        const HilbertSpace& s)
{
    if (drive && s.n_qubits != 1) {
        throw Error("UnsupportedDrive", "driving is single-emitter only");
    }
    const Operators ops = build_operators(s);
    const double w0 = drive ? p.omega_0 - drive->omega_L : p.omega_0;
    const double wc = drive ? p.omega_c - drive->omega_L : p.omega_c;

    SpMat h(s.total_dim(), s.total_dim());
    const SpMat n_ccw = SpMat(SpMat(ops.c_ccw.adjoint()) * ops.c_ccw);
    const SpMat n_cw = SpMat(SpMat(ops.c_cw.adjoint()) * ops.c_cw);
    h = SpMat(wc * n_ccw + wc * n_cw);
    for (const SpMat& sm : ops.sigma_minus) {
        const SpMat sp = SpMat(sm.adjoint());
        h += SpMat(w0 * SpMat(sp * sm));
        h += SpMat(p.g * (SpMat(SpMat(ops.c_ccw.adjoint()) * sm) + SpMat(sp * ops.c_ccw)));
        h += SpMat(p.g * (SpMat(SpMat(ops.c_cw.adjoint()) * sm) + SpMat(sp * ops.c_cw)));
    }
    if (drive) {
        const SpMat sp = SpMat(ops.sigma_minus[0].adjoint());
        h += SpMat(drive->Omega * (sp + ops.sigma_minus[0]));
    }
    h.makeCompressed();
    return h;
}

Superoperator build_generator(const SystemParams& p,
                              const std::optional<DriveParams>& drive,
                              const HilbertSpace& s,
                              bool include_cascade)
{
    const Operators ops = build_operators(s);
    const SpMat h = build_hamiltonian(p, drive, s);

    SpMat L = SpMat(-1i * (spre(h) - spost(h)));
    L += SpMat(p.kappa * dissipator(ops.c_ccw));
    L += SpMat(p.kappa * dissipator(ops.c_cw));
    if (p.gamma > 0.0) {
        for (const SpMat& sm : ops.sigma_minus) {
            L += SpMat(p.gamma * dissipator(sm));
        }
    }
    if (include_cascade) {
        const complex<double> eip = std::exp(1i * p.phi);
        const SpMat cwd_ccw = SpMat(SpMat(ops.c_cw.adjoint()) * ops.c_ccw);
        const SpMat ccwd_cw = SpMat(SpMat(ops.c_ccw.adjoint()) * ops.c_cw);
        L += SpMat(p.kappa * eip *
                   (sandwich(ops.c_ccw, SpMat(ops.c_cw.adjoint())) - spre(cwd_ccw)));
        L += SpMat(p.kappa * std::conj(eip) *
                   (sandwich(ops.c_cw, SpMat(ops.c_ccw.adjoint())) - spost(ccwd_cw)));
    }
    L.makeCompressed();
    return Superoperator{std::move(L), s};
}

namespace {

// Dormand-Prince 5(4) on the linear system dx/dt = L x.
void rk45_evolve(const SpMat& L, Eigen::VectorXcd& x, double t0, double t1,
                 double tol)
{
    if (t1 <= t0) return;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double t = t0;
    double h = std::min(t1 - t0, 0.1);
    const double hmin = (t1 - t0) * 1e-14;
    Eigen::VectorXcd k1 = L * x;
    while (t < t1) {
        h = std::min(h, t1 - t);
        const Eigen::VectorXcd k2 = L * (x + h * a21 * k1);
        const Eigen::VectorXcd k3 = L * (x + h * (a31 * k1 + a32 * k2));
        const Eigen::VectorXcd k4 = L * (x + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Eigen::VectorXcd k5 =
            L * (x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Eigen::VectorXcd k6 = L * (x + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                                  a64 * k4 + a65 * k5));
        const Eigen::VectorXcd x5 =
            x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::VectorXcd k7 = L * x5;
        const Eigen::VectorXcd err_v =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double scale = std::max(x.cwiseAbs().maxCoeff(), 1e-30);
        const double err = err_v.cwiseAbs().maxCoeff() / scale;
        if (err <= tol || h <= hmin) {
            t += h;
            x = x5;
            k1 = k7; // FSAL
        }
        const double safety =
            0.9 * std::pow(std::max(err / tol, 1e-10), -0.2);
        h *= std::clamp(safety, 0.2, 5.0);
    }
}

DensityMatrix revalidate(Eigen::VectorXcd& x, const HilbertSpace& s)
{
    const int d = s.total_dim();
    Eigen::Map<Eigen::MatrixXcd> rho_map(x.data(), d, d);
    DensityMatrix dm;
    dm.space = s;
    dm.rho = 0.5 * (rho_map + rho_map.adjoint().eval());
    const double tr = dm.rho.trace().real();
    if (std::abs(tr) < 1e-300) {
        throw Error("PositivityViolation", "vanishing trace along trajectory");
    }
    dm.rho /= tr;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dm.rho,
                                                       Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-6) {
        throw Error("PositivityViolation",
                    "min eigenvalue " + std::to_string(min_eig) +
                        " below -1e-6: truncation too small or step failure");
    }
    return dm;
}

} // namespace

std::vector<DensityMatrix> integrate(const Superoperator& gen,
                                     const DensityMatrix& rho0,
                                     const std::vector<double>& times,
                                     double tol)
{
    check_density_matrix(rho0);
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] < times[i - 1]) {
            throw Error("InvalidTimeGrid", "times must be ascending");
        }
    }
    const int d = gen.space.total_dim();
    Eigen::VectorXcd x =
        Eigen::Map<const Eigen::VectorXcd>(rho0.rho.data(), d * d);

    std::vector<DensityMatrix> out;
    out.reserve(times.size());
    double t = 0.0;
    for (double target : times) {
        rk45_evolve(gen.L, x, t, target, tol);
        t = std::max(t, target);
        Eigen::VectorXcd copy = x;
        out.push_back(revalidate(copy, gen.space));
    }
    return out;
}

namespace {

// Sparse residual b - A x accumulated in extended precision; keeps the
// steady-state components that sit many orders below the trace accurate.
Eigen::VectorXcd residual_extended(const SpMat& A, const Eigen::VectorXcd& x,
                                   const Eigen::VectorXcd& b)
{
    using CLD = std::complex<long double>;
    const Eigen::Index n = A.rows();
    std::vector<CLD> acc(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        acc[static_cast<std::size_t>(i)] = CLD(b(i).real(), b(i).imag());
    }
    for (int j = 0; j < A.outerSize(); ++j) {
        const CLD xj(x(j).real(), x(j).imag());
        for (SpMat::InnerIterator it(A, j); it; ++it) {
            const CLD a(it.value().real(), it.value().imag());
            acc[static_cast<std::size_t>(it.row())] -= a * xj;
        }
    }
    Eigen::VectorXcd r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const CLD& v = acc[static_cast<std::size_t>(i)];
        r(i) = complex<double>(static_cast<double>(v.real()),
                               static_cast<double>(v.imag()));
    }
    return r;
}

// Estimates the two smallest singular values of L by subspace iteration
// on (L^+ L)^{-1}, using one LU of the (tiny-shifted) generator.
std::pair<double, double> smallest_singular_pair(const SpMat& L)
{
    const Eigen::Index n = L.rows();
    double scale = 0.0;
    for (int j = 0; j < L.outerSize(); ++j) {
        for (SpMat::InnerIterator it(L, j); it; ++it) {
            scale = std::max(scale, std::abs(it.value()));
        }
    }
    SpMat shifted = L;
    const double eps = 1e-13 * std::max(scale, 1.0);
    SpMat id(n, n);
    id.setIdentity();
    shifted += SpMat(eps * id);
    Eigen::SparseLU<SpMat> lu(shifted);
    if (lu.info() != Eigen::Success) {
        throw Error("SingularSystem", "LU of shifted generator failed");
    }

    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, 2);
    // Deterministic quasi-random start vectors.
    for (Eigen::Index i = 0; i < n; ++i) {
        V(i, 0) = complex<double>(std::cos(0.7 * static_cast<double>(i) + 0.3),
                                  std::sin(1.3 * static_cast<double>(i)));
        V(i, 1) = complex<double>(std::cos(2.1 * static_cast<double>(i) + 1.1),
                                  std::sin(0.9 * static_cast<double>(i) + 2.0));
    }
    for (int iter = 0; iter < 8; ++iter) {
        for (int c = 0; c < 2; ++c) {
            Eigen::VectorXcd y = lu.adjoint().solve(V.col(c));
            V.col(c) = lu.solve(y);
        }
        // Gram-Schmidt
        V.col(0).normalize();
        V.col(1) -= (V.col(0).adjoint() * V.col(1))(0) * V.col(0);
        V.col(1).normalize();
    }
    Eigen::MatrixXcd B(n, 2);
    B.col(0) = L * V.col(0);
    B.col(1) = L * V.col(1);
    Eigen::Matrix2cd G = B.adjoint() * B;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(G);
    const double s0 = std::sqrt(std::max(es.eigenvalues()(0), 0.0));
    const double s1 = std::sqrt(std::max(es.eigenvalues()(1), 0.0));
    return {s0, s1};
}

} // namespace

DensityMatrix steady_state(const Superoperator& gen)
{
    const int d = gen.space.total_dim();
    const Eigen::Index n = gen.L.rows();

    const auto [s0, s1] = smallest_singular_pair(gen.L);
    if (s1 - s0 < 1e-9) {
        throw Error("DegenerateSteadyState",
                    "two smallest singular values coincide (" +
                        std::to_string(s0) + ", " + std::to_string(s1) +
                        "); add emitter decay to lift bound-state manifolds");
    }

    // Null vector through the trace-replaced system: row 0 of L is swapped
    // for the trace functional, right-hand side picks trace = 1.
    std::vector<Eigen::Triplet<complex<double>>> trip;
    trip.reserve(static_cast<std::size_t>(gen.L.nonZeros()) + static_cast<std::size_t>(d));
    for (int j = 0; j < gen.L.outerSize(); ++j) {
        for (SpMat::InnerIterator it(gen.L, j); it; ++it) {
            if (it.row() != 0) {
                trip.emplace_back(static_cast<int>(it.row()), j, it.value());
            }
        }
    }
    for (int i = 0; i < d; ++i) {
        trip.emplace_back(0, i * d + i, complex<double>(1.0, 0.0));
    }
    SpMat A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();

    Eigen::SparseLU<SpMat> lu(A);
    if (lu.info() != Eigen::Success) {
        throw Error("SingularSystem", "steady-state LU factorization failed");
    }
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
    b(0) = 1.0;
    Eigen::VectorXcd x = lu.solve(b);
    for (int refine = 0; refine < 3; ++refine) {
        const Eigen::VectorXcd r = residual_extended(A, x, b);
        x += lu.solve(r);
    }

    DensityMatrix dm;
    dm.space = gen.space;
    Eigen::Map<Eigen::MatrixXcd> rho_map(x.data(), d, d);
    dm.rho = 0.5 * (rho_map + rho_map.adjoint().eval());
    dm.rho /= dm.rho.trace().real();

    const Eigen::VectorXcd v =
        Eigen::Map<const Eigen::VectorXcd>(dm.rho.data(), n);
    const double res = (gen.L * v).norm();
    if (res > 1e-9) {
        throw Error("SingularSystem",
                    "steady-state residual " + std::to_string(res) + " too large");
    }
    return dm;
}

std::vector<std::complex<double>> correlation(const Superoperator& gen,
                                              const DensityMatrix& rho_init,
                                              const SpMat& a, const SpMat& b,
                                              const std::vector<double>& tau_grid)
{
    check_density_matrix(rho_init);
    const int d = gen.space.total_dim();
    Eigen::MatrixXcd x0m = b * rho_init.rho;
    Eigen::VectorXcd x = Eigen::Map<Eigen::VectorXcd>(x0m.data(), d * d);

    std::vector<complex<double>> out;
    out.reserve(tau_grid.size());
    double t = 0.0;
    for (double target : tau_grid) {
        rk45_evolve(gen.L, x, t, target, 1e-10);
        t = std::max(t, target);
        Eigen::Map<const Eigen::MatrixXcd> xm(x.data(), d, d);
        out.push_back((a * xm).trace());
    }
    return out;
}

namespace {

// Indices that can acquire weight when evolving from `support` under the
// sparsity pattern of L: the smallest invariant subspace containing the
// initial operator. Restricting the resolvent there keeps it regular at
// frequencies where unrelated sectors (e.g. the vacuum steady mode) would
// make the full generator singular.
std::vector<int> reachable_set(const SpMat& L, const std::vector<int>& support)
{
    const Eigen::Index n = L.rows();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<int> work;
    for (int i : support) {
        if (!seen[static_cast<std::size_t>(i)]) {
            seen[static_cast<std::size_t>(i)] = 1;
            work.push(i);
        }
    }
    while (!work.empty()) {
        const int j = work.front();
        work.pop();
        for (SpMat::InnerIterator it(L, j); it; ++it) {
            const int i = static_cast<int>(it.row());
            if (!seen[static_cast<std::size_t>(i)]) {
                seen[static_cast<std::size_t>(i)] = 1;
                work.push(i);
            }
        }
    }
    std::vector<int> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

} // namespace

std::vector<double> regression_spectrum(const Superoperator& gen,
                                        const DensityMatrix& rho_init,
                                        const SpMat& a, const SpMat& b,
                                        const std::vector<double>& omega_grid)
{
    check_density_matrix(rho_init);
    const int d = gen.space.total_dim();
    const Eigen::Index n = gen.L.rows();

    Eigen::MatrixXcd x0m = b * rho_init.rho;
    const Eigen::VectorXcd x0 = Eigen::Map<Eigen::VectorXcd>(x0m.data(), d * d);
    std::vector<int> support;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(x0(i)) > 0.0) {
            support.push_back(static_cast<int>(i));
        }
    }
    const std::vector<int> sel = reachable_set(gen.L, support);
    const int ns = static_cast<int>(sel.size());

    Eigen::MatrixXcd Ls = Eigen::MatrixXcd::Zero(ns, ns);
    {
        std::vector<int> pos(static_cast<std::size_t>(n), -1);
        for (int k = 0; k < ns; ++k) {
            pos[static_cast<std::size_t>(sel[static_cast<std::size_t>(k)])] = k;
        }
        for (int k = 0; k < ns; ++k) {
            const int j = sel[static_cast<std::size_t>(k)];
            for (SpMat::InnerIterator it(gen.L, j); it; ++it) {
                const int pi = pos[static_cast<std::size_t>(it.row())];
                if (pi >= 0) {
                    Ls(pi, k) = it.value();
                }
            }
        }
    }
    Eigen::VectorXcd x0s(ns), ats(ns);
    const Eigen::MatrixXcd at = a.toDense().transpose();
    const Eigen::VectorXcd atv = Eigen::Map<const Eigen::VectorXcd>(at.data(), d * d);
    for (int k = 0; k < ns; ++k) {
        x0s(k) = x0(sel[static_cast<std::size_t>(k)]);
        ats(k) = atv(sel[static_cast<std::size_t>(k)]);
    }

    const double lscale = Ls.cwiseAbs().maxCoeff();
    std::vector<double> out(omega_grid.size());
    std::vector<char> bad(omega_grid.size(), 0);
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        Eigen::MatrixXcd M = Ls;
        M.diagonal().array() -= 1i * omega_grid[i];
        const Eigen::PartialPivLU<Eigen::MatrixXcd> plu(M);
        const Eigen::VectorXcd x = plu.solve(-x0s);
        const double res = (M * x + x0s).norm();
        if (!x.allFinite() || res > 1e-6 * std::max(1.0, lscale) * x0s.norm()) {
            bad[i] = 1; // exact hit on an undamped frequency
            out[i] = 0.0;
            continue;
        }
        out[i] = (ats.transpose() * x)(0).real() / std::numbers::pi;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!bad[i]) continue;
        double sum = 0.0;
        int cnt = 0;
        if (i > 0 && !bad[i - 1]) {
            sum += out[i - 1];
            ++cnt;
        }
        if (i + 1 < out.size() && !bad[i + 1]) {
            sum += out[i + 1];
            ++cnt;
        }
        out[i] = cnt > 0 ? sum / cnt : 0.0;
    }
    return out;
}

BlockadeResult blockade_observables(const SystemParams& p, const DriveParams& d,
                                    const HilbertSpace& s, bool include_cascade,
                                    bool check_convergence)
{
    if (d.Omega <= 0.0) {
        throw Error("UniqueSteadyStateRequiresDrive",
                    "blockade observables need Omega > 0");
    }
    auto evaluate = [&](const HilbertSpace& space) {
        const Superoperator gen = build_generator(p, d, space, include_cascade);
        const DensityMatrix rho = steady_state(gen);
        const Operators ops = build_operators(space);
        const SpMat n_cw = SpMat(SpMat(ops.c_cw.adjoint()) * ops.c_cw);
        const SpMat cc = SpMat(ops.c_cw * ops.c_cw);
        const SpMat g2num_op = SpMat(SpMat(cc.adjoint()) * cc);
        const double ic = expectation(n_cw, rho).real();
        const double num = expectation(g2num_op, rho).real();
        return std::pair<double, double>{ic, num / (ic * ic)};
    };

    BlockadeResult res;
    const auto [ic, g2] = evaluate(s);
    res.I_c = ic;
    res.g2 = g2;
    if (check_convergence) {
        const HilbertSpace bigger = make_space(s.n_qubits, s.n_max + 1);
        const auto [ic2, g22] = evaluate(bigger);
        const double rel_ic = std::abs(ic2 - ic) / std::max(std::abs(ic2), 1e-300);
        const double rel_g2 = std::abs(g22 - g2) / std::max(std::abs(g22), 1e-300);
        res.truncation_warning = rel_ic > 1e-6 || rel_g2 > 1e-6;
    }
    return res;
}

} // namespace cepqed
