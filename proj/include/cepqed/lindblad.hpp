#ifndef CEPQED_LINDBLAD_HPP
#define CEPQED_LINDBLAD_HPP

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "cepqed/model.hpp"

namespace cepqed {

using SpMat = Eigen::SparseMatrix<std::complex<double>>;

// Truncated product space: n_qubits two-level emitters tensor the CCW and
// CW ring modes, each mode truncated at n_max photons. Basis index
// (big-endian): qubits first, then CCW occupation, then CW occupation.
struct HilbertSpace {
    int n_qubits = 1;
    int n_max = 1;

    int mode_dim() const { return n_max + 1; }
    int total_dim() const { return (1 << n_qubits) * mode_dim() * mode_dim(); }
};

// Throws DimensionGuard when total_dim() would exceed 4096.
HilbertSpace make_space(int n_qubits, int n_max);

// Flat index of |q_1 .. q_n>|m>_ccw |p>_cw.
int fock_index(const HilbertSpace& s, const std::vector<int>& qubits, int m, int p);

struct Operators {
    std::vector<SpMat> sigma_minus; // one lowering operator per emitter
    SpMat c_ccw;
    SpMat c_cw;
};

Operators build_operators(const HilbertSpace& s);

struct Superoperator {
    SpMat L; // acts on column-stacked vec(rho)
    HilbertSpace space;
};

struct DensityMatrix {
    Eigen::MatrixXcd rho;
    HilbertSpace space;
};

// |index><index| on the given space.
DensityMatrix pure_state(const HilbertSpace& s, int index);

// Hermiticity to 1e-10, unit trace to 1e-10, smallest eigenvalue above
// -1e-8; throws InvalidDensityMatrix otherwise.
void check_density_matrix(const DensityMatrix& dm);

std::complex<double> expectation(const SpMat& op, const DensityMatrix& dm);

// Superoperator building blocks (column-stacking convention:
// vec(A X B) = (B^T kron A) vec X).
SpMat spre(const SpMat& a);
SpMat spost(const SpMat& b);
SpMat sandwich(const SpMat& a, const SpMat& b);
SpMat dissipator(const SpMat& c); // c . c^+ - {c^+ c, .}/2

// System Hamiltonian on the truncated space. With a drive, the rotating
// frame at omega_L is used (detunings on the diagonal, Omega (s+ + s-)
// drive term); without, the lab frame. Multi-emitter spaces replicate the
// emitter term and couplings per qubit; driving is single-emitter only.
SpMat build_hamiltonian(const SystemParams& p,
                        const std::optional<DriveParams>& drive,
                        const HilbertSpace& s);

// Full cascaded master-equation generator: unitary part, the kappa
// dissipators of both traveling modes, the chiral cascade term
// kappa (e^{i phi}[c_ccw rho, c_cw^+] + e^{-i phi}[c_cw, rho c_ccw^+]),
// the emitter dissipator gamma L[sigma] when gamma > 0, and the drive in
// the rotating frame when present. include_cascade=false gives the
// mirror-less Lorentz baseline.
Superoperator build_generator(const SystemParams& p,
                              const std::optional<DriveParams>& drive,
                              const HilbertSpace& s,
                              bool include_cascade = true);

// Adaptive RK45 (Dormand-Prince) trajectory of d vec(rho)/dt = L vec(rho)
// with per-step tolerance `tol`. Every output state is re-validated:
// Hermitized, trace-renormalized, and positivity-checked (throws
// PositivityViolation below -1e-6).
std::vector<DensityMatrix> integrate(const Superoperator& gen,
                                     const DensityMatrix& rho0,
                                     const std::vector<double>& times,
                                     double tol = 1e-10);

// Steady state as the smallest singular vector of the generator
// (inverse iteration on L^+ L with sparse LU; iterative refinement in
// extended precision keeps the small components meaningful). Residual
// ||L vec(rho)|| < 1e-9 guaranteed on return. Throws DegenerateSteadyState
// when the two smallest singular values are within 1e-9 of each other.
DensityMatrix steady_state(const Superoperator& gen);

// Two-time correlation <A(tau) B(0)> on the initial state rho_init via the
// quantum regression theorem: evolves B rho under the generator and traces
// against A on each grid point.
std::vector<std::complex<double>> correlation(const Superoperator& gen,
                                              const DensityMatrix& rho_init,
                                              const SpMat& a, const SpMat& b,
                                              const std::vector<double>& tau_grid);

// Emission-type spectrum of the correlation <A(tau) B(0)>:
//   S(w) = (1/pi) Re Int_0^inf dtau e^{-i w tau} <A(tau) B(0)>
// evaluated exactly through the resolvent of the generator restricted to
// the invariant subspace reachable from B rho (no windowing artifacts).
// Grid points that hit an undamped frequency exactly are filled by the
// two-sided neighbor average.
std::vector<double> regression_spectrum(const Superoperator& gen,
                                        const DensityMatrix& rho_init,
                                        const SpMat& a, const SpMat& b,
                                        const std::vector<double>& omega_grid);

struct BlockadeResult {
    double I_c = 0.0; // <c_cw^+ c_cw> on the steady state
    double g2 = 0.0;  // <c_cw^+ c_cw^+ c_cw c_cw> / I_c^2
    bool truncation_warning = false;
};

// Steady-state blockade observables under weak emitter driving. The
// truncation is re-checked at n_max+1; a relative change above 1e-6 sets
// truncation_warning. Throws UniqueSteadyStateRequiresDrive for Omega <= 0.
BlockadeResult blockade_observables(const SystemParams& p, const DriveParams& d,
                                    const HilbertSpace& s,
                                    bool include_cascade = true,
                                    bool check_convergence = true);

} // namespace cepqed

#endif
