#ifndef CEPQED_SINGLE_EXCITATION_HPP
#define CEPQED_SINGLE_EXCITATION_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cepqed/model.hpp"

namespace cepqed {

// Amplitude ordering of the single-excitation generator:
//   Traveling basis: (sigma, c_ccw, c_cw)
//   Standing basis:  (sigma, c_1, c_2) with c_cw = (c1+c2)/sqrt(2),
//                    c_ccw = (c1-c2)/sqrt(2)
enum class Basis { Traveling, Standing };

struct SingleExcitationMatrix {
    Eigen::Matrix3cd m;
    Basis basis = Basis::Traveling;
};

// Paired right/left eigenvectors of a non-Hermitian 3x3 generator.
// right.col(k) and left.row(k) satisfy M r = lambda_k r, l M = lambda_k l;
// both are normalized to unit 2-norm and eigenvalues are sorted by real
// part. biorthogonal_norms(k) = left.row(k) * right.col(k) (no conjugation).
// `defective` is set when the matrix is too close to a non-diagonalizable
// point (coalescing eigenvalues / vanishing biorthogonal norm) for the
// spectral expansion to be trusted.
struct EigenSystem {
    Eigen::Vector3cd eigenvalues;
    Eigen::Matrix3cd right;  // columns
    Eigen::Matrix3cd left;   // rows
    Eigen::Vector3cd biorthogonal_norms;
    bool defective = false;
};

enum class FWBranch { Plus, Minus };

// A dressed bound state of the Friedrich-Wintgen type: the phase phi_fw
// at which the generator acquires the real eigenvalue omega_fw, together
// with the (unnormalized) bound eigenvector (alpha, -e^{-i phi}, 1).
struct FWSolution {
    double omega_fw = 0.0;
    double phi_fw = 0.0;
    FWBranch branch = FWBranch::Plus;
    Eigen::Vector3cd null_vector;
    std::complex<double> qe_amplitude_alpha;
    bool degenerate_with_vacancy = false; // 8 g^2 == kappa^2 edge
};

struct VacancyResult {
    bool is_vacancy = false;
    Eigen::Vector3cd eigenstate; // standing basis, unit norm
};

// Single-excitation generator in the traveling basis. The (0,0) entry is
// omega_0 - i gamma/2, so detuned emitters and emitter decay are covered;
// the resonant gamma=0 case reduces to the usual form
//   [[w0, g, g], [g, wc - i k/2, 0], [g, -i k e^{i phi}, wc - i k/2]].
SingleExcitationMatrix build_mc(const SystemParams& p);

// Similarity transform to the standing-wave basis. Throws WrongBasis if
// the input is already standing.
SingleExcitationMatrix to_standing_basis(const SingleExcitationMatrix& m);

// Hermitian / dissipative split M_c = H_B - i Gamma with Gamma = D^+ D,
// valid for the resonant lossless-emitter generator (omega_0 = omega_c,
// gamma = 0). coupling_vector returns the row D = (0, sqrt(k/2),
// sqrt(k/2) e^{-i phi}).
Eigen::Matrix3cd hermitian_part(const SystemParams& p);
Eigen::Matrix3cd dissipative_part(const SystemParams& p);
Eigen::RowVector3cd coupling_vector(const SystemParams& p);

EigenSystem eigensystem(const SingleExcitationMatrix& m);
EigenSystem eigensystem(const Eigen::Matrix3cd& m);

// Amplitude evolution p(t) of dp/dt = -i M p by spectral expansion,
// falling back to matrix-exponential stepping when the eigensystem is
// defective. times must be ascending with times[0] >= 0.
std::vector<Eigen::Vector3cd> evolve(const SingleExcitationMatrix& m,
                                     const Eigen::Vector3cd& p0,
                                     const std::vector<double>& times);

// Vacancy-like bound state: exists iff phi = 0 (mod 2*pi). The bound
// eigenstate (-i kappa, 0, 2 sqrt(2) g)/sqrt(8 g^2 + kappa^2) is returned
// in the standing basis.
VacancyResult vacancy_condition(const SystemParams& p);

// Friedrich-Wintgen bound state on the chosen energy branch
// omega_fw = omega_c +- sqrt(8 g^2 - kappa^2)/2. Throws NoBoundState when
// 8 g^2 < kappa^2. The returned phi_fw is wrapped to [0, 2*pi) and has
// been verified to make M_c acquire a real eigenvalue at omega_fw.
FWSolution fw_solve(double g, double kappa, double omega_c, FWBranch branch);

// Reorders the modes of `current` so that each matches the previous sweep
// point's mode with maximal |<r_prev, r_curr>| overlap; used for band
// tracking across parameter sweeps.
EigenSystem match_modes(const EigenSystem& previous, const EigenSystem& current);

} // namespace cepqed

#endif
