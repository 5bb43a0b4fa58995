#ifndef CEPQED_BLOCKADE_ANALYTIC_HPP
#define CEPQED_BLOCKADE_ANALYTIC_HPP

#include <complex>

#include "cepqed/model.hpp"

namespace cepqed {

// Weak-drive perturbative amplitudes of the driven system in the rotating
// frame, first order (one excitation) and second order (two excitations).
// State labels |n m p>: emitter n, CCW m, CW p photons. delta_0 and
// delta_c are the complex detunings w0 - wL - i gamma/2, wc - wL - i k/2.
struct PerturbativeAmplitudes {
    std::complex<double> c100_1, c010_1, c001_1;
    std::complex<double> c011_2, c110_2, c101_2, c020_2, c002_2;
    std::complex<double> delta_0, delta_c;
};

// Solves the steady first-order 3x3 linear system. The c001 amplitude is
// cross-checked against the closed form Omega g (Dc + i k e^{i phi})/D1
// to 1e-10 relative. Throws SingularSystem when |D1| underflows (driving
// a lossless bound state exactly). include_cascade=false drops the
// chiral coupling (Lorentz baseline).
PerturbativeAmplitudes first_order(const SystemParams& p, const DriveParams& d,
                                   bool include_cascade = true);

// Adds the steady second-order 5x5 solution; c002 and the determinant D2
// are cross-checked against their closed forms.
PerturbativeAmplitudes second_order(const SystemParams& p, const DriveParams& d,
                                    const PerturbativeAmplitudes& first,
                                    bool include_cascade = true);

struct AnalyticBlockade {
    double I_c = 0.0; // |c001|^2
    double g2 = 0.0;  // |c002|^2 / I_c^2 (perturbative shorthand; the
                      // normally-ordered steady-state value carries an
                      // extra bosonic factor 2)
};

AnalyticBlockade analytic_observables(const SystemParams& p, const DriveParams& d,
                                      bool include_cascade = true);

// Determinant of the first-order coefficient matrix (D1) and of the
// second-order one (D2), exposed for the closed-form identities.
std::complex<double> determinant_d1(const SystemParams& p, const DriveParams& d,
                                    bool include_cascade = true);
std::complex<double> determinant_d2(const SystemParams& p, const DriveParams& d,
                                    bool include_cascade = true);

} // namespace cepqed

#endif
