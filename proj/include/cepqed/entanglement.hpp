#ifndef CEPQED_ENTANGLEMENT_HPP
#define CEPQED_ENTANGLEMENT_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cepqed/model.hpp"

namespace cepqed {

// Single-excitation amplitudes of two identical emitters in the ring:
// coefficients of |eg00>, |ge00>, |gg10>, |gg01>.
struct TwoQubitAmplitudes {
    std::complex<double> c_eg;
    std::complex<double> c_ge;
    std::complex<double> c_10;
    std::complex<double> c_01;
};

// Effective non-Hermitian generator of the two-emitter single-excitation
// amplitudes, basis (c_eg, c_ge, c_10, c_01); both emitters resonant with
// the cavity and equally coupled.
Eigen::Matrix4cd two_qubit_matrix(const SystemParams& p);

// Integrates the amplitudes from one excited emitter, (1,0,0,0).
std::vector<TwoQubitAmplitudes> evolve_two_qubit(const SystemParams& p,
                                                 const std::vector<double>& times);

struct AnalyticCoefficients {
    std::complex<double> c_eg;
    std::complex<double> c_ge;
};

// Laplace-transform closed forms for c_eg(t), c_ge(t), valid at
// phi = 0 (mod 2 pi); throws PhaseOutOfDomain otherwise.
AnalyticCoefficients analytic_coefficients(const SystemParams& p, double t);

// C(t) = 2 |c_eg c_ge^*| for this single-excitation family.
double concurrence(const TwoQubitAmplitudes& a);
double concurrence(const AnalyticCoefficients& a);

} // namespace cepqed

#endif
