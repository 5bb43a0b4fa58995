#ifndef CEPQED_SPECTRA_HPP
#define CEPQED_SPECTRA_HPP

#include <complex>
#include <vector>

#include "cepqed/model.hpp"

namespace cepqed {

enum class TraceKind { Response, SESpectrum, SpectralDensity, LambShift, LocalCoupling };

// A sampled frequency trace. Real-valued kinds keep their data in the
// real part; Response carries the full complex chi(omega).
struct SpectrumTrace {
    std::vector<double> omega;
    std::vector<std::complex<double>> values;
    TraceKind kind = TraceKind::SESpectrum;
};

struct PeakDescriptor {
    double center = 0.0;
    double height = 0.0;
    double fwhm = 0.0;
    bool is_resolved = false;
};

// Response function of the chiral-EP cavity:
//   chi(w) = 2/((w-wc) + i k/2) - i k e^{i phi} / ((w-wc) + i k/2)^2
// The first term is the two-mode Lorentz response, the second the
// squared-Lorentz contribution of the exceptional point (drop it via
// include_cep_term=false to recover the Lorentz baseline).
std::complex<double> response_chi(double omega, const SystemParams& p,
                                  bool include_cep_term = true);

// Photonic Lamb shift Delta(w) = g^2 Re chi and local coupling strength
// Gamma(w) = -2 g^2 Im chi, plus the equivalent rational closed forms
// (independent evaluation path, used to cross-check the chi route).
double lamb_shift(double omega, const SystemParams& p);
double local_coupling(double omega, const SystemParams& p);
double lamb_shift_closed_form(double omega, const SystemParams& p);
double local_coupling_closed_form(double omega, const SystemParams& p);

// Emitter emission spectrum
//   S(w) = (1/2pi) Gamma(w) / ([w - w0 - Delta(w)]^2 + [Gamma(w)/2]^2),
// normalized so that the full line integrates to one. Removable 0/0
// points (bound-state frequencies hit exactly by the grid) are filled by
// the two-sided neighbor average. Analytic path assumes gamma = 0.
SpectrumTrace se_spectrum(const std::vector<double>& omega_grid,
                          const SystemParams& p);

// Spectral density J(w) = (2 g^2 k/pi) [(w-wc)/((w-wc)^2 + (k/2)^2)]^2,
// valid at phi = 0 (mod 2pi); throws PhaseOutOfDomain otherwise.
SpectrumTrace spectral_density(const std::vector<double>& omega_grid,
                               const SystemParams& p);

// chi(w) sampled on a grid (kind = Response).
SpectrumTrace response_trace(const std::vector<double>& omega_grid,
                             const SystemParams& p);

// Local maxima with quadratic center refinement and linear half-height
// crossings for the FWHM. Peaks whose half-height crossings are missing
// (grid boundary, overlap) come back with is_resolved = false.
std::vector<PeakDescriptor> find_peaks(const SpectrumTrace& trace);

// Default 4001-point grid spanning [wc - 5k - 2g, wc + 5k + 2g].
std::vector<double> default_grid(const SystemParams& p, int points = 4001);

std::vector<double> linspace(double lo, double hi, int n);

} // namespace cepqed

#endif
