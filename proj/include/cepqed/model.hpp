#ifndef CEPQED_MODEL_HPP
#define CEPQED_MODEL_HPP

#include <string>

namespace cepqed {

// Physical parameters of the chiral-EP cavity QED model: a two-level
// emitter coupled with strength g to the degenerate CCW/CW modes of a
// microring that leaks into a mirror-terminated waveguide at rate kappa.
// phi is the round-trip propagation phase picked up between the
// ring-waveguide junction and the mirror; gamma is the emitter's
// free-space decay (zero unless stated otherwise).
//
// The library is unit-agnostic; the CLI works in units of kappa.
struct SystemParams {
    double omega_c = 0.0; // resonance of both ring modes
    double omega_0 = 0.0; // emitter transition frequency
    double g = 1.0;       // emitter-mode coupling (same for CCW and CW)
    double kappa = 1.0;   // ring-waveguide decay rate
    double phi = 0.0;     // propagation phase, kept in [0, 2*pi)
    double gamma = 0.0;   // emitter free-space decay
};

struct DriveParams {
    double Omega = 0.0;   // coherent drive amplitude on the emitter
    double omega_L = 0.0; // laser frequency
};

// Wraps an angle to [0, 2*pi).
double wrap_phase(double phi);

// Returns a normalized copy (phi wrapped) or throws Error with code
// NonPositiveKappa / NegativeCoupling / NegativeGamma. Lists every
// violated bound in the message. Idempotent.
SystemParams validate(const SystemParams& p);

DriveParams validate(const DriveParams& d);

// JSON round-trip for the parameter schema
// {"omega_c":..,"omega_0":..,"g":..,"kappa":..,"phi":..,"gamma":..}
// with optional {"Omega":..,"omega_L":..}. Unknown keys are rejected.
SystemParams params_from_json_text(const std::string& text);
std::string params_to_json_text(const SystemParams& p);

} // namespace cepqed

#endif
