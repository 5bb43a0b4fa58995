#include "cepqed/spectra.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cepqed/errors.hpp"

namespace cepqed {

using std::complex;
using namespace std::complex_literals;

std::complex<double> response_chi(double omega, const SystemParams& p,
                                  bool include_cep_term)
{
    const complex<double> u(omega - p.omega_c, 0.5 * p.kappa);
    complex<double> chi = 2.0 / u;
    if (include_cep_term) {
        chi -= 1i * p.kappa * std::exp(1i * p.phi) / (u * u);
    }
    return chi;
}

double lamb_shift(double omega, const SystemParams& p)
{
    return p.g * p.g * response_chi(omega, p).real();
}

double local_coupling(double omega, const SystemParams& p)
{
    return -2.0 * p.g * p.g * response_chi(omega, p).imag();
}

double lamb_shift_closed_form(double omega, const SystemParams& p)
{
    const double x = omega - p.omega_c;
    const double k = p.kappa;
    const double d = x * x + 0.25 * k * k;
    const double num = (x * x - 0.25 * k * k) * (2.0 * x + k * std::sin(p.phi)) +
                       k * k * x * (1.0 - std::cos(p.phi));
    return p.g * p.g * num / (d * d);
}

double local_coupling_closed_form(double omega, const SystemParams& p)
{
    const double x = omega - p.omega_c;
    const double k = p.kappa;
    const double d = x * x + 0.25 * k * k;
    const double num = (x * x - 0.25 * k * k) * k * (1.0 - std::cos(p.phi)) -
                       k * x * (2.0 * x + k * std::sin(p.phi));
    return -2.0 * p.g * p.g * num / (d * d);
}

namespace {

void check_grid(const std::vector<double>& grid)
{
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw Error("InvalidGrid", "omega grid must be strictly ascending");
        }
    }
}

// Fill non-finite samples with the mean of their finite neighbors (the
// two-sided limit of a removable singularity on a dense grid).
void patch_removable(std::vector<complex<double>>& v)
{
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isfinite(v[i].real()) && std::isfinite(v[i].imag())) continue;
        double sum = 0.0;
        int cnt = 0;
        if (i > 0 && std::isfinite(v[i - 1].real())) {
            sum += v[i - 1].real();
            ++cnt;
        }
        if (i + 1 < n && std::isfinite(v[i + 1].real())) {
            sum += v[i + 1].real();
            ++cnt;
        }
        v[i] = cnt > 0 ? sum / cnt : 0.0;
    }
}

} // namespace

SpectrumTrace se_spectrum(const std::vector<double>& omega_grid,
                          const SystemParams& p)
{
    check_grid(omega_grid);
    SpectrumTrace tr;
    tr.kind = TraceKind::SESpectrum;
    tr.omega = omega_grid;
    tr.values.reserve(omega_grid.size());
    for (double w : omega_grid) {
        const double gam = local_coupling(w, p);
        const double det = w - p.omega_0 - lamb_shift(w, p);
        const double den = det * det + 0.25 * gam * gam;
        const double s = gam / (2.0 * std::numbers::pi) / den;
        tr.values.push_back(den == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                       : s);
    }
    patch_removable(tr.values);
    return tr;
}

SpectrumTrace spectral_density(const std::vector<double>& omega_grid,
                               const SystemParams& p)
{
    const double w = wrap_phase(p.phi);
    const double dist = std::min(w, 2.0 * std::numbers::pi - w);
    if (dist > 1e-12) {
        throw Error("PhaseOutOfDomain",
                    "spectral density J(w) is defined for phi = 0 (mod 2 pi)");
    }
    check_grid(omega_grid);
    SpectrumTrace tr;
    tr.kind = TraceKind::SpectralDensity;
    tr.omega = omega_grid;
    tr.values.reserve(omega_grid.size());
    for (double omega : omega_grid) {
        const double x = omega - p.omega_c;
        const double lorentz = x / (x * x + 0.25 * p.kappa * p.kappa);
        tr.values.push_back(2.0 * p.g * p.g * p.kappa / std::numbers::pi *
                            lorentz * lorentz);
    }
    return tr;
}

SpectrumTrace response_trace(const std::vector<double>& omega_grid,
                             const SystemParams& p)
{
    check_grid(omega_grid);
    SpectrumTrace tr;
    tr.kind = TraceKind::Response;
    tr.omega = omega_grid;
    tr.values.reserve(omega_grid.size());
    for (double w : omega_grid) {
        tr.values.push_back(response_chi(w, p));
    }
    return tr;
}

std::vector<PeakDescriptor> find_peaks(const SpectrumTrace& trace)
{
    if (trace.omega.empty()) {
        throw Error("EmptyTrace", "cannot search an empty trace");
    }
    const std::size_t n = trace.omega.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = trace.values[i].real();
    }

    std::vector<PeakDescriptor> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] >= y[i - 1] && y[i] > y[i + 1] && y[i] > 0.0)) continue;
        PeakDescriptor pk;
        // Quadratic refinement through the three points around the maximum.
        const double ym = y[i - 1], y0 = y[i], yp = y[i + 1];
        const double denom = ym - 2.0 * y0 + yp;
        double shift = 0.0;
        if (denom != 0.0) {
            shift = 0.5 * (ym - yp) / denom;
        }
        const double h = trace.omega[i + 1] - trace.omega[i];
        pk.center = trace.omega[i] + shift * h;
        pk.height = y0 - 0.25 * (ym - yp) * shift;

        // Half-height crossings by linear interpolation outward from i.
        const double half = 0.5 * pk.height;
        double left = std::numeric_limits<double>::quiet_NaN();
        double right = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t j = i; j > 0; --j) {
            if (y[j - 1] > y[j] && y[j] > half) break; // ran into another peak
            if (y[j - 1] <= half && y[j] > half) {
                const double f = (y[j] - half) / (y[j] - y[j - 1]);
                left = trace.omega[j] - f * (trace.omega[j] - trace.omega[j - 1]);
                break;
            }
        }
        for (std::size_t j = i; j + 1 < n; ++j) {
            if (y[j + 1] > y[j] && y[j] > half) break;
            if (y[j + 1] <= half && y[j] > half) {
                const double f = (y[j] - half) / (y[j] - y[j + 1]);
                right = trace.omega[j] + f * (trace.omega[j + 1] - trace.omega[j]);
                break;
            }
        }
        if (std::isfinite(left) && std::isfinite(right)) {
            pk.fwhm = right - left;
            // A meaningful width needs a handful of samples across it.
            pk.is_resolved = pk.fwhm >= 4.0 * h && pk.fwhm > 0.0;
        }
        peaks.push_back(pk);
    }
    return peaks;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = lo + h * i;
    }
    out.back() = hi;
    return out;
}

std::vector<double> default_grid(const SystemParams& p, int points)
{
    const double half = 5.0 * p.kappa + 2.0 * p.g;
    return linspace(p.omega_c - half, p.omega_c + half, points);
}

} // namespace cepqed
