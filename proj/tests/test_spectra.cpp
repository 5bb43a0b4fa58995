#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "cepqed/errors.hpp"
#include "cepqed/single_excitation.hpp"
#include "cepqed/spectra.hpp"
#include "test_util.hpp"

using namespace cepqed;
using std::complex;
using namespace std::complex_literals;

namespace {

SystemParams make(double g, double kappa, double phi, double wc = 0.0,
                  double w0 = 0.0)
{
    SystemParams p;
    p.omega_c = wc;
    p.omega_0 = w0;
    p.g = g;
    p.kappa = kappa;
    p.phi = phi;
    return validate(p);
}

} // namespace

TEST_CASE("response function: exact values")
{
    // Lorentz and EP terms cancel exactly on resonance at phi = 0.
    CHECK(std::abs(response_chi(0.0, make(1, 1, 0))) < 1e-15);
    // phi = pi on resonance: chi = -8i/kappa.
    CHECK(std::abs(response_chi(0.0, make(1, 1, std::numbers::pi)) -
                   complex<double>(0, -8)) < 1e-14);
    // phi = 0 at w = wc + kappa/2: chi = -2i.
    CHECK(std::abs(response_chi(0.5, make(1, 1, 0)) - complex<double>(0, -2)) <
          1e-14);
}

TEST_CASE("chi without the EP term is the plain two-mode Lorentz response")
{
    testutil::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const SystemParams p = make(rng.uniform(0, 2), rng.uniform(0.2, 2),
                                    rng.uniform(0, 2 * std::numbers::pi));
        const double w = rng.uniform(-4, 4);
        const complex<double> lorentz =
            2.0 / complex<double>(w - p.omega_c, 0.5 * p.kappa);
        CHECK(std::abs(response_chi(w, p, false) - lorentz) < 1e-14);
    }
}

TEST_CASE("Lamb shift and local coupling: exact values")
{
    const SystemParams vac = make(1, 1, 0);
    CHECK(lamb_shift(0.0, vac) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(local_coupling(0.0, vac) == doctest::Approx(0.0).epsilon(1e-15));

    const SystemParams pi_case = make(1.5, 1, std::numbers::pi);
    CHECK(local_coupling(0.0, pi_case) ==
          doctest::Approx(16.0 * 1.5 * 1.5).epsilon(1e-13));

    CHECK(local_coupling(0.5, make(0.8, 1, 0)) ==
          doctest::Approx(4.0 * 0.8 * 0.8).epsilon(1e-13));
    CHECK(lamb_shift(0.5, make(0.8, 1, 0)) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("chi route equals the closed forms on random samples")
{
    testutil::Rng rng(19);
    for (int i = 0; i < 1000; ++i) {
        const SystemParams p = make(rng.uniform(0, 3), rng.uniform(0.1, 3),
                                    rng.uniform(0, 2 * std::numbers::pi),
                                    rng.uniform(-2, 2));
        const double w = rng.uniform(p.omega_c - 6, p.omega_c + 6);
        const double d1 = lamb_shift(w, p);
        const double d2 = lamb_shift_closed_form(w, p);
        const double g1 = local_coupling(w, p);
        const double g2 = local_coupling_closed_form(w, p);
        const double scale =
            std::max({std::abs(d1), std::abs(g1), 1e-12 * p.g * p.g});
        CHECK(std::abs(d1 - d2) < 1e-12 * scale);
        CHECK(std::abs(g1 - g2) < 1e-12 * scale);
    }
}

TEST_CASE("vacancy spectrum: symmetric doublet at +-sqrt(8g^2-k^2)/2")
{
    // The analytic maxima of S(w) at phi = 0 sit exactly at
    // +-sqrt(8 g^2 - kappa^2)/2 (stationary-point roots of dS/dw), which
    // approaches the +-sqrt(2) g eigenvalue positions for g >> kappa.
    for (double g : {1.0, 3.0}) {
        const SystemParams p = make(g, 1, 0);
        const auto tr = se_spectrum(default_grid(p), p);
        const auto peaks = find_peaks(tr);
        REQUIRE(peaks.size() == 2);
        const double expected = std::sqrt(8.0 * g * g - 1.0) / 2.0;
        const double step = tr.omega[1] - tr.omega[0];
        CHECK(std::abs(peaks[0].center + expected) < step);
        CHECK(std::abs(peaks[1].center - expected) < step);
        CHECK(peaks[0].height == doctest::Approx(peaks[1].height).epsilon(1e-6));
        if (g == 3.0) {
            // large-g limit approaches the Rabi eigenvalues +-sqrt(2) g
            CHECK(std::abs(expected - std::numbers::sqrt2 * g) <
                  0.01 * std::numbers::sqrt2 * g);
        }
    }
}

TEST_CASE("FW spectrum: the bound-state peak is missing")
{
    const FWSolution fw = fw_solve(1.0, 1.0, 0.0, FWBranch::Minus);
    const SystemParams p = make(1.0, 1.0, fw.phi_fw);
    const auto tr = se_spectrum(default_grid(p), p);
    const auto peaks = find_peaks(tr);
    // resonant cut: only the surviving Rabi peak is a local maximum; the
    // broad central branch is a shoulder under it
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].center > 1.0);
    for (const auto& pk : peaks) {
        CHECK(std::abs(pk.center - fw.omega_fw) > 0.5);
    }
    // local coupling closes exactly at the bound energy
    CHECK(std::abs(local_coupling(fw.omega_fw, p)) < 1e-12);

    // detuned cut: two resolved peaks, still nothing at omega_fw
    SystemParams det = p;
    det.omega_0 = -0.4 * p.g;
    const auto tr2 = se_spectrum(default_grid(det), det);
    const auto peaks2 = find_peaks(tr2);
    REQUIRE(peaks2.size() == 2);
    for (const auto& pk : peaks2) {
        CHECK(std::abs(pk.center - fw.omega_fw) > 0.2);
    }
}

TEST_CASE("emission line integrates to one")
{
    const SystemParams p = make(1, 1, std::numbers::pi / 2);
    const auto grid = linspace(-40, 40, 80001);
    const auto tr = se_spectrum(grid, p);
    double integral = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        integral += 0.5 * (tr.values[i].real() + tr.values[i - 1].real()) *
                    (grid[i] - grid[i - 1]);
    }
    CHECK(integral == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("spectrum trace stays nonnegative and handles the removable point")
{
    for (double phi : {0.0, 0.7, std::numbers::pi / 2, 2.41885840577638,
                       std::numbers::pi}) {
        const SystemParams p = make(1, 1, phi);
        const auto tr = se_spectrum(default_grid(p), p); // grid hits wc exactly
        for (const auto& v : tr.values) {
            CHECK(std::isfinite(v.real()));
            CHECK(v.real() >= -1e-12);
        }
    }
}

TEST_CASE("spectral density: null at resonance and closed values")
{
    const SystemParams p = make(1.2, 1, 0);
    const auto grid = default_grid(p);
    const auto tr = spectral_density(grid, p);
    // exact zero at w = wc (wc = 0 is the middle grid point)
    const std::size_t mid = grid.size() / 2;
    CHECK(grid[mid] == 0.0);
    CHECK(tr.values[mid].real() == 0.0);

    // J(wc +- kappa/2) = 2 g^2 / pi at kappa = 1
    const auto tr2 = spectral_density({-0.5, 0.5}, p);
    const double expected = 2.0 * 1.2 * 1.2 / std::numbers::pi;
    CHECK(tr2.values[0].real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(tr2.values[1].real() == doctest::Approx(expected).epsilon(1e-14));

    // Gamma(w) = 2 pi J(w) across the whole grid
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double gam = local_coupling(grid[i], p);
        const double j2pi = 2.0 * std::numbers::pi * tr.values[i].real();
        CHECK(std::abs(gam - j2pi) <= 1e-12 * std::max(std::abs(gam), 1e-30));
    }

    // local coupling is a squared Lorentzian (nonnegative) at phi = 0
    for (double w : grid) {
        CHECK(local_coupling(w, p) >= 0.0);
    }
}

TEST_CASE("spectral density outside its phase domain")
{
    try {
        (void)spectral_density({-1.0, 0.0, 1.0}, make(1, 1, std::numbers::pi));
        FAIL("expected PhaseOutOfDomain");
    } catch (const Error& e) {
        CHECK(e.code() == "PhaseOutOfDomain");
    }
}

TEST_CASE("find_peaks on a synthetic Lorentzian")
{
    const double fwhm = 0.1, center = 0.3;
    SpectrumTrace tr;
    tr.kind = TraceKind::SESpectrum;
    tr.omega = linspace(-2, 2, 801); // step 0.005
    for (double w : tr.omega) {
        const double hw = 0.5 * fwhm;
        tr.values.push_back(hw * hw / ((w - center) * (w - center) + hw * hw));
    }
    const auto peaks = find_peaks(tr);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].is_resolved);
    CHECK(peaks[0].center == doctest::Approx(center).epsilon(1e-3));
    CHECK(peaks[0].fwhm == doctest::Approx(fwhm).epsilon(0.02));
    CHECK(peaks[0].height == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("find_peaks corner cases")
{
    SpectrumTrace flat;
    flat.omega = linspace(0, 1, 11);
    flat.values.assign(11, 0.5);
    CHECK(find_peaks(flat).empty());

    SpectrumTrace empty;
    try {
        (void)find_peaks(empty);
        FAIL("expected EmptyTrace");
    } catch (const Error& e) {
        CHECK(e.code() == "EmptyTrace");
    }
}

TEST_CASE("default grid shape")
{
    const SystemParams p = make(1.5, 1, 0);
    const auto grid = default_grid(p);
    CHECK(grid.size() == 4001);
    CHECK(grid.front() == doctest::Approx(-8.0));
    CHECK(grid.back() == doctest::Approx(8.0));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(grid[i] > grid[i - 1]);
    }
}
