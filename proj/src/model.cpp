#include "cepqed/model.hpp"
#include "cepqed/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "json.hpp"

namespace cepqed {

double wrap_phase(double phi)
{
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) {
        w += two_pi;
    }
    if (w >= two_pi) { // fmod rounding can land exactly on 2*pi
        w -= two_pi;
    }
    return w;
}

SystemParams validate(const SystemParams& p)
{
    std::vector<std::string> codes;
    std::string msg;
    if (!(p.kappa > 0.0)) {
        codes.push_back("NonPositiveKappa");
        msg += "kappa must be > 0 (got " + std::to_string(p.kappa) + "); ";
    }
    if (p.g < 0.0) {
        codes.push_back("NegativeCoupling");
        msg += "g must be >= 0 (got " + std::to_string(p.g) + "); ";
    }
    if (p.gamma < 0.0) {
        codes.push_back("NegativeGamma");
        msg += "gamma must be >= 0 (got " + std::to_string(p.gamma) + "); ";
    }
    if (!codes.empty()) {
        throw Error(codes.front(), msg);
    }
    SystemParams out = p;
    out.phi = wrap_phase(p.phi);
    return out;
}

DriveParams validate(const DriveParams& d)
{
    if (d.Omega < 0.0) {
        throw Error("NegativeDrive", "Omega must be >= 0");
    }
    return d;
}

SystemParams params_from_json_text(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("ConfigError", std::string("invalid JSON: ") + e.what());
    }
    SystemParams p;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k != "omega_c" && k != "omega_0" && k != "g" && k != "kappa" &&
            k != "phi" && k != "gamma" && k != "Omega" && k != "omega_L") {
            throw Error("ConfigError", "unknown parameter field '" + k + "'");
        }
        if (!it.value().is_number()) {
            throw Error("ConfigError", "field '" + k + "' must be a number");
        }
    }
    p.omega_c = j.value("omega_c", 0.0);
    p.omega_0 = j.value("omega_0", 0.0);
    p.g = j.value("g", 1.0);
    p.kappa = j.value("kappa", 1.0);
    p.phi = j.value("phi", 0.0);
    p.gamma = j.value("gamma", 0.0);
    return validate(p);
}

std::string params_to_json_text(const SystemParams& p)
{
    nlohmann::json j;
    j["omega_c"] = p.omega_c;
    j["omega_0"] = p.omega_0;
    j["g"] = p.g;
    j["kappa"] = p.kappa;
    j["phi"] = p.phi;
    j["gamma"] = p.gamma;
    return j.dump();
}

} // namespace cepqed
