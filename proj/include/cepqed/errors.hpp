#ifndef CEPQED_ERRORS_HPP
#define CEPQED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cepqed {

// All library failures carry a short machine-checkable code
// (e.g. "NonPositiveKappa", "DegenerateSteadyState") plus a message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace cepqed

#endif
