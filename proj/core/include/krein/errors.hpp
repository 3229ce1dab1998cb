#pragma once

#include <stdexcept>
#include <string>

namespace krein {

// Error taxonomy shared by all modules. `exit_code` groups errors the way the
// CLI reports them: 2 = configuration error, 3 = numerical breakdown.
class Error : public std::runtime_error {
public:
    Error(std::string what, int exit_code) : std::runtime_error(std::move(what)), code_(exit_code) {}
    int exit_code() const noexcept { return code_; }

private:
    int code_;
};

struct BadParameter : Error {
    explicit BadParameter(const std::string& w) : Error("BadParameter: " + w, 2) {}
};
struct NyquistViolation : Error {
    explicit NyquistViolation(const std::string& w) : Error("NyquistViolation: " + w, 2) {}
};
struct GridMismatch : Error {
    explicit GridMismatch(const std::string& w) : Error("GridMismatch: " + w, 2) {}
};
struct BandOutOfRange : Error {
    explicit BandOutOfRange(const std::string& w) : Error("BandOutOfRange: " + w, 2) {}
};
struct BadSpec : Error {
    explicit BadSpec(const std::string& w) : Error("BadSpec: " + w, 2) {}
};
struct NonIntegrable : Error {
    explicit NonIntegrable(const std::string& w) : Error("NonIntegrable: " + w, 2) {}
};
struct NonFinite : Error {
    explicit NonFinite(const std::string& w) : Error("NonFinite: " + w, 3) {}
};
struct NotPositive : Error {
    explicit NotPositive(const std::string& w) : Error("NotPositive: " + w, 3) {}
};
struct DivergedFromDirect : Error {
    explicit DivergedFromDirect(const std::string& w) : Error("DivergedFromDirect: " + w, 3) {}
};
struct RegularityNotCertified : Error {
    explicit RegularityNotCertified(const std::string& w) : Error("RegularityNotCertified: " + w, 2) {}
};
struct CrossCheckFailed : Error {
    explicit CrossCheckFailed(const std::string& w) : Error("CrossCheckFailed: " + w, 3) {}
};
struct WeightVanishes : Error {
    explicit WeightVanishes(const std::string& w) : Error("WeightVanishes: " + w, 3) {}
};
struct Singular : Error {
    explicit Singular(const std::string& w) : Error("Singular: " + w, 3) {}
};
struct NotContractive : Error {
    explicit NotContractive(const std::string& w) : Error("NotContractive: " + w, 3) {}
};
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& w) : Error("NoConvergence: " + w, 3) {}
};
struct DepthExceeded : Error {
    explicit DepthExceeded(const std::string& w) : Error("DepthExceeded: " + w, 3) {}
};
struct SupportViolation : Error {
    explicit SupportViolation(const std::string& w) : Error("SupportViolation: " + w, 2) {}
};
struct StepTooLarge : Error {
    explicit StepTooLarge(const std::string& w) : Error("StepTooLarge: " + w, 2) {}
};

} // namespace krein
