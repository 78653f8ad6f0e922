#pragma once
#include <stdexcept>
#include <string>

namespace stein {

// Base class so the CLI can map library errors to exit codes in one place.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input-contract violations (CLI exit 1).
struct DimensionMismatch : Error { using Error::Error; };
struct DependentRows : Error { using Error::Error; };
struct EvenCharacteristic : Error { using Error::Error; };
struct PairingViolation : Error { using Error::Error; };
struct NotASummand : Error { using Error::Error; };
struct WrongCorank : Error { using Error::Error; };
struct NotSkew : Error { using Error::Error; };
struct OddDimension : Error { using Error::Error; };
struct NotSymplecticModP : Error { using Error::Error; };
struct OrientationMismatch : Error { using Error::Error; };
struct NotASimplex : Error { using Error::Error; };
struct NotFaceClosed : Error { using Error::Error; };
struct PrimeTooSmall : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct SpecViolation : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct FeasibilityGuard : Error { using Error::Error; };

// Self-check / cross-check failures (CLI exit 2).
struct VerificationFailure : Error { using Error::Error; };
struct MethodDisagreement : VerificationFailure { using VerificationFailure::VerificationFailure; };
struct WitnessConstructionFailed : VerificationFailure { using VerificationFailure::VerificationFailure; };

} // namespace stein
