#pragma once
#include <stdexcept>
#include <string>

namespace charpoly {

// Every failure mode gets its own type so callers (and the CLI exit-code
// mapping) can distinguish domain errors from tolerance breaches.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergedQuadrature : Error { using Error::Error; };
struct LostPositivity : Error { using Error::Error; };
struct IndexOutOfTable : Error { using Error::Error; };
struct OnRealAxis : Error { using Error::Error; };
struct CoincidentArguments : Error { using Error::Error; };
struct ConfluentOrderTooHigh : Error { using Error::Error; };
struct PermutationBudgetExceeded : Error { using Error::Error; };
struct OutsideSupport : Error { using Error::Error; };
struct UnsupportedPotential : Error { using Error::Error; };
struct DegenerateConfig : Error { using Error::Error; };
struct VarianceGuardViolated : Error { using Error::Error; };
struct SizeBudgetExceeded : Error { using Error::Error; };
struct ConvergenceDomainViolated : Error { using Error::Error; };
struct CoincidentRoots : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

}  // namespace charpoly
