#ifndef MWELL_ERRORS_HPP
#define MWELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mwell {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnergyOutOfRange : Error { using Error::Error; };
struct RootNotBracketed : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct OutOfGrid : Error { using Error::Error; };
struct SolverFailure : Error { using Error::Error; };
struct NoResonancesFound : Error { using Error::Error; };
struct DuplicateLevel : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct IndexMismatch : Error { using Error::Error; };
struct SaddleDiverged : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct ContinuationOutOfRange : Error { using Error::Error; };
struct DisplacementTooLarge : Error { using Error::Error; };
struct StepUnstable : Error { using Error::Error; };
struct NoOverlap : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };

}  // namespace mwell

#endif
