#ifndef HILLGAP_ERRORS_HPP
#define HILLGAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hillgap {

/// Base class for all hillgap errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// potential
struct ZeroMeanViolation : Error { using Error::Error; };
struct ConjugacyViolation : Error { using Error::Error; };
struct ParityError : Error { using Error::Error; };

// weights
struct InvalidParams : Error { using Error::Error; };
struct HypothesisViolation : Error { using Error::Error; };

// matrix_op
struct CutoffTooSmall : Error { using Error::Error; };
struct BoundaryEigenvalue : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };

// shooting
struct StepConvergenceFailure : Error { using Error::Error; };
struct RootNotFound : Error { using Error::Error; };
struct MultiplicityAmbiguous : Error { using Error::Error; };

// basic_equation
struct TNormTooLarge : Error { using Error::Error; };
struct NoRootInDisc : Error { using Error::Error; };
struct RootCountMismatch : Error { using Error::Error; };
struct NotReached : Error { using Error::Error; };

// riesz
struct EigenvalueOnContour : Error { using Error::Error; };
struct QuadratureStall : Error { using Error::Error; };

// inverse_map
struct NoConvergence : Error { using Error::Error; };

// cli
struct ConfigError : Error { using Error::Error; };
struct ComputeError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace hillgap

#endif
