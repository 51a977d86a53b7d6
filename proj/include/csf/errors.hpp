// errors.hpp — exception types thrown across the library.

#ifndef CSF_ERRORS_HPP
#define CSF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace csf {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Construction of the stationary profile.
struct IntegrationFailure : Error { using Error::Error; };
struct BracketingFailure : Error { using Error::Error; };
struct NewtonDivergence : Error { using Error::Error; };
struct InvalidClass : Error { using Error::Error; };
struct InvalidEpsilon : Error { using Error::Error; };

// Flow evolution.
struct CurvatureBlowup : Error { using Error::Error; };
struct StepUnderflow : Error { using Error::Error; };
struct InvalidTime : Error { using Error::Error; };

// Functionals and geometry.
struct NonPositiveCurvature : Error { using Error::Error; };
struct NoCrossing : Error { using Error::Error; };
struct InsufficientRecords : Error { using Error::Error; };

// Experiment configuration.
struct InvalidConfig : Error { using Error::Error; };

} // namespace csf

#endif
