#pragma once

#include <stdexcept>
#include <string>

namespace toda {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define TODA_ERROR(Name)            \
  struct Name : Error {             \
    using Error::Error;             \
  }

TODA_ERROR(NonRealRoot);
TODA_ERROR(DegenerateCurve);
TODA_ERROR(QuadratureFailure);
TODA_ERROR(StepFailure);
TODA_ERROR(ResolutionFailure);
TODA_ERROR(SignAmbiguity);
TODA_ERROR(ConvergenceFailure);
TODA_ERROR(BracketFailure);

#undef TODA_ERROR

}  // namespace toda
