#pragma once

#include <stdexcept>
#include <string>

namespace iim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input to an inverse-Laplacian solve carries a nonzero mean.
struct NotMeanZero : Error {
  using Error::Error;
};

/// Input to the wide-Laplacian solve has content on its null modes.
struct NotInRange : Error {
  using Error::Error;
};

struct GeometryDegenerate : Error {
  using Error::Error;
};

struct RootNotBracketed : Error {
  using Error::Error;
};

/// A node changed side more than once within one time step.
struct MultipleCrossings : Error {
  using Error::Error;
};

struct MissingJumps : Error {
  using Error::Error;
};

struct MissingTangentialDerivative : Error {
  using Error::Error;
};

/// Velocity blew up or went non-finite during time stepping.
struct Diverged : Error {
  using Error::Error;
};

/// A manufactured case failed its construction-time self checks.
struct ConstructionInvalid : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace iim
