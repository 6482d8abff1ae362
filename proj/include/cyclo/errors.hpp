#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// branched_functions
struct OnCutError : Error {
  using Error::Error;
};
struct ZeroArgumentError : Error {
  using Error::Error;
};

// series evaluation
struct PoleInDenominatorError : Error {
  PoleInDenominatorError(std::string msg, int beta_index, int term)
      : Error(std::move(msg)), beta_index(beta_index), term(term) {}
  int beta_index;
  int term;
};
struct DegenerateAlphaError : Error {
  using Error::Error;
};

// summation / region classification
struct OnBoundaryError : Error {
  using Error::Error;
};
struct NoConsistentPhaseError : Error {
  using Error::Error;
};

// transformations
struct ZeroParameterError : Error {
  using Error::Error;
};

// chiral Potts
struct BranchPointError : Error {
  using Error::Error;
};
struct InconsistentRootsError : Error {
  using Error::Error;
};
struct DerivationMismatchError : Error {
  using Error::Error;
};
struct ZeroDenominatorError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};

// fermat bridge
struct OffCurveError : Error {
  using Error::Error;
};
struct SectorViolationError : Error {
  using Error::Error;
};
struct SectorBoundaryError : Error {
  using Error::Error;
};

}  // namespace cyclo
