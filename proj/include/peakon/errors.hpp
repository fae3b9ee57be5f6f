#ifndef PEAKON_ERRORS_HPP_
#define PEAKON_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace peakon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter validation.
class SignError : public Error { using Error::Error; };
class RangeError : public Error { using Error::Error; };
class SymmetricCaseError : public Error { using Error::Error; };

// Branch selection and evaluation domains.
class AtBreakingError : public Error { using Error::Error; };
class BranchError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class BranchArgumentError : public Error { using Error::Error; };

// Numerical machinery.
class ConvergenceError : public Error { using Error::Error; };
class MonotonicityError : public Error { using Error::Error; };
class BlowupError : public Error { using Error::Error; };
class NoBreakingError : public Error { using Error::Error; };

/// Raised by the text readers (config files, CSV).
class FormatError : public Error { using Error::Error; };

}  // namespace peakon

#endif  // PEAKON_ERRORS_HPP_
