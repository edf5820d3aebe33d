#ifndef GRIDKIT_COMMON_EXCEPTIONS_HH
#define GRIDKIT_COMMON_EXCEPTIONS_HH

#include <stdexcept>
#include <string>

namespace gridkit
{

  //! argument outside the admissible range (bad dimension, codim, index, ...)
  class DomainError : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  //! requested feature not provided by this implementation
  class CapabilityError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  //! singular or otherwise numerically unusable input
  class NumericError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  //! handle used after the grid it refers to has been modified
  class InvalidationError : public std::logic_error
  {
  public:
    using std::logic_error::logic_error;
  };

  //! operation not permitted in the current object state
  class StateError : public std::logic_error
  {
  public:
    using std::logic_error::logic_error;
  };

  //! callable or file returned data of the wrong shape
  class ShapeError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  class LookupError : public std::out_of_range
  {
  public:
    using std::out_of_range::out_of_range;
  };

  class ConstructionError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  class IoError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  class ParseError : public IoError
  {
  public:
    using IoError::IoError;
  };

  class IllegalPartitionError : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  //! iterative solver did not reach the requested tolerance
  class ConvergenceError : public std::runtime_error
  {
  public:
    ConvergenceError ( const std::string &what, double residual, int iterations )
      : std::runtime_error( what ), residual_( residual ), iterations_( iterations )
    {}

    double residual () const noexcept { return residual_; }
    int iterations () const noexcept { return iterations_; }

  private:
    double residual_;
    int iterations_;
  };

} // namespace gridkit

#endif // GRIDKIT_COMMON_EXCEPTIONS_HH
