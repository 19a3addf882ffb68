#pragma once
#include <exception>
#include <stdexcept>
#include <string>

namespace lladic {

enum class ErrorKind {
  PrecisionExhausted,
  NotAUnit,
  NoSimpleRoot,
  BadSpec,
  NoConjugation,
  DegenerateForm,
  ValuesNotIntegral,
  SymmetryMismatch,
  BadParameters,
  TooLarge,
  HypothesesUnmet,
  RigidityViolation,
  DegenerateBlock,
  UnsupportedFamily,
  OracleRefuted,
  PreconditionFailed,
  SearchSpaceTooLarge,
  Internal,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

// Carries the first exception out of an OpenMP region.
class ParallelErrors {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(lladic_parallel_errors)
      if (!first_) first_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::exception_ptr first_;
};

}  // namespace lladic
