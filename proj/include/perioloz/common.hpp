#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace perioloz {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Serial is the reference path; Parallel must give identical results per item.
enum class Exec { Serial, Parallel };

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PoleError : DomainError {
  using DomainError::DomainError;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, cplx last, cplx previous)
      : std::runtime_error(what), last(last), previous(previous) {}
  cplx last;
  cplx previous;
};

// Reads PERIOLOZ_THREADS once and applies it to OpenMP; 0 or unset leaves the default.
int configure_threads_from_env();

const char* version_string();

}  // namespace perioloz
