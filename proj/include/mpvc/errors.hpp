#pragma once

#include <stdexcept>
#include <string>

namespace mpvc {

// Base for everything the library throws on bad input or misuse.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error { using Error::Error; };         // dimension mismatch, non-finite data
struct ParameterError : Error { using Error::Error; };     // t <= 0, N < 2, bad config values
struct DomainError : Error { using Error::Error; };        // argument outside a function's domain
struct UsageError : Error { using Error::Error; };         // missing provenance, unknown names
struct PreconditionError : Error { using Error::Error; };  // e.g. infeasible point handed to a fit
struct SetupError : Error { using Error::Error; };         // singular stiffness while building x0

}  // namespace mpvc
