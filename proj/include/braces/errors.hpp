#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace braces {

  // An enumeration or exhaustive check would exceed its configured bound.
  class ResourceLimit : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // An operation was called outside its documented domain (bad primes,
  // failed hypothesis, non-coprime sizes, invalid morphism data, ...).
  class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  // A multiplication table whose row or column 0 is not the identity.
  class IdentityViolation : public PreconditionError {
   public:
    IdentityViolation(std::string const& what, std::size_t a, std::size_t b)
        : PreconditionError(what), a(a), b(b) {}
    std::size_t a, b;
  };

  // Malformed external input (JSON files, manifests).
  class FormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

}  // namespace braces
