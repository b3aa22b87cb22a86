#pragma once

#include <stdexcept>
#include <string>

namespace camtune {

// Base for every failure the library reports. Callers that only care about
// "something went wrong" catch this; the tuning loop distinguishes Transport.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CAMTUNE_DEFINE_ERROR(Name)        \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

CAMTUNE_DEFINE_ERROR(FrameTooSmall)
CAMTUNE_DEFINE_ERROR(InvalidArgument)
CAMTUNE_DEFINE_ERROR(OutOfRange)
CAMTUNE_DEFINE_ERROR(ParseError)
CAMTUNE_DEFINE_ERROR(ValidationError)
CAMTUNE_DEFINE_ERROR(DecodeError)
CAMTUNE_DEFINE_ERROR(IoError)
CAMTUNE_DEFINE_ERROR(VersionMismatch)
CAMTUNE_DEFINE_ERROR(BoxOutOfBounds)
CAMTUNE_DEFINE_ERROR(ConfigError)
// Network-level failure (timeout, refused connection, non-200 status).
CAMTUNE_DEFINE_ERROR(TransportError)
// The peer answered, but not in the agreed wire format.
CAMTUNE_DEFINE_ERROR(ProtocolError)

#undef CAMTUNE_DEFINE_ERROR

}  // namespace camtune
