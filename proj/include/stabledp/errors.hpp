#pragma once

#include <stdexcept>
#include <string>

namespace stabledp {

enum class ErrorKind {
  kCycleDetected,
  kBadIndex,
  kVertexNotInUniverse,
  kEmptySupport,
  kInstanceTooLarge,
  kMalformedInterval,
  kDuplicateIndex,
  kIncomparableTriples,
  kInfeasibleChain,
  kSupportTooLarge,
  kInvalidFamily,
  kInvalidArgument,
  kParseError,
  kUnknownFamily,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class TypedError : public Error {
 public:
  explicit TypedError(const std::string& message) : Error(K, message) {}
};

using CycleDetected = TypedError<ErrorKind::kCycleDetected>;
using BadIndex = TypedError<ErrorKind::kBadIndex>;
using VertexNotInUniverse = TypedError<ErrorKind::kVertexNotInUniverse>;
using EmptySupport = TypedError<ErrorKind::kEmptySupport>;
using InstanceTooLarge = TypedError<ErrorKind::kInstanceTooLarge>;
using MalformedInterval = TypedError<ErrorKind::kMalformedInterval>;
using DuplicateIndex = TypedError<ErrorKind::kDuplicateIndex>;
using IncomparableTriples = TypedError<ErrorKind::kIncomparableTriples>;
using InfeasibleChain = TypedError<ErrorKind::kInfeasibleChain>;
using SupportTooLarge = TypedError<ErrorKind::kSupportTooLarge>;
using InvalidFamily = TypedError<ErrorKind::kInvalidFamily>;
using InvalidArgument = TypedError<ErrorKind::kInvalidArgument>;
using ParseError = TypedError<ErrorKind::kParseError>;
using UnknownFamily = TypedError<ErrorKind::kUnknownFamily>;

}  // namespace stabledp
