#include "stabledp/errors.hpp"

namespace stabledp {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCycleDetected: return "CycleDetected";
    case ErrorKind::kBadIndex: return "BadIndex";
    case ErrorKind::kVertexNotInUniverse: return "VertexNotInUniverse";
    case ErrorKind::kEmptySupport: return "EmptySupport";
    case ErrorKind::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::kMalformedInterval: return "MalformedInterval";
    case ErrorKind::kDuplicateIndex: return "DuplicateIndex";
    case ErrorKind::kIncomparableTriples: return "IncomparableTriples";
    case ErrorKind::kInfeasibleChain: return "InfeasibleChain";
    case ErrorKind::kSupportTooLarge: return "SupportTooLarge";
    case ErrorKind::kInvalidFamily: return "InvalidFamily";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kUnknownFamily: return "UnknownFamily";
  }
  return "Error";
}

}  // namespace stabledp
