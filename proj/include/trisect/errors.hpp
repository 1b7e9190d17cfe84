#pragma once

#include <stdexcept>
#include <string>

namespace trisect {

// Error taxonomy shared by the library and the CLI.  The code determines the
// CLI exit status: parse errors 2, unsupported-but-well-formed input 3,
// anything that indicates an internal pipeline failure 4.  Validation
// *reports* are ordinary return values (a diagram failing its axioms is data,
// not an exception); ValidationError is reserved for callers that demanded a
// valid object and received garbage.
enum class ErrorCode {
  Parse,
  Validation,
  UnknownMark,
  UnknownName,
  Unsupported,
  NonOrientableResult,
  TransportFailed,
  Pipeline,
  Cancelled,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline Error parse_error(const std::string& msg) {
  return Error(ErrorCode::Parse, "parse error: " + msg);
}
inline Error validation_error(const std::string& msg) {
  return Error(ErrorCode::Validation, "validation error: " + msg);
}
inline Error unknown_mark(const std::string& mark) {
  return Error(ErrorCode::UnknownMark, "unknown mark: " + mark);
}
inline Error unknown_name(const std::string& what) {
  return Error(ErrorCode::UnknownName, "unknown name: " + what);
}
inline Error unsupported(const std::string& msg) {
  return Error(ErrorCode::Unsupported, "unsupported configuration: " + msg);
}
inline Error non_orientable_result(const std::string& msg) {
  return Error(ErrorCode::NonOrientableResult, "non-orientable result: " + msg);
}
inline Error transport_failed(const std::string& msg) {
  return Error(ErrorCode::TransportFailed, "transport failed: " + msg);
}
inline Error pipeline_error(const std::string& msg) {
  return Error(ErrorCode::Pipeline, "pipeline error: " + msg);
}
inline Error cancelled_error(const std::string& msg) {
  return Error(ErrorCode::Cancelled, "cancelled: " + msg);
}

}  // namespace trisect
