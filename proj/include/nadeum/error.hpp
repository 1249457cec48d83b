#ifndef NADEUM_ERROR_HPP_
#define NADEUM_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace nadeum {

// Base of every error the library reports. `kind()` is a stable identifier
// (e.g. "ParseError", "NotApplicable") used in JSON error payloads.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Malformed JSON documents (scripts, histories, proofs, manifests).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message) : Error("FormatError", message) {}
};

}  // namespace nadeum

#endif  // NADEUM_ERROR_HPP_
