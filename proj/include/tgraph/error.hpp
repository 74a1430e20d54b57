#pragma once

#include <stdexcept>
#include <string>

namespace tgraph {

/// Domain error carrying a machine-readable kind such as "NotFree" or
/// "DanglingEndpoint". The CLI reports kind() in its "error" field.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

}  // namespace tgraph
