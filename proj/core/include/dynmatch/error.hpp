#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dynmatch {

enum class Errc {
  kDuplicateEdge,
  kSelfLoop,
  kMissingEdge,
  kVertexOutOfRange,
  kTooLarge,
  kInvalidInput,
  kBudgetExceeded,
  kInvalidSpec,
  kParse,
  kUsage,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dynmatch
