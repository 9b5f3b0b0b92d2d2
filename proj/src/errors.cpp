#include "vaxalloc/errors.hpp"

#include <utility>

namespace vaxalloc {

ValidationError::ValidationError(std::string offending_id, const std::string& message)
    : Error(message), offending_id_(std::move(offending_id)) {}

Unreachable::Unreachable(std::string from, std::string to)
    : Error("no road path between '" + from + "' and '" + to + "'"),
      from_(std::move(from)),
      to_(std::move(to)) {}

}  // namespace vaxalloc
