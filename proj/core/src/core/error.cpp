#include "vctl/core/error.hpp"

namespace vctl {
namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += "; ";
    out += items[i];
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error(ErrorClass::config, join(violations)), violations_(std::move(violations)) {}

NumericalError::NumericalError(const std::string& what, long step)
    : Error(ErrorClass::numerical, step >= 0 ? what + " (step " + std::to_string(step) + ")" : what),
      step_(step) {}

}  // namespace vctl
