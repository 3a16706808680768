#include "crowdnav/agent.hpp"

#include <string>

#include "crowdnav/error.hpp"

namespace crowdnav {

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Success:
      return "success";
    case OutcomeKind::Collision:
      return "collision";
    case OutcomeKind::Timeout:
      return "timeout";
  }
  return "timeout";
}

OutcomeKind outcome_from_string(std::string_view name) {
  if (name == "success") return OutcomeKind::Success;
  if (name == "collision") return OutcomeKind::Collision;
  if (name == "timeout") return OutcomeKind::Timeout;
  throw FormatError("unknown outcome '" + std::string(name) + "'");
}

}  // namespace crowdnav
