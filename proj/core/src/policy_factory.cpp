#include "crowdnav/policy_factory.hpp"

#include <string>

#include "crowdnav/error.hpp"
#include "crowdnav/learning/value_policy.hpp"
#include "crowdnav/policies.hpp"

namespace crowdnav {

std::unique_ptr<Policy> make_policy(std::string_view id, const PolicyOptions& o) {
  if (id == "orca") return std::make_unique<OrcaPolicy>(o.orca, o.dt);
  if (id == "social_force") return std::make_unique<SocialForcePolicy>(o.social_force, o.dt);
  if (id == "straight_stop") return std::make_unique<StraightStopPolicy>(o.stop_radius, o.dt);
  if (id == "static") return std::make_unique<StaticPolicy>();
  if (id == "random") return std::make_unique<RandomPolicy>(o.n_directions);
  if (id == "value") {
    if (!o.net) throw Error("policy 'value' needs a trained network (--net)");
    return std::make_unique<ValuePolicy>(o.net, o.reward, o.dt, o.n_directions);
  }
  throw Error("unknown policy '" + std::string(id) + "'");
}

}  // namespace crowdnav
