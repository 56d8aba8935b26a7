#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mtm/transitions.hpp"

namespace mtm {

inline constexpr const char* kProfileFormat = "mtm-transition-profile";
inline constexpr int kProfileVersion = 1;

class ProfileFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON document layout:
///   format, version, params {l_max, delta},
///   input {event_count, static_edge_count, node_count},
///   cold_events {count, degrees [[in,out]...], timestamps [...], edge_weights [...]},
///   mu, probabilities {from: {to: p}}, rates {"from>to": lambda},
///   counts [{from, to, count, delta_t_sum, delta_t_count}], stops {code: n}
nlohmann::json profile_to_json(const TransitionProfile& profile);

/// Reads a profile document. probabilities and rates are taken as given
/// (hand-written profiles need no counts); everything is validated.
TransitionProfile profile_from_json(const nlohmann::json& doc);

void save_profile(const TransitionProfile& profile, const std::string& path);
TransitionProfile load_profile(const std::string& path);

/// Checks the row-sum, range and prefix invariants. Throws ProfileFormatError.
void validate_profile(const TransitionProfile& profile);

}  // namespace mtm
