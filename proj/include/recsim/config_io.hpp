#pragma once

#include <string>

#include "recsim/types.hpp"

namespace recsim {

// JSON schema (keys exactly): n_users, n_products, p, q,
// user_attrs (n_users arrays of length p), product_attrs (n_products arrays
// of length q), arrival_probs, a, zeta, noise {type: "none"|"gaussian",
// sigma}, seed.
ModelConfig config_from_json(const std::string& text);
ModelConfig load_config(const std::string& path);
std::string config_to_json(const ModelConfig& cfg);
void save_config(const ModelConfig& cfg, const std::string& path);

// Applies a dotted-key override such as "a=4.0" or "user_attrs.2.2=1.1"
// (0-based indices) on top of a loaded config. Throws ConfigError on
// unknown keys or malformed values.
void apply_override(ModelConfig& cfg, const std::string& key_value);

}  // namespace recsim
