#pragma once

#include <string>

#include "octrack/tracker.hpp"

namespace octrack::config {

// Applies one key=value setting. Unknown keys and malformed values throw
// std::invalid_argument.
void apply_entry(tracker::TrackerConfig& cfg, const std::string& key,
                 const std::string& value);

// Parses a flat key=value file ('#' comments and blank lines allowed) on top
// of the given base config. Errors carry the line number.
tracker::TrackerConfig parse_file(const std::string& path,
                                  tracker::TrackerConfig base = {});

// Serializes every field as key=value lines; parse_file(to_string(c)) == c.
std::string to_string(const tracker::TrackerConfig& cfg);

// "kcf" / "oct-kcf" (underscore spelling accepted on input).
tracker::TrackerMode parse_mode(const std::string& name);
std::string mode_name(tracker::TrackerMode mode);

features::FeatureMode parse_feature_mode(const std::string& name);
std::string feature_mode_name(features::FeatureMode mode);

}  // namespace octrack::config
