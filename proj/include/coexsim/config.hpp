#pragma once

#include <string>

#include "coexsim/sweep.hpp"

namespace coexsim {

/// Error with key/line/reason context from the config parser.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse the flat key-value experiment format (see README for the key list).
/// Unknown keys are hard errors; values are validated with precise messages.
SweepSpec parse_config(const std::string& text);

/// Render a spec back into the config format (round-trips through the parser).
std::string render_config(const SweepSpec& spec);

}  // namespace coexsim
