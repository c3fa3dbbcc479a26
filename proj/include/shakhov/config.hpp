#pragma once

#include <string>
#include <string_view>

#include "shakhov/solver.hpp"

namespace shakhov {

/**
 * Flat `key = value` configuration, one entry per line; `#` starts a comment.
 * Recognized keys: pr, tau0, eta, w, n_v, v_max, n_cells, domain_length, dt,
 * t_end, output_every, ic.kind, ic.amplitude, ic.mode,
 * enforce_third_moment_zero, output_path, seed. Missing keys keep the
 * SimConfig defaults. The result is validated.
 *
 * Throws ConfigError naming the unknown key, the line of an unparsable value,
 * or the violated invariant.
 */
SimConfig parse_config(std::string_view text);

SimConfig load_config(const std::string& path);

/// Every key with round-trippable values (17 significant digits).
std::string render_config(const SimConfig& config);

}  // namespace shakhov
