#ifndef SKG_CONFIG_FILE_HPP
#define SKG_CONFIG_FILE_HPP

#include <string>

#include "skg/errors.hpp"
#include "skg/params.hpp"

namespace skg {

// Applies a flat key=value file onto base. Keys are the SystemParams field
// names (n_elements, t_k, t_s, f_blocks, q_levels, power, noise_power,
// beta_ab, beta_ae, beta_be, beta_ar, beta_rb, beta_re). Blank lines and
// lines starting with '#' are skipped; whitespace around keys and values is
// ignored. Unknown keys and unparseable values throw ValidationError; an
// unreadable file throws IoError. The result is not yet validated.
SystemParams load_config_file(const std::string& path, SystemParams base);

}  // namespace skg

#endif
