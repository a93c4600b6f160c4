#pragma once

#include <map>
#include <string>

#include "quadsim/sim.hpp"

namespace quadsim {

// Flat view of an INI-style config file: "section.key" -> raw value string.
// Keys that appear before any [section] header belong to [run].
struct ConfigFile {
  std::map<std::string, std::string> values;
};

// Parses an INI-style file: [section] headers, key = value lines, '#' and
// ';' comments (full-line or trailing), blank lines ignored, whitespace
// trimmed. Throws IoError when the file cannot be opened, ConfigError on a
// malformed line or a duplicate key.
ConfigFile parse_config_file(const std::string& path);

// Applies every entry of `file` onto `cfg`. Recognized sections: [run],
// [params], [noise], [controller.attitude], [controller.ahsmc],
// [controller.ihsmc], [controller.chsmc], [controller.pid],
// [controller.sosmc]. Throws ConfigError on an unknown key or an
// unparsable value.
void apply_config(const ConfigFile& file, RunConfig& cfg);

}  // namespace quadsim
