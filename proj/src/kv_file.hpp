#pragma once

#include <string>
#include <utility>
#include <vector>

namespace layoutlab {

// Flat `key = value` text: one pair per line, '#' starts a comment, blank
// lines ignored. Used by the experiment and cache config files.
std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text);

std::string read_text_file(const std::string& path);

}  // namespace layoutlab
