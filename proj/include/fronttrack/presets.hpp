#pragma once

#include <string>
#include <vector>

namespace fronttrack {

struct Preset {
  std::string name;
  std::string summary;
  std::string ini;  // complete configuration text
};

const std::vector<Preset>& presets();
/// Throws std::out_of_range for unknown names.
const Preset& find_preset(const std::string& name);
bool is_preset(const std::string& name);

}  // namespace fronttrack
