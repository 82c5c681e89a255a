#include "fronttrack/presets.hpp"

#include <algorithm>
#include <stdexcept>

namespace fronttrack {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"expanding", "one interval, v0 = 0: both fronts move outward at speed a",
       R"([scenario]
name = expanding
[parameters]
g1 = 1
g2 = 1
g3 = 3
g4 = 1
a = 1
b = 2
[initial]
intervals = -1 1
v0 = 0
[solver]
t_end = 2
)"},
      {"shrinking", "one interval, v0 = 1: both interfaces retreat and the interval vanishes",
       R"([scenario]
name = shrinking
[parameters]
g1 = 1
g2 = 1
g3 = 3
g4 = 1
a = 1
b = 2
[initial]
intervals = -1 1
v0 = 1
[solver]
t_end = 1
)"},
      {"merge", "two intervals, v0 = 0: the inner fronts meet at x = 0, t = 1",
       R"([scenario]
name = merge
[parameters]
g1 = 1
g2 = 1
g3 = 3
g4 = 1
a = 1
b = 2
[initial]
intervals = -3 -1, 1 3
v0 = 0
[solver]
t_end = 2
)"},
      {"pulses", "three intervals over a graded recovery field: a vanish followed by a merge",
       R"([scenario]
name = pulses
[parameters]
g1 = 1
g2 = 1
g3 = 3
g4 = 1
a = 1
b = 2
[initial]
intervals = -6 -4.5, -2 -1, 0.5 2
profile = -8:0.2, -3:0.2, -1.5:1.2, 0:0.2, 8:0.2
[solver]
t_end = 6
)"},
      {"illposed", "half-line with W(v0(0)) = 0: two distinct continuations",
       R"([scenario]
name = illposed
mode = illposed
[parameters]
g1 = 1
g2 = 1
g3 = 3
g4 = 1
a = 1
b = 2
[solver]
t_end = 0.1
tol_step = 1e-12
)"},
  };
  return all;
}

const Preset& find_preset(const std::string& name) {
  const auto& all = presets();
  auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  if (it == all.end()) throw std::out_of_range("unknown preset '" + name + "'");
  return *it;
}

bool is_preset(const std::string& name) {
  const auto& all = presets();
  return std::any_of(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
}

}  // namespace fronttrack
