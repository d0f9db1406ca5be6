#pragma once

// Shared fixtures for the unit tests.

#include <string>
#include <vector>

#include "spidersq/diagram.hpp"

namespace spidersq::testing {

inline UnitaryDiagram make_diagram(std::vector<std::string> labels, Region zones, Region shaded,
                                   std::vector<SpiderEntry> spiders) {
  UnitaryDiagram d;
  d.labels = std::move(labels);
  d.zones = std::move(zones);
  d.shaded = std::move(shaded);
  d.spiders = std::move(spiders);
  return normalized(d);
}

// Over {A, B} with bit 0 = A, bit 1 = B: all four zones, the B-only zone
// shaded, one spider over the outer and A-only zones. Means "B inside A, and
// something lies outside B".
inline UnitaryDiagram example_ab() {
  return make_diagram({"A", "B"}, {0, 1, 2, 3}, {2}, {{1, {0, 1}}});
}

}  // namespace spidersq::testing
