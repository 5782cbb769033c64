#pragma once

#include <optional>

namespace pcbounds {

// One experimental unit: assigned exposure, observed mediator (if measured)
// and observed outcome. All values are 0 or 1.
struct TrialRecord {
    int x = 0;
    std::optional<int> m;
    int y = 0;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

}  // namespace pcbounds
