#pragma once

#include <vector>

#include "stylevo/metrics.hpp"

namespace stylevo {

// True iff a is no worse than b in both objectives and strictly better in at
// least one (minimization).
bool dominates(const ObjectivePair& a, const ObjectivePair& b);

// Area of objective space dominated by `points` relative to a reference point
// that is weakly dominated by none of them; points at or beyond the reference
// contribute nothing.
double hypervolume2d(const std::vector<ObjectivePair>& points, const ObjectivePair& ref);

// Running non-dominated set of every objective vector ever inserted.
class ParetoArchive {
public:
    // Returns true when the point enters the archive (i.e. nothing present
    // dominates or equals it).
    bool insert(const ObjectivePair& p);
    const std::vector<ObjectivePair>& points() const { return points_; }

private:
    std::vector<ObjectivePair> points_;
};

} // namespace stylevo
