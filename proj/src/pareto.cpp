#include "stylevo/pareto.hpp"

#include <algorithm>

namespace stylevo {

bool dominates(const ObjectivePair& a, const ObjectivePair& b) {
    if (a.content_distance > b.content_distance || a.style_distance > b.style_distance)
        return false;
    return a.content_distance < b.content_distance || a.style_distance < b.style_distance;
}

double hypervolume2d(const std::vector<ObjectivePair>& points, const ObjectivePair& ref) {
    // Skyline of the non-dominated points inside the reference box.
    std::vector<ObjectivePair> sky;
    for (const ObjectivePair& p : points) {
        if (p.content_distance >= ref.content_distance || p.style_distance >= ref.style_distance)
            continue;
        bool covered = false;
        for (const ObjectivePair& q : points) {
            if (&q == &p) continue;
            if (q.content_distance <= p.content_distance && q.style_distance < p.style_distance)
                covered = true;
            else if (q.content_distance < p.content_distance &&
                     q.style_distance <= p.style_distance)
                covered = true;
            if (covered) break;
        }
        if (!covered) sky.push_back(p);
    }
    std::sort(sky.begin(), sky.end(), [](const ObjectivePair& a, const ObjectivePair& b) {
        if (a.content_distance != b.content_distance)
            return a.content_distance < b.content_distance;
        return a.style_distance < b.style_distance;
    });
    sky.erase(std::unique(sky.begin(), sky.end()), sky.end());

    // Vertical strips: between x_i and x_{i+1} the best y is that of point i.
    double hv = 0.0;
    for (std::size_t i = 0; i < sky.size(); ++i) {
        const double x_next =
            (i + 1 < sky.size()) ? sky[i + 1].content_distance : ref.content_distance;
        hv += (x_next - sky[i].content_distance) * (ref.style_distance - sky[i].style_distance);
    }
    return hv;
}

bool ParetoArchive::insert(const ObjectivePair& p) {
    for (const ObjectivePair& q : points_)
        if (q == p || dominates(q, p)) return false;
    points_.erase(std::remove_if(points_.begin(), points_.end(),
                                 [&](const ObjectivePair& q) { return dominates(p, q); }),
                  points_.end());
    points_.push_back(p);
    return true;
}

} // namespace stylevo
