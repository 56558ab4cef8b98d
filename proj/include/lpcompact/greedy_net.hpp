#pragma once

#include <cstddef>
#include <vector>

namespace lpc {

// Greedy farthest-point epsilon-net over an arbitrary finite point set.
// Deterministic given the point order: the first point seeds the net and
// ties break toward the lowest index.
struct NetResult {
    std::vector<std::size_t> indices;  // selected net points
    double coverage_radius = 0.0;      // max distance of any point to the net
};

template <class Point, class Dist>
NetResult greedy_net(const std::vector<Point>& points, double epsilon, Dist distance) {
    NetResult net;
    if (points.empty()) return net;

    std::vector<double> to_net(points.size());
    net.indices.push_back(0);
    for (std::size_t i = 0; i < points.size(); ++i) to_net[i] = distance(points[i], points[0]);

    for (;;) {
        std::size_t far = 0;
        double far_dist = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (to_net[i] > far_dist) {
                far_dist = to_net[i];
                far = i;
            }
        }
        if (far_dist <= epsilon) {
            net.coverage_radius = far_dist;
            return net;
        }
        net.indices.push_back(far);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double d = distance(points[i], points[far]);
            if (d < to_net[i]) to_net[i] = d;
        }
    }
}

} // namespace lpc
