#include "symvoro/nearest.hpp"

#include <algorithm>
#include <limits>

#include "symvoro/parallel.hpp"

namespace symvoro {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

NearestField make_field(const SampleGrid& grid) {
    NearestField f;
    f.nx = grid.nx;
    f.ny = grid.ny;
    f.index.assign(grid.size(), -1);
    f.dist2.assign(grid.size(), kInf);
    return f;
}

struct Candidate {
    Segment seg;
    int instance;
};

}  // namespace

NearestField nearest_brute(std::span<const SiteInstance> instances, const SampleGrid& grid) {
    NearestField f = make_field(grid);
    parallel_for(static_cast<std::size_t>(grid.ny), [&](std::size_t row) {
        const int j = static_cast<int>(row);
        for (int i = 0; i < grid.nx; ++i) {
            const Point p = grid.at(i, j);
            double best = kInf;
            int best_k = -1;
            for (std::size_t k = 0; k < instances.size(); ++k) {
                for (const Segment& s : instances[k].shape.segments) {
                    const double d2 = distance2_point_segment(p, s);
                    if (d2 < best) {
                        best = d2;
                        best_k = static_cast<int>(k);
                    }
                }
            }
            const std::size_t idx = static_cast<std::size_t>(j) * grid.nx + i;
            f.index[idx] = best_k;
            f.dist2[idx] = best;
        }
    });
    return f;
}

NearestField nearest_binned(std::span<const SiteInstance> instances, const SampleGrid& grid, int bin) {
    NearestField f = make_field(grid);
    if (instances.empty() || grid.size() == 0) return f;
    bin = std::max(bin, 1);
    const int bins_x = (grid.nx + bin - 1) / bin;
    const int bins_y = (grid.ny + bin - 1) / bin;

    parallel_for(static_cast<std::size_t>(bins_y), [&](std::size_t brow) {
        std::vector<double> lower(instances.size());
        std::vector<Candidate> candidates;
        const int j0 = static_cast<int>(brow) * bin;
        const int j1 = std::min(j0 + bin, grid.ny);
        for (int bx = 0; bx < bins_x; ++bx) {
            const int i0 = bx * bin;
            const int i1 = std::min(i0 + bin, grid.nx);
            const Point lo = grid.at(i0, j0);
            const Point hi = grid.at(i1 - 1, j1 - 1);
            const Rect box{std::min(lo.x, hi.x), std::min(lo.y, hi.y), std::max(lo.x, hi.x), std::max(lo.y, hi.y)};
            const Point centre = box.center();
            const double half_diag = 0.5 * std::hypot(box.width(), box.height());

            // Every sample in the box lies within `upper` of some instance.
            std::size_t closest = 0;
            for (std::size_t k = 0; k < instances.size(); ++k) {
                lower[k] = rect_distance(instances[k].bounds, box);
                if (lower[k] < lower[closest]) closest = k;
            }
            auto instance_upper = [&](std::size_t k) {
                return std::sqrt(distance2_point_shape(centre, instances[k].shape)) + half_diag;
            };
            double upper = instance_upper(closest);
            for (std::size_t k = 0; k < instances.size(); ++k) {
                if (k != closest && lower[k] < upper) upper = std::min(upper, instance_upper(k));
            }
            const double cutoff = upper + 1e-9 * (upper + half_diag) + 1e-12;

            candidates.clear();
            for (std::size_t k = 0; k < instances.size(); ++k) {
                if (lower[k] > cutoff) continue;
                for (const Segment& s : instances[k].shape.segments) {
                    if (rect_distance(s.bounds(), box) <= cutoff) {
                        candidates.push_back({s, static_cast<int>(k)});
                    }
                }
            }

            for (int j = j0; j < j1; ++j) {
                for (int i = i0; i < i1; ++i) {
                    const Point p = grid.at(i, j);
                    double best = kInf;
                    int best_k = -1;
                    for (const Candidate& c : candidates) {
                        const double d2 = distance2_point_segment(p, c.seg);
                        if (d2 < best) {
                            best = d2;
                            best_k = c.instance;
                        }
                    }
                    const std::size_t idx = static_cast<std::size_t>(j) * grid.nx + i;
                    f.index[idx] = best_k;
                    f.dist2[idx] = best;
                }
            }
        }
    });
    return f;
}

}  // namespace symvoro
