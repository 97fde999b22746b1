#pragma once

#include <span>
#include <vector>

#include "symvoro/geometry.hpp"
#include "symvoro/wallpaper.hpp"

namespace symvoro {

/// Regular lattice of sample points: origin + (i * step_x, j * step_y).
struct SampleGrid {
    Point origin;
    double step_x = 1.0;
    double step_y = 1.0;
    int nx = 0;
    int ny = 0;

    Point at(int i, int j) const { return {origin.x + i * step_x, origin.y + j * step_y}; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

/// Per-sample nearest instance (position in the instance span) and squared distance.
struct NearestField {
    int nx = 0;
    int ny = 0;
    std::vector<int> index;
    std::vector<double> dist2;
};

/// Scans every segment of every instance at every sample. Ties go to the
/// lowest instance position.
NearestField nearest_brute(std::span<const SiteInstance> instances, const SampleGrid& grid);

/// Same result as nearest_brute, bit for bit. Samples are grouped into square
/// bins; each bin keeps only segments whose bounding-box distance to the bin
/// does not exceed the smallest guaranteed upper bound on the nearest distance.
NearestField nearest_binned(std::span<const SiteInstance> instances, const SampleGrid& grid, int bin = 16);

}  // namespace symvoro
