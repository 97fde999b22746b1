#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symvoro/geometry.hpp"
#include "symvoro/wallpaper.hpp"

namespace symvoro {

/// Raised when strokes cannot form a valid symmetric site set.
class SiteError : public std::runtime_error {
public:
    SiteError(const std::string& what, int stroke = -1, int op = -1)
        : std::runtime_error(what), stroke_(stroke), op_(op) {}
    int stroke() const { return stroke_; }
    int op() const { return op_; }

private:
    int stroke_;
    int op_;
};

/// The symmetric site set: user strokes, the group acting on them, and the
/// lattice-replicated instances covering window + margin.
struct SiteSet {
    std::vector<SiteShape> strokes;
    GroupTable table;
    Rect window;
    double margin = 0.0;
    std::vector<SiteInstance> instances;

    std::size_t orbit_size() const { return table.order() * strokes.size(); }
};

/// Delone radii of a site set over its window.
struct DeloneReport {
    bool uniformly_discrete = false;
    bool relatively_dense = false;
    /// Half the minimum clearance between distinct instances.
    double r0_estimate = 0.0;
    /// Largest distance from a probe point to its nearest instance.
    double r1_estimate = 0.0;
    std::optional<Point> witness;
};

/// Builds the site set. With no margin given, the margin is bootstrapped:
/// replicate with two lattice cells, estimate r1, then re-replicate at 2 * r1.
///
/// Throws SiteError for an empty stroke list, a stroke that is not simple, or
/// a stroke that meets one of its own images under the group ("orbit self-overlap",
/// carrying the offending op index).
SiteSet build_site_set(const std::vector<SiteShape>& strokes, GroupName group, double scale, const Rect& window,
                       std::optional<double> margin = std::nullopt);

/// A site set from explicitly placed shapes, with no symmetry applied.
SiteSet custom_site_set(const std::vector<SiteShape>& shapes, const Rect& window);

/// Checks whether any image of stroke under the group (other than itself)
/// touches it. Returns the op index of the first offender.
std::optional<int> find_orbit_self_overlap(const SiteShape& stroke, const GroupTable& table);

/// r1 from a (probe_resolution + 1)^2 grid over the window; r0 from exact
/// instance-instance clearance. Throws SiteError if probe_resolution < 64.
DeloneReport validate_delone(const SiteSet& s, int probe_resolution = 128);

/// Max over a (resolution + 1)^2 grid spanning the window of the distance to the nearest instance.
double relative_density_radius(const std::vector<SiteInstance>& instances, const Rect& window, int resolution);

}  // namespace symvoro
