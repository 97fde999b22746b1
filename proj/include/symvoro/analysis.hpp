#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symvoro/sites.hpp"
#include "symvoro/voronoi.hpp"
#include "symvoro/wallpaper.hpp"

namespace symvoro {

/// Minimum arc length, in pixels, for straightness classification.
inline constexpr double kMinArcPixels = 4.0;
/// Deviation / arc length at or below which an arc counts as straight.
inline constexpr double kStraightEpsilon = 0.01;
/// Congruence tolerance in pixels.
inline constexpr double kCongruenceTolerancePixels = 2.0;

/// Outline of one Voronoi cell lying wholly inside the raster.
struct CellOutline {
    int instance_id = -1;
    /// The stroke whose orbit the cell's site belongs to.
    int orbit_id = -1;
    /// Closed loop (last point connects to first) through boundary pixel-edge midpoints, counter-clockwise.
    std::vector<Point> polygon;
    std::size_t pixel_count = 0;

    double area() const;
};

struct OrbitCongruence {
    int orbit_id = -1;
    std::size_t cells = 0;
    double max_hausdorff = 0.0;
    int worst_instance = -1;
    bool skipped = false;
    std::string note;
};

struct CongruenceReport {
    std::vector<OrbitCongruence> orbits;
    double tolerance = 0.0;
    std::size_t checked_orbits = 0;
    bool pass = true;
};

struct StraightnessReport {
    /// Indices into the arc list of arcs long enough to classify.
    std::vector<std::size_t> arc_indices;
    std::vector<double> values;
    std::size_t straight = 0;
    std::size_t curved = 0;
    bool all_straight = true;
    bool any_curved = false;
    /// Share of classified arc length that is straight.
    double straight_length_fraction = 1.0;
    double epsilon = kStraightEpsilon;
};

struct MirrorAxisReport {
    std::size_t axis_arcs = 0;
    std::size_t straight_axis_arcs = 0;
    double worst_straightness = 0.0;
    bool pass = true;
};

/// How mirror axes partition the labels: for groups with reflections every
/// label should stay inside one mirror-bounded compartment.
struct CompartmentCensus {
    std::size_t mirror_lines = 0;
    /// Compartments that do not touch the raster border.
    std::size_t closed_compartments = 0;
    std::size_t min_labels = 0;
    std::size_t max_labels = 0;
    /// Labels whose pixels (away from mirror axes) fall in more than one compartment.
    std::size_t straddling_labels = 0;
};

/// Cells whose pixels do not touch the raster border, one per instance.
std::vector<CellOutline> extract_cells(const LabelMap& m, const SiteSet& s);

/// Symmetric Hausdorff distance between two closed polygons.
double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b);

/// Maps every cell back through the inverse of its site's placement and
/// compares it with the first cell of the same orbit.
CongruenceReport congruence_check(const std::vector<CellOutline>& cells, const SiteSet& s, double tolerance);

StraightnessReport straightness_check(const std::vector<BoundaryArc>& arcs, double pixel_size,
                                      double epsilon = kStraightEpsilon);

/// Arcs whose every point is within `within_pixels` of one mirror axis must be straight.
MirrorAxisReport mirror_axis_check(const std::vector<BoundaryArc>& arcs, const GroupTable& table, const Rect& window,
                                   double pixel_size, double epsilon = kStraightEpsilon,
                                   double within_pixels = 2.0);

CompartmentCensus compartment_census(const LabelMap& m, const GroupTable& table);

/// The interior cell containing p, if any.
const CellOutline* cell_containing(const std::vector<CellOutline>& cells, const LabelMap& m, Point p);

/// Groups whose cells are the same polygon regardless of the sites.
bool is_fixed_polygon_group(GroupName g);

using StrokeSampler = std::function<SiteShape(std::mt19937_64&, const GroupTable&)>;

/// Random single segment placed in the unit cell, with length scaled to the
/// size of the group's fundamental region.
SiteShape sample_segment_stroke(std::mt19937_64& rng, const GroupTable& table);

struct SurveyConfig {
    std::vector<GroupName> groups;
    int trials = 20;
    std::uint64_t seed = 1;
    int resolution = 512;
    int cells = 2;
};

struct GroupSurvey {
    GroupName group = GroupName::p1;
    int trials = 0;
    int curved_trials = 0;
    double curved_fraction = 0.0;
    double mean_straight_length_fraction = 0.0;
    std::size_t mirror_axis_arcs = 0;
    std::size_t mirror_axis_straight = 0;
    /// Pairwise Hausdorff of the reference cell across trials (fixed-polygon groups only), world units.
    std::optional<double> fixed_polygon_hausdorff;
    /// Range of labels per closed mirror compartment across trials (groups with mirrors only).
    std::optional<std::size_t> compartment_min_labels;
    std::optional<std::size_t> compartment_max_labels;
    std::size_t straddling_labels = 0;
    int rejected_samples = 0;
    double pixel_size = 0.0;
};

/// Runs `trials` random-stroke scenes per group on a cells x cells window.
/// Trials are independent and may run in parallel; results do not depend on
/// the worker count.
std::vector<GroupSurvey> group_survey(const StrokeSampler& sampler, const SurveyConfig& config);

}  // namespace symvoro
