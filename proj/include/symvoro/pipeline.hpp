#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "symvoro/analysis.hpp"
#include "symvoro/render.hpp"
#include "symvoro/scene.hpp"
#include "symvoro/sites.hpp"
#include "symvoro/voronoi.hpp"

namespace symvoro {

/// Failure inside one pipeline stage: "curves", "sites", "voronoi", "analysis" or "render".
class PipelineError : public std::runtime_error {
public:
    PipelineError(std::string stage, const std::string& message)
        : std::runtime_error(stage + ": " + message), stage_(std::move(stage)), message_(message) {}
    const std::string& stage() const { return stage_; }
    const std::string& message() const { return message_; }

private:
    std::string stage_;
    std::string message_;
};

struct PipelineTiming {
    double curves_ms = 0.0;
    double sites_ms = 0.0;
    double voronoi_ms = 0.0;
    double analysis_ms = 0.0;
    double render_ms = 0.0;
    double total_ms = 0.0;
};

struct PipelineResult {
    SceneFile scene;
    SiteSet sites;
    LabelMap map;
    std::vector<BoundaryArc> arcs;
    std::vector<CellOutline> cells;
    CongruenceReport congruence;
    StraightnessReport straightness;
    MirrorAxisReport mirror_axes;
    DeloneReport delone;
    Palette palette;
    std::vector<std::uint8_t> png;
    std::string svg;
    PipelineTiming timing;
};

/// curves -> sites -> voronoi -> analysis -> render. Errors from a stage are
/// rethrown as PipelineError carrying the stage name.
PipelineResult run_pipeline(const SceneFile& scene);

/// Only the first two stages; what `validate` needs.
SiteSet build_scene_sites(const SceneFile& scene);

/// Report as JSON text. Timing is left out so identical scenes give identical
/// reports; geometry adds arc polylines and cell outlines.
std::string report_json(const PipelineResult& r, bool include_geometry = false);

}  // namespace symvoro
