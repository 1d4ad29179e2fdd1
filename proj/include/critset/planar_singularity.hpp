#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "critset/planar_map.hpp"
#include "critset/rootfind.hpp"

namespace critset {

enum class PointTag { Fold, Cusp, Unresolved };

/// Closed polyline of critical points (no duplicated first vertex) with
/// per-vertex singularity tags.
struct CriticalCurve {
    std::vector<Eigen::Vector2d> vertices;
    std::vector<PointTag> tags;
    bool refined = false;

    double enclosed_area() const; // shoelace, absolute value
    bool contains(const Eigen::Vector2d& p) const;
};

struct TraceResult {
    std::vector<CriticalCurve> curves;       // sorted by enclosed area, inner first
    std::vector<Eigen::Vector2d> degenerate_points; // isolated zeros of det DF
};

struct TraceOptions {
    int resolution = 512;
    double refine_tol = 1e-8;   // |det DF| target after Newton refinement
    double gradient_floor = 1e-12;
};

/// Marching-squares contours of det DF = 0 over the window, every vertex
/// Newton-refined onto the zero set along the gradient of det DF.
TraceResult trace_critical_set(const PlanarMap& map, const Window& window,
                               const TraceOptions& opts = {});

struct ClassifyOptions {
    double tol = 1e-4;   // fold threshold, relative to scale
    double scale = -1.0; // < 0: use |grad det DF| at the point
    double fd_step = 1e-2;
};

PointTag classify_critical_point(const PlanarMap& map, const Eigen::Vector2d& p,
                                 const ClassifyOptions& opts = {});

/// Cusps on a closed critical curve: sign changes of grad(det DF) . v around
/// the curve, v a continuously aligned kernel field. Tags the curve in place
/// (Cusp at the sign-change vertices, Fold elsewhere) and cross-validates each
/// sign change against classify_critical_point at the refined cusp location.
int count_cusps(const PlanarMap& map, CriticalCurve& curve);

/// Pointwise image of each curve; vertex tags are preserved (cusps map to
/// cusps of the image curve).
std::vector<CriticalCurve> image_of_critical_set(const PlanarMap& map,
                                                 const std::vector<CriticalCurve>& curves);

struct FoldArc {
    Eigen::Vector2d crossing;          // where the target segment crosses the image arc
    Eigen::Vector2d toward_higher;     // unit direction pointing into the higher count region
};

struct RegionCensus {
    std::vector<Eigen::Vector2d> targets;
    std::vector<int> counts;
    std::vector<std::vector<Eigen::Vector2d>> preimages; // per target
    std::vector<FoldArc> fold_arcs;
};

struct CensusOptions {
    int root_grid = 64;
    std::optional<Window> critical_window; // defaults to the search window
    int trace_resolution = 512;
    double near_value_tol = 1e-4;
    bool check_adjacency = true;
};

/// Preimage counts for each target by multistart root search, with the
/// fold-arc consistency checks across image curves.
RegionCensus preimage_census(const PlanarMap& map, const std::vector<Eigen::Vector2d>& targets,
                             const Window& window, const CensusOptions& opts = {});

/// Winding number of t -> F(radius e^{it}) - target; equals the algebraic
/// solution count inside the circle.
int topological_degree(const PlanarMap& map, double radius, const Eigen::Vector2d& target,
                       int samples = 4096);

/// Distance from a point to a closed polyline.
double distance_to_curve(const Eigen::Vector2d& p, const CriticalCurve& curve);

/// Number of crossings of segment [a, b] with the closed polyline.
int segment_curve_crossings(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                            const CriticalCurve& curve,
                            std::vector<Eigen::Vector2d>* points = nullptr);

} // namespace critset
