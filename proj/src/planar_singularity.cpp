#include "critset/planar_singularity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "critset/argument_lift.hpp"
#include "critset/error.hpp"

namespace critset {

namespace {

struct EdgeKey {
    int type; // 0 horizontal, 1 vertical
    int i, j;
    bool operator<(const EdgeKey& o) const {
        if (type != o.type) return type < o.type;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

struct Segment {
    EdgeKey a, b;
    Eigen::Vector2d pa, pb;
};

double sign_of(double d) { return d < 0.0 ? -1.0 : 1.0; }

// Smallest-singular-value frame of a 2x2 matrix: kernel direction (right) and
// left annihilator of the image.
void singular_frame(const Eigen::Matrix2d& J, Eigen::Vector2d& kernel, Eigen::Vector2d& coker,
                    double& sigma_min, double& sigma_max) {
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
    sigma_min = svd.singularValues()(1);
    sigma_max = svd.singularValues()(0);
    kernel = svd.matrixV().col(1);
    coker = svd.matrixU().col(1);
}

// Newton refinement onto det DF = 0 along the gradient of det DF.
// Returns false when the gradient degenerates before convergence.
bool refine_onto_zero_set(const PlanarMap& map, Eigen::Vector2d& p, double tol,
                          double gradient_floor) {
    for (int it = 0; it < 60; ++it) {
        const double d = map.det_jacobian(p);
        if (std::abs(d) < tol) return true;
        const Eigen::Vector2d g = map.det_jacobian_gradient(p);
        const double g2 = g.squaredNorm();
        if (std::sqrt(g2) < gradient_floor) return false;
        p -= d * g / g2;
    }
    return std::abs(map.det_jacobian(p)) < tol;
}

int orientation(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    const double v = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                        const Eigen::Vector2d& q1, const Eigen::Vector2d& q2,
                        Eigen::Vector2d* point) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 == o2 || o3 == o4) return false;
    // Proper crossing: solve for the intersection parameter.
    const Eigen::Vector2d r = p2 - p1, s = q2 - q1;
    const double denom = r.x() * s.y() - r.y() * s.x();
    if (denom == 0.0) return false;
    const Eigen::Vector2d qp = q1 - p1;
    const double t = (qp.x() * s.y() - qp.y() * s.x()) / denom;
    if (point) *point = p1 + t * r;
    return true;
}

} // namespace

double CriticalCurve::enclosed_area() const {
    double a = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& p = vertices[k];
        const auto& q = vertices[(k + 1) % n];
        a += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * std::abs(a);
}

bool CriticalCurve::contains(const Eigen::Vector2d& p) const {
    // Ray casting to the right.
    bool inside = false;
    const std::size_t n = vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& a = vertices[k];
        const auto& b = vertices[(k + 1) % n];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            const double x = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
            if (x > p.x()) inside = !inside;
        }
    }
    return inside;
}

TraceResult trace_critical_set(const PlanarMap& map, const Window& window,
                               const TraceOptions& opts) {
    const int res = opts.resolution;
    if (res < 16) throw invalid_input("trace resolution must be at least 16");
    const double dx = window.width() / res;
    const double dy = window.height() / res;

    std::vector<double> det(static_cast<std::size_t>(res + 1) * (res + 1));
    auto at = [&](int i, int j) -> double& {
        return det[static_cast<std::size_t>(j) * (res + 1) + i];
    };
    auto node = [&](double i, double j) -> Eigen::Vector2d {
        return {window.xmin + dx * i, window.ymin + dy * j};
    };
    double max_abs_det = 0.0;
    for (int j = 0; j <= res; ++j)
        for (int i = 0; i <= res; ++i) {
            double d = map.det_jacobian(node(i, j));
            if (d == 0.0) d = 1e-300; // nudge exact zeros off the grid
            at(i, j) = d;
            max_abs_det = std::max(max_abs_det, std::abs(d));
        }

    // Crossing point on an edge by linear interpolation.
    auto edge_point = [&](const EdgeKey& e) -> Eigen::Vector2d {
        if (e.type == 0) {
            const double d0 = at(e.i, e.j), d1 = at(e.i + 1, e.j);
            const double f = d0 / (d0 - d1);
            return node(e.i + f, e.j);
        }
        const double d0 = at(e.i, e.j), d1 = at(e.i, e.j + 1);
        const double f = d0 / (d0 - d1);
        return node(e.i, e.j + f);
    };
    auto edge_on_boundary = [&](const EdgeKey& e) {
        if (e.type == 0) return e.j == 0 || e.j == res;
        return e.i == 0 || e.i == res;
    };

    std::vector<Segment> segments;
    for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
            const bool s00 = at(i, j) < 0, s10 = at(i + 1, j) < 0;
            const bool s11 = at(i + 1, j + 1) < 0, s01 = at(i, j + 1) < 0;
            const int idx = (s00 ? 1 : 0) | (s10 ? 2 : 0) | (s11 ? 4 : 0) | (s01 ? 8 : 0);
            if (idx == 0 || idx == 15) continue;
            const EdgeKey bottom{0, i, j}, top{0, i, j + 1};
            const EdgeKey left{1, i, j}, right{1, i + 1, j};
            auto add = [&](EdgeKey a, EdgeKey b) {
                segments.push_back({a, b, edge_point(a), edge_point(b)});
            };
            switch (idx) {
            case 1: case 14: add(bottom, left); break;
            case 2: case 13: add(bottom, right); break;
            case 3: case 12: add(left, right); break;
            case 4: case 11: add(top, right); break;
            case 6: case 9:  add(bottom, top); break;
            case 7: case 8:  add(top, left); break;
            case 5: case 10: {
                // Saddle cell: resolve pairing by the center sign.
                const double center =
                    0.25 * (at(i, j) + at(i + 1, j) + at(i, j + 1) + at(i + 1, j + 1));
                const bool center_neg = center < 0;
                // idx 5: corners 00 and 11 negative; idx 10: corners 10 and 01.
                const bool diagonal_connected = (idx == 5) == center_neg;
                if (diagonal_connected) {
                    add(bottom, right);
                    add(top, left);
                } else {
                    add(bottom, left);
                    add(top, right);
                }
                break;
            }
            default: break;
            }
        }
    }

    // Link segments sharing grid edges into closed loops.
    std::map<EdgeKey, std::vector<std::size_t>> by_edge;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (edge_on_boundary(segments[s].a) || edge_on_boundary(segments[s].b))
            throw window_too_small("critical set touches the window boundary");
        by_edge[segments[s].a].push_back(s);
        by_edge[segments[s].b].push_back(s);
    }
    for (const auto& [key, users] : by_edge)
        if (users.size() != 2)
            throw window_too_small("open contour (critical set leaves the window)");

    std::vector<bool> used(segments.size(), false);
    TraceResult result;
    for (std::size_t start = 0; start < segments.size(); ++start) {
        if (used[start]) continue;
        CriticalCurve curve;
        std::size_t cur = start;
        EdgeKey entry = segments[start].a;
        while (true) {
            used[cur] = true;
            const Segment& seg = segments[cur];
            const bool forward = !(entry < seg.a) && !(seg.a < entry);
            const EdgeKey exit = forward ? seg.b : seg.a;
            curve.vertices.push_back(forward ? seg.pa : seg.pb);
            const auto& users = by_edge[exit];
            const std::size_t next = users[0] == cur ? users[1] : users[0];
            if (next == start) break;
            entry = exit;
            cur = next;
        }
        if (curve.vertices.size() < 3) continue;
        result.curves.push_back(std::move(curve));
    }

    // Newton-refine every vertex onto the zero set.
    for (auto& curve : result.curves) {
        curve.tags.assign(curve.vertices.size(), PointTag::Fold);
        for (std::size_t k = 0; k < curve.vertices.size(); ++k) {
            if (!refine_onto_zero_set(map, curve.vertices[k], opts.refine_tol,
                                      opts.gradient_floor))
                curve.tags[k] = PointTag::Unresolved;
        }
        curve.refined = true;
    }

    std::sort(result.curves.begin(), result.curves.end(),
              [](const CriticalCurve& a, const CriticalCurve& b) {
                  return a.enclosed_area() < b.enclosed_area();
              });

    // Isolated near-zeros of det DF without a sign change (degenerate points).
    if (result.curves.empty()) {
        double best = max_abs_det;
        int bi = 0, bj = 0;
        for (int j = 0; j <= res; ++j)
            for (int i = 0; i <= res; ++i)
                if (std::abs(at(i, j)) < best) { best = std::abs(at(i, j)); bi = i; bj = j; }
        if (best < 1e-4 * max_abs_det) {
            // Zoom search on |det| around the grid argmin.
            Eigen::Vector2d p = node(bi, bj);
            double h = std::max(dx, dy);
            for (int it = 0; it < 60; ++it) {
                Eigen::Vector2d bestp = p;
                double bestv = std::abs(map.det_jacobian(p));
                for (int a = -1; a <= 1; ++a)
                    for (int b = -1; b <= 1; ++b) {
                        const Eigen::Vector2d q = p + Eigen::Vector2d(a * h, b * h);
                        const double v = std::abs(map.det_jacobian(q));
                        if (v < bestv) { bestv = v; bestp = q; }
                    }
                p = bestp;
                h *= 0.6;
            }
            result.degenerate_points.push_back(p);
        }
    }
    return result;
}

PointTag classify_critical_point(const PlanarMap& map, const Eigen::Vector2d& p,
                                 const ClassifyOptions& opts) {
    const Eigen::Matrix2d J = map.jacobian(p);
    Eigen::Vector2d v, u;
    double smin, smax;
    singular_frame(J, v, u, smin, smax);
    if (smax < 1e-8 * std::max(1.0, opts.scale))
        throw rank_deficiency_error("two-dimensional kernel at the critical point");

    const Eigen::Vector2d g = map.det_jacobian_gradient(p);
    const double scale = opts.scale > 0.0 ? opts.scale : std::max(g.norm(), 1e-8);
    const double g1 = g.dot(v);
    if (std::abs(g1) > opts.tol * scale) return PointTag::Fold;

    const double h = opts.fd_step;
    auto det_at = [&](double s) { return map.det_jacobian(p + s * v); };
    const double d2 = (det_at(h) - 2.0 * det_at(0.0) + det_at(-h)) / (h * h);

    auto proj = [&](double s) { return u.dot(map(p + s * v)); };
    const double s3 =
        (proj(2 * h) - 2.0 * proj(h) + 2.0 * proj(-h) - proj(-2 * h)) / (2.0 * h * h * h);

    const double floor2 = 1e-6 * std::max(1.0, scale);
    if (std::abs(d2) > floor2 && std::abs(s3) > floor2) return PointTag::Cusp;
    return PointTag::Unresolved;
}

int count_cusps(const PlanarMap& map, CriticalCurve& curve) {
    const std::size_t n = curve.vertices.size();
    if (n < 3) throw invalid_input("count_cusps needs a closed curve");

    std::vector<Eigen::Vector2d> kernels(n);
    std::vector<double> s(n);
    Eigen::Vector2d prev;
    for (std::size_t k = 0; k < n; ++k) {
        Eigen::Vector2d v, u;
        double smin, smax;
        singular_frame(map.jacobian(curve.vertices[k]), v, u, smin, smax);
        if (k > 0 && v.dot(prev) < 0.0) v = -v; // keep the kernel field continuous
        kernels[k] = v;
        prev = v;
        s[k] = map.det_jacobian_gradient(curve.vertices[k]).dot(v);
    }
    // Close the loop; the kernel line field may return with a flip.
    const double closure = kernels.back().dot(kernels.front()) < 0.0 ? -1.0 : 1.0;

    std::vector<double> mags(s.size());
    for (std::size_t k = 0; k < n; ++k) mags[k] = std::abs(s[k]);
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    const double scale = std::max(mags[mags.size() / 2], 1e-12);

    curve.tags.assign(n, PointTag::Fold);
    int cusp_count = 0;
    ClassifyOptions copts;
    copts.scale = scale;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t k1 = (k + 1) % n;
        const double sa = s[k];
        const double sb = k1 == 0 ? closure * s[0] : s[k1];
        if (sign_of(sa) == sign_of(sb)) continue;
        ++cusp_count;
        const std::size_t tag_at = std::abs(sa) <= std::abs(sb) ? k : k1;
        curve.tags[tag_at] = PointTag::Cusp;

        // Locate the cusp on the arc and cross-validate the classification.
        const Eigen::Vector2d va = kernels[k];
        auto s_at = [&](double lambda) {
            Eigen::Vector2d p = (1.0 - lambda) * curve.vertices[k] + lambda * curve.vertices[k1];
            refine_onto_zero_set(map, p, 1e-10, 1e-12);
            Eigen::Vector2d v, u;
            double smin, smax;
            singular_frame(map.jacobian(p), v, u, smin, smax);
            if (v.dot(va) < 0.0) v = -v;
            return std::make_pair(map.det_jacobian_gradient(p).dot(v), p);
        };
        double lo = 0.0, hi = 1.0;
        double slo = sa;
        Eigen::Vector2d cusp_point = curve.vertices[tag_at];
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            auto [sm, pm] = s_at(mid);
            cusp_point = pm;
            if (sign_of(sm) == sign_of(slo)) { lo = mid; slo = sm; }
            else hi = mid;
        }
        const PointTag tag = classify_critical_point(map, cusp_point, copts);
        if (tag == PointTag::Fold)
            throw inconsistency_error("sign change of grad(det).v not confirmed as a cusp; "
                                      "increase the trace resolution");
    }
    // No two adjacent cusp tags after refinement.
    for (std::size_t k = 0; k < n; ++k)
        if (curve.tags[k] == PointTag::Cusp && curve.tags[(k + 1) % n] == PointTag::Cusp)
            throw inconsistency_error("adjacent cusp tags; increase the trace resolution");
    return cusp_count;
}

std::vector<CriticalCurve> image_of_critical_set(const PlanarMap& map,
                                                 const std::vector<CriticalCurve>& curves) {
    std::vector<CriticalCurve> out;
    out.reserve(curves.size());
    for (const auto& c : curves) {
        CriticalCurve img;
        img.refined = c.refined;
        img.tags = c.tags;
        if (img.tags.size() != c.vertices.size())
            img.tags.assign(c.vertices.size(), PointTag::Fold);
        img.vertices.reserve(c.vertices.size());
        for (const auto& p : c.vertices) img.vertices.push_back(map(p));
        out.push_back(std::move(img));
    }
    return out;
}

double distance_to_curve(const Eigen::Vector2d& p, const CriticalCurve& curve) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = curve.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Vector2d& a = curve.vertices[k];
        const Eigen::Vector2d& b = curve.vertices[(k + 1) % n];
        const Eigen::Vector2d ab = b - a;
        const double t = std::clamp(ab.dot(p - a) / std::max(ab.squaredNorm(), 1e-300), 0.0, 1.0);
        best = std::min(best, (a + t * ab - p).norm());
    }
    return best;
}

int segment_curve_crossings(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                            const CriticalCurve& curve, std::vector<Eigen::Vector2d>* points) {
    int count = 0;
    const std::size_t n = curve.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        Eigen::Vector2d x;
        if (segments_intersect(a, b, curve.vertices[k], curve.vertices[(k + 1) % n], &x)) {
            ++count;
            if (points) points->push_back(x);
        }
    }
    return count;
}

RegionCensus preimage_census(const PlanarMap& map, const std::vector<Eigen::Vector2d>& targets,
                             const Window& window, const CensusOptions& opts) {
    // Properness on the window scale: |F| on the boundary must exceed the targets.
    double max_target = 0.0;
    for (const auto& t : targets) max_target = std::max(max_target, t.norm());
    double min_boundary = std::numeric_limits<double>::infinity();
    const int bs = 256;
    for (int k = 0; k < bs; ++k) {
        const double f = static_cast<double>(k) / bs;
        const Eigen::Vector2d pts[4] = {
            {window.xmin + f * window.width(), window.ymin},
            {window.xmin + f * window.width(), window.ymax},
            {window.xmin, window.ymin + f * window.height()},
            {window.xmax, window.ymin + f * window.height()}};
        for (const auto& p : pts) min_boundary = std::min(min_boundary, map(p).norm());
    }
    if (min_boundary <= max_target)
        throw window_too_small("map is not dominant on the window boundary; enlarge the window");

    TraceOptions topts;
    topts.resolution = opts.trace_resolution;
    const Window cw = opts.critical_window.value_or(window);
    auto trace = trace_critical_set(map, cw, topts);
    auto images = image_of_critical_set(map, trace.curves);

    RegionCensus census;
    census.targets = targets;
    for (const auto& t : targets) {
        for (const auto& img : images)
            if (distance_to_curve(t, img) < opts.near_value_tol)
                throw near_critical_value_error("target lies within tolerance of an image curve; "
                                                "the preimage count there is unreliable");
        auto roots = multistart_roots(map, window, opts.root_grid, t);
        census.counts.push_back(static_cast<int>(roots.size()));
        census.preimages.push_back(std::move(roots));
    }

    if (opts.check_adjacency) {
        for (std::size_t a = 0; a < targets.size(); ++a) {
            for (std::size_t b = a + 1; b < targets.size(); ++b) {
                std::vector<Eigen::Vector2d> xs;
                int crossings = 0;
                for (const auto& img : images)
                    crossings += segment_curve_crossings(targets[a], targets[b], img, &xs);
                if (crossings == 0 && census.counts[a] != census.counts[b])
                    throw inconsistency_error("targets in the same region report different "
                                              "preimage counts");
                if (crossings == 1) {
                    if (std::abs(census.counts[a] - census.counts[b]) != 2)
                        throw inconsistency_error(
                            "counts across a single fold-image arc do not differ by 2");
                    FoldArc arc;
                    arc.crossing = xs[0];
                    const bool b_higher = census.counts[b] > census.counts[a];
                    arc.toward_higher = (b_higher ? (targets[b] - targets[a])
                                                  : (targets[a] - targets[b])).normalized();
                    census.fold_arcs.push_back(arc);
                }
            }
        }
    }
    return census;
}

int topological_degree(const PlanarMap& map, double radius, const Eigen::Vector2d& target,
                       int samples) {
    std::vector<Eigen::Vector2d> loop;
    loop.reserve(samples + 1);
    for (int k = 0; k <= samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / samples;
        const Eigen::Vector2d p(radius * std::cos(t), radius * std::sin(t));
        const Eigen::Vector2d w = map(p) - target;
        if (w.norm() < 1e-6)
            throw radius_adjustment_error("image circle passes through the target; "
                                          "adjust the radius");
        loop.push_back(w);
    }
    const double theta0 = std::atan2(loop[0].y(), loop[0].x());
    const double w = winding_number(loop, theta0);
    return static_cast<int>(std::lround(w));
}

} // namespace critset
