#include "critset/serialize.hpp"

namespace critset {

using nlohmann::json;

const char* to_string(PointTag tag) {
    switch (tag) {
    case PointTag::Fold: return "fold";
    case PointTag::Cusp: return "cusp";
    default: return "unresolved";
    }
}

const char* to_string(PeriodicKind kind) {
    switch (kind) {
    case PeriodicKind::Noncritical: return "noncritical";
    case PeriodicKind::RegularCritical: return "regular-critical";
    default: return "nonregular";
    }
}

json to_json(const GridFunction& u) {
    return {{"boundary", u.boundary() == Boundary::Periodic ? "periodic" : "dirichlet"},
            {"domain_length", u.domain_length()},
            {"values", u.values()}};
}

GridFunction grid_function_from_json(const json& j) {
    const std::string b = j.at("boundary").get<std::string>();
    if (b != "periodic" && b != "dirichlet")
        throw invalid_input("boundary must be 'periodic' or 'dirichlet'");
    return {j.at("values").get<std::vector<double>>(), j.at("domain_length").get<double>(),
            b == "periodic" ? Boundary::Periodic : Boundary::Dirichlet};
}

json to_json(const CriticalCurve& c) {
    json verts = json::array();
    for (const auto& p : c.vertices) verts.push_back({p.x(), p.y()});
    json tags = json::array();
    for (auto t : c.tags) tags.push_back(to_string(t));
    return {{"vertices", verts},
            {"tags", tags},
            {"refined", c.refined},
            {"enclosed_area", c.enclosed_area()}};
}

json to_json(const PruferTrace& t) {
    return {{"m", t.m},       {"t", t.t_samples}, {"v1", t.v1},
            {"v1_prime", t.v1_prime}, {"omega", t.omega}, {"omega_m", t.omega_m}};
}

json to_json(const MonodromyLift& m) {
    return {{"matrix", {{m.matrix(0, 0), m.matrix(0, 1)}, {m.matrix(1, 0), m.matrix(1, 1)}}},
            {"angle", m.angle},
            {"wronskian_defect", m.wronskian_defect()}};
}

json to_json(const PeriodicClassification& c) {
    json j = {{"kind", to_string(c.kind)},
              {"trace", c.trace},
              {"angle", c.angle},
              {"identity_distance", c.identity_distance}};
    if (c.index_n) j["index"] = *c.index_n;
    return j;
}

json to_json(const SphereCurve& c) {
    json samples = json::array();
    for (const auto& p : c.samples) samples.push_back({p.x(), p.y(), p.z()});
    return {{"samples", samples}, {"norm_defect", c.max_norm_defect()}};
}

json to_json(const HomotopyPath& p) {
    json slices = json::array();
    for (const auto& s : p.slices) slices.push_back(to_json(s));
    return {{"slices", slices}, {"residuals", p.residuals}};
}

json to_json(const RegionCensus& c) {
    json regions = json::array();
    for (std::size_t k = 0; k < c.targets.size(); ++k) {
        json preimages = json::array();
        for (const auto& p : c.preimages[k]) preimages.push_back({p.x(), p.y()});
        regions.push_back({{"target", {c.targets[k].x(), c.targets[k].y()}},
                           {"count", c.counts[k]},
                           {"preimages", preimages}});
    }
    json arcs = json::array();
    for (const auto& a : c.fold_arcs)
        arcs.push_back({{"crossing", {a.crossing.x(), a.crossing.y()}},
                        {"toward_higher", {a.toward_higher.x(), a.toward_higher.y()}}});
    return {{"regions", regions}, {"fold_arcs", arcs}};
}

} // namespace critset
