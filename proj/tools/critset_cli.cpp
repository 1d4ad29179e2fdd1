// critset: single-entry CLI for the critical-set toolkit.
//
// Subcommand tree mirrors the library modules:
//   planar      trace | classify | image | census | degree
//   first-order phi1 | phi12 | multiplier | project | homotopy | count
//   dirichlet   shoot | critical | index | nonempty | homotopy
//   periodic    monodromy | classify
//   third       frame | member | forward | inverse | roundtrip
//
// Options come from flags and/or a JSON config file (--config); flags win.
// Outputs land in --out as JSON/CSV/SVG per --formats, each file carrying a
// metadata block. Exit codes: 0 success, 1 usage error, 2 numerical failure
// (the error name goes to stderr).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "critset/dirichlet.hpp"
#include "critset/first_order.hpp"
#include "critset/periodic.hpp"
#include "critset/planar_singularity.hpp"
#include "critset/quadrature.hpp"
#include "critset/serialize.hpp"
#include "critset/svg.hpp"
#include "critset/third_order.hpp"

using namespace critset;
using nlohmann::json;
using std::numbers::pi;

namespace {

// ---------------------------------------------------------------------------
// JSON config support for CLI11: flat or nested objects; nesting mirrors the
// subcommand tree ({"planar": {"census": {"targets": "origin"}}}).
class ConfigJSON : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        input >> j;
        if (!j.is_object()) throw CLI::ConfigError("config root must be a JSON object");
        std::vector<CLI::ConfigItem> out;
        std::function<void(const json&, std::vector<std::string>)> walk =
            [&](const json& obj, std::vector<std::string> parents) {
                for (auto it = obj.begin(); it != obj.end(); ++it) {
                    if (it->is_object()) {
                        auto p = parents;
                        p.push_back(it.key());
                        walk(*it, p);
                        continue;
                    }
                    CLI::ConfigItem item;
                    item.parents = parents;
                    item.name = it.key();
                    auto as_string = [](const json& v) {
                        return v.is_string() ? v.get<std::string>() : v.dump();
                    };
                    if (it->is_array())
                        for (const auto& v : *it) item.inputs.push_back(as_string(v));
                    else
                        item.inputs.push_back(as_string(*it));
                    out.push_back(item);
                }
            };
        walk(j, {});
        return out;
    }
};

// ---------------------------------------------------------------------------
// Run context: output directory, requested formats, metadata echo.
struct RunContext {
    std::string out_dir = "out";
    std::vector<std::string> formats = {"json"};
    int seed = 0;
    std::string subcommand;

    bool wants(const std::string& f) const {
        return std::find(formats.begin(), formats.end(), f) != formats.end();
    }

    json metadata(const json& params) const {
        return {{"subcommand", subcommand}, {"seed", seed}, {"parameters", params}};
    }

    std::filesystem::path path(const std::string& name) const {
        std::filesystem::create_directories(out_dir);
        return std::filesystem::path(out_dir) / name;
    }

    void write_json(const std::string& name, json payload, const json& params) const {
        if (!wants("json")) return;
        payload["metadata"] = metadata(params);
        std::ofstream f(path(name));
        f << payload.dump(2) << "\n";
    }

    void write_csv(const std::string& name, const std::string& header,
                   const std::vector<std::string>& rows, const json& params) const {
        if (!wants("csv")) return;
        std::ofstream f(path(name));
        f << "# metadata " << metadata(params).dump() << "\n" << header << "\n";
        for (const auto& r : rows) f << r << "\n";
    }

    void write_svg(const std::string& name, const std::string& body, const json& params) const {
        if (!wants("svg")) return;
        std::ofstream f(path(name));
        f << "<!-- metadata " << metadata(params).dump() << " -->\n" << body;
    }
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Input parsing helpers.
std::vector<double> parse_doubles(const std::string& s, char sep) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

Eigen::Vector2d parse_point(const std::string& s) {
    const auto v = parse_doubles(s, ',');
    if (v.size() != 2) throw CLI::ValidationError("point must be 'x,y': " + s);
    return {v[0], v[1]};
}

std::vector<Eigen::Vector2d> parse_targets(const std::string& s) {
    if (s == "origin") return {{0.0, 0.0}};
    std::vector<Eigen::Vector2d> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) out.push_back(parse_point(item));
    if (out.empty()) throw CLI::ValidationError("no targets parsed from '" + s + "'");
    return out;
}

// Nonlinearity spec: "sin", "tanh", or "poly:c0,c1,...".
Nonlinearity parse_nonlinearity(const std::string& s) {
    if (s.rfind("poly:", 0) == 0) return Nonlinearity::polynomial(parse_doubles(s.substr(5), ','));
    return Nonlinearity::preset(s);
}

// Planar map spec: preset name or "j,k,re[,im];..." z/z-bar terms.
PlanarMap parse_map(const std::string& preset, const std::string& terms) {
    if (!terms.empty()) {
        std::vector<ZZbarTerm> parsed;
        std::stringstream ss(terms);
        std::string item;
        while (std::getline(ss, item, ';')) {
            if (item.empty()) continue;
            const auto v = parse_doubles(item, ',');
            if (v.size() != 3 && v.size() != 4)
                throw CLI::ValidationError("term must be 'j,k,re[,im]': " + item);
            parsed.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]),
                              {v[2], v.size() == 4 ? v[3] : 0.0}});
        }
        return PlanarMap::zzbar_polynomial(std::move(parsed));
    }
    if (preset == "z7") return PlanarMap::preset_z7();
    throw CLI::ValidationError("unknown planar preset '" + preset + "'");
}

GridFunction load_grid_function(const std::string& file) {
    std::ifstream f(file);
    if (!f) throw CLI::ValidationError("cannot open '" + file + "'");
    json j;
    f >> j;
    return grid_function_from_json(j);
}

// u from either a JSON file or a constant; the fallback builds the constant.
GridFunction grid_input(const std::string& file, double constant, std::size_t n, double length,
                        Boundary b) {
    if (!file.empty()) return load_grid_function(file);
    return GridFunction::constant(constant, n, length, b);
}

SphereCurve load_sphere_curve(const std::string& file) {
    std::ifstream f(file);
    if (!f) throw CLI::ValidationError("cannot open '" + file + "'");
    json j;
    f >> j;
    SphereCurve c;
    for (const auto& s : j.at("samples")) {
        if (!s.is_array() || s.size() != 3)
            throw CLI::ValidationError("curve samples must be [x, y, z] triples");
        c.samples.emplace_back(s[0].get<double>(), s[1].get<double>(), s[2].get<double>());
    }
    return c;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Subcommand registration. Each leaf stores its action in `action`; main runs
// it after parsing so that numerical failures map cleanly to exit code 2.

struct Cli {
    RunContext ctx;
    std::function<void()> action;

    // --- planar ------------------------------------------------------------
    struct PlanarOpts {
        std::string preset = "z7";
        std::string terms;
        double window = 2.0;
        int resolution = 512;
    };

    void add_planar(CLI::App& app) {
        auto* planar = app.add_subcommand("planar", "Critical sets of planar maps");
        planar->require_subcommand(1);
        auto opts = std::make_shared<PlanarOpts>();
        auto add_map_opts = [opts](CLI::App* sub) {
            sub->add_option("--preset", opts->preset, "Built-in map (z7)");
            sub->add_option("--terms", opts->terms, "z/z-bar terms 'j,k,re[,im];...'");
            sub->add_option("--window", opts->window, "Half-width of the critical window");
            sub->add_option("--resolution", opts->resolution, "Marching-squares resolution");
        };

        auto* trace = planar->add_subcommand("trace", "Trace the critical set");
        add_map_opts(trace);
        trace->callback([this, opts] {
            action = [this, opts] {
                const PlanarMap map = parse_map(opts->preset, opts->terms);
                TraceOptions topts;
                topts.resolution = opts->resolution;
                const TraceResult traced =
                    trace_critical_set(map, Window::square(opts->window), topts);
                const json params = {{"window", opts->window}, {"resolution", opts->resolution},
                                     {"refine_tol", topts.refine_tol}};
                json curves = json::array();
                for (const auto& c : traced.curves) curves.push_back(to_json(c));
                json degenerate = json::array();
                for (const auto& p : traced.degenerate_points) degenerate.push_back({p.x(), p.y()});
                ctx.write_json("planar_trace.json",
                               {{"curves", curves}, {"degenerate_points", degenerate}}, params);
                ctx.write_svg("planar_trace.svg", render_curves_svg(traced.curves), params);
                std::printf("curves=%zu degenerate_points=%zu\n", traced.curves.size(),
                            traced.degenerate_points.size());
            };
        });

        auto* classify = planar->add_subcommand("classify", "Classify one critical point");
        add_map_opts(classify);
        auto point = std::make_shared<std::string>();
        classify->add_option("--point", *point, "Critical point 'x,y'")->required();
        classify->callback([this, opts, point] {
            action = [this, opts, point] {
                const PlanarMap map = parse_map(opts->preset, opts->terms);
                const Eigen::Vector2d p = parse_point(*point);
                const PointTag tag = classify_critical_point(map, p);
                const json params = {{"point", {p.x(), p.y()}}};
                ctx.write_json("planar_classify.json",
                               {{"point", {p.x(), p.y()}}, {"tag", to_string(tag)}}, params);
                std::printf("tag=%s\n", to_string(tag));
            };
        });

        auto* image = planar->add_subcommand("image", "Image of the critical set with cusps");
        add_map_opts(image);
        image->callback([this, opts] {
            action = [this, opts] {
                const PlanarMap map = parse_map(opts->preset, opts->terms);
                TraceOptions topts;
                topts.resolution = opts->resolution;
                TraceResult traced = trace_critical_set(map, Window::square(opts->window), topts);
                json cusp_counts = json::array();
                for (auto& c : traced.curves) cusp_counts.push_back(count_cusps(map, c));
                const auto images = image_of_critical_set(map, traced.curves);
                const json params = {{"window", opts->window}, {"resolution", opts->resolution}};
                json curves = json::array();
                for (const auto& c : images) curves.push_back(to_json(c));
                ctx.write_json("planar_image.json",
                               {{"image_curves", curves}, {"cusp_counts", cusp_counts}}, params);
                ctx.write_svg("planar_image.svg", render_curves_svg(images), params);
                std::printf("curves=%zu cusps=%s\n", images.size(), cusp_counts.dump().c_str());
            };
        });

        auto* census = planar->add_subcommand("census", "Preimage counts for targets");
        add_map_opts(census);
        struct CensusCli {
            std::string targets = "origin";
            double search_window = 6.0;
            int root_grid = 64;
            bool no_adjacency = false;
        };
        auto c = std::make_shared<CensusCli>();
        census->add_option("--targets", c->targets, "'origin' or 'x,y;x,y;...'");
        census->add_option("--search-window", c->search_window, "Half-width of the root search");
        census->add_option("--root-grid", c->root_grid, "Multistart lattice size");
        census->add_flag("--no-adjacency", c->no_adjacency, "Skip fold-arc consistency checks");
        census->callback([this, opts, c] {
            action = [this, opts, c] {
                const PlanarMap map = parse_map(opts->preset, opts->terms);
                CensusOptions copts;
                copts.critical_window = Window::square(opts->window);
                copts.trace_resolution = opts->resolution;
                copts.root_grid = c->root_grid;
                copts.check_adjacency = !c->no_adjacency;
                const RegionCensus result = preimage_census(
                    map, parse_targets(c->targets), Window::square(c->search_window), copts);
                const json params = {{"window", opts->window},
                                     {"search_window", c->search_window},
                                     {"resolution", opts->resolution},
                                     {"root_grid", c->root_grid},
                                     {"near_value_tol", copts.near_value_tol}};
                ctx.write_json("planar_census.json", to_json(result), params);
                std::vector<std::string> rows;
                for (std::size_t k = 0; k < result.targets.size(); ++k)
                    rows.push_back(num(result.targets[k].x()) + "," + num(result.targets[k].y()) +
                                   "," + std::to_string(result.counts[k]));
                ctx.write_csv("planar_census.csv", "target_x,target_y,count", rows, params);
                for (std::size_t k = 0; k < result.counts.size(); ++k)
                    std::printf("target=(%s,%s) count=%d\n", num(result.targets[k].x()).c_str(),
                                num(result.targets[k].y()).c_str(), result.counts[k]);
            };
        });

        auto* degree = planar->add_subcommand("degree", "Winding-number degree on a circle");
        add_map_opts(degree);
        auto radius = std::make_shared<double>(10.0);
        auto target = std::make_shared<std::string>("0,0");
        degree->add_option("--radius", *radius, "Circle radius");
        degree->add_option("--target", *target, "Target point 'x,y'");
        degree->callback([this, opts, radius, target] {
            action = [this, opts, radius, target] {
                const PlanarMap map = parse_map(opts->preset, opts->terms);
                const Eigen::Vector2d t = parse_point(*target);
                const int deg = topological_degree(map, *radius, t);
                const json params = {{"radius", *radius}, {"target", {t.x(), t.y()}}};
                ctx.write_json("planar_degree.json", {{"degree", deg}}, params);
                std::printf("degree=%d\n", deg);
            };
        });
    }

    // --- first-order ---------------------------------------------------------
    struct FirstOrderOpts {
        std::string f = "poly:0,-1,0,1";
        std::size_t grid_size = 1024;
        std::string u_json;
        double u_const = 0.0;
    };

    void add_first_order(CLI::App& app) {
        auto* fo = app.add_subcommand("first-order", "The operator u' + f(u) on the circle");
        fo->require_subcommand(1);
        auto opts = std::make_shared<FirstOrderOpts>();
        auto add_common = [opts](CLI::App* sub, bool with_u = true) {
            sub->add_option("--f", opts->f, "Nonlinearity: sin | tanh | poly:c0,c1,...");
            sub->add_option("--grid-size", opts->grid_size, "Periodic grid size");
            if (with_u) {
                sub->add_option("--u-json", opts->u_json, "GridFunction JSON file for u");
                sub->add_option("--u-const", opts->u_const, "Constant u (when no file)");
            }
        };
        auto problem = [opts] { return FirstOrderProblem{parse_nonlinearity(opts->f),
                                                         opts->grid_size}; };
        auto get_u = [opts] {
            return grid_input(opts->u_json, opts->u_const, opts->grid_size, 1.0,
                              Boundary::Periodic);
        };
        auto params_of = [opts](json extra = json::object()) {
            extra["f"] = opts->f;
            extra["grid_size"] = opts->grid_size;
            return extra;
        };

        for (const auto& [name, help] :
             std::vector<std::pair<std::string, std::string>>{
                 {"phi1", "Critical functional: mean of f'(u)"},
                 {"phi12", "Second Morin functional: mean of f''(u)"},
                 {"multiplier", "Floquet multiplier exp(-phi1)"}}) {
            auto* sub = fo->add_subcommand(name, help);
            add_common(sub);
            const std::string op = name;
            sub->callback([this, opts, problem, get_u, params_of, op] {
                action = [this, problem, get_u, params_of, op] {
                    const FirstOrderProblem p = problem();
                    const GridFunction u = get_u();
                    const double value = op == "phi1"   ? phi1(p, u)
                                         : op == "phi12" ? phi12(p, u)
                                                         : floquet_multiplier(p, u);
                    ctx.write_json("first_order_" + op + ".json", {{"value", value}},
                                   params_of());
                    std::printf("%s=%s\n", op.c_str(), num(value).c_str());
                };
            });
        }

        auto* project = fo->add_subcommand("project", "Shift u onto the critical hypersurface");
        add_common(project);
        project->callback([this, problem, get_u, params_of] {
            action = [this, problem, get_u, params_of] {
                const FirstOrderProblem p = problem();
                const GridFunction v = project_to_C1(p, get_u());
                json payload = to_json(v);
                payload = json{{"u", payload}, {"phi1", phi1(p, v)}};
                ctx.write_json("first_order_project.json", payload, params_of());
                std::printf("phi1=%s\n", num(phi1(p, v)).c_str());
            };
        });

        auto* homotopy = fo->add_subcommand("homotopy", "Contraction path inside phi1 = 0");
        add_common(homotopy, false);
        struct H {
            std::string u0_json, u1_json;
            double u0_const = 0.0, u1_const = 0.0;
            int steps = 32;
        };
        auto h = std::make_shared<H>();
        homotopy->add_option("--u0-json", h->u0_json, "GridFunction JSON for u0");
        homotopy->add_option("--u1-json", h->u1_json, "GridFunction JSON for u1");
        homotopy->add_option("--u0-const", h->u0_const, "Constant u0");
        homotopy->add_option("--u1-const", h->u1_const, "Constant u1");
        homotopy->add_option("--steps", h->steps, "Number of homotopy steps");
        homotopy->callback([this, opts, problem, params_of, h] {
            action = [this, opts, problem, params_of, h] {
                const FirstOrderProblem p = problem();
                const GridFunction u0 = grid_input(h->u0_json, h->u0_const, opts->grid_size, 1.0,
                                                   Boundary::Periodic);
                const GridFunction u1 = grid_input(h->u1_json, h->u1_const, opts->grid_size, 1.0,
                                                   Boundary::Periodic);
                const HomotopyPath path = contraction_homotopy(p, u0, u1, h->steps);
                double worst = 0.0;
                for (double r : path.residuals) worst = std::max(worst, std::abs(r));
                const json params = params_of({{"steps", h->steps}});
                ctx.write_json("first_order_homotopy.json", to_json(path), params);
                ctx.write_svg("first_order_homotopy.svg", render_homotopy_svg(path), params);
                std::printf("slices=%zu max_residual=%s\n", path.slices.size(),
                            num(worst).c_str());
            };
        });

        auto* count = fo->add_subcommand("count", "Periodic solutions of u' = g - f(u)");
        add_common(count, false);
        struct G {
            std::string g_json;
            double g_const = 0.0;
        };
        auto g = std::make_shared<G>();
        count->add_option("--g-json", g->g_json, "GridFunction JSON for g");
        count->add_option("--g-const", g->g_const, "Constant g");
        count->callback([this, opts, problem, params_of, g] {
            action = [this, opts, problem, params_of, g] {
                const FirstOrderProblem p = problem();
                const GridFunction gg = grid_input(g->g_json, g->g_const, opts->grid_size, 1.0,
                                                   Boundary::Periodic);
                const PeriodicSolveResult res = count_periodic_solutions(p, gg);
                const json params = params_of();
                ctx.write_json("first_order_count.json",
                               {{"count", res.initial_values.size()},
                                {"initial_values", res.initial_values},
                                {"escaped_starts", res.escaped_starts}},
                               params);
                std::vector<std::string> rows;
                for (double v : res.initial_values) rows.push_back(num(v));
                ctx.write_csv("first_order_count.csv", "initial_value", rows, params);
                std::printf("count=%zu\n", res.initial_values.size());
            };
        });
    }

    // --- dirichlet -----------------------------------------------------------
    struct DirichletOpts {
        std::string f = "poly:0,-1,0,1";
        std::size_t grid_size = 513;
        std::string u_json;
        double u_const = 0.0;
        int m = 1;
    };

    void add_dirichlet(CLI::App& app) {
        auto* dir = app.add_subcommand("dirichlet", "The operator -u'' + f(u) on [0, pi]");
        dir->require_subcommand(1);
        auto opts = std::make_shared<DirichletOpts>();
        auto add_common = [opts](CLI::App* sub, bool with_u = true) {
            sub->add_option("--f", opts->f, "Nonlinearity: sin | tanh | poly:c0,c1,...");
            sub->add_option("--m", opts->m, "Spectral index m");
            sub->add_option("--grid-size", opts->grid_size, "Dirichlet grid size");
            if (with_u) {
                sub->add_option("--u-json", opts->u_json, "GridFunction JSON file for u");
                sub->add_option("--u-const", opts->u_const, "Constant u (when no file)");
            }
        };
        auto get_u = [opts] {
            return grid_input(opts->u_json, opts->u_const, opts->grid_size, pi,
                              Boundary::Dirichlet);
        };
        auto params_of = [opts](json extra = json::object()) {
            extra["f"] = opts->f;
            extra["m"] = opts->m;
            extra["grid_size"] = opts->grid_size;
            return extra;
        };

        auto* shoot = dir->add_subcommand("shoot", "Fundamental solution and Prufer arguments");
        add_common(shoot);
        shoot->callback([this, opts, get_u, params_of] {
            action = [this, opts, get_u, params_of] {
                const PruferTrace trace =
                    shoot_fundamental(parse_nonlinearity(opts->f), get_u(), opts->m);
                const json params = params_of();
                ctx.write_json("dirichlet_shoot.json", to_json(trace), params);
                ctx.write_svg("dirichlet_shoot.svg", render_prufer_svg(trace), params);
                std::printf("omega_pi=%s\n", num(trace.omega_end()).c_str());
            };
        });

        auto* critical = dir->add_subcommand("critical", "Criticality test omega(pi) in pi Z");
        add_common(critical);
        critical->callback([this, opts, get_u, params_of] {
            action = [this, opts, get_u, params_of] {
                const CriticalityResult r =
                    is_critical_dirichlet(parse_nonlinearity(opts->f), get_u());
                ctx.write_json("dirichlet_critical.json",
                               {{"critical", r.critical},
                                {"omega_pi", r.omega_pi},
                                {"residual", r.residual}},
                               params_of());
                std::printf("critical=%s omega_pi=%s\n", r.critical ? "true" : "false",
                            num(r.omega_pi).c_str());
            };
        });

        auto* index = dir->add_subcommand("index", "Component index of a critical u");
        add_common(index);
        index->callback([this, opts, get_u, params_of] {
            action = [this, opts, get_u, params_of] {
                const int idx = component_index(parse_nonlinearity(opts->f), get_u());
                ctx.write_json("dirichlet_index.json", {{"index", idx}}, params_of());
                std::printf("index=%d\n", idx);
            };
        });

        auto* nonempty = dir->add_subcommand("nonempty", "Is the index-m component nonempty?");
        add_common(nonempty, false);
        nonempty->callback([this, opts, params_of] {
            action = [this, opts, params_of] {
                const NonemptyVerdict v = component_nonempty(parse_nonlinearity(opts->f), opts->m);
                const char* verdict = v == NonemptyVerdict::Nonempty    ? "nonempty"
                                      : v == NonemptyVerdict::Empty     ? "empty"
                                                                        : "inconclusive";
                ctx.write_json("dirichlet_nonempty.json", {{"verdict", verdict}}, params_of());
                std::printf("verdict=%s\n", verdict);
            };
        });

        auto* homotopy = dir->add_subcommand("homotopy", "Squeeze path in the index-m component");
        add_common(homotopy, false);
        struct H {
            std::string u0_json, u1_json;
            double u0_const = 0.0, u1_const = 0.0;
            int steps = 12;
        };
        auto h = std::make_shared<H>();
        homotopy->add_option("--u0-json", h->u0_json, "GridFunction JSON for u0");
        homotopy->add_option("--u1-json", h->u1_json, "GridFunction JSON for u1");
        homotopy->add_option("--u0-const", h->u0_const, "Constant u0");
        homotopy->add_option("--u1-const", h->u1_const, "Constant u1");
        homotopy->add_option("--steps", h->steps, "Number of homotopy steps");
        homotopy->callback([this, opts, params_of, h] {
            action = [this, opts, params_of, h] {
                const Nonlinearity f = parse_nonlinearity(opts->f);
                const GridFunction raw0 = grid_input(h->u0_json, h->u0_const, opts->grid_size, pi,
                                                     Boundary::Dirichlet);
                const GridFunction raw1 = grid_input(h->u1_json, h->u1_const, opts->grid_size, pi,
                                                     Boundary::Dirichlet);
                const GridFunction u0 = project_to_critical_dirichlet(f, raw0, opts->m);
                const GridFunction u1 = project_to_critical_dirichlet(f, raw1, opts->m);
                const HomotopyPath path = squeeze_homotopy(f, u0, u1, opts->m, h->steps);
                double worst = 0.0;
                for (double r : path.residuals) worst = std::max(worst, std::abs(r));
                const json params = params_of({{"steps", h->steps}});
                ctx.write_json("dirichlet_homotopy.json", to_json(path), params);
                ctx.write_svg("dirichlet_homotopy.svg", render_homotopy_svg(path), params);
                std::printf("slices=%zu max_residual=%s\n", path.slices.size(),
                            num(worst).c_str());
            };
        });
    }

    // --- periodic ------------------------------------------------------------
    struct PeriodicOpts {
        std::string h_json;
        double constant = 0.0;
        bool has_constant = false;
        std::size_t grid_size = 1024;
        std::string batch_csv;
    };

    GridFunction periodic_input(const PeriodicOpts& o) const {
        if (!o.h_json.empty()) return load_grid_function(o.h_json);
        if (!o.has_constant)
            throw CLI::ValidationError("provide --constant or --h-json for the potential");
        return GridFunction::constant(o.constant, o.grid_size, 2 * pi, Boundary::Periodic);
    }

    void add_periodic(CLI::App& app) {
        auto* per = app.add_subcommand("periodic", "Hill's equation v'' = h v on [0, 2 pi]");
        per->require_subcommand(1);
        auto opts = std::make_shared<PeriodicOpts>();
        auto add_common = [opts](CLI::App* sub) {
            sub->add_option("--constant", opts->constant, "Constant potential h")
                ->each([opts](const std::string&) { opts->has_constant = true; });
            sub->add_option("--h-json", opts->h_json, "GridFunction JSON for h");
            sub->add_option("--grid-size", opts->grid_size, "Grid size for constant potentials");
        };
        auto params_of = [opts](json extra = json::object()) {
            extra["grid_size"] = opts->grid_size;
            if (opts->has_constant) extra["constant"] = opts->constant;
            if (!opts->h_json.empty()) extra["h_json"] = opts->h_json;
            return extra;
        };

        auto* mono = per->add_subcommand("monodromy", "Monodromy matrix and lifted angle");
        add_common(mono);
        mono->callback([this, opts, params_of] {
            action = [this, opts, params_of] {
                const MonodromyLift lift = monodromy(periodic_input(*opts));
                ctx.write_json("periodic_monodromy.json", to_json(lift), params_of());
                std::printf("angle=%s trace=%s\n", num(lift.angle).c_str(),
                            num(lift.matrix.trace()).c_str());
            };
        });

        auto* classify = per->add_subcommand("classify", "Noncritical / regular / nonregular");
        add_common(classify);
        classify->add_option("--batch-csv", opts->batch_csv,
                             "CSV rows 'id,value' (constant) or 'id,v1,...,vn' (samples)");
        classify->callback([this, opts, params_of] {
            action = [this, opts, params_of] {
                const std::string header = "id,trace,angle,kind,index";
                auto row_of = [](const std::string& id, const PeriodicClassification& c) {
                    return id + "," + num(c.trace) + "," + num(c.angle) + "," + to_string(c.kind) +
                           "," + (c.index_n ? std::to_string(*c.index_n) : "");
                };
                if (!opts->batch_csv.empty()) {
                    std::ifstream f(opts->batch_csv);
                    if (!f) throw CLI::ValidationError("cannot open '" + opts->batch_csv + "'");
                    std::vector<std::string> rows;
                    json results = json::array();
                    std::string line;
                    while (std::getline(f, line)) {
                        if (line.empty() || line[0] == '#') continue;
                        const auto comma = line.find(',');
                        if (comma == std::string::npos)
                            throw CLI::ValidationError("batch row needs 'id,value[,...]'");
                        const std::string id = line.substr(0, comma);
                        const auto vals = parse_doubles(line.substr(comma + 1), ',');
                        const GridFunction h =
                            vals.size() == 1
                                ? GridFunction::constant(vals[0], opts->grid_size, 2 * pi,
                                                         Boundary::Periodic)
                                : GridFunction(vals, 2 * pi, Boundary::Periodic);
                        const PeriodicClassification c = classify_periodic(h);
                        rows.push_back(row_of(id, c));
                        json j = to_json(c);
                        j["id"] = id;
                        results.push_back(j);
                    }
                    const json params = params_of({{"batch_csv", opts->batch_csv}});
                    ctx.write_csv("periodic_census.csv", header, rows, params);
                    ctx.write_json("periodic_census.json", {{"results", results}}, params);
                    std::printf("classified=%zu\n", rows.size());
                    return;
                }
                const PeriodicClassification c = classify_periodic(periodic_input(*opts));
                ctx.write_csv("periodic_classify.csv", header, {row_of("0", c)}, params_of());
                ctx.write_json("periodic_classify.json", to_json(c), params_of());
                std::printf("kind=%s", to_string(c.kind));
                if (c.index_n) std::printf(" index=%d", *c.index_n);
                std::printf("\n");
            };
        });
    }

    // --- third ----------------------------------------------------------------
    struct ThirdOpts {
        double h0 = 0.0;
        double h1 = -1.0;
        std::string h0_json, h1_json;
        std::size_t grid_size = 1024;
    };

    PotentialPair third_input(const ThirdOpts& o) const {
        if (!o.h0_json.empty() || !o.h1_json.empty()) {
            if (o.h0_json.empty() || o.h1_json.empty())
                throw CLI::ValidationError("provide both --h0-json and --h1-json");
            return {load_grid_function(o.h0_json), load_grid_function(o.h1_json)};
        }
        return {GridFunction::constant(o.h0, o.grid_size, 2 * pi, Boundary::Periodic),
                GridFunction::constant(o.h1, o.grid_size, 2 * pi, Boundary::Periodic)};
    }

    void add_third(CLI::App& app) {
        auto* third =
            app.add_subcommand("third", "Third-order correspondence with sphere curves");
        third->require_subcommand(1);
        auto opts = std::make_shared<ThirdOpts>();
        auto add_common = [opts](CLI::App* sub) {
            sub->add_option("--h0", opts->h0, "Constant h0");
            sub->add_option("--h1", opts->h1, "Constant h1");
            sub->add_option("--h0-json", opts->h0_json, "GridFunction JSON for h0");
            sub->add_option("--h1-json", opts->h1_json, "GridFunction JSON for h1");
            sub->add_option("--grid-size", opts->grid_size, "Periodic grid size");
        };
        auto params_of = [opts](json extra = json::object()) {
            extra["grid_size"] = opts->grid_size;
            if (opts->h0_json.empty()) {
                extra["h0"] = opts->h0;
                extra["h1"] = opts->h1;
            }
            return extra;
        };

        auto* frame = third->add_subcommand("frame", "Fundamental frame of (dagger)");
        add_common(frame);
        frame->callback([this, opts, params_of] {
            action = [this, opts, params_of] {
                const FrameTrajectory traj = fundamental_frame_3(third_input(*opts));
                ctx.write_json("third_frame.json",
                               {{"final_frame", matrix_to_json(traj.final_frame())},
                                {"wronskian_defect", traj.wronskian_defect()}},
                               params_of());
                std::printf("wronskian_defect=%s closure=%s\n",
                            num(traj.wronskian_defect()).c_str(),
                            num((traj.final_frame() - Eigen::Matrix3d::Identity()).norm())
                                .c_str());
            };
        });

        auto* member = third->add_subcommand("member", "Membership in the all-periodic stratum");
        add_common(member);
        member->callback([this, opts, params_of] {
            action = [this, opts, params_of] {
                const MembershipResult r = is_in_Cstar3(third_input(*opts));
                ctx.write_json("third_member.json",
                               {{"member", r.member}, {"residual", r.residual}}, params_of());
                std::printf("member=%s residual=%s\n", r.member ? "true" : "false",
                            num(r.residual).c_str());
            };
        });

        auto* forward = third->add_subcommand("forward", "Sphere curve of a member pair");
        add_common(forward);
        forward->callback([this, opts, params_of] {
            action = [this, opts, params_of] {
                const SphereCurve curve = curve_from_potentials(third_input(*opts),
                                                                opts->grid_size);
                const json params = params_of();
                ctx.write_json("third_forward.json", to_json(curve), params);
                ctx.write_svg("third_forward.svg", render_sphere_curve_svg(curve), params);
                std::printf("samples=%zu norm_defect=%s\n", curve.size(),
                            num(curve.max_norm_defect()).c_str());
            };
        });

        auto* inverse = third->add_subcommand("inverse", "Potentials of a sphere curve");
        auto curve_file = std::make_shared<std::string>();
        inverse->add_option("--curve-json", *curve_file, "SphereCurve JSON file")->required();
        inverse->callback([this, curve_file] {
            action = [this, curve_file] {
                const InverseResult inv = potentials_from_curve(load_sphere_curve(*curve_file));
                const json params = {{"curve_json", *curve_file}};
                ctx.write_json("third_inverse.json",
                               {{"h0", to_json(inv.potentials.h0)},
                                {"h1", to_json(inv.potentials.h1)},
                                {"max_residual", inv.max_residual}},
                               params);
                std::printf("max_residual=%s\n", num(inv.max_residual).c_str());
            };
        });

        auto* roundtrip = third->add_subcommand("roundtrip", "Forward-then-inverse defect");
        add_common(roundtrip);
        roundtrip->callback([this, opts, params_of] {
            action = [this, opts, params_of] {
                const double res = roundtrip_residual(third_input(*opts), opts->grid_size);
                ctx.write_json("third_roundtrip.json", {{"residual", res}}, params_of());
                std::printf("residual=%s\n", num(res).c_str());
            };
        });
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"critset: critical sets of nonlinear maps and differential operators"};
    app.require_subcommand(1);
    app.set_config("--config", "", "JSON config file (flags take precedence)");
    app.config_formatter(std::make_shared<ConfigJSON>());
    app.allow_config_extras(false);

    Cli cli;
    app.add_option("--out", cli.ctx.out_dir, "Output directory")->capture_default_str();
    app.add_option("--formats", cli.ctx.formats, "Output formats (json, csv, svg)")
        ->delimiter(',')
        ->check(CLI::IsMember({"json", "csv", "svg"}))
        ->capture_default_str();
    app.add_option("--seed", cli.ctx.seed, "Seed echoed into output metadata");

    cli.add_planar(app);
    cli.add_first_order(app);
    cli.add_dirichlet(app);
    cli.add_periodic(app);
    cli.add_third(app);

    // Global options (--out, --formats, --seed) may appear after a subcommand.
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands(nullptr)) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    // Record the resolved subcommand path for output metadata.
    for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
        sub = sub->get_subcommands().front();
        cli.ctx.subcommand += (cli.ctx.subcommand.empty() ? "" : " ") + sub->get_name();
    }

    try {
        if (cli.action) cli.action();
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "%s\n", e.name().c_str());
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
    return 0;
}
