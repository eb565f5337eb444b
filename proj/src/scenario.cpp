#include "bondtherm/scenario.hpp"

#include "bondtherm/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace bondtherm {

using nlohmann::json;

namespace {

constexpr double kMillimeter = 1e-3;
constexpr const char* kAxisKey[3] = {"x", "y", "z"};
constexpr const char* kFaceName[kFaceCount] = {"x-", "x+", "y-", "y+", "z-", "z+"};

// Typed access to a JSON tree that records problems instead of throwing, so
// that one parse reports every error with its key path.
class Reader {
public:
    std::vector<std::string> errors;

    void error(const std::string& path, const std::string& message) { errors.push_back(path + ": " + message); }

    void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
        if (!obj.is_object()) return;
        for (const auto& [key, value] : obj.items()) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok) error(join(path, key), "unknown key");
        }
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    const json* object(const json& parent, const std::string& key, const std::string& path, bool required) {
        auto p = join(path, key);
        if (!parent.contains(key)) {
            if (required) error(p, "required key missing");
            return nullptr;
        }
        const json& v = parent.at(key);
        if (!v.is_object()) {
            error(p, "expected an object");
            return nullptr;
        }
        return &v;
    }

    const json* array(const json& parent, const std::string& key, const std::string& path, bool required) {
        auto p = join(path, key);
        if (!parent.contains(key)) {
            if (required) error(p, "required key missing");
            return nullptr;
        }
        const json& v = parent.at(key);
        if (!v.is_array()) {
            error(p, "expected an array");
            return nullptr;
        }
        return &v;
    }

    std::optional<double> number(const json& obj, const std::string& key, const std::string& path, bool required) {
        if (!obj.contains(key)) {
            if (required) error(join(path, key), "required key missing");
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_number()) {
            error(join(path, key), "expected a number");
            return std::nullopt;
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            error(join(path, key), "must be finite");
            return std::nullopt;
        }
        return d;
    }

    double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
        return number(obj, key, path, false).value_or(fallback);
    }

    std::optional<long long> integer(const json& obj, const std::string& key, const std::string& path, bool required) {
        if (!obj.contains(key)) {
            if (required) error(join(path, key), "required key missing");
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_number_integer()) {
            error(join(path, key), "expected an integer");
            return std::nullopt;
        }
        return v.get<long long>();
    }

    std::optional<std::string> string(const json& obj, const std::string& key, const std::string& path, bool required) {
        if (!obj.contains(key)) {
            if (required) error(join(path, key), "required key missing");
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_string()) {
            error(join(path, key), "expected a string");
            return std::nullopt;
        }
        return v.get<std::string>();
    }

    /// Resolves `key` (meters) or `key_mm` (millimeters). Returns the JSON node
    /// and the scale to meters.
    std::optional<std::pair<const json*, double>> length_node(const json& obj, const std::string& key,
                                                              const std::string& path, bool required) {
        const std::string mm = key + "_mm";
        const bool has_m = obj.contains(key);
        const bool has_mm = obj.contains(mm);
        if (has_m && has_mm) {
            error(join(path, key), "given both as '" + key + "' and '" + mm + "'");
            return std::nullopt;
        }
        if (!has_m && !has_mm) {
            if (required) error(join(path, key), "required key missing (or '" + mm + "')");
            return std::nullopt;
        }
        return std::make_pair(&obj.at(has_m ? key : mm), has_m ? 1.0 : kMillimeter);
    }

    std::optional<double> length(const json& obj, const std::string& key, const std::string& path, bool required) {
        auto node = length_node(obj, key, path, required);
        if (!node) return std::nullopt;
        if (!node->first->is_number()) {
            error(join(path, key), "expected a number");
            return std::nullopt;
        }
        return node->first->get<double>() * node->second;
    }

    std::optional<std::vector<double>> numbers(const json& v, const std::string& path, double scale) {
        if (!v.is_array()) {
            error(path, "expected an array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) {
                error(path, "expected an array of numbers");
                return std::nullopt;
            }
            out.push_back(e.get<double>() * scale);
        }
        return out;
    }

    std::optional<Vec3> point(const json& obj, const std::string& key, const std::string& path, bool required) {
        auto node = length_node(obj, key, path, required);
        if (!node) return std::nullopt;
        auto values = numbers(*node->first, join(path, key), node->second);
        if (!values) return std::nullopt;
        if (values->size() != 3) {
            error(join(path, key), "expected 3 coordinates");
            return std::nullopt;
        }
        return Vec3{(*values)[0], (*values)[1], (*values)[2]};
    }
};

std::string item_path(const std::string& key, std::size_t i) { return key + "[" + std::to_string(i) + "]"; }

struct AxisSpec {
    std::vector<double> values;  // ticks, or breaks when graded
    std::optional<double> max_step;
};

json box_json(const Box& b) {
    return {{"min", {b.min[0], b.min[1], b.min[2]}}, {"max", {b.max[0], b.max[1], b.max[2]}}};
}

}  // namespace

std::vector<std::string> Scenario::wire_ids() const {
    std::vector<std::string> ids;
    for (const auto& w : wires) ids.push_back(w.id);
    return ids;
}

std::vector<double> Scenario::time_points() const {
    std::vector<double> t;
    for (int s = 0; s <= solver.steps; ++s) t.push_back(s * solver.dt);
    return t;
}

Scenario parse_config(const json& doc, const std::filesystem::path& base_dir) {
    Reader rd;
    Scenario sc;
    if (!doc.is_object()) throw ConfigError("document: expected a JSON object at the top level");
    rd.check_keys(doc, "", {"grid", "materials", "regions", "wires", "contacts", "boundary", "time", "uq", "output"});

    // materials
    if (const json* mats = rd.array(doc, "materials", "", true)) {
        if (mats->empty()) rd.error("materials", "at least one material is required");
        for (std::size_t i = 0; i < mats->size(); ++i) {
            const json& m = (*mats)[i];
            const std::string p = item_path("materials", i);
            if (!m.is_object()) {
                rd.error(p, "expected an object");
                continue;
            }
            rd.check_keys(m, p, {"name", "sigma", "lambda", "rho_c", "alpha_sigma", "alpha_lambda", "t_ref"});
            MaterialLaw law;
            auto name = rd.string(m, "name", p, true);
            auto sigma = rd.number(m, "sigma", p, true);
            auto lambda = rd.number(m, "lambda", p, true);
            auto rho_c = rd.number(m, "rho_c", p, true);
            law.alpha_sigma = rd.number_or(m, "alpha_sigma", p, 0.0);
            law.alpha_lambda = rd.number_or(m, "alpha_lambda", p, 0.0);
            law.t_ref = rd.number_or(m, "t_ref", p, 300.0);
            if (!name || !sigma || !lambda || !rho_c) continue;
            law.name = *name;
            law.sigma_ref = *sigma;
            law.lambda_ref = *lambda;
            law.rho_c = *rho_c;
            try {
                sc.materials.add(law);
            } catch (const ConfigError& e) {
                for (const auto& msg : e.messages()) rd.error(p, msg);
            }
        }
    }
    auto resolve = [&](const std::string& name, const std::string& path) -> std::optional<MaterialId> {
        auto id = sc.materials.find(name);
        if (!id) rd.error(path, "unknown material '" + name + "'");
        return id;
    };

    // regions
    if (const json* regions = rd.object(doc, "regions", "", false)) {
        rd.check_keys(*regions, "regions", {"background", "boxes"});
        if (auto bg = rd.string(*regions, "background", "regions", true)) {
            sc.background = *bg;
            resolve(*bg, "regions.background");
        }
        if (const json* boxes = rd.array(*regions, "boxes", "regions", false)) {
            for (std::size_t i = 0; i < boxes->size(); ++i) {
                const json& b = (*boxes)[i];
                const std::string p = "regions." + item_path("boxes", i);
                if (!b.is_object()) {
                    rd.error(p, "expected an object");
                    continue;
                }
                rd.check_keys(b, p, {"name", "material", "min", "min_mm", "max", "max_mm"});
                NamedRegion r;
                r.name = rd.string(b, "name", p, false).value_or(std::to_string(i));
                auto mat = rd.string(b, "material", p, true);
                auto lo = rd.point(b, "min", p, true);
                auto hi = rd.point(b, "max", p, true);
                if (mat) resolve(*mat, Reader::join(p, "material"));
                if (!mat || !lo || !hi) continue;
                r.material = *mat;
                r.box = {*lo, *hi};
                sc.regions.push_back(std::move(r));
            }
        }
    } else if (!doc.contains("regions")) {
        if (sc.materials.size() > 0) sc.background = sc.materials[0].name;
    }

    // wires
    if (const json* wires = rd.array(doc, "wires", "", false)) {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < wires->size(); ++i) {
            const json& w = (*wires)[i];
            const std::string p = item_path("wires", i);
            if (!w.is_object()) {
                rd.error(p, "expected an object");
                continue;
            }
            rd.check_keys(w, p, {"id", "pad", "pad_mm", "chip", "chip_mm", "diameter", "diameter_mm", "material",
                                 "direct_distance", "direct_distance_mm", "elongation"});
            WireSpec spec;
            if (w.contains("id") && w.at("id").is_number_integer()) {
                spec.id = std::to_string(w.at("id").get<long long>());
            } else {
                spec.id = rd.string(w, "id", p, true).value_or("");
            }
            if (!spec.id.empty() && !seen.insert(spec.id).second) rd.error(Reader::join(p, "id"), "duplicate wire id");
            auto pad = rd.point(w, "pad", p, true);
            auto chip = rd.point(w, "chip", p, true);
            auto diameter = rd.length(w, "diameter", p, true);
            auto mat = rd.string(w, "material", p, true);
            auto direct = rd.length(w, "direct_distance", p, false);
            auto elong = rd.number(w, "elongation", p, false);
            std::optional<MaterialId> id;
            if (mat) id = resolve(*mat, Reader::join(p, "material"));
            if (diameter && !(*diameter > 0.0)) rd.error(Reader::join(p, "diameter"), "must be > 0");
            if (elong && !(*elong >= 0.0 && *elong < 1.0)) rd.error(Reader::join(p, "elongation"), "must lie in [0, 1)");
            if (!pad || !chip || !diameter || !id) continue;
            spec.pad_point = *pad;
            spec.chip_point = *chip;
            spec.diameter = *diameter;
            spec.material = *id;
            if (direct) {
                spec.direct_distance = *direct;
            } else {
                double d2 = 0.0;
                for (int a = 0; a < 3; ++a) d2 += ((*pad)[a] - (*chip)[a]) * ((*pad)[a] - (*chip)[a]);
                spec.direct_distance = std::sqrt(d2);
            }
            if (!(spec.direct_distance > 0.0)) rd.error(p, "direct distance must be > 0");
            spec.elongation = elong.value_or(std::nan(""));
            sc.wires.push_back(std::move(spec));
        }
    }

    // contacts
    if (const json* contacts = rd.array(doc, "contacts", "", true)) {
        if (contacts->empty()) rd.error("contacts", "electric problem is singular without Dirichlet data (no PEC contact)");
        for (std::size_t i = 0; i < contacts->size(); ++i) {
            const json& c = (*contacts)[i];
            const std::string p = item_path("contacts", i);
            if (!c.is_object()) {
                rd.error(p, "expected an object");
                continue;
            }
            rd.check_keys(c, p, {"name", "min", "min_mm", "max", "max_mm", "potential"});
            Contact contact;
            contact.name = rd.string(c, "name", p, false).value_or(std::to_string(i));
            auto lo = rd.point(c, "min", p, true);
            auto hi = rd.point(c, "max", p, true);
            auto v = rd.number(c, "potential", p, true);
            if (!lo || !hi || !v) continue;
            contact.box = {*lo, *hi};
            contact.potential = *v;
            sc.boundary.contacts.push_back(std::move(contact));
        }
    }

    // boundary
    if (const json* b = rd.object(doc, "boundary", "", true)) {
        rd.check_keys(*b, "boundary", {"h", "emissivity", "ambient", "faces"});
        sc.boundary.h = rd.number(*b, "h", "boundary", true).value_or(0.0);
        sc.boundary.emissivity = rd.number(*b, "emissivity", "boundary", true).value_or(0.0);
        sc.boundary.ambient = rd.number(*b, "ambient", "boundary", true).value_or(300.0);
        if (const json* faces = rd.array(*b, "faces", "boundary", false)) {
            sc.boundary.robin_faces.fill(false);
            for (const auto& f : *faces) {
                const auto it = f.is_string() ? std::find(std::begin(kFaceName), std::end(kFaceName), f.get<std::string>())
                                              : std::end(kFaceName);
                if (it == std::end(kFaceName)) {
                    rd.error("boundary.faces", "expected face names among x-, x+, y-, y+, z-, z+");
                    break;
                }
                sc.boundary.robin_faces[static_cast<std::size_t>(it - std::begin(kFaceName))] = true;
            }
        }
        for (auto& e : validate(sc.boundary)) rd.errors.push_back(e);
    }

    // time
    if (const json* t = rd.object(doc, "time", "", true)) {
        rd.check_keys(*t, "time", {"end", "steps", "picard_tol", "phi_tol", "max_picard", "linear_tol"});
        auto end = rd.number(*t, "end", "time", true);
        auto steps = rd.integer(*t, "steps", "time", true);
        if (end && !(*end > 0.0)) rd.error("time.end", "must be > 0");
        if (steps && *steps < 0) rd.error("time.steps", "must be >= 0");
        if (end && steps) {
            sc.end_time = *end;
            sc.solver.steps = static_cast<int>(*steps);
            sc.solver.dt = *steps > 0 ? *end / static_cast<double>(*steps) : *end;
        }
        sc.solver.picard_tol = rd.number_or(*t, "picard_tol", "time", sc.solver.picard_tol);
        sc.solver.phi_tol = rd.number_or(*t, "phi_tol", "time", sc.solver.phi_tol);
        sc.solver.linear_tol = rd.number_or(*t, "linear_tol", "time", sc.solver.linear_tol);
        sc.solver.max_picard = static_cast<int>(rd.integer(*t, "max_picard", "time", false).value_or(sc.solver.max_picard));
        for (auto& e : validate(sc.solver)) rd.errors.push_back(e);
    }

    // uq
    if (const json* u = rd.object(doc, "uq", "", false)) {
        rd.check_keys(*u, "uq", {"mu", "sigma", "lo", "hi", "samples_file", "samples", "seed", "t_critical", "k_sigma"});
        auto file = rd.string(*u, "samples_file", "uq", false);
        if (file) {
            if (u->contains("mu") || u->contains("sigma")) {
                rd.error("uq", "give either samples_file or mu/sigma, not both");
            } else {
                std::filesystem::path fp(*file);
                if (fp.is_relative() && !base_dir.empty()) fp = base_dir / fp;
                try {
                    const auto values = read_samples_file(fp.string());
                    const NormalFit fit = fit_normal(values);
                    sc.uq.dist.mu = fit.dist.mu;
                    sc.uq.dist.sigma = fit.dist.sigma;
                    if (fit.warning) sc.warnings.push_back("uq.samples_file: " + *fit.warning);
                    sc.uq.samples_file = fp.string();
                } catch (const Error& e) {
                    rd.error("uq.samples_file", e.what());
                }
            }
        } else {
            sc.uq.dist.mu = rd.number_or(*u, "mu", "uq", sc.uq.dist.mu);
            sc.uq.dist.sigma = rd.number_or(*u, "sigma", "uq", sc.uq.dist.sigma);
        }
        sc.uq.dist.lo = rd.number_or(*u, "lo", "uq", sc.uq.dist.lo);
        sc.uq.dist.hi = rd.number_or(*u, "hi", "uq", sc.uq.dist.hi);
        if (auto m = rd.integer(*u, "samples", "uq", false)) {
            if (*m < 1) rd.error("uq.samples", "must be >= 1");
            else sc.uq.samples = static_cast<std::size_t>(*m);
        }
        if (auto s = rd.integer(*u, "seed", "uq", false)) {
            if (*s < 0) rd.error("uq.seed", "must be >= 0");
            else sc.uq.seed = static_cast<std::uint64_t>(*s);
        }
        sc.uq.t_critical = rd.number_or(*u, "t_critical", "uq", sc.uq.t_critical);
        sc.uq.k_sigma = rd.number_or(*u, "k_sigma", "uq", sc.uq.k_sigma);
        if (!(sc.uq.k_sigma >= 0.0)) rd.error("uq.k_sigma", "must be >= 0");
        for (auto& e : validate(sc.uq.dist)) rd.errors.push_back(e);
    }
    for (auto& w : sc.wires) {
        if (std::isnan(w.elongation)) w.elongation = sc.uq.dist.mu;
    }

    // output
    if (const json* o = rd.object(doc, "output", "", false)) {
        rd.check_keys(*o, "output", {"directory", "vtk", "vtk_every"});
        sc.output.directory = rd.string(*o, "directory", "output", false).value_or(sc.output.directory);
        if (o->contains("vtk")) {
            if (o->at("vtk").is_boolean()) sc.output.vtk = o->at("vtk").get<bool>();
            else rd.error("output.vtk", "expected a boolean");
        }
        sc.output.vtk_every = static_cast<int>(rd.integer(*o, "vtk_every", "output", false).value_or(0));
        if (sc.output.vtk_every < 0) rd.error("output.vtk_every", "must be >= 0");
    }

    // grid
    if (const json* g = rd.object(doc, "grid", "", true)) {
        rd.check_keys(*g, "grid", {"x", "x_mm", "y", "y_mm", "z", "z_mm", "auto_breaks", "snap_tolerance",
                                   "snap_tolerance_mm"});
        sc.snap_tolerance = rd.length(*g, "snap_tolerance", "grid", false).value_or(sc.snap_tolerance);
        if (!(sc.snap_tolerance >= 0.0)) rd.error("grid.snap_tolerance", "must be >= 0");
        bool auto_breaks = false;
        if (g->contains("auto_breaks")) {
            if (g->at("auto_breaks").is_boolean()) auto_breaks = g->at("auto_breaks").get<bool>();
            else rd.error("grid.auto_breaks", "expected a boolean");
        }
        std::array<std::optional<AxisSpec>, 3> specs;
        for (int a = 0; a < 3; ++a) {
            const std::string p = std::string("grid.") + kAxisKey[a];
            auto node = rd.length_node(*g, kAxisKey[a], "grid", true);
            if (!node) continue;
            const json& v = *node->first;
            if (v.is_array()) {
                if (auto ticks = rd.numbers(v, p, node->second)) specs[a] = AxisSpec{*ticks, std::nullopt};
            } else if (v.is_object()) {
                rd.check_keys(v, p, {"breaks", "max_step"});
                const json* br = rd.array(v, "breaks", p, true);
                auto step = rd.number(v, "max_step", p, true);
                std::optional<std::vector<double>> breaks;
                if (br) breaks = rd.numbers(*br, p + ".breaks", node->second);
                if (step && !(*step > 0.0)) rd.error(p + ".max_step", "must be > 0");
                else if (breaks && step) specs[a] = AxisSpec{*breaks, *step * node->second};
            } else {
                rd.error(p, "expected a tick array or {breaks, max_step}");
            }
        }
        for (int a = 0; a < 3; ++a) {
            if (!specs[a]) continue;
            if (!specs[a]->max_step) {
                sc.axes[a] = specs[a]->values;
                continue;
            }
            std::vector<double> breaks = specs[a]->values;
            if (auto_breaks && breaks.size() >= 2) {
                const auto [lo_it, hi_it] = std::minmax_element(breaks.begin(), breaks.end());
                const double lo = *lo_it;
                const double hi = *hi_it;
                auto add = [&](double v) {
                    if (v >= lo && v <= hi) breaks.push_back(v);
                };
                for (const auto& r : sc.regions) {
                    add(r.box.min[a]);
                    add(r.box.max[a]);
                }
                for (const auto& c : sc.boundary.contacts) {
                    add(c.box.min[a]);
                    add(c.box.max[a]);
                }
                for (const auto& w : sc.wires) {
                    add(w.pad_point[a]);
                    add(w.chip_point[a]);
                }
            }
            try {
                sc.axes[a] = graded_ticks(breaks, *specs[a]->max_step, std::max(sc.snap_tolerance, 1e-12));
            } catch (const ConfigError& e) {
                rd.error(std::string("grid.") + kAxisKey[a], e.what());
            }
        }
    }

    if (!rd.errors.empty()) throw ConfigError(std::move(rd.errors));

    // geometry: everything must fit on the grid
    try {
        Model m = build_model(sc);
        for (auto& w : m.warnings) sc.warnings.push_back(std::move(w));
    } catch (const ConfigError& e) {
        throw;
    } catch (const GeometryError& e) {
        throw ConfigError(std::string("geometry: ") + e.what());
    }
    return sc;
}

Scenario load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

json to_json(const Scenario& sc) {
    json doc;
    doc["grid"] = {{"x", sc.axes[0]}, {"y", sc.axes[1]}, {"z", sc.axes[2]}, {"snap_tolerance", sc.snap_tolerance}};

    json mats = json::array();
    for (const auto& m : sc.materials.laws()) {
        mats.push_back({{"name", m.name},
                        {"sigma", m.sigma_ref},
                        {"lambda", m.lambda_ref},
                        {"rho_c", m.rho_c},
                        {"alpha_sigma", m.alpha_sigma},
                        {"alpha_lambda", m.alpha_lambda},
                        {"t_ref", m.t_ref}});
    }
    doc["materials"] = mats;

    json boxes = json::array();
    for (const auto& r : sc.regions) {
        json b = box_json(r.box);
        b["name"] = r.name;
        b["material"] = r.material;
        boxes.push_back(b);
    }
    doc["regions"] = {{"background", sc.background}, {"boxes", boxes}};

    json wires = json::array();
    for (const auto& w : sc.wires) {
        wires.push_back({{"id", w.id},
                         {"pad", {w.pad_point[0], w.pad_point[1], w.pad_point[2]}},
                         {"chip", {w.chip_point[0], w.chip_point[1], w.chip_point[2]}},
                         {"diameter", w.diameter},
                         {"material", sc.materials[w.material].name},
                         {"direct_distance", w.direct_distance},
                         {"elongation", w.elongation}});
    }
    doc["wires"] = wires;

    json contacts = json::array();
    for (const auto& c : sc.boundary.contacts) {
        json b = box_json(c.box);
        b["name"] = c.name;
        b["potential"] = c.potential;
        contacts.push_back(b);
    }
    doc["contacts"] = contacts;

    json boundary = {{"h", sc.boundary.h}, {"emissivity", sc.boundary.emissivity}, {"ambient", sc.boundary.ambient}};
    if (std::find(sc.boundary.robin_faces.begin(), sc.boundary.robin_faces.end(), false) != sc.boundary.robin_faces.end()) {
        json faces = json::array();
        for (int f = 0; f < kFaceCount; ++f) {
            if (sc.boundary.robin_faces[f]) faces.push_back(kFaceName[f]);
        }
        boundary["faces"] = faces;
    }
    doc["boundary"] = boundary;

    doc["time"] = {{"end", sc.end_time},
                   {"steps", sc.solver.steps},
                   {"picard_tol", sc.solver.picard_tol},
                   {"phi_tol", sc.solver.phi_tol},
                   {"max_picard", sc.solver.max_picard},
                   {"linear_tol", sc.solver.linear_tol}};

    json uq = {{"lo", sc.uq.dist.lo},
               {"hi", sc.uq.dist.hi},
               {"samples", sc.uq.samples},
               {"seed", sc.uq.seed},
               {"t_critical", sc.uq.t_critical},
               {"k_sigma", sc.uq.k_sigma}};
    if (sc.uq.samples_file) {
        uq["samples_file"] = *sc.uq.samples_file;
    } else {
        uq["mu"] = sc.uq.dist.mu;
        uq["sigma"] = sc.uq.dist.sigma;
    }
    doc["uq"] = uq;
    doc["output"] = {{"directory", sc.output.directory}, {"vtk", sc.output.vtk}, {"vtk_every", sc.output.vtk_every}};
    return doc;
}

Model build_model(const Scenario& sc) {
    Grid grid = Grid::build(sc.axes);
    std::vector<Region> regions;
    for (const auto& r : sc.regions) {
        auto id = sc.materials.find(r.material);
        if (!id) throw ConfigError("regions: unknown material '" + r.material + "'");
        regions.push_back({r.box, *id});
    }
    auto background = sc.materials.find(sc.background);
    if (!background) throw ConfigError("regions.background: unknown material '" + sc.background + "'");
    MaterialField field;
    try {
        field = assign_regions(grid, regions, *background, sc.snap_tolerance);
    } catch (const GeometryError& e) {
        throw GeometryError(std::string("regions: ") + e.what());
    }
    return Model::build(std::move(grid), sc.materials, std::move(field), sc.wires, sc.boundary, sc.snap_tolerance);
}

}  // namespace bondtherm
