#include "anderson/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

#include "anderson/errors.hpp"
#include "anderson/lattice.hpp"

namespace anderson {

namespace {

using Json = nlohmann::json;

constexpr std::pair<ExperimentType, const char*> kExperimentNames[] = {
    {ExperimentType::Ids, "ids"},
    {ExperimentType::Dos, "dos"},
    {ExperimentType::Wegner, "wegner"},
    {ExperimentType::LocalWegner, "local-wegner"},
    {ExperimentType::KlwScan, "klw-scan"},
    {ExperimentType::SpectralAveraging, "spectral-averaging"},
    {ExperimentType::Lifshitz, "lifshitz"},
    {ExperimentType::Lemma31, "lemma31"},
    {ExperimentType::Beta, "beta"},
};

// Collects violations instead of stopping at the first one.
class Reader {
public:
    std::vector<std::string> violations;

    void fail(const YAML::Node& at, const std::string& field, const std::string& message) {
        std::string where;
        if (at.IsDefined() && at.Mark().line >= 0) where = "line " + std::to_string(at.Mark().line + 1) + ": ";
        violations.push_back(where + field + ": " + message);
    }

    void allow_keys(const YAML::Node& map, const std::string& path, std::initializer_list<const char*> keys) {
        if (!map.IsDefined() || map.IsNull()) return;
        if (!map.IsMap()) {
            fail(map, path, "expected a mapping");
            return;
        }
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
                fail(kv.first, join(path, key), "unknown field");
        }
    }

    template <typename T>
    std::optional<T> get(const YAML::Node& map, const std::string& path, const char* key) {
        if (!map.IsDefined() || !map.IsMap()) return std::nullopt;
        const YAML::Node node = map[key];
        if (!node.IsDefined() || node.IsNull()) return std::nullopt;
        return convert<T>(node, join(path, key));
    }

    template <typename T>
    T get_or(const YAML::Node& map, const std::string& path, const char* key, T fallback) {
        return get<T>(map, path, key).value_or(fallback);
    }

    template <typename T>
    std::optional<T> convert(const YAML::Node& node, const std::string& field) {
        try {
            if (!node.IsScalar()) throw YAML::Exception(node.Mark(), "not a scalar");
            return node.as<T>();
        } catch (const YAML::Exception&) {
            fail(node, field, std::string("expected ") + type_name<T>());
            return std::nullopt;
        }
    }

    template <typename T>
    std::optional<std::vector<T>> list(const YAML::Node& map, const std::string& path, const char* key) {
        if (!map.IsDefined() || !map.IsMap()) return std::nullopt;
        const YAML::Node node = map[key];
        if (!node.IsDefined() || node.IsNull()) return std::nullopt;
        const auto field = join(path, key);
        if (!node.IsSequence()) {
            fail(node, field, std::string("expected a list of ") + type_name<T>() + "s");
            return std::nullopt;
        }
        std::vector<T> out;
        for (std::size_t i = 0; i < node.size(); ++i) {
            const auto v = convert<T>(node[i], field + "[" + std::to_string(i) + "]");
            if (!v) return std::nullopt;
            out.push_back(*v);
        }
        return out;
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

private:
    template <typename T>
    static const char* type_name() {
        if constexpr (std::is_same_v<T, bool>) return "boolean";
        else if constexpr (std::is_same_v<T, std::string>) return "string";
        else if constexpr (std::is_floating_point_v<T>) return "number";
        else if constexpr (std::is_unsigned_v<T>) return "non-negative integer";
        else return "integer";
    }
};

std::optional<SiteDistribution> read_distribution(Reader& r, const YAML::Node& node, const std::string& path,
                                                  std::initializer_list<const char*> extra_keys = {}) {
    std::vector<const char*> keys{"family", "M", "alpha"};
    keys.insert(keys.end(), extra_keys.begin(), extra_keys.end());
    if (node.IsDefined() && node.IsMap()) {
        for (const auto& kv : node) {
            const auto key = kv.first.as<std::string>();
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
                r.fail(kv.first, Reader::join(path, key), "unknown field");
        }
    }
    const auto family = r.get_or<std::string>(node, path, "family", "uniform");
    const double M = r.get_or<double>(node, path, "M", 1.0);
    const double alpha = r.get_or<double>(node, path, "alpha", 1.0);
    SiteDistribution d;
    if (family == "uniform") d = SiteDistribution::uniform(M);
    else if (family == "power-alpha") d = SiteDistribution::power_alpha(alpha, M);
    else if (family == "triangular") d = SiteDistribution::triangular(M);
    else {
        r.fail(node[std::string("family")], Reader::join(path, "family"),
               "unknown family '" + family + "' (uniform, power-alpha, triangular)");
        return std::nullopt;
    }
    try {
        d.validate();
    } catch (const ConfigError& e) {
        r.fail(node, path, e.what());
        return std::nullopt;
    }
    return d;
}

std::optional<Site> read_site(Reader& r, const YAML::Node& map, const std::string& path, const char* key, int dim) {
    const auto v = r.list<int>(map, path, key);
    if (!v) return std::nullopt;
    if (static_cast<int>(v->size()) != dim) {
        r.fail(map[key], Reader::join(path, key), "expected " + std::to_string(dim) + " coordinates");
        return std::nullopt;
    }
    return *v;
}

void read_model(Reader& r, const YAML::Node& node, ExperimentConfig& c) {
    const std::string path = "model";
    r.allow_keys(node, path, {"dim", "periodic", "site", "disorder", "overrides", "spine"});
    auto& m = c.model;
    m.dim = r.get_or<int>(node, path, "dim", 1);
    if (m.dim < 1 || m.dim > 3) r.fail(node["dim"], "model.dim", "dimension must be 1, 2 or 3");

    const YAML::Node per = node["periodic"];
    const std::string ppath = "model.periodic";
    r.allow_keys(per, ppath, {"type", "value", "amplitude", "period", "samples_per_unit", "values"});
    const auto ptype = r.get_or<std::string>(per, ppath, "type", "zero");
    const int period = r.get_or<int>(per, ppath, "period", 1);
    if (ptype == "zero") m.periodic = PeriodicPotential::zero();
    else if (ptype == "constant") m.periodic = PeriodicPotential::constant(r.get_or<double>(per, ppath, "value", 0.0));
    else if (ptype == "cosine") m.periodic = PeriodicPotential::cosine(r.get_or<double>(per, ppath, "amplitude", 1.0), period);
    else if (ptype == "samples") {
        m.periodic.kind = PeriodicPotential::Kind::Samples;
        m.periodic.samples_per_unit = r.get_or<int>(per, ppath, "samples_per_unit", 1);
        m.periodic.samples = r.list<double>(per, ppath, "values").value_or(std::vector<double>{});
    } else {
        r.fail(per["type"], ppath + ".type", "unknown type '" + ptype + "' (zero, constant, cosine, samples)");
    }
    m.periodic.period = period;

    const YAML::Node site = node["site"];
    const std::string spath = "model.site";
    r.allow_keys(site, spath, {"profile", "delta_minus", "delta_plus", "u_minus"});
    const auto profile = r.get_or<std::string>(site, spath, "profile", "indicator");
    const double dm = r.get_or<double>(site, spath, "delta_minus", 1.0);
    const double dp = r.get_or<double>(site, spath, "delta_plus", 1.0);
    const double um = r.get_or<double>(site, spath, "u_minus", 1.0);
    if (profile == "indicator") m.site = SingleSitePotential::indicator(dm, dp, um);
    else if (profile == "plateau-bump") m.site = SingleSitePotential::plateau_bump(dm, dp, um);
    else r.fail(site["profile"], spath + ".profile", "unknown profile '" + profile + "' (indicator, plateau-bump)");

    if (auto d = read_distribution(r, node["disorder"], "model.disorder")) m.default_dist = *d;

    const YAML::Node overrides = node["overrides"];
    if (overrides.IsDefined() && !overrides.IsNull()) {
        if (!overrides.IsSequence()) {
            r.fail(overrides, "model.overrides", "expected a list");
        } else {
            for (std::size_t i = 0; i < overrides.size(); ++i) {
                const auto opath = "model.overrides[" + std::to_string(i) + "]";
                const auto j = read_site(r, overrides[i], opath, "site", m.dim);
                if (!j) {
                    if (!overrides[i]["site"].IsDefined()) r.fail(overrides[i], opath + ".site", "missing field");
                    continue;
                }
                if (auto d = read_distribution(r, overrides[i], opath, {"site"})) m.overrides[*j] = *d;
            }
        }
    }

    const YAML::Node spine = node["spine"];
    if (spine.IsDefined() && !spine.IsNull()) {
        SpineSpec sp;
        sp.j0 = read_site(r, spine, "model.spine", "j0", m.dim).value_or(Site(static_cast<std::size_t>(m.dim), 0));
        sp.K = r.get_or<int>(spine, "model.spine", "K", 1);
        if (auto d = read_distribution(r, spine, "model.spine", {"j0", "K"})) sp.mu = *d;
        m.spine = sp;
    }
}

void read_box(Reader& r, const YAML::Node& node, ExperimentConfig& c) {
    const std::string path = "box";
    r.allow_keys(node, path, {"L", "n", "center"});
    c.box.dim = c.model.dim;
    c.box.side = r.get_or<int>(node, path, "L", 16);
    c.box.grid_per_unit = r.get_or<int>(node, path, "n", 4);
    c.box.center = read_site(r, node, path, "center", c.model.dim).value_or(Site{});
}

std::optional<Interval> read_interval(Reader& r, const YAML::Node& map, const std::string& path, const char* key) {
    const YAML::Node node = map[key];
    if (!node.IsDefined() || node.IsNull()) return std::nullopt;
    const auto field = Reader::join(path, key);
    const auto v = r.list<double>(map, path, key);
    if (!v) return std::nullopt;
    if (v->size() != 2 || !((*v)[0] <= (*v)[1])) {
        r.fail(node, field, "expected [lo, hi] with lo <= hi");
        return std::nullopt;
    }
    return Interval{(*v)[0], (*v)[1]};
}

std::vector<double> read_energies(Reader& r, const YAML::Node& map, const std::string& path) {
    const YAML::Node node = map["energies"];
    const auto field = path + ".energies";
    if (!node.IsDefined() || node.IsNull()) {
        std::vector<double> out;
        for (int i = 0; i <= 20; ++i) out.push_back(0.05 * i);
        return out;
    }
    if (node.IsSequence()) return r.list<double>(map, path, "energies").value_or(std::vector<double>{});
    r.allow_keys(node, field, {"from", "to", "count"});
    const double from = r.get_or<double>(node, field, "from", 0.0);
    const double to = r.get_or<double>(node, field, "to", 1.0);
    const int count = r.get_or<int>(node, field, "count", 21);
    if (count < 2 || !(to > from)) {
        r.fail(node, field, "expected from < to and count >= 2");
        return {};
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = from + (to - from) * i / (count - 1);
    return out;
}

void read_experiment(Reader& r, const YAML::Node& node, ExperimentConfig& c) {
    const std::string path = "experiment";
    if (!node.IsDefined() || !node.IsMap()) {
        r.fail(node, path, "missing section (needs at least a type)");
        return;
    }
    r.allow_keys(node, path,
                 {"type", "samples", "seed", "workers", "energies", "bandwidth", "interval", "E0", "E0_list",
                  "interval_fraction", "eta", "alpha", "slope_tolerance", "spine_verdicts", "site", "weight",
                  "fit_window", "fit_source", "min_nonzero", "trials", "min_dim", "max_dim", "C", "alpha_list", "s"});
    const auto type = r.get<std::string>(node, path, "type");
    if (!type) {
        if (!node["type"].IsDefined()) r.fail(node, "experiment.type", "missing field");
        return;
    }
    const auto parsed = parse_experiment(*type);
    if (!parsed) {
        r.fail(node["type"], "experiment.type", "unknown experiment '" + *type + "'");
        return;
    }
    c.type = *parsed;
    const auto samples = r.get<long long>(node, path, "samples");
    if (samples && *samples < 1) r.fail(node["samples"], "experiment.samples", "sample count must be >= 1");
    else if (samples) c.samples = static_cast<std::size_t>(*samples);
    c.seed = r.get_or<std::uint64_t>(node, path, "seed", c.seed);
    c.workers = r.get_or<unsigned>(node, path, "workers", c.workers);

    c.energies = read_energies(r, node, path);
    c.bandwidth = r.get<double>(node, path, "bandwidth");
    if (auto I = read_interval(r, node, path, "interval")) c.interval = *I;
    else if (c.type == ExperimentType::Wegner || c.type == ExperimentType::LocalWegner ||
             c.type == ExperimentType::SpectralAveraging) {
        if (!node["interval"].IsDefined()) r.fail(node, "experiment.interval", "missing field");
    }
    c.E0 = r.get<double>(node, path, "E0");

    c.E0_list = r.list<double>(node, path, "E0_list").value_or(std::vector<double>{});
    if (c.type == ExperimentType::KlwScan && c.E0_list.empty())
        r.fail(node, "experiment.E0_list", "klw-scan needs a non-empty list");
    c.interval_fraction = r.get_or<double>(node, path, "interval_fraction", c.interval_fraction);
    c.eta = r.get_or<double>(node, path, "eta", c.eta);
    c.holder_alpha = r.get_or<double>(node, path, "alpha", c.holder_alpha);
    c.slope_tolerance = r.get_or<double>(node, path, "slope_tolerance", c.slope_tolerance);
    c.spine_verdicts = r.get_or<bool>(node, path, "spine_verdicts", c.spine_verdicts);

    c.site = read_site(r, node, path, "site", c.model.dim).value_or(Site(static_cast<std::size_t>(c.model.dim), 0));
    c.weight = r.get_or<std::string>(node, path, "weight", c.weight);
    if (c.weight != "unit" && c.weight != "indicator")
        r.fail(node["weight"], "experiment.weight", "expected unit or indicator");

    if (auto w = read_interval(r, node, path, "fit_window")) c.fit_window = *w;
    c.fit_source = r.get_or<std::string>(node, path, "fit_source", c.fit_source);
    if (c.fit_source != "ids" && c.fit_source != "dos")
        r.fail(node["fit_source"], "experiment.fit_source", "expected ids or dos");
    c.min_nonzero = r.get_or<std::size_t>(node, path, "min_nonzero", c.min_nonzero);

    c.trials = r.get_or<std::size_t>(node, path, "trials", c.trials);
    c.min_dim = r.get_or<int>(node, path, "min_dim", c.min_dim);
    c.max_dim = r.get_or<int>(node, path, "max_dim", c.max_dim);
    if (c.min_dim < 1 || c.max_dim < c.min_dim)
        r.fail(node, "experiment.min_dim", "expected 1 <= min_dim <= max_dim");

    c.C_list = r.list<double>(node, path, "C").value_or(c.C_list);
    c.alpha_list = r.list<double>(node, path, "alpha_list").value_or(c.alpha_list);
    c.s_list = r.list<double>(node, path, "s").value_or(c.s_list);
}

void read_spectral(Reader& r, const YAML::Node& node, ExperimentConfig& c) {
    const std::string path = "spectral";
    r.allow_keys(node, path, {"dense_threshold", "validity_fraction", "validity_ceiling"});
    c.spectral.dense_threshold = r.get_or<long long>(node, path, "dense_threshold", c.spectral.dense_threshold);
    c.spectral.validity_fraction = r.get_or<double>(node, path, "validity_fraction", c.spectral.validity_fraction);
    c.spectral.validity_ceiling = r.get<double>(node, path, "validity_ceiling");
}

// Cross-field checks, run once the fields themselves parsed.
void check_semantics(Reader& r, const YAML::Node& root, ExperimentConfig& c) {
    const auto guard = [&](const YAML::Node& at, const std::string& field, auto&& fn) {
        try {
            fn();
            return true;
        } catch (const Error& e) {
            r.fail(at, field, e.what());
            return false;
        }
    };
    bool ok = guard(root["model"], "model", [&] { c.model.validate(); });
    ok = guard(root["box"], "box", [&] { c.box.validate(); }) && ok;
    const bool spine_run = c.type == ExperimentType::KlwScan && c.spine_verdicts;
    const bool model_run = c.type != ExperimentType::Lemma31 && c.type != ExperimentType::Beta;
    if (ok && model_run)
        ok = guard(root["box"], "box", [&] { validate_box_for_model(c.model, c.box, spine_run); });

    const bool wegner = c.type == ExperimentType::Wegner || c.type == ExperimentType::LocalWegner ||
                        c.type == ExperimentType::KlwScan;
    if (ok && wegner) {
        guard(root["model"]["site"], "model.site", [&] {
            if (!geometry_checks(c.model, c.box).covering_ok)
                throw ConfigError("Wegner experiments need the covering condition (delta_minus >= 1, "
                                  "sum_j u_j >= u_minus)");
        });
    }
    if (ok && c.type == ExperimentType::SpectralAveraging)
        guard(root["experiment"]["site"], "experiment.site", [&] { (void)c.box.site_index(c.site); });

    const YAML::Node exp = root["experiment"];
    if (c.type == ExperimentType::Ids || c.type == ExperimentType::Dos || c.type == ExperimentType::Lifshitz) {
        if (c.energies.size() < 1 || !std::is_sorted(c.energies.begin(), c.energies.end()))
            r.fail(exp["energies"], "experiment.energies", "expected an increasing, non-empty energy grid");
    }
    if (c.type == ExperimentType::Dos || (c.type == ExperimentType::Lifshitz && c.fit_source == "dos")) {
        double gap = 0.0;
        for (std::size_t i = 1; i < c.energies.size(); ++i) gap = std::max(gap, c.energies[i] - c.energies[i - 1]);
        if (!c.bandwidth) c.bandwidth = 2.0 * gap;
        if (*c.bandwidth < 2.0 * gap * (1.0 - 1e-12))
            r.fail(exp["bandwidth"], "experiment.bandwidth", "bandwidth must be at least 2 energy-grid spacings");
    }
    if (c.type == ExperimentType::KlwScan) {
        for (std::size_t i = 0; i < c.E0_list.size(); ++i) {
            if (!(c.E0_list[i] > 0.0) || (i > 0 && !(c.E0_list[i] < c.E0_list[i - 1]))) {
                r.fail(exp["E0_list"], "experiment.E0_list", "expected a strictly decreasing list of positive energies");
                break;
            }
        }
        if (!(c.interval_fraction > 0.0) || c.interval_fraction > 1.0)
            r.fail(exp["interval_fraction"], "experiment.interval_fraction", "expected a value in (0, 1]");
        if (!(c.eta > 0.0) || !(c.eta < c.model.dim / 2.0))
            r.fail(exp["eta"], "experiment.eta", "expected 0 < eta < d/2");
    }
    if (c.type == ExperimentType::Beta) {
        const auto positive = [&](const std::vector<double>& v, const char* field) {
            if (v.empty() || std::any_of(v.begin(), v.end(), [](double x) { return !(x > 0.0); }))
                r.fail(exp[field], std::string("experiment.") + field, "expected a non-empty list of positive numbers");
        };
        positive(c.C_list, "C");
        positive(c.alpha_list, "alpha_list");
        positive(c.s_list, "s");
    }
    if (c.spectral.dense_threshold < 1)
        r.fail(root["spectral"]["dense_threshold"], "spectral.dense_threshold", "must be >= 1");
}

Json distribution_json(const SiteDistribution& d) {
    return {{"family", static_cast<int>(d.family)}, {"M", d.M}, {"alpha", d.alpha}};
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

const char* experiment_name(ExperimentType type) {
    for (const auto& [t, name] : kExperimentNames)
        if (t == type) return name;
    return "unknown";
}

std::optional<ExperimentType> parse_experiment(const std::string& name) {
    for (const auto& [t, n] : kExperimentNames)
        if (name == n) return t;
    return std::nullopt;
}

ConfigResult validate_config(const std::string& text) {
    ConfigResult result;
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        result.violations.push_back("line " + std::to_string(e.mark.line + 1) + ": parse error: " + e.msg);
        return result;
    }
    Reader r;
    if (!root.IsMap()) {
        r.fail(root, "config", "expected a mapping with model, box and experiment sections");
        result.violations = std::move(r.violations);
        return result;
    }
    r.allow_keys(root, "", {"model", "box", "experiment", "spectral", "output"});
    ExperimentConfig c;
    read_model(r, root["model"], c);
    read_box(r, root["box"], c);
    read_experiment(r, root["experiment"], c);
    read_spectral(r, root["spectral"], c);
    c.output = r.get_or<std::string>(root, "", "output", "");
    if (r.violations.empty()) check_semantics(r, root, c);
    if (!r.violations.empty()) {
        result.violations = std::move(r.violations);
        return result;
    }
    c.digest = config_digest(c);
    result.config = std::move(c);
    return result;
}

ConfigResult load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {std::nullopt, {"cannot read config file '" + path + "'"}};
    std::ostringstream text;
    text << in.rdbuf();
    return validate_config(text.str());
}

std::string canonical_form(const ExperimentConfig& c) {
    const auto& m = c.model;
    Json overrides = Json::array();
    for (const auto& [j, d] : m.overrides) overrides.push_back({{"site", j}, {"law", distribution_json(d)}});
    Json spine = nullptr;
    if (m.spine) spine = {{"j0", m.spine->j0}, {"K", m.spine->K}, {"law", distribution_json(m.spine->mu)}};

    Json j = {
        {"model",
         {{"dim", m.dim},
          {"periodic",
           {{"kind", static_cast<int>(m.periodic.kind)},
            {"period", m.periodic.period},
            {"value", m.periodic.value},
            {"samples_per_unit", m.periodic.samples_per_unit},
            {"samples", m.periodic.samples}}},
          {"site",
           {{"profile", static_cast<int>(m.site.profile)},
            {"delta_minus", m.site.delta_minus},
            {"delta_plus", m.site.delta_plus},
            {"u_minus", m.site.u_minus}}},
          {"disorder", distribution_json(m.default_dist)},
          {"overrides", overrides},
          {"spine", spine}}},
        {"box", {{"L", c.box.side}, {"n", c.box.grid_per_unit}, {"center", c.box.center}}},
        {"spectral",
         {{"validity_fraction", c.spectral.validity_fraction},
          {"validity_ceiling", c.spectral.validity_ceiling ? Json(*c.spectral.validity_ceiling) : Json(nullptr)}}},
        {"experiment", experiment_name(c.type)},
        {"samples", c.samples},
    };
    // only the parameters the experiment reads
    Json& p = j["parameters"];
    p = Json::object();
    switch (c.type) {
        case ExperimentType::Ids: p["energies"] = c.energies; break;
        case ExperimentType::Dos:
            p["energies"] = c.energies;
            p["bandwidth"] = c.bandwidth.value_or(0.0);
            break;
        case ExperimentType::Wegner:
        case ExperimentType::LocalWegner:
            p["interval"] = {c.interval.lo, c.interval.hi};
            p["E0"] = c.E0 ? Json(*c.E0) : Json(nullptr);
            break;
        case ExperimentType::KlwScan:
            p["E0_list"] = c.E0_list;
            p["interval_fraction"] = c.interval_fraction;
            p["eta"] = c.eta;
            p["alpha"] = c.holder_alpha;
            p["slope_tolerance"] = c.slope_tolerance;
            p["spine_verdicts"] = c.spine_verdicts;
            break;
        case ExperimentType::SpectralAveraging:
            p["interval"] = {c.interval.lo, c.interval.hi};
            p["site"] = c.site;
            p["weight"] = c.weight;
            break;
        case ExperimentType::Lifshitz:
            p["energies"] = c.energies;
            p["fit_window"] = {c.fit_window.lo, c.fit_window.hi};
            p["fit_source"] = c.fit_source;
            p["min_nonzero"] = c.min_nonzero;
            if (c.fit_source == "dos") p["bandwidth"] = c.bandwidth.value_or(0.0);
            break;
        case ExperimentType::Lemma31:
            p["trials"] = c.trials;
            p["min_dim"] = c.min_dim;
            p["max_dim"] = c.max_dim;
            break;
        case ExperimentType::Beta:
            p["C"] = c.C_list;
            p["alpha"] = c.alpha_list;
            p["s"] = c.s_list;
            break;
    }
    return j.dump();
}

std::string config_digest(const ExperimentConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_form(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return hex64(h);
}

}  // namespace anderson
