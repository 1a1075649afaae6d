#include "config.hpp"

#include <cmath>
#include <sstream>

#include "heunwell/errors.hpp"

namespace heunwell::cli {
namespace {

using nlohmann::json;

json axis_json(const AxisSpec& a) {
    return {{"min", a.min}, {"max", a.max}, {"n", a.n}};
}

AxisSpec axis_from(const json& j, const std::string& what) {
    AxisSpec a{j.at("min").get<double>(), j.at("max").get<double>(), j.at("n").get<int>()};
    if (!(a.max > a.min)) throw ConfigError(what + ": max must exceed min");
    if (a.n < 2) throw ConfigError(what + ": n must be >= 2");
    return a;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

}  // namespace

json packet_to_json(const WavepacketSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DleSpec>) {
                return {{"type", "DLE"}, {"c", s.c}, {"Omega", s.Omega}};
            } else if constexpr (std::is_same_v<T, DloSpec>) {
                return {{"type", "DLO"}, {"W", s.W}, {"tau", s.tau}};
            } else {
                return {{"type", "mixed"},
                        {"Delta", s.Delta},
                        {"even", {{"c", s.even.c}, {"Omega", s.even.Omega}}},
                        {"odd", {{"W", s.odd.W}, {"tau", s.odd.tau}}}};
            }
        },
        spec);
}

WavepacketSpec packet_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "DLE") return DleSpec{j.at("c").get<double>(), j.at("Omega").get<double>()};
    if (type == "DLO") return DloSpec{j.at("W").get<double>(), j.at("tau").get<double>(), 1.0};
    if (type == "mixed") {
        const auto& e = j.at("even");
        const auto& o = j.at("odd");
        return MixedSpec{j.at("Delta").get<double>(),
                         DleSpec{e.at("c").get<double>(), e.at("Omega").get<double>()},
                         DloSpec{o.at("W").get<double>(), o.at("tau").get<double>(), 1.0}};
    }
    throw ConfigError("packet.type must be DLE, DLO or mixed, got '" + type + "'");
}

json default_config_json() {
    const RunConfig c;
    return {
        {"potential", {{"V0", c.potential.V0}, {"d", c.potential.d}}},
        {"quantiser",
         {{"n_eval", c.quantiser.n_eval}, {"tol", c.quantiser.tol}, {"grid_density", c.quantiser.grid_density}}},
        {"packet",
         {{"type", "DLE"},
          {"c", 7.0},
          {"Omega", 0.25},
          {"W", -5.598},
          {"tau", 0.83},
          {"Delta", 0.0},
          {"even", {{"c", 7.0}, {"Omega", 0.3}}},
          {"odd", {{"W", -5.598}, {"tau", 0.83}}}}},
        {"times", {{"t_start", c.times.t_start}, {"t_end", c.times.t_end}, {"n_samples", c.times.n_samples}}},
        {"frequencies",
         {{"k", c.frequencies.k},
          {"relative_threshold", c.frequencies.relative_threshold},
          {"flat_tolerance", c.frequencies.flat_tolerance}}},
        {"wigner",
         {{"x", axis_json(c.wigner.x)},
          {"p", axis_json(c.wigner.p)},
          {"snapshots", c.wigner.snapshots},
          {"indices", json::array()}}},
        {"eigenfunctions", {{"x", axis_json(c.eigenfunctions.x)}}},
        {"validate",
         {{"fd_L", c.validate.fd_L},
          {"fd_n", c.validate.fd_n},
          {"dt", c.validate.dt},
          {"t_end", c.validate.t_end},
          {"sample_every", c.validate.sample_every}}},
        {"output_dir", c.output_dir.string()},
    };
}

void merge_config(json& base, const json& patch, const std::string& where) {
    if (!patch.is_object()) throw ConfigError("config" + (where.empty() ? "" : " at " + where) + " must be an object");
    for (const auto& [key, value] : patch.items()) {
        const std::string path = where.empty() ? key : where + "." + key;
        if (!base.contains(key)) throw ConfigError("unknown config key '" + path + "'");
        if (base[key].is_object() && value.is_object())
            merge_config(base[key], value, path);
        else
            base[key] = value;
    }
}

void apply_override(json& cfg, const std::string& dotted, const std::string& value) {
    json* node = &cfg;
    std::stringstream ss(dotted);
    std::string part;
    while (std::getline(ss, part, '.')) {
        if (!node->is_object() || !node->contains(part)) throw ConfigError("unknown config key '" + dotted + "'");
        node = &(*node)[part];
    }
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;
    if (node->is_number() && !parsed.is_number())
        throw ConfigError("override '" + dotted + "' expects a number, got '" + value + "'");
    *node = parsed;
}

std::set<int> parse_indices(const std::string& text) {
    std::set<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) throw ConfigError("empty state index in '" + text + "'");
        item = item.substr(first, item.find_last_not_of(" \t") - first + 1);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad state index '" + item + "'");
        }
        if (used != item.size() || v < 0) throw ConfigError("bad state index '" + item + "'");
        out.insert(v);
    }
    if (out.empty()) throw ConfigError("no state indices given");
    return out;
}

RunConfig parse_config(const json& j) {
    RunConfig c;
    try {
        const auto& pot = j.at("potential");
        c.potential.V0 = pot.at("V0").get<double>();
        c.potential.d = pot.at("d").get<double>();
        require(c.potential.V0 > 0.0 && std::isfinite(c.potential.V0), "potential.V0 must be positive");
        require(c.potential.d > 0.0 && std::isfinite(c.potential.d), "potential.d must be positive");

        const auto& q = j.at("quantiser");
        c.quantiser.n_eval = q.at("n_eval").get<int>();
        c.quantiser.tol = q.at("tol").get<double>();
        c.quantiser.grid_density = q.at("grid_density").get<int>();
        require(c.quantiser.n_eval >= 50, "quantiser.n_eval must be >= 50");
        require(c.quantiser.tol > 0.0, "quantiser.tol must be positive");
        require(c.quantiser.grid_density >= 4, "quantiser.grid_density must be >= 4");

        c.packet = packet_from_json(j.at("packet"));
        if (auto* o = std::get_if<DloSpec>(&c.packet)) o->d = c.potential.d;
        if (auto* m = std::get_if<MixedSpec>(&c.packet)) m->odd.d = c.potential.d;
        try {
            validate(c.packet);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("packet: ") + e.what());
        }

        const auto& t = j.at("times");
        c.times.t_start = t.at("t_start").get<double>();
        c.times.t_end = t.at("t_end").get<double>();
        c.times.n_samples = t.at("n_samples").get<int>();
        require(c.times.t_end > c.times.t_start, "times.t_end must exceed times.t_start");
        require(c.times.n_samples >= 16, "times.n_samples must be >= 16");

        const auto& f = j.at("frequencies");
        c.frequencies.k = f.at("k").get<int>();
        c.frequencies.relative_threshold = f.at("relative_threshold").get<double>();
        c.frequencies.flat_tolerance = f.at("flat_tolerance").get<double>();
        require(c.frequencies.k >= 1, "frequencies.k must be >= 1");
        require(c.frequencies.relative_threshold > 0.0 && c.frequencies.relative_threshold < 1.0,
                "frequencies.relative_threshold must lie in (0, 1)");
        require(c.frequencies.flat_tolerance > 0.0, "frequencies.flat_tolerance must be positive");

        const auto& w = j.at("wigner");
        c.wigner.x = axis_from(w.at("x"), "wigner.x");
        c.wigner.p = axis_from(w.at("p"), "wigner.p");
        c.wigner.snapshots = w.at("snapshots").get<std::vector<double>>();
        require(!c.wigner.snapshots.empty(), "wigner.snapshots must not be empty");
        for (int n : w.at("indices").get<std::vector<int>>()) {
            require(n >= 0, "wigner.indices must be non-negative");
            c.wigner.indices.insert(n);
        }

        c.eigenfunctions.x = axis_from(j.at("eigenfunctions").at("x"), "eigenfunctions.x");

        const auto& v = j.at("validate");
        c.validate.fd_L = v.at("fd_L").get<double>();
        c.validate.fd_n = v.at("fd_n").get<int>();
        c.validate.dt = v.at("dt").get<double>();
        c.validate.t_end = v.at("t_end").get<double>();
        c.validate.sample_every = v.at("sample_every").get<int>();
        require(c.validate.fd_n >= 3 && c.validate.fd_n % 2 == 1, "validate.fd_n must be odd and >= 3");
        require(c.validate.fd_L >= 6.0 * c.potential.d, "validate.fd_L must be at least 6 d");
        require(c.validate.dt > 0.0, "validate.dt must be positive");
        require(c.validate.t_end > 0.0, "validate.t_end must be positive");
        require(c.validate.sample_every >= 1, "validate.sample_every must be >= 1");

        c.output_dir = j.at("output_dir").get<std::string>();
        require(!c.output_dir.empty(), "output_dir must not be empty");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

}  // namespace heunwell::cli
