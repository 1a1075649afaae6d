#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

#include "heunwell/dynamics.hpp"
#include "heunwell/errors.hpp"
#include "heunwell/fd_oracle.hpp"
#include "heunwell/quantiser.hpp"
#include "io.hpp"

namespace heunwell::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Model {
    PotentialConfig potential;
    Spectrum spectrum;
    std::vector<Eigenstate> states;
};

SpectrumOptions spectrum_options(const RunConfig& cfg) {
    SpectrumOptions o;
    o.scan.n_eval = cfg.quantiser.n_eval;
    o.scan.grid_density = cfg.quantiser.grid_density;
    o.tol = static_cast<long double>(cfg.quantiser.tol);
    return o;
}

Model build_model(const RunConfig& cfg, bool with_states = true) {
    Model m;
    m.potential = PotentialConfig::make(cfg.potential.V0, cfg.potential.d);
    m.spectrum = full_spectrum(m.potential, spectrum_options(cfg));
    if (with_states) m.states = build_eigenstates(m.potential, m.spectrum);
    return m;
}

std::vector<double> axis(const AxisSpec& a) {
    return uniform_grid(a.min, a.max, a.n);
}

json spectrum_json(const Spectrum& s) {
    json rows = json::array();
    for (const auto& st : s.states)
        rows.push_back({{"n", st.index},
                        {"parity", std::string(to_string(st.parity))},
                        {"beta", static_cast<double>(st.beta)},
                        {"E", static_cast<double>(st.energy)}});
    return rows;
}

void write_manifest(const RunConfig& cfg, const std::string& command, const json& resolved,
                    const std::vector<std::string>& artifacts) {
    json m = {{"tool", "heunwell"},
              {"version", kVersion},
              {"command", command},
              {"config", resolved},
              {"artifacts", artifacts}};
    write_json(cfg.output_dir / "manifest.json", m);
}

EvolvedState evolved(const Model& m, const RunConfig& cfg, json* packet_info = nullptr) {
    const Wavepacket packet(cfg.packet, m.potential);
    OverlapSet ov = compute_overlaps(packet, m.states);
    if (packet_info) {
        json o = json::object();
        for (const auto& [n, v] : ov.values) o[std::to_string(n)] = v;
        *packet_info = {{"spec", packet_to_json(cfg.packet)},
                        {"overlaps", o},
                        {"bound_fraction", ov.bound_fraction},
                        {"raw_norms", {packet.raw_even_norm(), packet.raw_odd_norm()}}};
    }
    return make_evolved_state(std::move(ov), m.spectrum, m.states);
}

std::string stamp(double t) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", t);
    std::string s = buf;
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

}  // namespace

json cmd_spectrum(const RunConfig& cfg, const json& resolved) {
    const Model m = build_model(cfg, false);
    CsvTable csv({"n", "parity", "beta", "E"});
    json diag = json::array();
    for (const auto& st : m.spectrum.states) {
        csv.add_row({std::to_string(st.index), std::string(to_string(st.parity)),
                     format_double(static_cast<double>(st.beta)), format_double(static_cast<double>(st.energy))});
        diag.push_back({{"n", st.index},
                        {"scan_beta", static_cast<double>(st.scan_beta)},
                        {"refinement_shift", static_cast<double>(st.beta - st.scan_beta)}});
    }
    write_atomic(cfg.output_dir / "spectrum.csv", csv.str());
    json out = {{"config", resolved},
                {"alpha", static_cast<double>(m.potential.alpha)},
                {"potential_minimum", potential_minimum(m.potential)},
                {"bounds", {{"lower", m.spectrum.bounds.lower}, {"upper", m.spectrum.bounds.upper}}},
                {"count", m.spectrum.size()},
                {"states", spectrum_json(m.spectrum)},
                {"diagnostics", diag}};
    write_json(cfg.output_dir / "spectrum.json", out);
    write_manifest(cfg, "spectrum", resolved, {"spectrum.csv", "spectrum.json"});
    return out;
}

json cmd_eigenfunctions(const RunConfig& cfg, const json& resolved) {
    const Model m = build_model(cfg);
    std::vector<std::string> header{"x"};
    for (const auto& s : m.states) header.push_back("psi_" + std::to_string(s.index));
    CsvTable csv(header);
    for (double x : axis(cfg.eigenfunctions.x)) {
        std::vector<std::string> row{format_double(x)};
        for (const auto& s : m.states) row.push_back(format_double(eval_wavefunction(s, x)));
        csv.add_row(std::move(row));
    }
    write_atomic(cfg.output_dir / "eigenfunctions.csv", csv.str());
    json states = json::array();
    for (const auto& s : m.states)
        states.push_back({{"n", s.index},
                          {"parity", std::string(to_string(s.parity))},
                          {"beta", static_cast<double>(s.beta)},
                          {"E", static_cast<double>(s.energy)},
                          {"norm_const", s.norm_const},
                          {"n_trunc", s.n_trunc}});
    json out = {{"config", resolved}, {"states", states}};
    write_json(cfg.output_dir / "eigenfunctions.json", out);
    write_manifest(cfg, "eigenfunctions", resolved, {"eigenfunctions.csv", "eigenfunctions.json"});
    return out;
}

json cmd_evolve(const RunConfig& cfg, const json& resolved) {
    const Model m = build_model(cfg);
    json packet_info;
    const EvolvedState es = evolved(m, cfg, &packet_info);
    const AutocorrSeries a =
        autocorrelation(es, uniform_grid(cfg.times.t_start, cfg.times.t_end, cfg.times.n_samples));
    CsvTable csv({"t", "a2"});
    for (std::size_t i = 0; i < a.times.size(); ++i) csv.add_row({format_double(a.times[i]), format_double(a.values[i])});
    write_atomic(cfg.output_dir / "autocorr.csv", csv.str());

    FrequencyOptions fo;
    fo.relative_threshold = cfg.frequencies.relative_threshold;
    const double variation = relative_variation(a);
    const bool flat = variation < cfg.frequencies.flat_tolerance;
    json peaks = json::array();
    if (!flat)
        for (const auto& p : dominant_frequencies(a, cfg.frequencies.k, fo))
            peaks.push_back({{"omega", p.omega}, {"amplitude", p.amplitude}});
    json out = {{"config", resolved},
                {"packet", packet_info},
                {"spectrum", spectrum_json(m.spectrum)},
                {"relative_variation", variation},
                {"flat", flat},
                {"peaks", peaks}};
    write_json(cfg.output_dir / "frequencies.json", out);
    write_manifest(cfg, "evolve", resolved, {"autocorr.csv", "frequencies.json"});
    return out;
}

json cmd_wigner(const RunConfig& cfg, const json& resolved) {
    const Model m = build_model(cfg);
    json packet_info;
    EvolvedState es = evolved(m, cfg, &packet_info);
    if (!cfg.wigner.indices.empty()) es = partial_superposition(es, cfg.wigner.indices);
    const auto xg = axis(cfg.wigner.x);
    const auto pg = axis(cfg.wigner.p);
    json snaps = json::array();
    std::vector<std::string> artifacts;
    for (std::size_t k = 0; k < cfg.wigner.snapshots.size(); ++k) {
        const double t = cfg.wigner.snapshots[k];
        const WignerGrid g = wigner(es, t, xg, pg);
        CsvTable csv({"x", "p", "W"});
        for (std::size_t i = 0; i < xg.size(); ++i)
            for (std::size_t j = 0; j < pg.size(); ++j)
                csv.add_row({format_double(xg[i]), format_double(pg[j]), format_double(g.at(i, j))});
        const std::string name = "wigner_" + std::to_string(k) + "_t" + stamp(t) + ".csv";
        write_atomic(cfg.output_dir / name, csv.str());
        artifacts.push_back(name);

        const auto marginal = g.position_marginal();
        double marginal_err = 0.0;
        for (std::size_t i = 0; i < xg.size(); ++i)
            marginal_err = std::max(marginal_err, std::fabs(marginal[i] - std::norm(evolve(es, xg[i], t))));
        const auto [lo, hi] = std::minmax_element(g.values.begin(), g.values.end());
        snaps.push_back({{"t", t},
                         {"file", name},
                         {"total", g.total()},
                         {"marginal_max_error", marginal_err},
                         {"min", *lo},
                         {"max", *hi},
                         {"bridge_slope", bridge_slope(g, 0.5 * cfg.potential.d)}});
    }
    json idx = json::array();
    for (const auto& [n, v] : es.overlaps.values) idx.push_back(n);
    json out = {{"config", resolved},
                {"packet", packet_info},
                {"indices", idx},
                {"bound_fraction", es.overlaps.bound_fraction},
                {"grid",
                 {{"x", {{"min", cfg.wigner.x.min}, {"max", cfg.wigner.x.max}, {"n", cfg.wigner.x.n}}},
                  {"p", {{"min", cfg.wigner.p.min}, {"max", cfg.wigner.p.max}, {"n", cfg.wigner.p.n}}}}},
                {"spectrum", spectrum_json(m.spectrum)},
                {"snapshots", snaps}};
    write_json(cfg.output_dir / "wigner.json", out);
    artifacts.push_back("wigner.json");
    write_manifest(cfg, "wigner", resolved, artifacts);
    return out;
}

json cmd_validate(const RunConfig& cfg, const json& resolved) {
    json table = json::array();
    bool table_ok = true;
    const std::pair<long double, long double> reference[] = {
        {-12.2300554754797689L, 2.61502773773988446614L},
        {-24.4098065308194893L, 8.70490326540974469239L},
    };
    for (const auto& [alpha, beta_ref] : reference) {
        const PotentialConfig pc = PotentialConfig::from_alpha(alpha, 1.0);
        long double best = 0;
        for (long double r : scan_roots(pc, Parity::Even)) {
            const long double refined = refine_root_cf(pc, Parity::Even, r);
            if (best == 0 || std::fabs(refined - beta_ref) < std::fabs(best - beta_ref)) best = refined;
        }
        const double rel = static_cast<double>(std::fabs(best - beta_ref) / beta_ref);
        const bool ok = rel <= 1e-15;
        table_ok = table_ok && ok;
        char ref_text[64], got_text[64];
        std::snprintf(ref_text, sizeof ref_text, "%.21Lg", beta_ref);
        std::snprintf(got_text, sizeof got_text, "%.21Lg", best);
        table.push_back({{"alpha", static_cast<double>(alpha)},
                         {"beta_reference", ref_text},
                         {"beta", got_text},
                         {"relative_error", rel},
                         {"pass", ok}});
    }

    const Model m = build_model(cfg);
    const FdGrid grid{cfg.validate.fd_L, cfg.validate.fd_n};
    const FdRichardson fd = fd_spectrum_richardson(m.potential, grid, static_cast<int>(m.spectrum.size()));
    json levels = json::array();
    double max_abs = 0.0, max_rel = 0.0;
    for (std::size_t i = 0; i < m.spectrum.size(); ++i) {
        const double e = static_cast<double>(m.spectrum[i].energy);
        json row = {{"n", m.spectrum[i].index}, {"E_analytic", e}};
        if (i < fd.extrapolated.size()) {
            const double diff = std::fabs(e - fd.extrapolated[i]);
            max_abs = std::max(max_abs, diff);
            max_rel = std::max(max_rel, diff / std::fabs(e));
            row["E_fd"] = fd.fine[i];
            row["E_fd_extrapolated"] = fd.extrapolated[i];
            row["error_bar"] = fd.error_bar[i];
            row["abs_diff"] = diff;
        }
        levels.push_back(row);
    }
    const bool count_ok = !fd.shortfall && fd.extrapolated.size() == m.spectrum.size() &&
                          fd_count_below([&](double x) { return potential_value(m.potential, x); },
                                         grid.refined(), 0.0) == static_cast<int>(m.spectrum.size());
    const bool spectrum_ok = count_ok && max_rel <= 1e-4;

    json packet_info;
    const EvolvedState es = evolved(m, cfg, &packet_info);
    const Wavepacket packet(cfg.packet, m.potential);
    const int steps = static_cast<int>(std::lround(cfg.validate.t_end / cfg.validate.dt));
    const FdPropagation prop = fd_propagate(m.potential, grid, sample_on_grid(grid, [&](double x) { return packet(x); }),
                                            cfg.validate.dt, steps, cfg.validate.sample_every);
    const AutocorrSeries a = autocorrelation(es, prop.times);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) max_diff = std::max(max_diff, std::fabs(a.values[i] - prop.autocorr[i]));
    const bool dyn_ok = max_diff <= 2e-2;

    json out = {{"config", resolved},
                {"reference_roots", table},
                {"spectrum",
                 {{"levels", levels},
                  {"fd_grid", {{"L", grid.L}, {"n", grid.n}, {"n_refined", grid.refined().n}}},
                  {"max_abs_diff", max_abs},
                  {"max_rel_diff", max_rel},
                  {"count_match", count_ok},
                  {"pass", spectrum_ok}}},
                {"dynamics",
                 {{"packet", packet_info},
                  {"t_end", cfg.validate.t_end},
                  {"dt", cfg.validate.dt},
                  {"samples", a.values.size()},
                  {"max_abs_diff", max_diff},
                  {"norm_drift", prop.norm_drift},
                  {"pass", dyn_ok}}},
                {"pass", table_ok && spectrum_ok && dyn_ok}};
    write_json(cfg.output_dir / "validate.json", out);
    write_manifest(cfg, "validate", resolved, {"validate.json"});
    return out;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound states and wavepacket dynamics of the hyperbolic double well"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    std::string config_path;
    std::string output_dir;
    std::string indices;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--output-dir", output_dir, "Directory for artifacts");
    app.allow_extras();
    const char* names[] = {"spectrum", "eigenfunctions", "evolve", "wigner", "validate"};
    const char* help[] = {"Quantised spectrum", "Sampled eigenfunctions", "Autocorrelation and frequencies",
                          "Wigner snapshots", "Cross-check against the finite-difference oracle"};
    for (int i = 0; i < 5; ++i) {
        auto* sub = app.add_subcommand(names[i], help[i]);
        sub->allow_extras();
        sub->fallthrough();
        if (std::string(names[i]) == "wigner")
            sub->add_option("--indices", indices, "Comma separated states kept in the superposition");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::string command;
    std::vector<std::string> extras = app.remaining();
    for (const auto* sub : app.get_subcommands()) {
        command = sub->get_name();
        for (const auto& s : sub->remaining()) extras.push_back(s);
    }

    try {
        json resolved = default_config_json();
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            json file = json::parse(f, nullptr, false);
            if (file.is_discarded()) throw ConfigError("config file is not valid JSON: " + config_path);
            merge_config(resolved, file);
        }
        for (std::size_t i = 0; i < extras.size(); ++i) {
            std::string flag = extras[i];
            if (flag.rfind("--", 0) != 0) throw ConfigError("unexpected argument '" + flag + "'");
            flag = flag.substr(2);
            std::string value;
            if (const auto eq = flag.find('='); eq != std::string::npos) {
                value = flag.substr(eq + 1);
                flag = flag.substr(0, eq);
            } else {
                if (i + 1 >= extras.size()) throw ConfigError("override --" + flag + " needs a value");
                value = extras[++i];
            }
            apply_override(resolved, flag, value);
        }
        if (!output_dir.empty()) resolved["output_dir"] = output_dir;
        if (!indices.empty()) {
            const auto set = parse_indices(indices);
            resolved["wigner"]["indices"] = std::vector<int>(set.begin(), set.end());
        }
        const RunConfig cfg = parse_config(resolved);

        json summary;
        if (command == "spectrum")
            summary = cmd_spectrum(cfg, resolved);
        else if (command == "eigenfunctions")
            summary = cmd_eigenfunctions(cfg, resolved);
        else if (command == "evolve")
            summary = cmd_evolve(cfg, resolved);
        else if (command == "wigner")
            summary = cmd_wigner(cfg, resolved);
        else
            summary = cmd_validate(cfg, resolved);
        out << command << ": wrote " << cfg.output_dir.string() << "\n";
        if (command == "validate" && !summary.at("pass").get<bool>()) {
            err << "validate: one or more checks failed\n";
            return 3;
        }
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace heunwell::cli
