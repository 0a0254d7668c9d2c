#include "superlattice/cli.hpp"

#include "superlattice/constants.hpp"
#include "superlattice/error.hpp"
#include "superlattice/presets.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef SUPERLATTICE_DEFAULT_SPECIES
#define SUPERLATTICE_DEFAULT_SPECIES "data/rb87.json"
#endif

namespace superlattice::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return fmt::format("{:016x}", h);
}

namespace {

struct Options {
    std::string species = SUPERLATTICE_DEFAULT_SPECIES;
    std::string F = "1";
    std::string mF = "0";
    std::string mode = "e2eps";
    std::string preset;
    std::string beams;
    std::vector<std::string> sets;
    std::string grid = "256";
    std::string out_dir = ".";
    double guard_ghz = 10.0;
    std::string save_beams;

    // command-specific
    std::string waypoints;
    int samples = 200;
    std::string knob;
    std::string from, to;
    int steps = -1;
    double target = 0.0;
    std::string unit = "hz";
    std::string bracket;
    std::string sites;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json_file(const fs::path& path) {
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ParseError(path.string() + ": line " + std::to_string(line), e.what());
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::pair<int, int> parse_grid(const std::string& text) {
    const auto parts = split(text, 'x');
    if (parts.empty() || parts.size() > 2) throw ConfigurationError("--grid expects NX or NXxNY");
    auto one = [&](const std::string& s) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) throw ConfigurationError("--grid expects NX or NXxNY");
        return v;
    };
    const int nx = one(parts[0]);
    const int ny = parts.size() == 2 ? one(parts[1]) : nx;
    if (nx < 8 || ny < 8) throw ConfigurationError("--grid must be at least 8x8");
    return {nx, ny};
}

/// Everything a command needs, resolved from the options.
struct Context {
    Options opt;
    AtomSpecies species;
    json species_doc;
    HyperfineState state;
    ShiftMode mode = ShiftMode::E2PlusEpsilon;
    std::optional<PresetParams> params;
    Preset preset;
    int nx = 256, ny = 256;
    fs::path out_dir;

    ShiftOptions shift_options() const { return {opt.guard_ghz * 1e9, false}; }

    Preset build(const PresetParams& p) const { return build_preset(species, state, p); }

    double recoil() const {
        const double k = preset.groups.front().omega / constants::kSpeedOfLight;
        return constants::kHbar * constants::kHbar * k * k / (2.0 * species.mass_kg);
    }

    const UnitCell& cell() const {
        if (!preset.cell) throw ConfigurationError("the beam configuration declares no unit cell");
        return *preset.cell;
    }
};

Context resolve(const Options& opt) {
    Context ctx;
    ctx.opt = opt;
    ctx.species_doc = parse_json_file(opt.species);
    try {
        ctx.species = species_from_json(ctx.species_doc);
    } catch (const ParseError& e) {
        throw ParseError(opt.species + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
    ctx.state = make_ground_state(ctx.species, HalfInt::parse(opt.F), HalfInt::parse(opt.mF));
    ctx.mode = parse_shift_mode(opt.mode);
    std::tie(ctx.nx, ctx.ny) = parse_grid(opt.grid);
    if (!(opt.guard_ghz >= 0.0)) throw ConfigurationError("--guard-ghz must be non-negative");

    if (opt.preset.empty() == opt.beams.empty()) throw ConfigurationError("give exactly one of --preset or --beams");
    if (!opt.preset.empty()) {
        PresetParams p = default_params(opt.preset);
        for (const auto& kv : opt.sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ConfigurationError("--set expects key=value, got '" + kv + "'");
            set_param(p, kv.substr(0, eq), kv.substr(eq + 1));
        }
        ctx.params = p;
        ctx.preset = ctx.build(p);
    } else {
        if (!opt.sets.empty()) throw ConfigurationError("--set applies to presets only");
        const json doc = parse_json_file(opt.beams);
        try {
            ctx.preset = preset_from_json(doc);
        } catch (const ParseError& e) {
            throw ParseError(opt.beams + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
        }
    }

    ctx.out_dir = opt.out_dir;
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec || !fs::is_directory(ctx.out_dir)) throw ConfigurationError("cannot create output directory " + opt.out_dir);
    if (!opt.save_beams.empty()) {
        std::ofstream f(opt.save_beams);
        if (!f) throw ConfigurationError("cannot write " + opt.save_beams);
        f << preset_to_json(ctx.preset).dump(2) << '\n';
    }
    return ctx;
}

/// Canonical description of the run; its digest goes into every data file.
std::string config_hash(const Context& ctx, const std::string& command, const json& extra) {
    json cfg;
    cfg["command"] = command;
    cfg["species"] = ctx.species_doc;
    cfg["state"] = {{"F", ctx.state.F.str()}, {"mF", ctx.state.mF.str()}};
    cfg["mode"] = to_string(ctx.mode);
    cfg["grid"] = {ctx.nx, ctx.ny};
    cfg["guard_ghz"] = ctx.opt.guard_ghz;
    cfg["configuration"] = preset_to_json(ctx.preset);
    if (ctx.params) cfg["preset"] = {{"family", ctx.params->family}, {"numbers", ctx.params->numbers}, {"tags", ctx.params->tags}};
    cfg["arguments"] = extra;
    return fnv1a_hex(cfg.dump());
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigurationError("cannot write " + path.string());
    return f;
}

std::string num(double v) { return fmt::format("{:.12g}", v); }

struct Analysis {
    PotentialGrid grid;
    std::vector<CriticalPoint> points;
    std::vector<CriticalPoint> minima;
    BarrierReport barriers;
    Geometry geometry = Geometry::Unknown;
    std::vector<SiteMatch> sites;
};

Analysis analyze(const Context& ctx, const Preset& preset) {
    if (!preset.cell) throw ConfigurationError("the beam configuration declares no unit cell");
    const LightShift shift(ctx.species, ctx.state, preset.groups, ctx.mode, ctx.shift_options());
    const Evaluator U = make_evaluator(shift);
    Analysis a;
    a.grid = sample_grid(U, *preset.cell, ctx.nx, ctx.ny);
    a.points = find_extrema(a.grid, U);
    a.minima = select(a.points, PointKind::Minimum);
    a.barriers = bond_barriers(U, *preset.cell, a.points, adjacency_radius(preset));
    a.geometry = classify_geometry(a.minima, a.barriers.bonds);
    a.sites = match_sites(*preset.cell, a.minima, preset.sites);
    return a;
}

void write_comment_header(std::ostream& f, const Context& ctx, const std::string& what, const std::string& hash) {
    f << "# superlattice " << what << '\n';
    f << "# species=" << ctx.species.name << " F=" << ctx.state.F.str() << " mF=" << ctx.state.mF.str()
      << " mode=" << to_string(ctx.mode) << '\n';
    f << "# E_r_Hz=" << num(ctx.recoil() / constants::kPlanck) << '\n';
    f << "# config_hash=" << hash << '\n';
}

int cmd_potential(const Context& ctx, std::ostream& out) {
    const UnitCell& cell = ctx.cell();
    const std::string hash = config_hash(ctx, "potential", json::object());
    const LightShift shift(ctx.species, ctx.state, ctx.preset.groups, ctx.mode, ctx.shift_options());
    const PotentialGrid grid = sample_grid(make_evaluator(shift), cell, ctx.nx, ctx.ny);
    const double h = constants::kPlanck, er = ctx.recoil();

    const fs::path path = ctx.out_dir / "potential.csv";
    auto f = open_output(path);
    f << "# a1=" << num(cell.a1.x()) << ',' << num(cell.a1.y()) << '\n';
    f << "# a2=" << num(cell.a2.x()) << ',' << num(cell.a2.y()) << '\n';
    f << "# origin=" << num(cell.origin.x()) << ',' << num(cell.origin.y()) << '\n';
    f << "# nx=" << grid.nx << '\n' << "# ny=" << grid.ny << '\n';
    f << "# unit=x,y in m; U_Hz = U/h; U_Er = U/E_r\n";
    write_comment_header(f, ctx, "potential grid", hash);
    f << "x,y,U_Hz,U_Er\n";
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j) {
            const Eigen::Vector2d r = grid.point(i, j);
            const double u = grid.at(i, j);
            f << num(r.x()) << ',' << num(r.y()) << ',' << num(u / h) << ',' << num(u / er) << '\n';
        }
    out << "wrote " << path.string() << '\n';
    return kExitOk;
}

ordered_json point_json(const CriticalPoint& c, double er) {
    ordered_json j;
    j["x_m"] = c.position.x();
    j["y_m"] = c.position.y();
    j["U_J"] = c.value;
    j["U_Hz"] = c.value / constants::kPlanck;
    j["U_Er"] = c.value / er;
    if (!c.label.empty()) j["site"] = c.label;
    return j;
}

int cmd_extrema(const Context& ctx, std::ostream& out) {
    const std::string hash = config_hash(ctx, "extrema", json::object());
    Analysis a = analyze(ctx, ctx.preset);
    for (const auto& m : a.sites) {
        std::string& l = a.minima[m.index].label;
        l = l.empty() ? m.label : l + "," + m.label;
    }
    const double er = ctx.recoil(), h = constants::kPlanck;
    std::vector<double> depths;
    for (const auto& m : a.minima) depths.push_back(m.value);

    ordered_json doc;
    doc["config_hash"] = hash;
    doc["species"] = ctx.species.name;
    doc["state"] = {{"F", ctx.state.F.str()}, {"mF", ctx.state.mF.str()}};
    doc["mode"] = to_string(ctx.mode);
    doc["configuration"] = ctx.preset.family;
    const UnitCell& cell = ctx.cell();
    doc["cell"] = {{"a1_m", {cell.a1.x(), cell.a1.y()}},
                   {"a2_m", {cell.a2.x(), cell.a2.y()}},
                   {"origin_m", {cell.origin.x(), cell.origin.y()}}};
    doc["E_r_Hz"] = er / h;
    doc["label"] = to_string(a.geometry);
    doc["equal_depths"] = equal_depths(depths, a.grid.range());
    for (auto kind : {PointKind::Minimum, PointKind::Maximum, PointKind::Saddle}) {
        ordered_json arr = ordered_json::array();
        if (kind == PointKind::Minimum)
            for (const auto& c : a.minima) arr.push_back(point_json(c, er));
        else
            for (const auto& c : select(a.points, kind)) arr.push_back(point_json(c, er));
        doc[kind == PointKind::Minimum ? "minima" : (kind == PointKind::Maximum ? "maxima" : "saddles")] = arr;
    }
    ordered_json bonds = ordered_json::array();
    for (const auto& b : a.barriers.bonds) {
        ordered_json jb;
        jb["a"] = b.site_a;
        jb["b"] = b.site_b;
        jb["image"] = b.image;
        jb["length_m"] = b.length();
        jb["saddle_x_m"] = b.saddle_position.x();
        jb["saddle_y_m"] = b.saddle_position.y();
        jb["saddle_U_Hz"] = b.saddle_value / h;
        jb["barrier_a_Hz"] = b.barrier_a / h;
        jb["barrier_b_Hz"] = b.barrier_b / h;
        bonds.push_back(jb);
    }
    doc["bonds"] = bonds;
    doc["bond_diagnostics"] = a.barriers.diagnostics;
    ordered_json sites = ordered_json::object();
    for (const auto& s : a.sites)
        sites[s.label] = {{"minimum", s.index}, {"x_m", s.position.x()}, {"y_m", s.position.y()},
                          {"U_Hz", s.value / h}};
    doc["sites"] = sites;

    const fs::path path = ctx.out_dir / "extrema.json";
    auto f = open_output(path);
    f << doc.dump(2) << '\n';
    out << "wrote " << path.string() << " (" << to_string(a.geometry) << ", " << a.minima.size() << " minima)\n";
    return kExitOk;
}

// Site position: local minimum reached from the nominal label position.
Waypoint resolve_site(const Evaluator& U, const Preset& preset, const std::string& label) {
    auto it = std::find_if(preset.sites.begin(), preset.sites.end(), [&](const Waypoint& w) { return w.label == label; });
    if (it == preset.sites.end()) throw InputError("label not found: " + label);
    const UnitCell& cell = *preset.cell;
    double nn = cell.scale();
    for (const auto& w : preset.sites)
        if (&w != &*it) nn = std::min(nn, (w.position - it->position).norm());
    return {label, refine_minimum(U, it->position, 0.05 * nn, cell.scale()).position};
}

int cmd_path(const Context& ctx, std::ostream& out) {
    ctx.cell();
    const auto labels = split(ctx.opt.waypoints, ',');
    if (labels.empty()) throw ConfigurationError("--waypoints needs at least one label");
    if (ctx.opt.samples < 2) throw ConfigurationError("--samples must be at least 2");
    const LightShift shift(ctx.species, ctx.state, ctx.preset.groups, ctx.mode, ctx.shift_options());
    const Evaluator U = make_evaluator(shift);
    std::vector<Waypoint> wps;
    for (const auto& l : labels) wps.push_back(resolve_site(U, ctx.preset, l));
    const std::vector<PathSample> samples =
        wps.size() == 1 ? std::vector<PathSample>{{0.0, wps[0].position, U(wps[0].position), wps[0].label}}
                        : path_potential(U, wps, ctx.opt.samples);

    const std::string hash = config_hash(ctx, "path", {{"waypoints", labels}, {"samples", ctx.opt.samples}});
    const double h = constants::kPlanck, er = ctx.recoil();
    const fs::path path = ctx.out_dir / "path.csv";
    auto f = open_output(path);
    f << "# waypoints=" << ctx.opt.waypoints << '\n';
    write_comment_header(f, ctx, "path profile", hash);
    f << "s_m,x,y,U_Hz,U_Er,site\n";
    for (const auto& s : samples)
        f << num(s.arclength) << ',' << num(s.position.x()) << ',' << num(s.position.y()) << ',' << num(s.value / h)
          << ',' << num(s.value / er) << ',' << s.label << '\n';
    out << "wrote " << path.string() << " (" << samples.size() << " samples)\n";
    return kExitOk;
}

const PresetParams& require_params(const Context& ctx, const std::string& what) {
    if (!ctx.params) throw ConfigurationError(what + " needs --preset");
    if (!ctx.params->numbers.count(ctx.opt.knob))
        throw ConfigurationError("unknown knob '" + ctx.opt.knob + "' for " + ctx.params->family);
    return *ctx.params;
}

int cmd_sweep(const Context& ctx, std::ostream& out) {
    const PresetParams& base = require_params(ctx, "sweep");
    if (ctx.opt.steps < 1) throw ConfigurationError("--steps must be at least 1");
    const double lo = parse_number(ctx.opt.from), hi = parse_number(ctx.opt.to);
    const auto& labels = ctx.preset.sites;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i + 1 < ctx.preset.channel.size(); ++i)
        pairs.emplace_back(ctx.preset.channel[i], ctx.preset.channel[i + 1]);

    const std::string hash = config_hash(
        ctx, "sweep", {{"knob", ctx.opt.knob}, {"from", lo}, {"to", hi}, {"steps", ctx.opt.steps}});
    const double h = constants::kPlanck;
    const fs::path path = ctx.out_dir / "sweep.csv";
    auto f = open_output(path);
    f << "# knob=" << ctx.opt.knob << " from=" << num(lo) << " to=" << num(hi) << " steps=" << ctx.opt.steps << '\n';
    f << "# unit=U_Hz = U/h; barrier = saddle minus mean of the two wells\n";
    write_comment_header(f, ctx, "phase sweep", hash);
    f << ctx.opt.knob << "_rad";
    for (const auto& s : labels) f << ",U_" << s.label << "_Hz";
    for (const auto& [a, b] : pairs) f << ",barrier_" << a << '_' << b << "_Hz";
    f << ",label\n";

    for (int s = 0; s < ctx.opt.steps; ++s) {
        const double v = ctx.opt.steps == 1 ? lo : lo + (hi - lo) * s / (ctx.opt.steps - 1);
        PresetParams p = base;
        p.numbers[ctx.opt.knob] = v;
        const Preset preset = ctx.build(p);
        const Analysis a = analyze(ctx, preset);
        f << num(v);
        for (const auto& m : a.sites) f << ',' << num(m.value / h);
        for (const auto& [la, lb] : pairs) {
            auto find = [&](const std::string& l) {
                return std::find_if(a.sites.begin(), a.sites.end(), [&](const SiteMatch& m) { return m.label == l; });
            };
            const auto ia = find(la), ib = find(lb);
            std::optional<double> best;
            if (ia != a.sites.end() && ib != a.sites.end()) {
                for (const auto& b : a.barriers.bonds) {
                    const bool match = (b.site_a == ia->index && b.site_b == ib->index) ||
                                       (b.site_a == ib->index && b.site_b == ia->index);
                    if (match && (!best || b.height() < *best)) best = b.height();
                }
            }
            f << ',' << (best ? num(*best / h) : std::string{});
        }
        f << ',' << to_string(a.geometry) << '\n';
    }
    out << "wrote " << path.string() << " (" << ctx.opt.steps << " steps)\n";
    return kExitOk;
}

int cmd_solve(const Context& ctx, std::ostream& out) {
    const PresetParams& base = require_params(ctx, "solve");
    const auto br = split(ctx.opt.bracket, ',');
    if (br.size() != 2) throw ConfigurationError("--bracket expects LO,HI");
    const auto sites = split(ctx.opt.sites, ',');
    if (sites.size() != 2) throw ConfigurationError("--sites expects two labels, e.g. A,B");
    for (const auto& s : sites)
        if (std::none_of(ctx.preset.sites.begin(), ctx.preset.sites.end(), [&](const Waypoint& w) { return w.label == s; }))
            throw InputError("label not found: " + s);

    double unit = 0.0;
    if (ctx.opt.unit == "hz") unit = constants::kPlanck;
    else if (ctx.opt.unit == "j") unit = 1.0;
    else if (ctx.opt.unit == "er") unit = ctx.recoil();
    else throw ConfigurationError("--unit must be hz, er or j");

    if (!base.numbers.count(ctx.opt.knob))
        throw ConfigurationError("unknown parameter '" + ctx.opt.knob + "' for " + base.family);

    double depth_scale = 0.0;
    auto depth_difference = [&](double phase) {
        PresetParams p = base;
        p.numbers[ctx.opt.knob] = phase;
        const Preset preset = ctx.build(p);
        const LightShift shift(ctx.species, ctx.state, preset.groups, ctx.mode, ctx.shift_options());
        const Evaluator U = make_evaluator(shift);
        const double first = site_depth(U, preset, sites[0]);
        depth_scale = std::max(depth_scale, std::abs(first));
        return first - site_depth(U, preset, sites[1]);
    };
    const double target = ctx.opt.target * unit;
    const double lo = parse_number(br[0]), hi = parse_number(br[1]);
    // A difference that stays at rounding level over the whole bracket (e.g. two
    // sites related by a symmetry the knob preserves) has no meaningful root.
    if (lo < hi) {
        const double flo = depth_difference(lo) - target, fhi = depth_difference(hi) - target;
        const double resolution = 1e-9 * depth_scale;
        if (std::abs(flo) < resolution && std::abs(fhi) < resolution)
            throw BracketError(fmt::format("U({}) - U({}) stays below the numerical resolution ({:.3g} J) on the bracket",
                                           sites[0], sites[1], resolution));
    }
    const double phase = solve_phase_offset(depth_difference, target, lo, hi);
    out << fmt::format("{:.17g}\n", phase);
    return kExitOk;
}

void add_common(CLI::App& app, Options& o) {
    app.add_option("--species", o.species, "Species data file (JSON)");
    app.add_option("--F", o.F, "Hyperfine F of the ground state");
    app.add_option("--mF", o.mF, "Projection m_F");
    app.add_option("--mode", o.mode, "Light-shift mode: e2 or e2eps");
    app.add_option("--preset", o.preset, "Preset name");
    app.add_option("--beams", o.beams, "Beam configuration file (JSON)");
    app.add_option("--set", o.sets, "Preset override key=value (repeatable)");
    app.add_option("--grid", o.grid, "Grid size NX or NXxNY");
    app.add_option("--out", o.out_dir, "Output directory");
    app.add_option("--guard-ghz", o.guard_ghz, "Near-resonance guard [GHz]");
    app.add_option("--save-beams", o.save_beams, "Also write the resolved beam configuration here");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optical superlattice potentials: light-shift landscapes and their analysis", "superlattice"};
    app.require_subcommand(1);
    Options o;

    auto* potential = app.add_subcommand("potential", "Sample U over the unit cell into potential.csv");
    auto* extrema = app.add_subcommand("extrema", "Critical points, bond barriers and geometry into extrema.json");
    auto* path = app.add_subcommand("path", "Potential along a channel of labeled sites into path.csv");
    auto* sweep = app.add_subcommand("sweep", "Scan one preset parameter into sweep.csv");
    auto* solve = app.add_subcommand("solve", "Find the phase giving a target depth difference");
    for (auto* sc : {potential, extrema, path, sweep, solve}) add_common(*sc, o);

    path->add_option("--waypoints", o.waypoints, "Comma-separated site labels, e.g. A,B,C,D,A")->required();
    path->add_option("--samples", o.samples, "Samples per segment");
    sweep->add_option("--knob", o.knob, "Preset parameter to scan")->required();
    sweep->add_option("--from", o.from, "Start value (accepts e.g. 0.8pi)")->required();
    sweep->add_option("--to", o.to, "End value")->required();
    sweep->add_option("--steps", o.steps, "Number of values")->required();
    solve->add_option("--knob", o.knob, "Preset phase parameter to solve for")->required();
    solve->add_option("--target", o.target, "Target U(site1) - U(site2)");
    solve->add_option("--unit", o.unit, "Unit of --target: hz, er or j");
    solve->add_option("--bracket", o.bracket, "LO,HI (accepts e.g. 0.9pi,1.1pi)")->required();
    solve->add_option("--sites", o.sites, "Two site labels, e.g. A,B")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const Context ctx = resolve(o);
        if (potential->parsed()) return cmd_potential(ctx, out);
        if (extrema->parsed()) return cmd_extrema(ctx, out);
        if (path->parsed()) return cmd_path(ctx, out);
        if (sweep->parsed()) return cmd_sweep(ctx, out);
        return cmd_solve(ctx, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace superlattice::cli
