#include "superlattice/atoms.hpp"

#include "superlattice/constants.hpp"
#include "superlattice/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace superlattice {

using nlohmann::json;

const char* to_string(Detuning d) {
    switch (d) {
        case Detuning::Red: return "red";
        case Detuning::Blue: return "blue";
        case Detuning::Intermediate: return "intermediate";
    }
    return "?";
}

namespace {

constexpr int kSchemaVersion = 1;

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + "." + key, "missing required field");
    return *it;
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) throw ParseError(path + "." + key, "expected a number");
    return v.get<double>();
}

int require_int(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number_integer()) throw ParseError(path + "." + key, "expected an integer");
    return v.get<int>();
}

std::string require_string(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) throw ParseError(path + "." + key, "expected a string");
    return v.get<std::string>();
}

bool f_in_range(HalfInt I, HalfInt J, HalfInt F) { return angular::triangle_ok(I, J, F); }

// Hyperfine block: {A_hfs_MHz, B_hfs_MHz, optional F_times2: [...]}
HyperfineManifold read_hyperfine(const json& obj, const std::string& path, const std::string& term, HalfInt I,
                                 HalfInt J) {
    const json& hf = require(obj, "hyperfine", path);
    const std::string hp = path + ".hyperfine";
    HyperfineManifold m;
    m.term = term;
    m.A_hfs = require_number(hf, "A_hfs_MHz", hp) * 1e6 * constants::kPlanck;
    m.B_hfs = hf.contains("B_hfs_MHz") ? require_number(hf, "B_hfs_MHz", hp) * 1e6 * constants::kPlanck : 0.0;
    if (J.twice() <= 1 && m.B_hfs != 0.0)
        throw ValidationError(hp + ".B_hfs_MHz: quadrupole constant must vanish for J = " + J.str());
    if (hf.contains("F_times2")) {
        const json& fs = hf.at("F_times2");
        if (!fs.is_array()) throw ParseError(hp + ".F_times2", "expected an array of integers");
        for (std::size_t k = 0; k < fs.size(); ++k) {
            if (!fs[k].is_number_integer()) throw ParseError(hp + ".F_times2[" + std::to_string(k) + "]", "expected an integer");
            const HalfInt F = HalfInt::from_twice(fs[k].get<int>());
            if (!f_in_range(I, J, F))
                throw ValidationError(hp + ".F_times2[" + std::to_string(k) + "]: F = " + F.str() +
                                      " outside |I-J|..I+J for I = " + I.str() + ", J = " + J.str());
        }
    }
    return m;
}

HalfInt read_momentum(const json& obj, const std::string& key, const std::string& path) {
    const int twice = require_int(obj, key, path);
    if (twice < 0) throw ValidationError(path + "." + key + ": must be non-negative");
    return HalfInt::from_twice(twice);
}

}  // namespace

AtomSpecies species_from_json(const json& doc) {
    const std::string root = "$";
    if (!doc.is_object()) throw ParseError(root, "expected an object");
    if (doc.contains("schema_version")) {
        if (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != kSchemaVersion)
            throw ParseError(root + ".schema_version", "unsupported schema version");
    }

    AtomSpecies s;
    s.name = require_string(doc, "name", root);
    s.mass_kg = require_number(doc, "mass_kg", root);
    if (!(s.mass_kg > 0.0)) throw ValidationError("$.mass_kg: must be positive");
    s.I = read_momentum(doc, "I_times2", root);

    const json& g = require(doc, "ground", root);
    const std::string gp = root + ".ground";
    s.ground.term = require_string(g, "term", gp);
    s.ground.n = g.contains("n") ? require_int(g, "n", gp) : 0;
    s.ground.J = read_momentum(g, "J_times2", gp);
    s.ground.hyperfine = read_hyperfine(g, gp, s.ground.term, s.I, s.ground.J);

    const json& lines = require(doc, "lines", root);
    if (!lines.is_array()) throw ParseError(root + ".lines", "expected an array");
    if (lines.empty()) throw ValidationError("$.lines: at least one fine-structure line is required");

    std::set<std::string> terms{s.ground.term};
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string lp = root + ".lines[" + std::to_string(i) + "]";
        const json& l = lines[i];
        FineLine line;
        line.term = require_string(l, "term", lp);
        line.J_upper = read_momentum(l, "J_times2", lp);
        line.A_J = require_number(l, "A_J_per_s", lp);
        const double lambda_nm = require_number(l, "wavelength_vacuum_nm", lp);
        if (!(line.A_J > 0.0)) throw ValidationError(lp + ".A_J_per_s: must be positive");
        if (!(lambda_nm > 0.0)) throw ValidationError(lp + ".wavelength_vacuum_nm: must be positive");
        line.omega_J = constants::omega_from_wavelength(lambda_nm * 1e-9);
        line.hyperfine = read_hyperfine(l, lp, line.term, s.I, line.J_upper);
        if (!angular::triangle_ok(s.ground.J, line.J_upper, HalfInt(1)))
            throw ValidationError(lp + ": J = " + line.J_upper.str() + " is not dipole-coupled to the ground level");
        if (!terms.insert(line.term).second) throw ValidationError(lp + ".term: duplicate term '" + line.term + "'");
        s.lines.push_back(std::move(line));
    }
    return s;
}

AtomSpecies parse_species(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number for the diagnostic
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ParseError("line " + std::to_string(line), e.what());
    }
    return species_from_json(doc);
}

AtomSpecies load_species(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open species file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_species(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
}

double hyperfine_correction(const HyperfineManifold& manifold, HalfInt I, HalfInt J, HalfInt F) {
    if (!angular::triangle_ok(I, J, F))
        throw InputError("F = " + F.str() + " is not reachable from I = " + I.str() + ", J = " + J.str());
    const double i = I.value(), j = J.value(), f = F.value();
    const double K = f * (f + 1) - i * (i + 1) - j * (j + 1);
    double e = 0.5 * manifold.A_hfs * K;
    if (I.twice() > 1 && J.twice() > 1) {
        e += manifold.B_hfs * (1.5 * K * (K + 1) - 2.0 * i * (i + 1) * j * (j + 1)) /
             (2.0 * i * (2.0 * i - 1) * 2.0 * j * (2.0 * j - 1));
    }
    return e;
}

void validate_state(const AtomSpecies& species, const HyperfineState& state) {
    if (state.I != species.I) throw InputError("state nuclear spin " + state.I.str() + " does not match " + species.name);
    if (state.J != species.ground.J) throw InputError("state J = " + state.J.str() + " is not the ground level of " + species.name);
    if (!angular::triangle_ok(state.I, state.J, state.F))
        throw InputError("F = " + state.F.str() + " outside |I-J|..I+J");
    if (std::abs(state.mF.twice()) > state.F.twice() || (state.F.twice() - state.mF.twice()) % 2 != 0)
        throw InputError("m_F = " + state.mF.str() + " is not a projection of F = " + state.F.str());
}

HyperfineState make_ground_state(const AtomSpecies& species, HalfInt F, HalfInt mF) {
    HyperfineState s{species.ground.n, species.ground.term, species.I, species.ground.J, F, mF};
    validate_state(species, s);
    return s;
}

std::vector<TransitionChannel> enumerate_channels(const AtomSpecies& species, const HyperfineState& state) {
    validate_state(species, state);
    std::vector<TransitionChannel> out;
    const double e_ground = hyperfine_correction(species.ground.hyperfine, species.I, state.J, state.F);
    const HalfInt one(1);
    for (std::size_t li = 0; li < species.lines.size(); ++li) {
        const FineLine& line = species.lines[li];
        const HalfInt Jj = line.J_upper;
        const int fmin = std::abs(species.I.twice() - Jj.twice());
        for (int f2 = fmin; f2 <= species.I.twice() + Jj.twice(); f2 += 2) {
            const HalfInt Fj = HalfInt::from_twice(f2);
            const double six = angular::wigner6j(state.J, Jj, one, Fj, state.F, species.I);
            if (six == 0.0) continue;
            const double e_upper = hyperfine_correction(line.hyperfine, species.I, Jj, Fj);
            const double omega_F = line.omega_J + (e_upper - e_ground) / constants::kHbar;
            for (int p = -1; p <= 1; ++p) {
                const HalfInt M = state.mF - HalfInt(p);
                if (std::abs(M.twice()) > Fj.twice()) continue;
                const double three = angular::wigner3j(Fj, one, state.F, M, HalfInt(p), -state.mF);
                const double w = Fj.multiplicity() * state.F.multiplicity() * Jj.multiplicity() * six * six * three * three;
                if (w == 0.0) continue;
                out.push_back({li, p, state.F, state.mF, Fj, M, state.J, Jj, omega_F, line.omega_J, line.A_J, w});
            }
        }
    }
    return out;
}

Detuning classify_detuning(const AtomSpecies& species, double omega) {
    double lo = species.lines.front().omega_J, hi = lo;
    for (const auto& l : species.lines) {
        lo = std::min(lo, l.omega_J);
        hi = std::max(hi, l.omega_J);
    }
    if (omega < lo) return Detuning::Red;
    if (omega > hi) return Detuning::Blue;
    return Detuning::Intermediate;
}

}  // namespace superlattice
