#pragma once

// Orbit records as JSON, a content-hashed store, CSV trajectory export, and
// symbolic pi expressions for times and angles.

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbody/errors.hpp"
#include "rbody/shooting.hpp"

namespace rbody {

using Json = nlohmann::ordered_json;

inline constexpr int kRecordSchemaVersion = 1;

/// Raised for unreadable or unwritable files and corrupt stores.
class IoError : public Error {
public:
    using Error::Error;
};

/// Parses "2pi", "pi/4", "5pi/2", "-3*pi/8", "1.25", "0.5pi".
inline double parse_pi_expression(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') s.push_back(c);
    }
    if (s.empty()) throw ValidationError("empty expression");
    const auto pos = s.find("pi");
    auto number = [&](const std::string& part, double fallback) {
        if (part.empty()) return fallback;
        if (part == "-") return -fallback;
        if (part == "+") return fallback;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw ValidationError("cannot parse '" + text + "'");
        }
        if (used != part.size()) throw ValidationError("cannot parse '" + text + "'");
        return v;
    };
    auto denominator = [&](const std::string& part) {
        if (part.empty() || part == "-" || part == "+") throw ValidationError("missing denominator in '" + text + "'");
        return number(part, 1.0);
    };
    if (pos == std::string::npos) {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return number(s, 0.0);
        const double den = denominator(s.substr(slash + 1));
        if (den == 0.0) throw ValidationError("division by zero in '" + text + "'");
        return number(s.substr(0, slash), 0.0) / den;
    }
    const double coef = number(s.substr(0, pos), 1.0);
    std::string rest = s.substr(pos + 2);
    double den = 1.0;
    if (!rest.empty()) {
        if (rest[0] != '/') throw ValidationError("cannot parse '" + text + "'");
        den = denominator(rest.substr(1));
        if (den == 0.0) throw ValidationError("division by zero in '" + text + "'");
    }
    return coef * std::numbers::pi / den;
}

/// "start:stop:step" with both ends included, or a comma-separated list.
inline std::vector<double> parse_pi_list(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw ValidationError("range must be start:stop:step");
        const double a = parse_pi_expression(parts[0]);
        const double b = parse_pi_expression(parts[1]);
        const double h = parse_pi_expression(parts[2]);
        if (!(h > 0.0) || b < a) throw ValidationError("range needs step > 0 and stop >= start");
        const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
        for (long k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * h);
        return out;
    }
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
        if (!p.empty()) out.push_back(parse_pi_expression(p));
    }
    return out;
}

inline std::string sha256_hex(const std::string& data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
        throw IoError("SHA-256 digest failed");
    }
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return out.str();
}

namespace detail {

inline Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline double number_from(const Json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace detail

inline Json to_json(const IntegratorConfig& c) {
    Json j;
    j["rel_tol"] = c.rel_tol;
    j["abs_tol"] = c.abs_tol;
    j["max_step"] = detail::number_or_null(c.max_step);
    j["collision_radius"] = c.collision_radius;
    return j;
}

inline IntegratorConfig integrator_from_json(const Json& j) {
    IntegratorConfig c;
    c.rel_tol = j.at("rel_tol").get<double>();
    c.abs_tol = j.at("abs_tol").get<double>();
    const double ms = detail::number_from(j.at("max_step"));
    c.max_step = std::isnan(ms) ? std::numeric_limits<double>::infinity() : ms;
    c.collision_radius = j.at("collision_radius").get<double>();
    return c;
}

inline Json to_json(const OrbitRecord& r) {
    Json j;
    j["schema_version"] = kRecordSchemaVersion;
    j["problem"] = {{"family", to_string(r.problem.family)},
                    {"quarter_count", r.problem.quarter_count},
                    {"t0", r.problem.t0()},
                    {"target", to_string(r.problem.target)},
                    {"combination", to_string(r.problem.combination())},
                    {"integrator", to_json(r.problem.integrator)}};
    j["a"] = r.a;
    j["b"] = r.b;
    j["residual_norm"] = r.residual_norm;
    j["iterations"] = r.iterations;
    j["residual_history"] = r.residual_history;
    j["gamma"] = r.gamma;
    j["delta"] = r.delta;
    j["period"] = r.period;
    j["closure_residual"] = detail::number_or_null(r.closure_residual);
    j["symmetry_residual"] = detail::number_or_null(r.symmetry_residual);
    j["end_involution"] = r.end_involution;
    j["classification"] = to_string(r.classification);
    const OrbitGeometry& g = r.geometry;
    j["geometry"] = {{"min_primary_distance", g.min_primary_distance},
                     {"min_center_distance", g.min_center_distance},
                     {"mean_radius", g.mean_radius},
                     {"primary_extent", g.primary_extent},
                     {"min_inter_primary", g.min_inter_primary},
                     {"max_distance_to", g.max_distance_to},
                     {"comet_factor", g.comet_factor},
                     {"moon_factor", g.moon_factor}};
    j["notes"] = r.notes;
    return j;
}

inline OrbitRecord record_from_json(const Json& j) {
    try {
        if (j.at("schema_version").get<int>() != kRecordSchemaVersion) throw IoError("unsupported record schema");
        OrbitRecord r;
        const Json& p = j.at("problem");
        r.problem.family = parse_family(p.at("family").get<std::string>());
        r.problem.quarter_count = p.at("quarter_count").get<int>();
        r.problem.target = parse_target(p.at("target").get<std::string>());
        r.problem.integrator = integrator_from_json(p.at("integrator"));
        r.a = j.at("a").get<double>();
        r.b = j.at("b").get<double>();
        r.residual_norm = j.at("residual_norm").get<double>();
        r.iterations = j.at("iterations").get<int>();
        r.residual_history = j.at("residual_history").get<std::vector<double>>();
        r.gamma = j.at("gamma").get<double>();
        r.delta = j.at("delta").get<double>();
        r.period = j.at("period").get<double>();
        r.closure_residual = detail::number_from(j.at("closure_residual"));
        r.symmetry_residual = detail::number_from(j.at("symmetry_residual"));
        r.end_involution = j.at("end_involution").get<std::string>();
        r.classification = parse_orbit_class(j.at("classification").get<std::string>());
        const Json& g = j.at("geometry");
        r.geometry.min_primary_distance = g.at("min_primary_distance").get<double>();
        r.geometry.min_center_distance = g.at("min_center_distance").get<double>();
        r.geometry.mean_radius = g.at("mean_radius").get<double>();
        r.geometry.primary_extent = g.at("primary_extent").get<double>();
        r.geometry.min_inter_primary = g.at("min_inter_primary").get<double>();
        r.geometry.max_distance_to = g.at("max_distance_to").get<std::vector<double>>();
        r.geometry.comet_factor = g.at("comet_factor").get<double>();
        r.geometry.moon_factor = g.at("moon_factor").get<double>();
        r.notes = j.at("notes").get<std::vector<std::string>>();
        return r;
    } catch (const Json::exception& e) {
        throw IoError(std::string("malformed orbit record: ") + e.what());
    } catch (const ValidationError& e) {
        throw IoError(std::string("malformed orbit record: ") + e.what());
    }
}

/// Serialized form used for files and hashes.
inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

/// Stable identifier, e.g. "isosceles-y-perp-q8".
inline std::string record_id(const ShootingProblem& p) {
    return to_string(p.family) + "-" + to_string(p.target) + "-q" + std::to_string(p.quarter_count);
}

struct IndexEntry {
    std::string id;
    std::string classification;
    double t0 = 0.0;
    double residual_norm = 0.0;
    double closure_residual = 0.0;
    double symmetry_residual = 0.0;
    std::string sha256;
};

/// Directory of <id>.json records under orbits/ plus index.json.
class OrbitStore {
public:
    explicit OrbitStore(std::filesystem::path root) : root_(std::move(root)) {
        std::error_code ec;
        std::filesystem::create_directories(root_ / "orbits", ec);
        if (ec) throw IoError("cannot create " + (root_ / "orbits").string() + ": " + ec.message());
        if (std::filesystem::exists(index_path())) load_index();
    }

    const std::filesystem::path& root() const { return root_; }
    const std::vector<IndexEntry>& entries() const { return index_; }

    std::string put(const OrbitRecord& r) {
        const std::string id = record_id(r.problem);
        const std::string text = dump_json(to_json(r));
        write_file(record_path(id), text);
        IndexEntry e{id,
                     to_string(r.classification),
                     r.problem.t0(),
                     r.residual_norm,
                     r.closure_residual,
                     r.symmetry_residual,
                     sha256_hex(text)};
        auto it = std::find_if(index_.begin(), index_.end(), [&](const IndexEntry& x) { return x.id == id; });
        if (it == index_.end()) {
            index_.push_back(e);
        } else {
            *it = e;
        }
        std::sort(index_.begin(), index_.end(), [](const IndexEntry& x, const IndexEntry& y) {
            return x.t0 != y.t0 ? x.t0 < y.t0 : x.id < y.id;
        });
        save_index();
        return id;
    }

    /// Reads a record and checks it against the indexed hash.
    OrbitRecord get(const std::string& id) const {
        const auto it = std::find_if(index_.begin(), index_.end(), [&](const IndexEntry& x) { return x.id == id; });
        if (it == index_.end()) throw IoError("no orbit '" + id + "' in " + root_.string());
        const std::string text = read_file(record_path(id));
        if (sha256_hex(text) != it->sha256) throw IoError("hash mismatch for orbit '" + id + "'");
        try {
            return record_from_json(Json::parse(text));
        } catch (const Json::exception& e) {
            throw IoError("cannot parse " + record_path(id).string() + ": " + e.what());
        }
    }

    /// Ids whose file is missing or whose content hash no longer matches.
    std::vector<std::string> verify() const {
        std::vector<std::string> bad;
        for (const IndexEntry& e : index_) {
            const auto path = record_path(e.id);
            if (!std::filesystem::exists(path) || sha256_hex(read_file(path)) != e.sha256) bad.push_back(e.id);
        }
        return bad;
    }

    std::filesystem::path record_path(const std::string& id) const { return root_ / "orbits" / (id + ".json"); }
    std::filesystem::path index_path() const { return root_ / "index.json"; }

    static std::string read_file(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot read " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static void write_file(const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + path.string());
        out << text;
        if (!out) throw IoError("write failed for " + path.string());
    }

private:
    void load_index() {
        try {
            const Json j = Json::parse(read_file(index_path()));
            for (const Json& e : j.at("orbits")) {
                index_.push_back({e.at("id").get<std::string>(), e.at("classification").get<std::string>(),
                                  e.at("t0").get<double>(), e.at("residual_norm").get<double>(),
                                  detail::number_from(e.at("closure_residual")),
                                  detail::number_from(e.at("symmetry_residual")), e.at("sha256").get<std::string>()});
            }
        } catch (const Json::exception& e) {
            throw IoError("corrupt index " + index_path().string() + ": " + e.what());
        }
    }

    void save_index() const {
        Json j;
        j["schema_version"] = kRecordSchemaVersion;
        j["orbits"] = Json::array();
        for (const IndexEntry& e : index_) {
            j["orbits"].push_back({{"id", e.id},
                                   {"classification", e.classification},
                                   {"t0", e.t0},
                                   {"residual_norm", e.residual_norm},
                                   {"closure_residual", detail::number_or_null(e.closure_residual)},
                                   {"symmetry_residual", detail::number_or_null(e.symmetry_residual)},
                                   {"sha256", e.sha256}});
        }
        write_file(index_path(), dump_json(j));
    }

    std::filesystem::path root_;
    std::vector<IndexEntry> index_;
};

/// Writes `samples + 1` rows over one full period (both ends included),
/// satellite first, then bodies 1 to 4, each as position then velocity.
inline void export_csv(const OrbitRecord& r, int samples, std::ostream& out) {
    if (samples < 1) throw ValidationError("export needs at least one sample interval");
    const ReconstructedOrbit orbit(r.problem, r.a, r.b);
    out << "t";
    for (int body : {5, 1, 2, 3, 4}) {
        for (const char* c : {"qx", "qy", "vx", "vy"}) {
            std::string name(c);
            out << ',' << name[0] << body << name[1];
        }
    }
    out << '\n';
    out << std::setprecision(17);
    const double period = orbit.period();
    for (int k = 0; k <= samples; ++k) {
        const double t = k == samples ? period : period * k / samples;
        const SystemState prim = orbit.ephemeris().state(t);
        std::vector<double> sat = orbit.satellite_at(t);
        if (k == samples) {
            const auto end = orbit.satellite().final_flat();
            sat.assign(end.begin(), end.end());
        }
        out << t << ',' << sat[0] << ',' << sat[1] << ',' << sat[2] << ',' << sat[3];
        for (std::size_t j = 0; j < prim.size(); ++j) {
            out << ',' << prim.positions[j].x << ',' << prim.positions[j].y << ',' << prim.velocities[j].x << ','
                << prim.velocities[j].y;
        }
        out << '\n';
    }
}

}  // namespace rbody
