#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "npconfig/domain.hpp"
#include "npconfig/errors.hpp"
#include "npconfig/linalg.hpp"

namespace npc {

/// Malformed input (JSON schema, flag values): maps to the usage exit code.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ParseError(std::string(what) + ": non-finite value");
    return v;
}

/// Matrix schema: {"n": int, "entries": [[[re, im], ...], ...]}.
inline CMatrix parse_matrix(const nlohmann::json& j) {
    try {
        const std::size_t n = j.at("n").get<std::size_t>();
        const auto& rows = j.at("entries");
        if (!rows.is_array() || rows.size() != n)
            throw ParseError("matrix: 'entries' must have n rows");
        CMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!rows[i].is_array() || rows[i].size() != n)
                throw ParseError("matrix: ragged row");
            for (std::size_t k = 0; k < n; ++k) {
                const auto& e = rows[i][k];
                if (!e.is_array() || e.size() != 2) throw ParseError("matrix: entry must be [re, im]");
                m(i, k) = cplx(require_finite(e[0].get<double>(), "matrix entry"),
                               require_finite(e[1].get<double>(), "matrix entry"));
            }
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("matrix: ") + e.what());
    }
}

/// Domain schema: {"type":"ellipse","a":..,"b":..} | {"type":"polygon",
/// "vertices":[[x,y],...]} | {"type":"sector","r":..,"theta":..} |
/// {"type":"disk","cx":..,"cy":..,"r":..} | {"type":"hull","points":[[x,y],...]}.
inline DomainSpec parse_domain(const nlohmann::json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        const auto pts_of = [](const nlohmann::json& arr) {
            std::vector<cplx> pts;
            for (const auto& p : arr) {
                if (!p.is_array() || p.size() != 2) throw ParseError("domain: point must be [x, y]");
                pts.emplace_back(require_finite(p[0].get<double>(), "domain point"),
                                 require_finite(p[1].get<double>(), "domain point"));
            }
            return pts;
        };
        if (type == "ellipse")
            return DomainSpec::ellipse(require_finite(j.at("a").get<double>(), "a"),
                                       require_finite(j.at("b").get<double>(), "b"));
        if (type == "polygon") return DomainSpec::polygon(pts_of(j.at("vertices")));
        if (type == "hull") return DomainSpec::hull(pts_of(j.at("points")));
        if (type == "sector")
            return DomainSpec::sector(require_finite(j.at("r").get<double>(), "r"),
                                      require_finite(j.at("theta").get<double>(), "theta"));
        if (type == "disk")
            return DomainSpec::disk(cplx(require_finite(j.at("cx").get<double>(), "cx"),
                                         require_finite(j.at("cy").get<double>(), "cy")),
                                    require_finite(j.at("r").get<double>(), "r"));
        throw ParseError("domain: unknown type '" + type + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("domain: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Deterministic output
// ---------------------------------------------------------------------------

/// Numbers are printed with 17 significant digits so that identical runs
/// produce byte-identical output; infinities print as quoted strings.
inline std::string jnum(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (std::isnan(v)) return "\"nan\"";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string jpoint(cplx z) {
    return "[" + jnum(z.real()) + ", " + jnum(z.imag()) + "]";
}

inline std::string jstr(const std::string& s) { return "\"" + s + "\""; }

/// Tiny ordered-key JSON assembler (nlohmann objects sort keys and use
/// shortest-round-trip floats; output determinism needs neither).
class JsonObject {
public:
    JsonObject& field(const std::string& key, const std::string& raw) {
        if (!body_.empty()) body_ += ", ";
        body_ += "\"" + key + "\": " + raw;
        return *this;
    }
    JsonObject& num(const std::string& key, double v) { return field(key, jnum(v)); }
    JsonObject& integer(const std::string& key, long long v) {
        return field(key, std::to_string(v));
    }
    JsonObject& boolean(const std::string& key, bool v) {
        return field(key, v ? "true" : "false");
    }
    JsonObject& str(const std::string& key, const std::string& v) {
        return field(key, jstr(v));
    }
    std::string build() const { return "{" + body_ + "}"; }

private:
    std::string body_;
};

inline std::string jarray(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out + "]";
}

} // namespace npc
