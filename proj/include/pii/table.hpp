#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace pii {

/// Sampled values (s, value) of one function together with the parameters
/// that produced them.
struct DistributionTable {
    std::string kind;
    double xi = 1.0;
    // Free-form metadata copied into the JSON "meta" block.
    nlohmann::json meta = nlohmann::json::object();
    std::vector<std::pair<double, double>> samples;
    // Names of the two columns.
    std::string x_name = "s";
    std::string y_name = "value";

    bool operator==(const DistributionTable&) const = default;
};

/// Grid min, min + step, ... up to max (inclusive within step * 1e-9).
inline std::vector<double> range_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("range: step must be positive");
    if (!(hi >= lo)) throw std::invalid_argument("range: max must not be below min");
    const double n = std::floor((hi - lo) / step + 1e-9);
    if (n > 1e7) throw std::invalid_argument("range: too many points");
    std::vector<double> g;
    for (long i = 0; i <= static_cast<long>(n); ++i) g.push_back(lo + static_cast<double>(i) * step);
    return g;
}

inline DistributionTable tabulate(const std::string& kind, double xi, const std::vector<double>& grid,
                                  const std::function<double(double)>& f) {
    DistributionTable t;
    t.kind = kind;
    t.xi = xi;
    t.samples.reserve(grid.size());
    for (double s : grid) t.samples.emplace_back(s, f(s));
    return t;
}

/// Shortest decimal form that reads back to the same double (at most 17
/// significant digits).
inline std::string format_double(double v) {
    char buf[40];
    for (int p = 15; p <= 17; ++p) {
        std::snprintf(buf, sizeof buf, "%.*g", p, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

inline std::string to_csv(const DistributionTable& t) {
    std::string out = t.x_name + "," + t.y_name + "\n";
    for (const auto& [s, v] : t.samples) out += format_double(s) + "," + format_double(v) + "\n";
    return out;
}

inline nlohmann::json to_json(const DistributionTable& t) {
    nlohmann::json meta = t.meta;
    meta["kind"] = t.kind;
    meta["xi"] = t.xi;
    meta["columns"] = {t.x_name, t.y_name};
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [s, v] : t.samples) rows.push_back({s, v});
    return {{"meta", meta}, {"rows", rows}};
}

inline DistributionTable table_from_json(const nlohmann::json& j) {
    DistributionTable t;
    nlohmann::json meta = j.at("meta");
    t.kind = meta.at("kind").get<std::string>();
    t.xi = meta.at("xi").get<double>();
    if (meta.contains("columns")) {
        t.x_name = meta["columns"].at(0).get<std::string>();
        t.y_name = meta["columns"].at(1).get<std::string>();
    }
    meta.erase("kind");
    meta.erase("xi");
    meta.erase("columns");
    t.meta = meta;
    for (const auto& r : j.at("rows")) t.samples.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
    return t;
}

inline std::string serialize(const DistributionTable& t, const std::string& format) {
    if (format == "csv") return to_csv(t);
    if (format == "json") return to_json(t).dump(2) + "\n";
    throw std::invalid_argument("serialize: format must be csv or json");
}

}  // namespace pii
