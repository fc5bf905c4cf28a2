#include "quench/emit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace quench {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string cell_text(const nlohmann::ordered_json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "nan";
    return v.dump();
}

}  // namespace

std::string to_csv(const TableDoc& doc) {
    std::ostringstream os;
    if (!doc.meta.empty()) os << "# meta: " << doc.meta.dump() << "\n";
    for (std::size_t i = 0; i < doc.columns.size(); ++i) {
        if (i) os << ",";
        os << doc.columns[i];
    }
    os << "\n";
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < doc.columns.size(); ++i) {
            if (i) os << ",";
            if (row.contains(doc.columns[i]))
                os << cell_text(row.at(doc.columns[i]));
        }
        os << "\n";
    }
    return os.str();
}

std::string to_json(const TableDoc& doc, const nlohmann::ordered_json& extra) {
    nlohmann::ordered_json j;
    j["meta"] = doc.meta;
    j["columns"] = doc.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : doc.rows) {
        nlohmann::ordered_json out = nlohmann::ordered_json::object();
        for (const auto& col : doc.columns) {
            if (!row.contains(col)) continue;
            const auto& v = row.at(col);
            // NaN has no JSON representation; omitting the key keeps every
            // emitted value round-trippable.
            if (v.is_number_float() && std::isnan(v.get<double>())) continue;
            out[col] = v;
        }
        rows.push_back(std::move(out));
    }
    j["rows"] = std::move(rows);
    if (!extra.empty())
        for (auto it = extra.begin(); it != extra.end(); ++it)
            j[it.key()] = it.value();
    j["version"] = "0.1.0";
    return j.dump(2) + "\n";
}

}  // namespace quench
