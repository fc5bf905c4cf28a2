#pragma once

#include <string>
#include <vector>

#include <json.hpp>

// Output assembly. CSV documents start with a single `# meta: {...}` comment
// carrying the full run description, then a header row and `%.17g` numbers.
// JSON documents embed the same meta object alongside the payload; doubles
// use the shortest encoding that parses back bit-for-bit.

namespace quench {

struct TableDoc {
    nlohmann::ordered_json meta;
    std::vector<std::string> columns;
    std::vector<nlohmann::ordered_json> rows;  // objects keyed by column
};

std::string format_double(double x);  // %.17g

std::string to_csv(const TableDoc& doc);

// {"meta": ..., "columns": [...], "rows": [{...}, ...]} plus any extra
// top-level fields supplied by the caller.
std::string to_json(const TableDoc& doc, const nlohmann::ordered_json& extra);

}  // namespace quench
