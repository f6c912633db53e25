// Deterministic tabular output: fixed column order, 17-significant-digit
// decimal rendering, byte-stable CSV with '#' trailer comments, and a JSON
// mirror of the same table.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "sxc/util.hpp"

namespace sxc {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> trailer;  // rendered as '# ...' lines after the data

    static std::string cell(double v) { return render_g17(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(unsigned long v) { return std::to_string(v); }
    static std::string cell(long long v) { return std::to_string(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::string v) { return v; }

    std::string to_csv() const {
        std::string out;
        for (size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ",";
            out += columns[c];
        }
        out += "\n";
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                if (c) out += ",";
                out += row[c];
            }
            out += "\n";
        }
        for (const std::string& line : trailer) out += "# " + line + "\n";
        return out;
    }

    std::string to_json() const {
        nlohmann::json j;
        j["columns"] = columns;
        j["rows"] = rows;
        j["trailer"] = trailer;
        return j.dump(2) + "\n";
    }
};

}  // namespace sxc
