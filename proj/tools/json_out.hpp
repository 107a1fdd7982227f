#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

namespace gbcdeploy::cli {

// nlohmann's default dump prints shortest-round-trip doubles, which is not
// the stable format the goldens want. This walker pins numbers to %.10g.

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline void dump_stable(const nlohmann::ordered_json& j, std::ostream& out, int indent = 0) {
    const std::string pad(indent, ' ');
    const std::string pad_in(indent + 2, ' ');
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (j.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out << ",\n";
                first = false;
                out << pad_in << nlohmann::ordered_json(it.key()).dump() << ": ";
                dump_stable(it.value(), out, indent + 2);
            }
            out << '\n' << pad << '}';
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (j.empty()) {
                out << "[]";
                return;
            }
            out << "[\n";
            bool first = true;
            for (const auto& el : j) {
                if (!first) out << ",\n";
                first = false;
                out << pad_in;
                dump_stable(el, out, indent + 2);
            }
            out << '\n' << pad << ']';
            return;
        }
        case nlohmann::ordered_json::value_t::number_float:
            out << format_double(j.get<double>());
            return;
        default:
            out << j.dump();
            return;
    }
}

inline void print_stable(const nlohmann::ordered_json& j, std::ostream& out) {
    dump_stable(j, out);
    out << '\n';
}

} // namespace gbcdeploy::cli
