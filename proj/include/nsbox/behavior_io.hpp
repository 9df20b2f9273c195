#pragma once

#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "nsbox/behavior.hpp"

namespace nsbox {

/// Schema or syntax error in a behavior file. `path` points at the
/// offending element, e.g. "p[0][1][1]".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

namespace detail {

inline void expect_pair_array(const nlohmann::json& node, const std::string& path) {
    if (!node.is_array())
        throw ParseError(path, "expected an array");
    if (node.size() != 2)
        throw ParseError(path, "expected exactly 2 elements, got " + std::to_string(node.size()));
}

}  // namespace detail

/// Parses the JSON behavior schema {"p": [[[[...]]]]} with index order
/// [X][Y][a][b]. Values are stored as-is; use validate() for semantics.
inline Behavior read_behavior(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("", "top level must be an object");
    const auto it = j.find("p");
    if (it == j.end())
        throw ParseError("p", "missing key");

    Behavior b;
    detail::expect_pair_array(*it, "p");
    for (int X : {0, 1}) {
        const std::string px = "p[" + std::to_string(X) + "]";
        detail::expect_pair_array((*it)[X], px);
        for (int Y : {0, 1}) {
            const std::string py = px + "[" + std::to_string(Y) + "]";
            detail::expect_pair_array((*it)[X][Y], py);
            for (int a : {0, 1}) {
                const std::string pa = py + "[" + std::to_string(a) + "]";
                detail::expect_pair_array((*it)[X][Y][a], pa);
                for (int o : {0, 1}) {
                    const std::string pb = pa + "[" + std::to_string(o) + "]";
                    const auto& leaf = (*it)[X][Y][a][o];
                    if (!leaf.is_number())
                        throw ParseError(pb, "expected a number");
                    const double v = leaf.get<double>();
                    if (!std::isfinite(v))
                        throw ParseError(pb, "value is not finite");
                    b.p(X, Y, a, o) = v;
                }
            }
        }
    }
    return b;
}

inline Behavior read_behavior(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw ParseError("", "stream read failed");
    return read_behavior(ss.str());
}

namespace detail {

// %.17g keeps doubles bit-exact through a parse round trip.
inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline std::string write_behavior(const Behavior& b) {
    std::string out = "{\"p\": [";
    for (int X : {0, 1}) {
        out += X == 0 ? "\n  [" : ",\n  [";
        for (int Y : {0, 1}) {
            out += Y == 0 ? "[" : ", [";
            for (int a : {0, 1}) {
                out += a == 0 ? "[" : ", [";
                for (int o : {0, 1}) {
                    if (o) out += ", ";
                    out += detail::format_full(b.p(X, Y, a, o));
                }
                out += "]";
            }
            out += "]";
        }
        out += "]";
    }
    out += "\n]}\n";
    return out;
}

}  // namespace nsbox
