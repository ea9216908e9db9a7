#pragma once

#include <string>
#include <vector>

#include "ffplane/util.hpp"

namespace ffplane {

/// One verified relation. lhs/rhs are exact decimal integers or "n/d"
/// rationals. Non-asserted records are diagnostics and never gate exit codes.
struct CheckRecord {
    std::string name;      ///< stable instance id
    std::string anchor;    ///< stable family id shared across reports
    std::string lhs;
    std::string relation;  ///< "==", "<=", ">=", "report"
    std::string rhs;
    bool pass = true;
    bool asserted = true;

    static CheckRecord eq(std::string name, std::string anchor, i128 lhs, i128 rhs, bool asserted = true) {
        return {std::move(name), std::move(anchor), to_string_i128(lhs), "==", to_string_i128(rhs),
                lhs == rhs, asserted};
    }
    static CheckRecord le(std::string name, std::string anchor, i128 lhs, i128 rhs, bool asserted = true) {
        return {std::move(name), std::move(anchor), to_string_i128(lhs), "<=", to_string_i128(rhs),
                lhs <= rhs, asserted};
    }
    static CheckRecord ge(std::string name, std::string anchor, i128 lhs, i128 rhs, bool asserted = true) {
        return {std::move(name), std::move(anchor), to_string_i128(lhs), ">=", to_string_i128(rhs),
                lhs >= rhs, asserted};
    }
    static CheckRecord info(std::string name, std::string anchor, std::string lhs, std::string rhs) {
        return {std::move(name), std::move(anchor), std::move(lhs), "report", std::move(rhs), true, false};
    }
};

inline bool all_asserted_pass(const std::vector<CheckRecord>& checks) {
    for (const auto& c : checks)
        if (c.asserted && !c.pass) return false;
    return true;
}

}  // namespace ffplane
