#pragma once

#include <string>
#include <vector>

namespace leafpower {

struct Violation {
    std::string code;
    std::string detail;
    std::vector<int> ids;
};

struct Verdict {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    explicit operator bool() const { return ok(); }

    void add(std::string code, std::string detail, std::vector<int> ids = {}) {
        violations.push_back({std::move(code), std::move(detail), std::move(ids)});
    }
    bool has(const std::string& code) const {
        for (auto& v : violations)
            if (v.code == code) return true;
        return false;
    }
    std::string summary() const;
};

} // namespace leafpower
