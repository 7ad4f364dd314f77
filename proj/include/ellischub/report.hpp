#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ellsc {

struct CheckResult {
    std::string id;
    bool pass = false;
    std::string detail;  // empty when passing; offending pair / point otherwise
};

struct Report {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    void add(std::string id, bool pass, std::string detail = "");
};

// Checks sorted by id (stable), so equal configurations render byte-identically.
nlohmann::json report_to_json(Report r);
std::string report_to_text(Report r);

}  // namespace ellsc
