#include "ellischub/report.hpp"

#include <algorithm>
#include <sstream>

namespace ellsc {

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

void Report::add(std::string id, bool pass, std::string detail) {
    checks.push_back({std::move(id), pass, std::move(detail)});
}

namespace {

void sort_checks(Report& r) {
    std::stable_sort(r.checks.begin(), r.checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
}

}  // namespace

nlohmann::json report_to_json(Report r) {
    sort_checks(r);
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"id", c.id},
                          {"status", c.pass ? "pass" : "fail"},
                          {"detail", c.detail}});
    }
    return {{"suite", r.suite}, {"checks", checks}};
}

std::string report_to_text(Report r) {
    sort_checks(r);
    std::ostringstream out;
    int passed = 0;
    for (const auto& c : r.checks) {
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.id;
        if (!c.pass && !c.detail.empty()) out << ": " << c.detail;
        out << "\n";
        if (c.pass) ++passed;
    }
    out << r.suite << ": " << passed << "/" << r.checks.size() << " passed\n";
    return out.str();
}

}  // namespace ellsc
