#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "parclone/closure.hpp"
#include "parclone/separating.hpp"

namespace parclone {

enum class Verdict { pass, fail, resource_limited };
std::string verdict_name(Verdict v);  // "pass" / "fail" / "resource-limit"

using CheckParams = std::map<std::string, std::int64_t>;

// Outcome of one named check. A fail always carries a concrete
// counterexample in `witnesses`; a pass carries the exhaustively examined
// counts in `examined`. resource-limit means a cap fired before the check
// could decide; it never claims refutation.
struct CheckReport {
    std::string check;
    CheckParams params;  // resolved parameters this run used
    Verdict verdict = Verdict::fail;
    nlohmann::json witnesses = nlohmann::json::object();
    nlohmann::json examined = nlohmann::json::object();
    double millis = 0.0;
};

nlohmann::json report_to_json(const CheckReport& report);
// Deterministic rendering (timing excluded), one line per report.
std::string report_to_text(const CheckReport& report);

const std::vector<std::string>& check_ids();

CheckReport run_check(const std::string& id, const CheckParams& params = {});

// Every check at its defaults, in catalog order. Only resource knobs
// (max_size, max_rounds, max_intermediate, max_tuples) may be passed here.
std::vector<CheckReport> run_all(const CheckParams& caps = {});

bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace parclone
