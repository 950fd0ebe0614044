#pragma once

#include <string>

#include "stirval/verify.hpp"

namespace stirval {

// {"suite", "total", "passed", "failed", "deviations", "records": [...]};
// expected/actual are strings, infinite valuations are "inf".
std::string report_to_json(const VerificationReport& report);

// Header: check_id,params,expected,actual,pass. Params render as "a=1;n=3".
std::string report_to_csv(const VerificationReport& report);

// Summary line plus one line per failing record.
std::string report_to_plain(const VerificationReport& report, bool all_records = false);

}  // namespace stirval
