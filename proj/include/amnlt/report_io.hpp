#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "amnlt/metrics.hpp"

namespace amnlt {

// Fields: mer, cer, syler, amler, bwer, aler plus *_edits and *_ref_len.
// Undefined rates serialize as null (JSON) or an empty cell (CSV).
nlohmann::json report_to_json(const MetricReport& report);

std::string report_csv_header();
void append_report_csv_row(std::string& out, std::string_view id,
                           const MetricReport& report);

}  // namespace amnlt
