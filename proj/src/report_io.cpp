#include "amnlt/report_io.hpp"

#include <cstdio>

namespace amnlt {

namespace {

nlohmann::json rate_or_null(const MetricValue& value) {
  if (value.defined()) return value.rate();
  return nullptr;
}

std::string format_rate(double rate) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", rate);
  return buffer;
}

}  // namespace

nlohmann::json report_to_json(const MetricReport& report) {
  nlohmann::json object;
  object["mer"] = rate_or_null(report.mer);
  object["mer_edits"] = report.mer.edits;
  object["mer_ref_len"] = report.mer.ref_len;
  object["cer"] = rate_or_null(report.cer);
  object["cer_edits"] = report.cer.edits;
  object["cer_ref_len"] = report.cer.ref_len;
  object["syler"] = rate_or_null(report.syler);
  object["syler_edits"] = report.syler.edits;
  object["syler_ref_len"] = report.syler.ref_len;
  object["amler"] = rate_or_null(report.amler);
  object["amler_edits"] = report.amler.edits;
  object["amler_ref_len"] = report.amler.ref_len;
  object["bwer"] = rate_or_null(report.bwer);
  object["bwer_edits"] = report.bwer.edits;
  object["bwer_ref_len"] = report.bwer.ref_len;
  if (report.aler) {
    object["aler"] = *report.aler;
  } else {
    object["aler"] = nullptr;
  }
  return object;
}

std::string report_csv_header() {
  return
      "id,mer,cer,syler,amler,bwer,aler,"
      "mer_edits,mer_ref_len,cer_edits,cer_ref_len,syler_edits,syler_ref_len,"
      "amler_edits,amler_ref_len,bwer_edits,bwer_ref_len\n";
}

void append_report_csv_row(std::string& out, std::string_view id,
                           const MetricReport& report) {
  out += id;
  for (const MetricValue* value :
       {&report.mer, &report.cer, &report.syler, &report.amler, &report.bwer}) {
    out += ',';
    if (value->defined()) out += format_rate(value->rate());
  }
  out += ',';
  if (report.aler) out += format_rate(*report.aler);
  for (const MetricValue* value :
       {&report.mer, &report.cer, &report.syler, &report.amler, &report.bwer}) {
    out += ',' + std::to_string(value->edits);
    out += ',' + std::to_string(value->ref_len);
  }
  out += '\n';
}

}  // namespace amnlt
