#include "qdom/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace qdom::report {

using nlohmann::json;

CheckStatus VerificationReport::overall() const {
  CheckStatus out = CheckStatus::Pass;
  for (const Record& r : records) {
    if (r.status == CheckStatus::Fail) return CheckStatus::Fail;
    if (r.status == CheckStatus::Inconclusive) out = CheckStatus::Inconclusive;
  }
  return out;
}

std::size_t VerificationReport::count(CheckStatus s) const {
  std::size_t c = 0;
  for (const Record& r : records)
    if (r.status == s) ++c;
  return c;
}

std::string record_to_json(const Record& r) {
  json j;
  j["lemma"] = r.lemma;
  j["params"] = json::parse(r.params_json);
  j["status"] = spectra::status_name(r.status);
  if (!r.graph6.empty()) j["graph6"] = r.graph6;
  if (r.gamma) j["gamma"] = *r.gamma;
  if (r.q_min) j["q_min"] = *r.q_min;
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump();
}

std::string VerificationReport::to_jsonl() const {
  std::ostringstream os;
  for (const Record& r : records) os << record_to_json(r) << "\n";
  return os.str();
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << id << ": " << records.size() << " checks, " << count(CheckStatus::Pass)
     << " pass, " << count(CheckStatus::Fail) << " fail, "
     << count(CheckStatus::Inconclusive) << " inconclusive";
  return os.str();
}

}  // namespace qdom::report
