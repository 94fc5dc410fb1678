#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdom/spectra.hpp"

namespace qdom::report {

using spectra::CheckStatus;

struct Record {
  std::string lemma;
  std::string params_json = "{}";  // compact JSON object
  CheckStatus status = CheckStatus::Pass;
  std::string graph6;              // witness / subject graph
  std::optional<int> gamma;
  std::optional<double> q_min;
  std::string note;
};

struct VerificationReport {
  std::string id;
  std::vector<Record> records;

  CheckStatus overall() const;
  std::size_t count(CheckStatus s) const;
  std::string to_jsonl() const;  // one JSON object per record
  std::string summary() const;
};

std::string record_to_json(const Record& r);

}  // namespace qdom::report
