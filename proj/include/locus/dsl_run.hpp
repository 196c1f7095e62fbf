#pragma once

// Executes the queries of a document and renders reports as text or JSON.

#include <string>
#include <vector>

#include "json.hpp"
#include "locus/dsl.hpp"
#include "locus/theorems.hpp"

namespace locus::dsl {

inline constexpr const char* kReportSchema = "locus-report/1";

enum class Status { Ok, Violation, Error };
std::string status_name(Status s);

struct QueryResult {
  std::string query;
  int line = 0;
  Status status = Status::Ok;
  /// Error kind name when status is Error ("usage", "precondition", ...).
  std::string error_kind;
  nlohmann::ordered_json result;
  std::vector<std::string> text;
  double elapsed_ms = 0;
};

struct Report {
  std::vector<QueryResult> results;
  /// 0 ok, 1 a violation or internal error, 2 a usage/precondition error.
  int exit_code() const;
};

struct RunOptions {
  bool parallel = false;
  VerifyOptions verify;
};

Report run(const Document& d, const RunOptions& options = {});

nlohmann::ordered_json to_json(const Report& r, bool timing = true);
std::string to_text(const Report& r);

}  // namespace locus::dsl
