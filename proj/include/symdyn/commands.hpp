#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symdyn/document.hpp"

namespace symdyn {

struct CommandOptions {
  std::optional<std::size_t> cap;
  std::optional<std::string> y;
  std::optional<std::vector<std::size_t>> order;
  std::optional<std::vector<std::string>> reps;
  std::optional<std::string> potential;
  std::optional<std::string> family;
  std::optional<std::string> vector;
  std::optional<std::string> kind;
  std::optional<std::size_t> window;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::string>> words;
  std::size_t threads = 1;
};

/// Names accepted by run_command.
const std::vector<std::string>& command_names();

/// Runs one command and returns its structured report. `document` may be
/// null for `closed-form` and `estimate`. Precondition failures surface as
/// symdyn::Error.
nlohmann::ordered_json run_command(const std::string& command, const ProblemDocument* document,
                                   const CommandOptions& options);

/// Human-oriented rendering of a report (one "key: value" line per field).
std::string render_text(const nlohmann::ordered_json& report);

/// {"error": {"kind": ..., "message": ...}}
nlohmann::ordered_json error_object(const std::string& kind, const std::string& message);

}  // namespace symdyn
