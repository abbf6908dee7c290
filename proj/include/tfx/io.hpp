#pragma once
// JSON and CSV plumbing for the command-line front end.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tfx/equilibria.hpp"
#include "tfx/gibbs.hpp"
#include "tfx/sft.hpp"

namespace tfx::io {

using json = nlohmann::ordered_json;

json to_json(const FnTable& f);
json to_json(const MarkovMeasure& mu);
json to_json(const ConstraintProblem& p);

FnTable fn_table_from_json(const json& j);
MarkovMeasure measure_from_json(const json& j);
ConstraintProblem problem_from_json(const json& j);

// Throws ParseError with the path in the message.
json read_json(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);
// Writes bytes verbatim (LF line endings are the caller's).
void write_text(const std::filesystem::path& path, std::string_view text);
void write_json(const std::filesystem::path& path, const json& j);

// %.17g with '.' as decimal separator regardless of locale; "nan", "inf", "-inf".
std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header, std::string comment = {});
  CsvWriter& add(std::vector<std::string> row);
  std::string str() const;

 private:
  std::size_t columns_;
  std::string text_;
};

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

}  // namespace tfx::io
