#include "tfx/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tfx/error.hpp"

namespace tfx::io {

json to_json(const FnTable& f) {
  json j;
  j["m"] = f.alphabet();
  j["memory"] = f.memory();
  j["values"] = f.values();
  return j;
}

json to_json(const MarkovMeasure& mu) {
  json j;
  j["m"] = mu.alphabet();
  j["order"] = mu.order();
  j["pi"] = mu.pi();
  json rows = json::array();
  const Matrix& t = mu.trans();
  for (std::size_t r = 0; r < t.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < t.cols(); ++c) row.push_back(t(r, c));
    rows.push_back(std::move(row));
  }
  j["trans"] = std::move(rows);
  return j;
}

json to_json(const ConstraintProblem& p) {
  json j;
  j["B"] = to_json(p.base);
  json phi = json::array();
  for (const FnTable& f : p.phi) phi.push_back(to_json(f));
  j["Phi"] = std::move(phi);
  j["target"] = p.target;
  return j;
}

namespace {

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::ParseError, std::string(what) + " is missing field '" + key + "'");
  return j.at(key);
}

std::size_t as_size(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw Error(ErrorKind::ParseError, std::string(what) + "." + key + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<double> as_reals(const json& v, const std::string& what) {
  if (!v.is_array()) throw Error(ErrorKind::ParseError, what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) throw Error(ErrorKind::ParseError, what + " must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

FnTable fn_table_from_json(const json& j) {
  const std::size_t m = as_size(j, "m", "FnTable");
  const std::size_t memory = as_size(j, "memory", "FnTable");
  return FnTable(m, memory, as_reals(field(j, "values", "FnTable"), "FnTable.values"));
}

MarkovMeasure measure_from_json(const json& j) {
  const std::size_t m = as_size(j, "m", "MarkovMeasure");
  const std::size_t order = as_size(j, "order", "MarkovMeasure");
  std::vector<double> pi = as_reals(field(j, "pi", "MarkovMeasure"), "MarkovMeasure.pi");
  const json& rows = field(j, "trans", "MarkovMeasure");
  if (!rows.is_array() || rows.size() != pi.size())
    throw Error(ErrorKind::ParseError, "MarkovMeasure.trans must be a square array matching pi");
  Matrix t(pi.size(), pi.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<double> row = as_reals(rows[r], "MarkovMeasure.trans row");
    if (row.size() != pi.size()) throw Error(ErrorKind::ParseError, "MarkovMeasure.trans must be square");
    for (std::size_t c = 0; c < row.size(); ++c) t(r, c) = row[c];
  }
  return MarkovMeasure(m, order, std::move(pi), std::move(t));
}

ConstraintProblem problem_from_json(const json& j) {
  ConstraintProblem p;
  p.base = fn_table_from_json(field(j, "B", "problem"));
  const json& phi = field(j, "Phi", "problem");
  if (!phi.is_array()) throw Error(ErrorKind::ParseError, "problem.Phi must be an array of FnTables");
  for (const json& f : phi) p.phi.push_back(fn_table_from_json(f));
  if (j.contains("target")) p.target = as_reals(j.at("target"), "problem.target");
  else p.target.assign(p.phi.size(), 0.0);
  p.validate();
  return p;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  // std::to_chars ignores the C locale, so the separator is always '.'.
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header, std::string comment) : columns_(header.size()) {
  if (!comment.empty()) text_ += "# " + comment + "\n";
  add(std::move(header));
}

CsvWriter& CsvWriter::add(std::vector<std::string> row) {
  if (row.size() != columns_) throw Error(ErrorKind::InvalidArgument, "CSV row width differs from header");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) text_ += ',';
    text_ += row[i];
  }
  text_ += '\n';
  return *this;
}

std::string CsvWriter::str() const { return text_; }

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace tfx::io
