#include "fse/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fse {

namespace {

using nlohmann::json;

// Byte offset -> 1-based line/column.
std::pair<int, int> position_of(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = position_of(text, e.byte);
    throw IoError(IoError::Kind::parse, e.what(), line, col);
  }
}

void require_keys(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw IoError(IoError::Kind::shape, "document root must be an object");
  for (const char* k : keys)
    if (!j.contains(k))
      throw IoError(IoError::Kind::shape, std::string("missing key \"") + k + "\"");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw IoError(IoError::Kind::shape, "unknown key \"" + it.key() + "\"");
  }
}

int read_n(const json& j) {
  const json& n = j.at("n");
  if (!n.is_number_integer()) throw IoError(IoError::Kind::shape, "\"n\" must be an integer");
  long long v = n.get<long long>();
  if (v < 1 || v > 4096)
    throw IoError(IoError::Kind::range, "\"n\" must be between 1 and 4096, got " +
                                            std::to_string(v));
  return (int)v;
}

int read_entry(const json& cell, int n, const std::string& where) {
  if (!cell.is_number_integer())
    throw IoError(IoError::Kind::shape, where + " must be an integer");
  long long v = cell.get<long long>();
  if (v < 0 || v >= n)
    throw IoError(IoError::Kind::range, where + " is " + std::to_string(v) +
                                            ", outside [0, " + std::to_string(n) + ")");
  return (int)v;
}

std::vector<int> read_matrix(const json& j, const char* key, int n) {
  const json& rows = j.at(key);
  if (!rows.is_array() || (int)rows.size() != n)
    throw IoError(IoError::Kind::shape,
                  std::string("\"") + key + "\" must be an array of " + std::to_string(n) +
                      " rows");
  std::vector<int> out(n * n);
  for (int x = 0; x < n; ++x) {
    const json& row = rows[x];
    if (!row.is_array() || (int)row.size() != n)
      throw IoError(IoError::Kind::shape, std::string("\"") + key + "\" row " +
                                              std::to_string(x) + " must have " +
                                              std::to_string(n) + " entries");
    for (int y = 0; y < n; ++y)
      out[x * n + y] = read_entry(row[y], n,
                                  std::string("\"") + key + "\"[" + std::to_string(x) + "][" +
                                      std::to_string(y) + "]");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

json matrix_json(const std::vector<int>& m, int n) {
  json rows = json::array();
  for (int x = 0; x < n; ++x) {
    json row = json::array();
    for (int y = 0; y < n; ++y) row.push_back(m[x * n + y]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string solution_to_text(const PairMap& pm) {
  json j;
  j["n"] = pm.n;
  j["l"] = matrix_json(pm.l, pm.n);
  j["r"] = matrix_json(pm.r, pm.n);
  return j.dump(2) + "\n";
}

PairMap solution_from_text(const std::string& text) {
  json j = parse_document(text);
  require_keys(j, {"l", "n", "r"});
  int n = read_n(j);
  std::vector<int> l = read_matrix(j, "l", n);
  std::vector<int> r = read_matrix(j, "r", n);
  return PairMap(n, std::move(l), std::move(r));
}

std::string endo_to_text(const EndoMap& f) {
  json j;
  j["n"] = f.n;
  j["f"] = f.f;
  return j.dump(2) + "\n";
}

EndoMap endo_from_text(const std::string& text) {
  json j = parse_document(text);
  require_keys(j, {"f", "n"});
  int n = read_n(j);
  const json& arr = j.at("f");
  if (!arr.is_array() || (int)arr.size() != n)
    throw IoError(IoError::Kind::shape,
                  "\"f\" must be an array of " + std::to_string(n) + " entries");
  std::vector<int> f(n);
  for (int x = 0; x < n; ++x)
    f[x] = read_entry(arr[x], n, "\"f\"[" + std::to_string(x) + "]");
  return EndoMap(n, std::move(f));
}

PairMap load_solution_file(const std::string& path) {
  return solution_from_text(read_file(path));
}

void save_solution_file(const std::string& path, const PairMap& pm) {
  write_file(path, solution_to_text(pm));
}

EndoMap load_endo_file(const std::string& path) { return endo_from_text(read_file(path)); }

void save_endo_file(const std::string& path, const EndoMap& f) {
  write_file(path, endo_to_text(f));
}

FileKind probe_file(const std::string& path) {
  json j = parse_document(read_file(path));
  if (j.is_object() && j.contains("l")) return FileKind::solution;
  if (j.is_object() && j.contains("f")) return FileKind::endo;
  throw IoError(IoError::Kind::shape, "document is neither a solution nor an endofunction file");
}

}  // namespace fse
