#include "nprk/serialize.hpp"

#include <cstdio>

#include <json.hpp>

#include "nprk/errors.hpp"

namespace nprk {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string method_to_json(const NprkMethod& m, int indent) {
  nlohmann::ordered_json j;
  j["name"] = m.name();
  j["s"] = m.stages();
  auto a = nlohmann::json::array();
  for (const auto& e : m.entries()) a.push_back({e.i, e.j, e.k, format_real(e.value)});
  j["a"] = a;
  auto b = nlohmann::json::array();
  for (int r = 1; r <= m.stages(); ++r) {
    for (int c = 1; c <= m.stages(); ++c) {
      if (m.b(r, c) != 0.0) b.push_back({r, c, format_real(m.b(r, c))});
    }
  }
  j["b"] = b;
  j["class"] = to_string(m.sparsity_class());
  return j.dump(indent);
}

namespace {

double read_value(const nlohmann::json& v) {
  if (v.is_string()) return parse_decimal(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw InvalidMethod("coefficient value must be a string or number");
}

int read_index(const nlohmann::json& v) {
  if (!v.is_number_integer()) throw InvalidMethod("coefficient index must be an integer");
  return v.get<int>();
}

}  // namespace

NprkMethod method_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidMethod(std::string("malformed method JSON: ") + e.what());
  }
  try {
    const auto name = j.at("name").get<std::string>();
    const int s = j.at("s").get<int>();
    if (s < 1) throw InvalidMethod("method '" + name + "': stage count must be positive");
    std::vector<TensorEntry> a;
    for (const auto& row : j.at("a")) {
      if (!row.is_array() || row.size() != 4) {
        throw InvalidMethod("method '" + name + "': a entries are [i, j, k, value]");
      }
      a.push_back({read_index(row[0]), read_index(row[1]), read_index(row[2]),
                   read_value(row[3])});
    }
    const auto n = static_cast<std::size_t>(s);
    RealMatrix b(n, n);
    for (const auto& row : j.at("b")) {
      if (!row.is_array() || row.size() != 3) {
        throw InvalidMethod("method '" + name + "': b entries are [j, k, value]");
      }
      const int r = read_index(row[0]);
      const int c = read_index(row[1]);
      if (r < 1 || r > s || c < 1 || c > s) {
        throw InvalidMethod("method '" + name + "': weight index out of range");
      }
      b(r - 1, c - 1) = read_value(row[2]);
    }
    std::optional<SparsityClass> cls;
    if (j.contains("class")) cls = sparsity_class_from_string(j.at("class").get<std::string>());
    return NprkMethod(name, s, std::move(a), std::move(b), cls);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidMethod(std::string("malformed method JSON: ") + e.what());
  }
}

}  // namespace nprk
