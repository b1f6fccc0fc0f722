#include "cli_support.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace toda::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) throw UsageError("cannot parse " + what + ": '" + s + "'");
  return v;
}

std::string json_scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + json_scalar_text(v[i]);
    return out;
  }
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

// Recursive descent over: expr := term (('+'|'-') term)*, term := unary ('*' unary)*,
// unary := '-' unary | power, power := atom ('^' integer)?, atom := number | b<k> | '(' expr ')'.
class PolyParser {
 public:
  using MP = MultiPoly<std::complex<double>>;
  PolyParser(const std::string& s, int nvars) : s_(s), m_(nvars) {}

  MP parse() {
    MP r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw UsageError("polynomial '" + s_ + "' at position " + std::to_string(i_) + ": " + msg);
  }
  MP expr() {
    MP r = term();
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }
  MP term() {
    MP r = unary();
    while (eat('*')) r = r * unary();
    return r;
  }
  MP unary() {
    if (eat('-')) return unary() * std::complex<double>(-1.0);
    return power();
  }
  MP power() {
    MP base = atom();
    if (!eat('^')) return base;
    skip();
    std::size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) fail("expected an integer exponent");
    const int e = std::stoi(s_.substr(i_, j - i_));
    i_ = j;
    MP r = MP::constant(m_, 1.0);
    for (int k = 0; k < e; ++k) r = r * base;
    return r;
  }
  MP atom() {
    skip();
    if (eat('(')) {
      MP r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (i_ < s_.size() && s_[i_] == 'b') {
      std::size_t j = i_ + 1;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      if (j == i_ + 1) fail("expected an index after 'b'");
      const int k = std::stoi(s_.substr(i_ + 1, j - i_ - 1));
      if (k < 1 || k > m_) fail("b" + std::to_string(k) + " outside b1..b" + std::to_string(m_));
      i_ = j;
      return MP::elementary(m_, k);
    }
    const char* start = s_.c_str() + i_;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) fail("expected a number, b<k> or '('");
    i_ += static_cast<std::size_t>(end - start);
    return MP::constant(m_, v);
  }

  std::string s_;
  int m_;
  std::size_t i_ = 0;
};

void write_json(std::ostringstream& os, const nlohmann::ordered_json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << nlohmann::json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const auto& v) { return v.is_primitive(); });
      os << (flat ? "[" : "[\n");
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << (flat ? ", " : ",\n");
        if (!flat) os << inner;
        write_json(os, j[k], indent + 1);
      }
      os << (flat ? "]" : "\n" + pad + "]");
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::vector<ConfigEntry> parse_config(const std::string& text) {
  std::vector<ConfigEntry> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(line) + ": expected key=value, got '" + s + "'");
    std::string key = trim(s.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw UsageError("config line " + std::to_string(line) + ": empty key");
    for (char c : key)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'))
        throw UsageError("config line " + std::to_string(line) + ": invalid key '" + key + "'");
    out.push_back({key, value, line});
  }
  return out;
}

std::vector<ConfigEntry> load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError("manifest '" + path + "': " + e.what());
    }
    if (!j.contains("params") || !j["params"].is_object()) throw UsageError("manifest '" + path + "' has no params object");
    std::vector<ConfigEntry> out;
    int k = 0;
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it) out.push_back({it.key(), json_scalar_text(it.value()), ++k});
    return out;
  }
  return parse_config(ss.str());
}

std::vector<double> parse_coefficients(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(item, "coefficient"));
  if (out.empty()) throw UsageError("empty coefficient list");
  return out;
}

MultiPoly<std::complex<double>> parse_symmetric_poly(const std::string& text, int nvars) {
  if (nvars < 1) throw UsageError("polynomial needs at least one variable");
  if (text.find('b') == std::string::npos && text.find(',') != std::string::npos) {
    const std::vector<double> c = parse_coefficients(text);
    using MP = MultiPoly<std::complex<double>>;
    MP r(nvars), pw = MP::constant(nvars, 1.0);
    const MP b1 = MP::elementary(nvars, 1);
    for (double v : c) {
      r += pw * std::complex<double>(v);
      pw = pw * b1;
    }
    return r;
  }
  return PolyParser(text, nvars).parse();
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("grid must be a:b:step, got '" + text + "'");
  const double a = to_double(parts[0], "grid start"), b = to_double(parts[1], "grid end"),
               h = to_double(parts[2], "grid step");
  if (!(h > 0) || b < a) throw UsageError("grid needs step > 0 and end >= start");
  const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
  if (n > 10000000) throw UsageError("grid has too many points");
  std::vector<double> out;
  for (long k = 0; k <= n; ++k) out.push_back(a + h * static_cast<double>(k));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size()) throw UsageError("cannot parse integer '" + item + "'");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::string format_json(const nlohmann::ordered_json& j) {
  std::ostringstream os;
  write_json(os, j, 0);
  os << "\n";
  return os.str();
}

std::vector<double> elementary_symmetric(const std::vector<double>& x) {
  std::vector<double> e(x.size() + 1, 0.0);
  e[0] = 1.0;
  for (double v : x)
    for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] += v * e[k - 1];
  return std::vector<double>(e.begin() + 1, e.end());
}

int worker_count() {
  if (const char* env = std::getenv("TODA_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, 256));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, int workers, const std::function<void(int)>& f) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr error;
  std::mutex m;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace toda::cli
