#include "multistable/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace multistable {

AlphaFunction AlphaConfig::build(double horizon) const {
  AlphaFunction f = [&] {
    if (kind == "constant") return AlphaFunction::constant(a0, horizon);
    if (kind == "affine") return AlphaFunction::affine(a0, a1, horizon);
    if (kind == "sinusoidal")
      return AlphaFunction::sinusoidal(a0, a1, freq, phase, horizon);
    if (kind == "table") {
      if (knots.empty())
        throw ConfigError("alpha table kind needs knots and values arrays");
      if (knots.back() != horizon)
        throw ConfigError("alpha table: last knot must equal T");
      return AlphaFunction::from_table(knots, values);
    }
    throw ConfigError("unknown alpha kind '" + kind + "'");
  }();
  if (c && d) f.declare_bounds(*c, *d);
  return f;
}

Kernel KernelConfig::build(double horizon) const {
  Kernel k = [&] {
    if (kind == "indicator") return Kernel::indicator();
    if (kind == "min") {
      Kernel m = Kernel::min_kernel();
      m.l_inf = horizon;
      return m;
    }
    if (kind == "zero") return Kernel::zero();
    throw ConfigError("unknown kernel kind '" + kind + "'");
  }();
  k.p_exponent = p_exponent;
  return k;
}

ProcessKind CampaignConfig::process_kind() const {
  if (process == "independent") return ProcessKind::kIndependent;
  if (process == "field_based") return ProcessKind::kFieldBased;
  if (process == "general") return ProcessKind::kGeneral;
  throw ConfigError("unknown process '" + process + "'");
}

void CampaignConfig::validate() const {
  process_kind();
  if (!(horizon > 0.0)) throw ConfigError("T must be positive");
  if (n_terms < 1) throw ConfigError("n_terms must be >= 1");
  if (n_paths < 1) throw ConfigError("n_paths must be >= 1");
  if (grid_points < 2) throw ConfigError("grid_points must be >= 2");
  if (!(thresholds.cf_sup > 0.0 && thresholds.ks_p > 0.0))
    throw ConfigError("check thresholds must be positive");
  if (process == "general" && !kernel)
    throw ConfigError("process = \"general\" requires a kernel block");
  alpha.build(horizon);  // surfaces alpha parameter errors early
}

// ---------------------------------------------------------------------------
// Text format parser.
// ---------------------------------------------------------------------------

namespace {

struct Value {
  enum class Type { kNumber, kString, kBool, kTable, kArray } type;
  double num = 0.0;
  bool boolean = false;
  std::string str;
  std::map<std::string, Value> table;
  std::vector<double> array;
};

class LineParser {
 public:
  LineParser(const std::string& text, int line, const std::string& origin)
      : s_(text), line_(line), origin_(origin) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(origin_ + ":" + std::to_string(line_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool done() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
            s_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  Value value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected a value");
    const char c = s_[pos_];
    Value v;
    if (c == '"') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
      if (pos_ >= s_.size()) fail("unterminated string");
      v.type = Value::Type::kString;
      v.str = s_.substr(start, pos_ - start);
      ++pos_;
      return v;
    }
    if (c == '{') {
      ++pos_;
      v.type = Value::Type::kTable;
      if (peek() != '}') {
        for (;;) {
          std::string k = ident();
          expect('=');
          v.table[k] = value();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
      }
      expect('}');
      return v;
    }
    if (c == '[') {
      ++pos_;
      v.type = Value::Type::kArray;
      if (peek() != ']') {
        for (;;) {
          Value e = value();
          if (e.type != Value::Type::kNumber)
            fail("arrays may contain only numbers");
          v.array.push_back(e.num);
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
      }
      expect(']');
      return v;
    }
    if (s_.compare(pos_, 4, "true") == 0) {
      v.type = Value::Type::kBool;
      v.boolean = true;
      pos_ += 4;
      return v;
    }
    if (s_.compare(pos_, 5, "false") == 0) {
      v.type = Value::Type::kBool;
      v.boolean = false;
      pos_ += 5;
      return v;
    }
    // number
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != ',' && s_[pos_] != '}' && s_[pos_] != ']' &&
           s_[pos_] != '#')
      ++pos_;
    try {
      std::size_t used = 0;
      v.num = std::stod(s_.substr(start, pos_ - start), &used);
      if (used != pos_ - start) fail("malformed number");
    } catch (const ConfigError&) {
      throw;
    } catch (...) {
      fail("malformed value '" + s_.substr(start, pos_ - start) + "'");
    }
    v.type = Value::Type::kNumber;
    return v;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
  std::string origin_;
};

double as_number(const Value& v, const std::string& key, int line,
                 const std::string& origin) {
  if (v.type != Value::Type::kNumber)
    throw ConfigError(origin + ":" + std::to_string(line) + ": key '" + key +
                      "' expects a number");
  return v.num;
}

std::string as_string(const Value& v, const std::string& key, int line,
                      const std::string& origin) {
  if (v.type != Value::Type::kString)
    throw ConfigError(origin + ":" + std::to_string(line) + ": key '" + key +
                      "' expects a string");
  return v.str;
}

void apply_alpha_table(AlphaConfig& alpha, const Value& v, int line,
                       const std::string& origin) {
  if (v.type != Value::Type::kTable)
    throw ConfigError(origin + ":" + std::to_string(line) +
                      ": alpha expects a { ... } block");
  for (const auto& [k, val] : v.table) {
    if (k == "kind") alpha.kind = as_string(val, k, line, origin);
    else if (k == "a0") alpha.a0 = as_number(val, k, line, origin);
    else if (k == "a1") alpha.a1 = as_number(val, k, line, origin);
    else if (k == "freq") alpha.freq = as_number(val, k, line, origin);
    else if (k == "phase") alpha.phase = as_number(val, k, line, origin);
    else if (k == "c") alpha.c = as_number(val, k, line, origin);
    else if (k == "d") alpha.d = as_number(val, k, line, origin);
    else if (k == "knots") alpha.knots = val.array;
    else if (k == "values") alpha.values = val.array;
    else
      throw ConfigError(origin + ":" + std::to_string(line) +
                        ": unknown alpha key '" + k + "'");
  }
}

void apply_kernel_table(KernelConfig& kernel, const Value& v, int line,
                        const std::string& origin) {
  if (v.type != Value::Type::kTable)
    throw ConfigError(origin + ":" + std::to_string(line) +
                      ": kernel expects a { ... } block");
  for (const auto& [k, val] : v.table) {
    if (k == "kind") kernel.kind = as_string(val, k, line, origin);
    else if (k == "p") kernel.p_exponent = as_number(val, k, line, origin);
    else
      throw ConfigError(origin + ":" + std::to_string(line) +
                        ": unknown kernel key '" + k + "'");
  }
}

void apply_thresholds(CheckThresholds& th, const Value& v, int line,
                      const std::string& origin) {
  if (v.type != Value::Type::kTable)
    throw ConfigError(origin + ":" + std::to_string(line) +
                      ": thresholds expects a { ... } block");
  for (const auto& [k, val] : v.table) {
    if (k == "cf_sup") th.cf_sup = as_number(val, k, line, origin);
    else if (k == "ks_p") th.ks_p = as_number(val, k, line, origin);
    else
      throw ConfigError(origin + ":" + std::to_string(line) +
                        ": unknown threshold key '" + k + "'");
  }
}

}  // namespace

CampaignConfig parse_config_text(const std::string& text,
                                 const std::string& origin) {
  CampaignConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    LineParser lp(raw, line_no, origin);
    if (lp.done()) continue;
    const std::string key = lp.ident();
    lp.expect('=');
    const Value v = lp.value();
    if (!lp.done()) lp.fail("trailing characters after the value");

    if (key == "process") cfg.process = as_string(v, key, line_no, origin);
    else if (key == "T") cfg.horizon = as_number(v, key, line_no, origin);
    else if (key == "n_terms")
      cfg.n_terms = static_cast<int>(as_number(v, key, line_no, origin));
    else if (key == "n_paths")
      cfg.n_paths = static_cast<int>(as_number(v, key, line_no, origin));
    else if (key == "grid_points")
      cfg.grid_points = static_cast<int>(as_number(v, key, line_no, origin));
    else if (key == "seed")
      cfg.seed =
          static_cast<std::uint64_t>(as_number(v, key, line_no, origin));
    else if (key == "output_dir")
      cfg.output_dir = as_string(v, key, line_no, origin);
    else if (key == "alpha")
      apply_alpha_table(cfg.alpha, v, line_no, origin);
    else if (key == "kernel") {
      KernelConfig kc;
      apply_kernel_table(kc, v, line_no, origin);
      cfg.kernel = kc;
    } else if (key == "thresholds")
      apply_thresholds(cfg.thresholds, v, line_no, origin);
    else if (key == "inject_alpha_mismatch") {
      if (v.type != Value::Type::kBool)
        throw ConfigError(origin + ":" + std::to_string(line_no) +
                          ": inject_alpha_mismatch expects true/false");
      cfg.inject_alpha_mismatch = v.boolean;
    } else
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
  }
  return cfg;
}

namespace {

CampaignConfig parse_config_json(const std::string& text,
                                 const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  CampaignConfig cfg;
  try {
    if (j.contains("process")) cfg.process = j["process"].get<std::string>();
    if (j.contains("T")) cfg.horizon = j["T"].get<double>();
    if (j.contains("n_terms")) cfg.n_terms = j["n_terms"].get<int>();
    if (j.contains("n_paths")) cfg.n_paths = j["n_paths"].get<int>();
    if (j.contains("grid_points"))
      cfg.grid_points = j["grid_points"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_dir"))
      cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("inject_alpha_mismatch"))
      cfg.inject_alpha_mismatch = j["inject_alpha_mismatch"].get<bool>();
    if (j.contains("alpha")) {
      const auto& a = j["alpha"];
      if (a.contains("kind")) cfg.alpha.kind = a["kind"].get<std::string>();
      if (a.contains("a0")) cfg.alpha.a0 = a["a0"].get<double>();
      if (a.contains("a1")) cfg.alpha.a1 = a["a1"].get<double>();
      if (a.contains("freq")) cfg.alpha.freq = a["freq"].get<double>();
      if (a.contains("phase")) cfg.alpha.phase = a["phase"].get<double>();
      if (a.contains("c")) cfg.alpha.c = a["c"].get<double>();
      if (a.contains("d")) cfg.alpha.d = a["d"].get<double>();
      if (a.contains("knots"))
        cfg.alpha.knots = a["knots"].get<std::vector<double>>();
      if (a.contains("values"))
        cfg.alpha.values = a["values"].get<std::vector<double>>();
    }
    if (j.contains("kernel")) {
      KernelConfig kc;
      const auto& k = j["kernel"];
      if (k.contains("kind")) kc.kind = k["kind"].get<std::string>();
      if (k.contains("p")) kc.p_exponent = k["p"].get<double>();
      cfg.kernel = kc;
    }
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      if (t.contains("cf_sup"))
        cfg.thresholds.cf_sup = t["cf_sup"].get<double>();
      if (t.contains("ks_p")) cfg.thresholds.ks_p = t["ks_p"].get<double>();
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

}  // namespace

CampaignConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (file.extension() == ".json")
    return parse_config_json(buf.str(), file.string());
  return parse_config_text(buf.str(), file.string());
}

std::string config_to_json(const CampaignConfig& cfg) {
  nlohmann::json j;
  j["process"] = cfg.process;
  j["T"] = cfg.horizon;
  j["n_terms"] = cfg.n_terms;
  j["n_paths"] = cfg.n_paths;
  j["grid_points"] = cfg.grid_points;
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  nlohmann::json a;
  a["kind"] = cfg.alpha.kind;
  a["a0"] = cfg.alpha.a0;
  a["a1"] = cfg.alpha.a1;
  a["freq"] = cfg.alpha.freq;
  a["phase"] = cfg.alpha.phase;
  if (cfg.alpha.c) a["c"] = *cfg.alpha.c;
  if (cfg.alpha.d) a["d"] = *cfg.alpha.d;
  if (!cfg.alpha.knots.empty()) {
    a["knots"] = cfg.alpha.knots;
    a["values"] = cfg.alpha.values;
  }
  j["alpha"] = a;
  if (cfg.kernel) {
    nlohmann::json k;
    k["kind"] = cfg.kernel->kind;
    k["p"] = cfg.kernel->p_exponent;
    j["kernel"] = k;
  }
  j["thresholds"] = {{"cf_sup", cfg.thresholds.cf_sup},
                     {"ks_p", cfg.thresholds.ks_p}};
  if (cfg.inject_alpha_mismatch) j["inject_alpha_mismatch"] = true;
  return j.dump(2);
}

}  // namespace multistable
