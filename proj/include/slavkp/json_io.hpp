#pragma once

// JSON forms of scalars, partitions, Schur coefficient maps and Bethe
// solutions, plus the suite configuration schema.

#include <slavkp/bethe.hpp>
#include <slavkp/partition.hpp>
#include <slavkp/scalar.hpp>
#include <slavkp/schur.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace slavkp {

using json = nlohmann::ordered_json;

/// "p/q", "(a,b|d)" or a decimal, depending on the field.
template <class T>
std::string scalar_string(const T& x) {
  return field_traits<T>::to_string(x);
}

/// Scalars are read from strings; integers and decimals given as JSON numbers are
/// read exactly from their printed form.
template <class T>
T parse_scalar(const json& j) {
  if (j.is_string()) return field_traits<T>::parse(j.get<std::string>());
  if (j.is_number_integer()) return from_int<T>(j.get<long>());
  if (j.is_number_float()) return field_traits<T>::parse(j.dump());
  throw std::invalid_argument("expected a scalar, got " + j.dump());
}

/// "(re,im)", "re", or a two-element array [re, im].
inline Complex parse_complex(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw std::invalid_argument("complex value needs [re, im]");
    return Complex(parse_scalar<Real>(j[0]), parse_scalar<Real>(j[1]));
  }
  if (!j.is_string()) return Complex(parse_scalar<Real>(j));
  std::string s = j.get<std::string>();
  if (!s.empty() && s.front() == '(') {
    auto comma = s.find(',');
    if (comma == std::string::npos || s.back() != ')') throw std::invalid_argument("malformed complex literal '" + s + "'");
    return Complex(field_traits<Real>::parse(s.substr(1, comma - 1)),
                   field_traits<Real>::parse(s.substr(comma + 1, s.size() - comma - 2)));
  }
  return Complex(field_traits<Real>::parse(s));
}

inline json partition_json(const Partition& lambda) { return json(lambda.parts()); }

/// [{partition: [parts], coeff}], ordered by size and then by parts.
template <class T>
json schur_map_json(const SchurCoeffMap<T>& c) {
  std::vector<std::pair<Partition, T>> rows(c.entries.begin(), c.entries.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first.parts() > b.first.parts();
  });
  json out = json::array();
  for (const auto& [lambda, coef] : rows) out.push_back({{"partition", partition_json(lambda)}, {"coeff", scalar_string(coef)}});
  return out;
}

template <class T>
json scalar_list_json(const std::vector<T>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(scalar_string(x));
  return out;
}

inline std::string real_string(const Real& x) { return x.str(6, std::ios_base::scientific); }

inline json bethe_solution_json(const BetheSolution& s) {
  return {{"roots", scalar_list_json(s.roots)},
          {"residual", real_string(s.residual)},
          {"crossing_residual", real_string(s.crossing_residual)},
          {"converged", s.converged},
          {"iterations", s.iterations},
          {"diagnostics", s.diagnostics}};
}

// ---------------------------------------------------------------------------
// Suite configuration

/// Invalid configuration; keys() names every offending entry.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::vector<std::string> keys, const std::string& message)
      : std::invalid_argument(message), keys_(std::move(keys)) {}
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"theorem-quotient", "pluecker",    "integral-rep",   "lambda-structure",
                                              "hirota",           "schur-expansion", "diagram-counts", "andreev",
                                              "bethe"};
  return names;
}

struct SuiteConfig {
  FieldMode field_mode = FieldMode::rational;
  int N = 3;
  int M = 2;
  int spin_twice = 1;
  std::optional<json> Q;
  std::optional<json> q;
  int q_branch = 1;
  std::optional<std::vector<json>> u;
  std::optional<std::vector<json>> v;
  int instances = 5;
  std::uint64_t seed = 1;
  int series_order = 8;
  int miwa_cutoff = 8;
  int schur_cutoff = 6;
  int lambda1_max = 5;
  std::vector<std::string> checks = known_checks();
  std::optional<std::string> output;
  std::vector<std::vector<json>> guesses;

  static SuiteConfig from_json(const json& j);
  json to_json() const;
};

inline SuiteConfig SuiteConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError({"<root>"}, "config must be a JSON object");
  static const std::set<std::string> allowed{"N",         "M",           "spin_twice",   "Q",           "q",
                                             "q_branch",  "u",           "v",            "field_mode",  "instances",
                                             "seed",      "series_order", "miwa_cutoff", "schur_cutoff", "lambda1_max",
                                             "checks",    "output",      "guesses"};
  SuiteConfig c;
  std::vector<std::string> bad;
  std::vector<std::string> why;
  auto fail = [&](const std::string& key, const std::string& msg) {
    bad.push_back(key);
    why.push_back(key + ": " + msg);
  };
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail(key, "unknown key");

  auto get_int = [&](const char* key, int& out, int lo, int hi) {
    if (!j.contains(key)) return;
    const auto& x = j.at(key);
    if (!x.is_number_integer()) return fail(key, "expected an integer");
    long val = x.get<long>();
    if (val < lo || val > hi) return fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    out = static_cast<int>(val);
  };
  get_int("N", c.N, 1, 64);
  get_int("M", c.M, 0, 64);
  get_int("spin_twice", c.spin_twice, 1, 64);
  get_int("q_branch", c.q_branch, -1, 1);
  get_int("instances", c.instances, 0, 100000);
  get_int("series_order", c.series_order, 0, 200);
  get_int("miwa_cutoff", c.miwa_cutoff, 1, 16);
  get_int("schur_cutoff", c.schur_cutoff, 0, 16);
  get_int("lambda1_max", c.lambda1_max, 0, 400);
  if (j.contains("q_branch") && c.q_branch == 0) fail("q_branch", "must be +1 or -1");
  if (c.M > c.N && j.contains("M")) fail("M", "must not exceed N");

  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (s.is_number_unsigned()) c.seed = s.get<std::uint64_t>();
    else if (s.is_number_integer() && s.get<long>() >= 0) c.seed = static_cast<std::uint64_t>(s.get<long>());
    else fail("seed", "expected a nonnegative integer");
  }
  if (j.contains("field_mode")) {
    try {
      c.field_mode = parse_field_mode(j.at("field_mode").get<std::string>());
    } catch (const std::exception&) {
      fail("field_mode", "expected one of rational, quadratic, float");
    }
  }
  auto scalar_ok = [](const json& x) { return x.is_string() || x.is_number(); };
  for (const char* key : {"Q", "q"}) {
    if (!j.contains(key)) continue;
    if (!scalar_ok(j.at(key))) fail(key, "expected a scalar string or number");
    else (std::string(key) == "Q" ? c.Q : c.q) = j.at(key);
  }
  if (!c.Q && !c.q) fail("Q", "one of Q or q is required");
  if (!c.Q && c.q && c.spin_twice != 1) fail("Q", "required unless spin_twice = 1");
  for (const char* key : {"u", "v"}) {
    if (!j.contains(key)) continue;
    const auto& x = j.at(key);
    if (!x.is_array() || !std::all_of(x.begin(), x.end(), scalar_ok)) {
      fail(key, "expected a list of scalars");
      continue;
    }
    if (static_cast<int>(x.size()) != c.M) {
      fail(key, "expected M = " + std::to_string(c.M) + " entries");
      continue;
    }
    (std::string(key) == "u" ? c.u : c.v) = std::vector<json>(x.begin(), x.end());
  }
  if (j.contains("checks")) {
    const auto& x = j.at("checks");
    if (!x.is_array()) {
      fail("checks", "expected a list of check names");
    } else {
      c.checks.clear();
      for (const auto& name : x) {
        if (!name.is_string() ||
            std::find(known_checks().begin(), known_checks().end(), name.get<std::string>()) == known_checks().end())
          fail("checks", "unknown check " + name.dump());
        else
          c.checks.push_back(name.get<std::string>());
      }
    }
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) fail("output", "expected a path string");
    else c.output = j.at("output").get<std::string>();
  }
  if (j.contains("guesses")) {
    const auto& x = j.at("guesses");
    bool ok = x.is_array();
    if (ok) {
      for (const auto& g : x) {
        if (!g.is_array() || static_cast<int>(g.size()) != c.M) {
          ok = false;
          break;
        }
        try {
          for (const auto& z : g) (void)parse_complex(z);
        } catch (const std::exception&) {
          ok = false;
          break;
        }
        c.guesses.emplace_back(g.begin(), g.end());
      }
    }
    if (!ok) fail("guesses", "expected a list of M-element lists of complex values");
  }
  if (!bad.empty()) {
    std::string msg = "invalid config:";
    for (const auto& w : why) msg += "\n  " + w;
    throw ConfigError(bad, msg);
  }
  return c;
}

inline json SuiteConfig::to_json() const {
  json j;
  j["field_mode"] = to_string(field_mode);
  j["N"] = N;
  j["M"] = M;
  j["spin_twice"] = spin_twice;
  if (Q) j["Q"] = *Q;
  if (q) j["q"] = *q;
  j["q_branch"] = q_branch;
  if (u) j["u"] = *u;
  if (v) j["v"] = *v;
  j["instances"] = instances;
  j["seed"] = seed;
  j["series_order"] = series_order;
  j["miwa_cutoff"] = miwa_cutoff;
  j["schur_cutoff"] = schur_cutoff;
  j["lambda1_max"] = lambda1_max;
  j["checks"] = checks;
  if (output) j["output"] = *output;
  if (!guesses.empty()) j["guesses"] = guesses;
  return j;
}

}  // namespace slavkp
