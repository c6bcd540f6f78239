#pragma once

// Configuration-driven verification suite: every check produces records
// {check, params, instance_seed, residual, pass}; checks run in parallel and
// the report lists them in configuration order.

#include <slavkp/bethe.hpp>
#include <slavkp/chain.hpp>
#include <slavkp/diagrams.hpp>
#include <slavkp/json_io.hpp>
#include <slavkp/random.hpp>
#include <slavkp/schur.hpp>
#include <slavkp/tau.hpp>

#include <chrono>
#include <ctime>
#include <functional>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifndef SLAVKP_VERSION
#define SLAVKP_VERSION "0.0.0"
#endif

namespace slavkp {

struct CheckRecord {
  std::string check;
  json params = json::object();
  std::uint64_t instance_seed = 0;
  std::string residual;
  bool pass = false;
  std::string error;
  json details;

  json to_json() const {
    json j{{"check", check}, {"params", params}, {"instance_seed", instance_seed}, {"residual", residual}, {"pass", pass}};
    if (!error.empty()) j["error"] = error;
    if (!details.is_null()) j["details"] = details;
    return j;
  }
};

struct Report {
  std::string version = SLAVKP_VERSION;
  std::string timestamp;
  json config;
  std::vector<CheckRecord> records;
  json data;

  std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
  }
  bool ok() const { return passed() == records.size(); }

  json to_json() const {
    json j{{"tool", "slavkp"}, {"version", version}, {"timestamp", timestamp}, {"config", config}};
    json recs = json::array();
    for (const auto& r : records) recs.push_back(r.to_json());
    j["records"] = recs;
    if (!data.is_null()) j["data"] = data;
    j["summary"] = {{"total", records.size()}, {"passed", passed()}};
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& r : records) {
      os << (r.pass ? "PASS " : "FAIL ") << r.check << ' ' << r.params.dump();
      if (!r.error.empty())
        os << " error: " << r.error;
      else
        os << " residual=" << r.residual;
      os << '\n';
    }
    os << "summary: " << passed() << '/' << records.size() << " passed\n";
    return os.str();
  }
};

inline std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <class T>
ChainParams<T> chain_from_config(const SuiteConfig& c) {
  try {
    if (c.q) {
      T q = parse_scalar<T>(*c.q);
      T Q = c.Q ? parse_scalar<T>(*c.Q) : T(-q);
      return ChainParams<T>(c.N, c.M, c.spin_twice, q, Q);
    }
    return ChainParams<T>::from_boundary(c.N, c.M, c.spin_twice, parse_scalar<Rational>(*c.Q), c.q_branch);
  } catch (const std::exception& e) {
    throw ConfigError({"Q", "q", "spin_twice", "q_branch", "field_mode"},
                      std::string("chain parameters rejected: ") + e.what());
  }
}

/// Rows {lambda1_max, enumerated, closed_form, nested, match} for l = M-1 .. lambda1_max.
/// closed_form is null where the closed form does not apply to the parity of l.
inline json diagram_table(int M, int lambda1_max) {
  json rows = json::array();
  for (int l = std::max(M - 1, 0); l <= lambda1_max; ++l) {
    auto enumerated = static_cast<std::int64_t>(enumerate_admissible(M, l).size());
    std::int64_t nested = count_nested(M, l);
    json closed = nullptr;
    try {
      closed = count_closed(M, l);
    } catch (const std::domain_error&) {
    }
    bool match = enumerated == nested && (closed.is_null() || closed.get<std::int64_t>() == enumerated);
    rows.push_back({{"lambda1_max", l}, {"enumerated", enumerated}, {"closed_form", closed}, {"nested", nested}, {"match", match}});
  }
  return rows;
}

namespace detail {

template <class T>
CheckRecord residual_record(std::string check, json params, std::uint64_t seed, const T& residual, const Real& scale) {
  CheckRecord r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.instance_seed = seed;
  r.residual = scalar_string(residual);
  r.pass = negligible(residual, scale);
  return r;
}

inline CheckRecord error_record(std::string check, json params, std::uint64_t seed, const std::string& what) {
  CheckRecord r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.instance_seed = seed;
  r.error = what;
  return r;
}

/// Exact fields: the first nonzero entry. Float: the entry of largest magnitude.
template <class T>
T combine_residuals(const std::vector<T>& xs) {
  T best = from_int<T>(0);
  for (const auto& x : xs) {
    if constexpr (field_traits<T>::exact) {
      if (!is_zero(x)) return x;
    } else if (magnitude(x) > magnitude(best)) {
      best = x;
    }
  }
  return best;
}

template <class T>
std::vector<T> coefficient_list(const MiwaPolynomial<T>& f) {
  std::vector<T> out;
  for (const auto& [m, c] : f.terms()) out.push_back(c);
  return out;
}

template <class T>
Real max_magnitude(const std::vector<T>& xs) {
  Real m = 0;
  for (const auto& x : xs) m = std::max(m, magnitude(x));
  return m;
}

template <class T>
std::vector<T> without(const std::vector<T>& xs, std::size_t i) {
  std::vector<T> out;
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (k != i) out.push_back(xs[k]);
  return out;
}

template <class T>
CheckRecord theorem_record(const std::string& check, const ChainParams<T>& p, const std::vector<T>& u,
                           const std::vector<T>& v, json params, std::uint64_t seed) {
  T k = kernel(p, u, v);
  T quotient = tau_det(p, 1, u, v) / tau_det(p, 2, u, v);
  params["identity"] = "kernel = tau1/tau2";
  return residual_record(check, std::move(params), seed, T(k - quotient), magnitude(k));
}

template <class T>
std::vector<CheckRecord> pluecker_records(const std::string& check, const ChainParams<T>& p, const std::vector<T>& u,
                                          std::mt19937_64& rng, const json& params, std::uint64_t seed) {
  std::vector<CheckRecord> out;
  auto X = sample_points(p, u, p.M + 1, rng);
  auto Y = p.M >= 1 ? sample_points(p, u, p.M - 1, rng, X) : std::vector<T>{};
  for (int family = 1; family <= 2; ++family) {
    json pr = params;
    pr["identity"] = "pluecker";
    pr["family"] = family;
    pr["X"] = scalar_list_json(X);
    pr["Y"] = scalar_list_json(Y);
    T res = pluecker_residual(p, family, u, X, Y);
    auto with = Y;
    with.push_back(X[0]);
    Real scale = magnitude(T(family_det(p, family, u, without(X, 0)) * family_det(p, family, u, with)));
    out.push_back(residual_record(check, std::move(pr), seed, res, scale));
  }
  return out;
}

template <class T>
std::vector<CheckRecord> integral_records(const std::string& check, const ChainParams<T>& p, const std::vector<T>& u,
                                          const std::vector<T>& v, const json& params, std::uint64_t seed) {
  std::vector<CheckRecord> out;
  for (int family = 1; family <= 2; ++family) {
    json pr = params;
    pr["identity"] = "tau_residue = tau_det";
    pr["family"] = family;
    T direct = tau_det(p, family, u, v);
    T res = tau_residue(p, family, u, v) - direct;
    out.push_back(residual_record(check, std::move(pr), seed, res, magnitude(direct)));
  }
  return out;
}

}  // namespace detail

template <class T>
class SuiteRunner {
 public:
  SuiteRunner(const SuiteConfig& cfg, ChainParams<T> p) : cfg_(cfg), p_(std::move(p)) {}

  std::vector<CheckRecord> run(const std::string& name) const {
    static const std::map<std::string, std::vector<CheckRecord> (SuiteRunner::*)() const> table{
        {"theorem-quotient", &SuiteRunner::theorem_quotient},
        {"pluecker", &SuiteRunner::pluecker},
        {"integral-rep", &SuiteRunner::integral_rep},
        {"lambda-structure", &SuiteRunner::lambda_structure},
        {"hirota", &SuiteRunner::hirota},
        {"schur-expansion", &SuiteRunner::schur_expansion},
        {"diagram-counts", &SuiteRunner::diagram_counts},
        {"andreev", &SuiteRunner::andreev},
        {"bethe", &SuiteRunner::bethe}};
    auto it = table.find(name);
    if (it == table.end()) return {detail::error_record(name, json::object(), cfg_.seed, "unknown check")};
    try {
      return (this->*(it->second))();
    } catch (const std::exception& e) {
      return {detail::error_record(name, json::object(), cfg_.seed, e.what())};
    }
  }

  /// Coefficient maps c1, c2 and A of the Schur expansion for the first instance.
  json schur_data() const {
    std::mt19937_64 rng(instance_seed(cfg_.seed, 0));
    auto u = roots(rng);
    const int c = cfg_.schur_cutoff;
    return {{"u", scalar_list_json(u)},
            {"cutoff", c},
            {"c1", schur_map_json(cauchy_binet_coeffs(p_, 1, u, c))},
            {"c2", schur_map_json(cauchy_binet_coeffs(p_, 2, u, c))},
            {"A", schur_map_json(slavnov_schur_coeffs(p_, u, c))}};
  }

  const ChainParams<T>& params() const { return p_; }

 private:
  const SuiteConfig& cfg_;
  ChainParams<T> p_;

  int instance_count(bool needs_v) const {
    bool explicit_instance = cfg_.u && (!needs_v || cfg_.v);
    return explicit_instance ? 1 : cfg_.instances;
  }

  std::vector<T> roots(std::mt19937_64& rng) const {
    if (!cfg_.u) return sample_roots(p_, rng);
    std::vector<T> u;
    for (const auto& x : *cfg_.u) u.push_back(parse_scalar<T>(x));
    return ParameterVector<T>::bethe(p_, u).values;
  }

  Instance<T> instance(std::mt19937_64& rng) const {
    if (!cfg_.u && !cfg_.v) return sample_instance(p_, rng);
    Instance<T> inst;
    inst.u = roots(rng);
    if (cfg_.v) {
      for (const auto& x : *cfg_.v) inst.v.push_back(parse_scalar<T>(x));
      auto up = ParameterVector<T>{inst.u, ParameterRole::bethe_u};
      (void)ParameterVector<T>::free(p_, up, inst.v);
    } else {
      inst.v = sample_points(p_, inst.u, p_.M, rng);
    }
    return inst;
  }

  json base_params(int idx) const { return {{"instance", idx}}; }

  /// Runs body(idx, seed, rng, out) per instance; exceptions become error records.
  template <class F>
  std::vector<CheckRecord> per_instance(const std::string& check, bool needs_v, F&& body) const {
    std::vector<CheckRecord> out;
    const int count = instance_count(needs_v);
    for (int idx = 0; idx < count; ++idx) {
      std::uint64_t seed = instance_seed(cfg_.seed, static_cast<std::uint64_t>(idx));
      std::mt19937_64 rng(seed);
      try {
        body(idx, seed, rng, out);
      } catch (const std::exception& e) {
        out.push_back(detail::error_record(check, base_params(idx), seed, e.what()));
      }
    }
    return out;
  }

  json instance_params(int idx, const Instance<T>& inst) const {
    json j = base_params(idx);
    j["u"] = scalar_list_json(inst.u);
    j["v"] = scalar_list_json(inst.v);
    return j;
  }

  std::vector<CheckRecord> theorem_quotient() const {
    const std::string name = "theorem-quotient";
    return per_instance(name, true, [&](int idx, std::uint64_t seed, std::mt19937_64& rng, auto& out) {
      auto inst = instance(rng);
      out.push_back(detail::theorem_record(name, p_, inst.u, inst.v, instance_params(idx, inst), seed));
    });
  }

  std::vector<CheckRecord> pluecker() const {
    const std::string name = "pluecker";
    return per_instance(name, false, [&](int idx, std::uint64_t seed, std::mt19937_64& rng, auto& out) {
      auto u = roots(rng);
      json params = base_params(idx);
      params["u"] = scalar_list_json(u);
      for (auto& r : detail::pluecker_records(name, p_, u, rng, params, seed)) out.push_back(std::move(r));
    });
  }

  std::vector<CheckRecord> integral_rep() const {
    const std::string name = "integral-rep";
    return per_instance(name, true, [&](int idx, std::uint64_t seed, std::mt19937_64& rng, auto& out) {
      auto inst = instance(rng);
      for (auto& r : detail::integral_records(name, p_, inst.u, inst.v, instance_params(idx, inst), seed))
        out.push_back(std::move(r));
    });
  }

  std::vector<CheckRecord> lambda_structure() const {
    const std::string name = "lambda-structure";
    return per_instance(name, false, [&](int idx, std::uint64_t seed, std::mt19937_64& rng, auto& out) {
      auto u = roots(rng);
      json params = base_params(idx);
      params["u"] = scalar_list_json(u);
      const int N = p_.N, M = p_.M;
      auto s = lambda_series(p_, u, std::max(cfg_.series_order, -2 * N));
      const T one = from_int<T>(1);
      T expected = T(-(one + ipow(p_.q, 2L * (N - 2 * M + 1)))) / ipow(p_.q, 2L * (N - M) + 1);
      std::vector<T> parts;
      json details;
      auto val = s.valuation();
      details["leading_exponent"] = val ? json(*val) : json(nullptr);
      details["leading_coefficient"] = scalar_string(s.coeff(-2 * N));
      details["expected_coefficient"] = scalar_string(expected);
      parts.push_back(T(s.coeff(-2 * N) - expected));
      bool below = false;
      for (const auto& [e, c] : s.terms()) {
        if (e < -2 * N) below = true;
        if (e % 2 != 0) parts.push_back(c);
      }
      // evenness at sample points
      for (int k = 0; k < 50; ++k) {
        T x = sample_points(p_, u, 1, rng)[0];
        parts.push_back(T(lambda_eval(p_, x, u) - lambda_eval(p_, T(-x), u)));
      }
      auto rec = detail::residual_record(name, std::move(params), seed, detail::combine_residuals(parts),
                                         magnitude(expected) + 1);
      if (below || !val || *val != -2 * N) rec.pass = false;
      rec.details = details;
      out.push_back(std::move(rec));
    });
  }

  std::vector<CheckRecord> hirota() const {
    const std::string name = "hirota";
    return per_instance(name, false, [&](int idx, std::uint64_t seed, std::mt19937_64& rng, auto& out) {
      auto u = roots(rng);
      const int D = cfg_.miwa_cutoff;
      for (int family = 1; family <= 2; ++family) {
        auto tau = to_miwa(cauchy_binet_coeffs(p_, family, u, D));
        Real scale = detail::max_magnitude(detail::coefficient_list(tau));
        scale = scale * scale;
        auto ops = kp_low_order_operators<T>();
        ops.emplace_back("D1^4+3D2^2-4D1D3", kp_operator<T>());
        for (const auto& [label, op] : ops) {
          auto res = hirota_apply(op, tau, tau);
          json params = base_params(idx);
          params["u"] = scalar_list_json(u);
          params["family"] = family;
          params["operator"] = label;
          params["cutoff"] = D;
          params["retained_degree"] = res.cutoff();
          out.push_back(detail::residual_record(name, std::move(params), seed,
                                                detail::combine_residuals(detail::coefficient_list(res)), scale));
        }
      }
    });
  }

  /// M distinct points v with |v| at most a quarter of the nearest pole of the
  /// families, so the Schur series in w = v^2 converge quickly.
  std::vector<T> small_points(const std::vector<T>& u, int count, std::mt19937_64& rng) const {
    Real rho = 1 / mp::sqrt(magnitude(p_.q));
    for (const auto& x : u) {
      rho = std::min(rho, magnitude(x));
      rho = std::min(rho, Real(1 / magnitude(T(p_.q * x))));
    }
    long n0 = static_cast<long>(mp::ceil(Real(4) / rho));
    std::uniform_int_distribution<long> pick(n0, n0 + 12);
    std::bernoulli_distribution sign(0.5);
    std::vector<T> out;
    for (int attempt = 0; static_cast<int>(out.size()) < count; ++attempt) {
      if (attempt > 10000) throw std::runtime_error("could not sample small points");
      T x = from_rational<T>(Rational(sign(rng) ? 1 : -1) / Rational(pick(rng)));
      bool clash = std::any_of(out.begin(), out.end(), [&](const T& y) { return y == x || y == T(-x); });
      if (clash || !detail::families_finite(p_, u, x)) continue;
      out.push_back(x);
    }
    return out;
  }

  CheckRecord shrink_record(const std::string& name, json params, std::uint64_t seed, const T& target,
                            const std::function<T(int)>& approx) const {
    const int c = cfg_.schur_cutoff;
    T low = approx(c) - target, high = approx(c + 2) - target;
    Real dl = magnitude(low), dh = magnitude(high);
    CheckRecord r = detail::residual_record(name, std::move(params), seed, high, magnitude(target));
    bool tiny = dh <= magnitude(target) * Real("1e-3");
    bool shrinks = (dl == 0 && dh == 0) || dh < dl;
    r.pass = tiny && shrinks;
    r.details = {{"cutoff", c},
                 {"discrepancy", real_string(dl)},
                 {"discrepancy_raised", real_string(dh)},
                 {"shrink", dh > 0 ? real_string(dl / dh) : std::string("inf")}};
    return r;
  }

  std::vector<CheckRecord> schur_expansion() const {
    const std::string name = "schur-expansion";
    return per_instance(name, false, [&](int idx, std::uint64_t seed, std::mt19937_64& rng, auto& out) {
      auto u = roots(rng);
      const int M = p_.M;
      json base = base_params(idx);
      base["u"] = scalar_list_json(u);

      {  // schur_points = schur_miwa o miwa_map
        json params = base;
        params["part"] = "points-vs-miwa";
        std::vector<T> pts;
        std::uniform_int_distribution<int> extra(1, 3);
        for (int k = 0, n = std::max(M, extra(rng)); k < n; ++k) pts.push_back(from_rational<T>(sample_rational(rng)));
        params["points"] = scalar_list_json(pts);
        std::vector<T> diffs;
        auto t = miwa_map(pts, 6);
        for (const auto& lambda : partitions_up_to(6, 6))
          diffs.push_back(T(schur_points(lambda, pts) - schur_miwa<T>(lambda, 6).evaluate(t)));
        out.push_back(detail::residual_record(name, std::move(params), seed, detail::combine_residuals(diffs), Real(1)));
      }
      if (M == 0) return;
      auto v = small_points(u, M, rng);
      std::vector<T> w;
      for (const auto& x : v) w.push_back(x * x);
      for (int family = 1; family <= 2; ++family) {
        json params = base;
        params["part"] = "reconstruction";
        params["family"] = family;
        params["v"] = scalar_list_json(v);
        T direct = tau_tilde(p_, family, u, v);
        out.push_back(shrink_record(name, std::move(params), seed, direct, [&](int c) {
          return evaluate_schur_series(cauchy_binet_coeffs(p_, family, u, c), w);
        }));
      }
      {
        json params = base;
        params["part"] = "normalized-product";
        params["v"] = scalar_list_json(v);
        T pw = from_int<T>(1);
        for (const auto& x : w) pw = pw * ipow(x, p_.N);
        T target = slavnov(p_, u, v) / g_prefactor(p_, u, v) * pw;
        out.push_back(shrink_record(name, std::move(params), seed, target,
                                    [&](int c) { return evaluate_schur_series(slavnov_schur_coeffs(p_, u, c), w); }));
      }
      {  // Baker-Akhiezer quotients on Schur-expanded tau functions
        json params = base;
        params["part"] = "baker-akhiezer";
        const int D = cfg_.miwa_cutoff;
        auto X = sample_points(p_, u, M + 1, rng);
        params["X"] = scalar_list_json(X);
        BakerAkhiezerContext<T> ctx{to_miwa(cauchy_binet_coeffs(p_, 1, u, D)), to_miwa(cauchy_binet_coeffs(p_, 2, u, D)),
                                    miwa_map(X, D)};
        const T one = from_int<T>(1);
        std::vector<T> diffs{T(baker_akhiezer(ctx, 1, 1) - one), T(baker_akhiezer(ctx, 2, 2) - one),
                             T(baker_akhiezer(ctx, 1, 2) * baker_akhiezer(ctx, 2, 1) - one)};
        T tau2 = ctx.tau2.evaluate(ctx.t);
        for (std::size_t i = 0; i < X.size(); ++i)
          for (int a = 1; a <= 2; ++a) {
            T psi = baker_akhiezer(ctx, a, 2, std::optional<T>(one / X[i]));
            diffs.push_back(T(psi * tau2 - ctx.tau(a).evaluate(miwa_map(detail::without(X, i), D))));
          }
        out.push_back(
            detail::residual_record(name, std::move(params), seed, detail::combine_residuals(diffs), magnitude(tau2) + 1));
      }
    });
  }

  std::vector<CheckRecord> diagram_counts() const {
    std::vector<CheckRecord> out;
    if (p_.M < 1) return {detail::error_record("diagram-counts", {{"M", p_.M}}, cfg_.seed, "diagram counts need M >= 1")};
    for (const auto& row : diagram_table(p_.M, cfg_.lambda1_max)) {
      CheckRecord r;
      r.check = "diagram-counts";
      r.params = {{"M", p_.M}, {"lambda1_max", row["lambda1_max"]}};
      r.instance_seed = cfg_.seed;
      std::int64_t reference = row["closed_form"].is_null() ? row["nested"].template get<std::int64_t>()
                                                            : row["closed_form"].template get<std::int64_t>();
      r.residual = std::to_string(row["enumerated"].template get<std::int64_t>() - reference);
      r.pass = row["match"].template get<bool>();
      r.details = row;
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<CheckRecord> andreev() const {
    const std::string name = "andreev";
    return per_instance(name, false, [&](int idx, std::uint64_t seed, std::mt19937_64& rng, auto& out) {
      const int M = std::max(p_.M, 1);
      std::uniform_int_distribution<int> size(std::max(4, M + 1), std::max(6, M + 1));
      const int n = size(rng);
      std::vector<Rational> zs;
      while (static_cast<int>(zs.size()) < n) {
        Rational z = sample_rational(rng);
        if (std::find(zs.begin(), zs.end(), z) == zs.end()) zs.push_back(z);
      }
      Rational pole;
      do pole = sample_rational(rng) * 7;
      while (std::find(zs.begin(), zs.end(), pole) != zs.end());
      std::vector<std::pair<T, T>> measure;
      for (const auto& z : zs) measure.emplace_back(from_rational<T>(z), from_rational<T>(sample_rational(rng)));
      std::vector<std::function<T(const T&)>> fs, gs;
      T tp = from_rational<T>(pole);
      for (int i = 0; i < M; ++i) {
        T a = from_rational<T>(sample_rational(rng)), b = from_rational<T>(sample_rational(rng));
        fs.push_back([=](const T& z) { return T(ipow(z, i) + a); });
        gs.push_back([=](const T& z) { return T(b / (z - tp) + ipow(z, 2 * i)); });
      }
      Real scale = 0;
      for (const auto& [z, mu] : measure) {
        Real fmax = 0, gmax = 0;
        for (int i = 0; i < M; ++i) {
          fmax = std::max(fmax, magnitude(fs[static_cast<std::size_t>(i)](z)));
          gmax = std::max(gmax, magnitude(gs[static_cast<std::size_t>(i)](z)));
        }
        scale += magnitude(mu) * fmax * gmax;
      }
      json params = base_params(idx);
      params["M"] = M;
      params["points"] = n;
      out.push_back(detail::residual_record(name, std::move(params), seed, andreev_residual(measure, fs, gs),
                                            mp::pow(scale, M)));
    });
  }

  /// The field used for on-shell exact checks: Gaussian rationals when q and Q are rational.
  std::optional<ChainParams<Quadratic>> gaussian_params() const {
    if constexpr (std::is_same_v<T, Rational>) {
      return ChainParams<Quadratic>(p_.N, p_.M, p_.spin_twice, Quadratic(p_.q), Quadratic(p_.Q));
    } else if constexpr (std::is_same_v<T, Quadratic>) {
      if (p_.q.is_rational() && p_.Q.is_rational())
        return ChainParams<Quadratic>(p_.N, p_.M, p_.spin_twice, Quadratic(p_.q.a()), Quadratic(p_.Q.a()));
    }
    return std::nullopt;
  }

  std::vector<std::vector<Complex>> bethe_guesses(const ChainParams<Complex>& pc) const {
    std::vector<std::vector<Complex>> out;
    if (!cfg_.guesses.empty()) {
      for (const auto& g : cfg_.guesses) {
        std::vector<Complex> roots;
        for (const auto& z : g) roots.push_back(parse_complex(z));
        out.push_back(std::move(roots));
      }
      return out;
    }
    const Real r = 1 / mp::sqrt(Real(mp::abs(pc.q)));
    auto polar = [](const Real& rad, const Real& th) { return Complex(rad * mp::cos(th), rad * mp::sin(th)); };
    if (pc.M == 1) {
      for (const char* scale : {"0.7", "1", "1.7"})
        for (int k = 0; k < 12; ++k)
          out.push_back({polar(r * Real(scale), Real("0.1") + 2 * boost::math::constants::pi<Real>() * k / 12)});
      return out;
    }
    for (int i = 0; i < 36; ++i) {
      std::vector<Complex> g;
      int digits = i;
      for (int k = 0; k < pc.M; ++k) {
        Real rad = r * (Real("1.05") - Real("0.1") * k / std::max(pc.M - 1, 1));
        g.push_back(polar(rad, Real("0.2") + Real("0.5") * k + Real("1.05") * (digits % 6)));
        digits /= 6;
      }
      out.push_back(std::move(g));
    }
    return out;
  }

  template <class S>
  void on_shell_records(const ChainParams<S>& ps, const std::vector<S>& u, int solution, std::uint64_t seed,
                        std::vector<CheckRecord>& out) const {
    std::mt19937_64 rng(seed);
    json params{{"part", "on-shell"}, {"solution", solution}, {"field", field_traits<S>::name}};
    params["u"] = scalar_list_json(u);
    try {
      std::vector<S> v;
      for (int attempt = 0;; ++attempt) {
        v = sample_points(ps, u, ps.M, rng);
        if (!is_zero(kernel_denominator(ps, u, v))) break;
        if (attempt > 100) throw std::runtime_error("no admissible v for the on-shell roots");
      }
      json pv = params;
      pv["v"] = scalar_list_json(v);
      out.push_back(detail::theorem_record("bethe", ps, u, v, pv, seed));
      for (auto& r : detail::pluecker_records("bethe", ps, u, rng, params, seed)) out.push_back(std::move(r));
      for (auto& r : detail::integral_records("bethe", ps, u, v, pv, seed)) out.push_back(std::move(r));
    } catch (const std::exception& e) {
      out.push_back(detail::error_record("bethe", params, seed, e.what()));
    }
  }

 public:
  /// Solutions from every guess, solved in parallel, in guess order.
  std::vector<BetheSolution> bethe_solutions(const ChainParams<Complex>& pc,
                                             const std::vector<std::vector<Complex>>& guesses,
                                             std::vector<std::string>& errors) const {
    std::vector<std::future<BetheSolution>> jobs;
    for (const auto& g : guesses) jobs.push_back(std::async(std::launch::async, [&pc, g] { return solve_bethe(pc, g); }));
    std::vector<BetheSolution> out;
    errors.assign(guesses.size(), {});
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      try {
        out.push_back(jobs[i].get());
      } catch (const std::exception& e) {
        BetheSolution failed;
        failed.roots = guesses[i];
        failed.diagnostics = std::string("rejected: ") + e.what();
        errors[i] = e.what();
        out.push_back(std::move(failed));
      }
    }
    return out;
  }

  std::vector<std::vector<Complex>> default_guesses() const { return bethe_guesses(to_complex(p_)); }

 private:
  std::vector<CheckRecord> bethe() const {
    const std::string name = "bethe";
    std::vector<CheckRecord> out;
    if (p_.M == 0) {
      CheckRecord r;
      r.check = name;
      r.params = {{"part", "grid"}};
      r.instance_seed = cfg_.seed;
      r.residual = "0";
      r.pass = true;
      r.details = "no roots for M = 0";
      return {r};
    }
    auto pc = to_complex(p_);
    auto guesses = bethe_guesses(pc);
    std::vector<std::string> errors;
    auto sols = bethe_solutions(pc, guesses, errors);
    const bool explicit_guesses = !cfg_.guesses.empty();

    // distinct converged solutions, up to ordering of the roots
    std::vector<std::pair<BetheSolution, int>> distinct;
    json unconverged = json::array();
    Real worst = 0;
    for (std::size_t i = 0; i < sols.size(); ++i) {
      const auto& s = sols[i];
      if (!s.converged) {
        unconverged.push_back({{"guess", scalar_list_json(guesses[i])}, {"diagnostics", s.diagnostics}});
        if (explicit_guesses) {
          auto r = detail::error_record(name, {{"part", "solve"}, {"guess", scalar_list_json(guesses[i])}}, cfg_.seed,
                                        "not converged: " + s.diagnostics);
          r.details = bethe_solution_json(s);
          out.push_back(std::move(r));
        }
        continue;
      }
      worst = std::max(worst, s.residual);
      auto same = [&](const BetheSolution& t) {
        for (const auto& x : s.roots) {
          Real best = 1;
          for (const auto& y : t.roots) best = std::min(best, Real(mp::abs(x - y)));
          if (best > Real("1e-20")) return false;
        }
        return true;
      };
      auto it = std::find_if(distinct.begin(), distinct.end(), [&](const auto& d) { return same(d.first); });
      if (it == distinct.end())
        distinct.emplace_back(s, 1);
      else
        ++it->second;
    }
    {
      CheckRecord r;
      r.check = name;
      r.params = {{"part", "grid"}, {"guesses", guesses.size()}};
      r.instance_seed = cfg_.seed;
      r.residual = real_string(worst);
      r.pass = !distinct.empty() && worst < Real("1e-10");
      r.details = {{"converged", sols.size() - unconverged.size()},
                   {"distinct_solutions", distinct.size()},
                   {"unconverged", unconverged}};
      out.push_back(std::move(r));
    }
    int idx = 0;
    for (const auto& [s, hits] : distinct) {
      CheckRecord r;
      r.check = name;
      r.params = {{"part", "solution"}, {"solution", idx}, {"roots", scalar_list_json(s.roots)}, {"hits", hits}};
      r.instance_seed = cfg_.seed;
      r.residual = real_string(s.residual);
      Real signature = 0;
      for (std::size_t j = 0; j < s.roots.size(); ++j) {
        Real sig = pole_signature(pc, s.roots, j);
        signature = std::max(signature, std::max(sig, Real(1 / sig)));
      }
      r.pass = s.residual < Real("1e-10") && s.crossing_residual < Real("1e-10") && signature < 10;
      r.details = bethe_solution_json(s);
      r.details["pole_signature"] = real_string(signature);
      out.push_back(std::move(r));
      // identities on shell
      std::uint64_t seed = instance_seed(cfg_.seed, 1000 + static_cast<std::uint64_t>(idx));
      if (auto pg = gaussian_params())
        on_shell_records(*pg, rational_roots(s.roots), idx, seed, out);
      else
        on_shell_records(pc, s.roots, idx, seed, out);
      ++idx;
      if (idx >= 2) break;
    }
    return out;
  }
};

/// Runs the configured checks in parallel; records are ordered by configuration.
template <class T>
Report run_suite_typed(const SuiteConfig& cfg) {
  SuiteRunner<T> runner(cfg, chain_from_config<T>(cfg));
  Report report;
  report.timestamp = utc_timestamp();
  report.config = cfg.to_json();
  std::vector<std::future<std::vector<CheckRecord>>> jobs;
  for (const auto& name : cfg.checks)
    jobs.push_back(std::async(std::launch::async, [&runner, name] { return runner.run(name); }));
  for (auto& j : jobs)
    for (auto& r : j.get()) report.records.push_back(std::move(r));
  return report;
}

inline Report run_suite(const SuiteConfig& cfg) {
  switch (cfg.field_mode) {
    case FieldMode::rational: return run_suite_typed<Rational>(cfg);
    case FieldMode::quadratic: return run_suite_typed<Quadratic>(cfg);
    case FieldMode::real: return run_suite_typed<Real>(cfg);
  }
  throw std::logic_error("unhandled field mode");
}

}  // namespace slavkp
