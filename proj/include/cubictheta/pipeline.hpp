#pragma once

// End-to-end verification for one positive fundamental discriminant d or a
// range of them: enumerate the cubic fields of discriminant d, build their
// trace forms and theta series, and check injectivity, linear independence
// and the 3-rank count against the class group of the reflected
// discriminant d3.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cubictheta/arith.hpp"
#include "cubictheta/cache.hpp"
#include "cubictheta/cubic.hpp"
#include "cubictheta/qform.hpp"
#include "cubictheta/serialize.hpp"
#include "cubictheta/theta.hpp"

namespace cubictheta {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr i64 kDefaultPrecision = 1000;

struct ClassGroupSummary {
  i64 disc = 0;
  i64 class_number = 0;
  int three_rank = 0;

  bool operator==(const ClassGroupSummary&) const = default;
};

struct VerificationReport {
  i64 d = 0;
  i64 d3 = 0;
  i64 precision = 0;

  std::vector<CubicForm> fields;
  std::vector<QuadForm> trace_forms;  // GL2-reduced
  std::vector<Fingerprint> fingerprints;

  i64 class_number = 0;
  int r3 = 0;
  i64 expected_count = 0;  // (3^r3 - 1) / 2

  bool count_identity = false;
  bool scholz_consistent = false;
  bool trace_forms_valid = false;
  bool nebentypus = false;
  bool injective_forms = false;
  bool injective_fingerprints = false;
  bool injective = false;
  std::size_t rank = 0;
  bool independent = false;
  std::vector<std::optional<i64>> witness_primes;
  i64 witness_precision = 0;
  i64 dim_lower_bound = 0;  // dim span{f_K} >= this
  i64 millis = 0;

  std::vector<std::string> failures;

  i64 count() const { return static_cast<i64>(fields.size()); }
  bool pass() const { return failures.empty(); }
};

struct VerifyOptions {
  i64 precision = kDefaultPrecision;
  Cache* cache = nullptr;
  bool timings = false;
};

namespace detail {

inline i64 pow3(int r) {
  i64 p = 1;
  for (int i = 0; i < r; ++i) p = checked::mul(p, 3);
  return p;
}

/// log3(2 n + 1) when that is an integer.
inline std::optional<int> count_rank(i64 n) {
  i64 target = 2 * n + 1;
  int r = 0;
  i64 p = 1;
  while (p < target) {
    p *= 3;
    ++r;
  }
  if (p != target) return std::nullopt;
  return r;
}

template <class Compute>
json cached(Cache* cache, const char* kind, i64 key, Compute&& compute) {
  if (cache) {
    try {
      if (auto hit = cache->get(kind, key)) return *hit;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CorruptCacheEntry) throw;
      // Recompute below and overwrite the bad entry.
    }
  }
  json value = compute();
  if (cache) cache->put(kind, key, value);
  return value;
}

}  // namespace detail

inline json to_json(const ClassGroupSummary& s) {
  return json{{"disc", s.disc}, {"h", s.class_number}, {"r3", s.three_rank}};
}

inline ClassGroupSummary class_group_summary(i64 disc, Cache* cache = nullptr) {
  json j = detail::cached(cache, "classgroup", disc, [&] {
    ClassGroup g(disc);
    return to_json(ClassGroupSummary{disc, static_cast<i64>(g.order()), three_rank(g)});
  });
  return {j.at("disc").get<i64>(), j.at("h").get<i64>(), j.at("r3").get<int>()};
}

inline std::vector<CubicForm> cubic_fields(i64 d, Cache* cache = nullptr) {
  json j = detail::cached(cache, "fields", d, [&] {
    json arr = json::array();
    for (const auto& f : enumerate_cubic_fields(d)) arr.push_back(to_json(f));
    return arr;
  });
  std::vector<CubicForm> out;
  for (const auto& f : j) out.push_back(cubic_form_from_json(f));
  return out;
}

namespace detail {

inline void run_checks(VerificationReport& rep, const VerifyOptions& opts) {
  auto fail = [&](std::string msg) { rep.failures.push_back(std::move(msg)); };

  const auto group = class_group_summary(rep.d3, opts.cache);
  rep.class_number = group.class_number;
  rep.r3 = group.three_rank;
  rep.expected_count = (pow3(rep.r3) - 1) / 2;

  rep.fields = cubic_fields(rep.d, opts.cache);
  const std::size_t n = rep.fields.size();

  // Trace forms.
  rep.trace_forms_valid = true;
  std::vector<QuadForm> raw_forms;
  for (const auto& f : rep.fields) {
    try {
      const CubicRing ring = ring_of(f);
      const auto lattice = trace_zero(ring);
      const auto& g = lattice.gram;
      const i128 t0_disc = 4 * static_cast<i128>(g[0][1]) * g[0][1] - 4 * static_cast<i128>(g[0][0]) * g[1][1];
      if (t0_disc != -12 * static_cast<i128>(rep.d)) {
        rep.trace_forms_valid = false;
        fail("disc(tr x^2) of " + f.str() + " is " + to_string(t0_disc) + ", expected -12d");
      }
      const QuadForm t = trace_form(ring, rep.d);
      if (t.discriminant() != rep.d3 || !t.is_primitive() || !t.is_positive_definite()) {
        rep.trace_forms_valid = false;
        fail("trace form " + t.str() + " of " + f.str() + " is not primitive positive definite of disc d3");
        continue;
      }
      raw_forms.push_back(t);
      rep.trace_forms.push_back(reduce_gl2(t));
    } catch (const Error& e) {
      rep.trace_forms_valid = false;
      fail(std::string("trace form of ") + f.str() + ": " + to_string(e.kind()) + ": " + e.what());
    }
  }
  if (raw_forms.size() != n) return;

  // Theta series.
  i64 precision = opts.precision;
  for (const auto& t : raw_forms) precision = std::max(precision, fingerprint_precision(t));
  rep.precision = precision;
  std::vector<ThetaSeries> series;
  for (const auto& t : raw_forms) series.push_back(f_K(t, precision));
  for (const auto& s : series) rep.fingerprints.push_back(first_two_nonzero(s));

  rep.nebentypus = true;
  for (const auto& s : series)
    for (i64 p = 2; p <= precision; ++p)
      if (s[p] > 0 && rep.d3 % p != 0 && is_prime(p) && kronecker(rep.d3, p) != 1) {
        rep.nebentypus = false;
        fail("prime " + std::to_string(p) + " represented by " + s.form.str() + " but (d3/p) != 1");
      }

  // Injectivity along two routes: reduced forms, and theta fingerprints.
  rep.injective_forms = true;
  rep.injective_fingerprints = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (equivalent(raw_forms[i], raw_forms[j], Convention::GL2)) {
        rep.injective_forms = false;
        fail("fields " + rep.fields[i].str() + " and " + rep.fields[j].str() + " have GL2-equivalent trace forms");
      }
      if (rep.fingerprints[i] == rep.fingerprints[j]) {
        rep.injective_fingerprints = false;
        fail("fields " + rep.fields[i].str() + " and " + rep.fields[j].str() + " share a theta fingerprint");
      }
    }
  rep.injective = rep.injective_forms && rep.injective_fingerprints;

  // Independence with isolating primes.
  const auto indep = linearly_independent(series);
  rep.rank = indep.rank;
  rep.independent = indep.independent;
  if (!indep.independent) fail("theta series have rank " + std::to_string(indep.rank) + " < " + std::to_string(n));
  rep.witness_primes = indep.witnesses;
  rep.witness_precision = precision;
  if (indep.independent && !indep.all_witnessed()) {
    const i64 wider = checked::mul(precision, 10);
    std::vector<ThetaSeries> wide;
    for (const auto& t : raw_forms) wide.push_back(f_K(t, wider));
    rep.witness_primes = isolating_primes(wide);
    rep.witness_precision = wider;
    if (!std::all_of(rep.witness_primes.begin(), rep.witness_primes.end(), [](const auto& w) { return w.has_value(); }))
      fail("no isolating witness prime up to " + std::to_string(wider));
  }

  // Count identity against the reflected class group, and the Scholz bracket
  // r3(d3) - 1 <= log3(2 #C_d + 1) <= r3(d3).
  rep.count_identity = static_cast<i64>(n) == rep.expected_count;
  if (!rep.count_identity)
    fail("found " + std::to_string(n) + " fields but (3^r3(d3) - 1)/2 = " + std::to_string(rep.expected_count));
  auto found_rank = count_rank(static_cast<i64>(n));
  rep.scholz_consistent = found_rank && *found_rank <= rep.r3 && *found_rank + 1 >= rep.r3;
  if (!rep.scholz_consistent) fail("field count " + std::to_string(n) + " is outside the Scholz bracket");

  if (rep.injective && rep.independent) rep.dim_lower_bound = static_cast<i64>(n);
}

}  // namespace detail

inline VerificationReport verify_discriminant(i64 d, const VerifyOptions& opts = {}) {
  if (d <= 0) throw Error(ErrorKind::NotPositive, std::to_string(d) + " is not positive");
  if (!is_fundamental(d)) throw Error(ErrorKind::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
  if (opts.precision < 1) throw Error(ErrorKind::InvalidArgument, "precision must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.d = d;
  rep.d3 = three_reflection(d);
  rep.precision = opts.precision;
  try {
    detail::run_checks(rep, opts);
  } catch (const Error& e) {
    rep.failures.push_back(std::string("internal: ") + to_string(e.kind()) + ": " + e.what());
  }
  if (opts.timings)
    rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

struct RangeSummary {
  i64 d_min = 0;
  i64 d_max = 0;
  i64 discriminants = 0;
  i64 fields = 0;
  i64 failures = 0;
  bool all_pass = true;
  std::map<i64, i64> histogram;  // #C_d -> number of d
};

struct RangeResult {
  std::vector<VerificationReport> reports;
  RangeSummary summary;
};

struct RangeOptions : VerifyOptions {
  unsigned jobs = 1;
  std::function<void(const VerificationReport&)> on_report;  // called under a lock, any order
};

/// Reports for every fundamental d in [d_min, d_max], in increasing d
/// regardless of the number of jobs.
inline RangeResult verify_range(i64 d_min, i64 d_max, const RangeOptions& opts = {}) {
  if (d_min <= 0 || d_min > d_max)
    throw Error(ErrorKind::InvalidRange,
                "invalid range [" + std::to_string(d_min) + ", " + std::to_string(d_max) + "]");
  if (opts.jobs < 1) throw Error(ErrorKind::InvalidArgument, "jobs must be >= 1");
  std::vector<i64> ds;
  for (i64 d = d_min; d <= d_max; ++d)
    if (is_fundamental(d)) ds.push_back(d);

  std::vector<VerificationReport> reports(ds.size());
  std::atomic<std::size_t> next{0};
  std::mutex report_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < ds.size(); i = next++) {
      reports[i] = verify_discriminant(ds[i], opts);
      if (opts.on_report) {
        std::lock_guard lock(report_mu);
        opts.on_report(reports[i]);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < opts.jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  if (opts.cache) opts.cache->flush();

  RangeResult result;
  result.summary.d_min = d_min;
  result.summary.d_max = d_max;
  for (const auto& r : reports) {
    ++result.summary.discriminants;
    result.summary.fields += r.count();
    ++result.summary.histogram[r.count()];
    if (!r.pass()) {
      ++result.summary.failures;
      result.summary.all_pass = false;
    }
  }
  result.reports = std::move(reports);
  return result;
}

// Output formats.

inline json to_json(const VerificationReport& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["d"] = r.d;
  j["d3"] = r.d3;
  j["precision"] = r.precision;
  j["count"] = r.count();
  j["fields"] = json::array();
  for (const auto& f : r.fields) j["fields"].push_back(to_json(f));
  j["trace_forms"] = json::array();
  for (const auto& t : r.trace_forms) j["trace_forms"].push_back(to_json(t));
  j["fingerprints"] = json::array();
  for (const auto& fp : r.fingerprints) j["fingerprints"].push_back(to_json(fp));
  j["h"] = r.class_number;
  j["r3"] = r.r3;
  j["expected_count"] = r.expected_count;
  j["count_identity"] = r.count_identity;
  j["scholz_consistent"] = r.scholz_consistent;
  j["trace_forms_valid"] = r.trace_forms_valid;
  j["nebentypus"] = r.nebentypus;
  j["injective"] = {{"verdict", r.injective}, {"forms", r.injective_forms}, {"fingerprints", r.injective_fingerprints}};
  j["independence"] = {{"verdict", r.independent}, {"rank", r.rank}, {"witness_precision", r.witness_precision}};
  j["independence"]["witness_primes"] = json::array();
  for (const auto& w : r.witness_primes) j["independence"]["witness_primes"].push_back(to_json(w));
  j["dim_lower_bound"] = r.dim_lower_bound;
  j["millis"] = r.millis;
  j["verdict"] = r.pass() ? "PASS" : "FAIL";
  j["failures"] = r.failures;
  return j;
}

inline json to_json(const RangeSummary& s) {
  json hist = json::object();
  for (const auto& [count, n] : s.histogram) hist[std::to_string(count)] = n;
  return json{{"d_min", s.d_min},       {"d_max", s.d_max},       {"discriminants", s.discriminants},
              {"fields", s.fields},     {"failures", s.failures}, {"all_pass", s.all_pass},
              {"histogram", hist}};
}

inline const char* kCsvHeader = "d,d3,count,h,r3,injective,independent,witness_primes,millis";

inline std::string csv_row(const VerificationReport& r) {
  std::ostringstream os;
  os << r.d << ',' << r.d3 << ',' << r.count() << ',' << r.class_number << ',' << r.r3 << ','
     << (r.injective ? "true" : "false") << ',' << (r.independent ? "true" : "false") << ',';
  for (std::size_t i = 0; i < r.witness_primes.size(); ++i) {
    if (i) os << ';';
    if (r.witness_primes[i]) os << *r.witness_primes[i];
    else os << '-';
  }
  os << ',' << r.millis;
  return os.str();
}

inline std::string text_report(const VerificationReport& r) {
  std::ostringstream os;
  os << "d = " << r.d << "  d3 = " << r.d3 << "  h(d3) = " << r.class_number << "  r3(d3) = " << r.r3
     << "  fields = " << r.count() << "  expected = " << r.expected_count << "  [" << (r.pass() ? "PASS" : "FAIL")
     << "]\n";
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    os << "  " << r.fields[i].str();
    if (i < r.trace_forms.size()) os << "  t_K = " << r.trace_forms[i].str();
    if (i < r.fingerprints.size()) {
      const auto& fp = r.fingerprints[i];
      os << "  theta = 1 + " << fp.first.coeff << " q^" << fp.first.index << " + " << fp.second.coeff << " q^"
         << fp.second.index << " + ...";
    }
    if (i < r.witness_primes.size() && r.witness_primes[i]) os << "  witness p = " << *r.witness_primes[i];
    os << '\n';
  }
  for (const auto& f : r.failures) os << "  FAIL: " << f << '\n';
  return os.str();
}

}  // namespace cubictheta
