#pragma once

// Batch command-line front end. Data goes to `out`, diagnostics to `err`.
// Exit codes: 0 success / all PASS, 1 some verification FAIL, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cubictheta/pipeline.hpp"

namespace cubictheta::cli {

enum class Format { json, csv, text };

struct Config {
  std::string command;
  std::optional<i64> disc;
  std::vector<i64> range;
  i64 precision = kDefaultPrecision;
  Format format = Format::text;
  std::string cache_dir;
  bool no_cache = false;
  bool timings = false;
  unsigned jobs = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<i64> selected(const Config& cfg, bool negative) {
  std::vector<i64> out;
  if (cfg.disc) {
    const i64 d = *cfg.disc;
    if (!is_fundamental(d)) throw UsageError(std::to_string(d) + " is not a fundamental discriminant");
    if (negative && d >= 0) throw UsageError(std::to_string(d) + " is not a negative discriminant");
    if (!negative && d <= 0) throw UsageError(std::to_string(d) + " is not a positive discriminant");
    out.push_back(d);
    return out;
  }
  const i64 lo = cfg.range[0], hi = cfg.range[1];
  if (lo > hi) throw UsageError("empty range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  if (!negative && lo <= 0) throw UsageError("range must be positive for this command");
  if (negative && hi >= 0) throw UsageError("range must be negative for classgroup");
  for (i64 d = lo; d <= hi; ++d)
    if (is_fundamental(d)) out.push_back(d);
  return out;
}

inline std::string join_form(const json& arr) {
  std::string s;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += ':';
    s += arr[i].dump();
  }
  return s;
}

inline int run_enumerate(const Config& cfg, Cache* cache, std::ostream& out) {
  json all = json::array();
  for (i64 d : selected(cfg, false)) {
    json fields = json::array();
    for (const auto& f : cubic_fields(d, cache)) fields.push_back(to_json(f));
    all.push_back({{"d", d}, {"count", fields.size()}, {"fields", fields}});
  }
  if (cfg.format == Format::json) {
    out << all.dump() << '\n';
  } else if (cfg.format == Format::csv) {
    out << "d,count,fields\n";
    for (const auto& e : all) {
      out << e["d"] << ',' << e["count"] << ',';
      for (std::size_t i = 0; i < e["fields"].size(); ++i) out << (i ? ";" : "") << join_form(e["fields"][i]);
      out << '\n';
    }
  } else {
    for (const auto& e : all) {
      out << "d = " << e["d"] << ": " << e["count"] << " cubic field(s)\n";
      for (const auto& f : e["fields"]) out << "  " << f.dump() << '\n';
    }
  }
  return 0;
}

inline int run_theta(const Config& cfg, Cache* cache, std::ostream& out) {
  json all = json::array();
  for (i64 d : selected(cfg, false))
    for (const auto& f : cubic_fields(d, cache)) all.push_back(to_json(f_K(trace_form(ring_of(f), d), cfg.precision)));
  if (cfg.format == Format::json) {
    out << all.dump() << '\n';
  } else if (cfg.format == Format::csv) {
    out << "disc,form,level,precision,coeffs\n";
    for (const auto& t : all) {
      out << t["disc"] << ',' << join_form(t["form"]) << ',' << t["level"] << ',' << t["precision"] << ',';
      const auto& c = t["coeffs"];
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? ";" : "") << c[i];
      out << '\n';
    }
  } else {
    for (const auto& t : all) {
      out << "t_K = " << t["form"].dump() << "  level " << t["level"] << "  character (" << t["disc"] << "/.)\n  ";
      const auto& c = t["coeffs"];
      bool first = true;
      for (std::size_t n = 0; n < c.size(); ++n) {
        if (c[n].get<i64>() == 0) continue;
        out << (first ? "" : " + ") << c[n] << (n ? " q^" + std::to_string(n) : "");
        first = false;
      }
      out << " + O(q^" << c.size() << ")\n";
    }
  }
  return 0;
}

inline int run_classgroup(const Config& cfg, std::ostream& out) {
  json all = json::array();
  for (i64 disc : selected(cfg, true)) {
    ClassGroup g(disc);
    json forms = json::array();
    for (const auto& q : g.elements()) forms.push_back(to_json(q));
    all.push_back({{"disc", disc}, {"h", g.order()}, {"r3", three_rank(g)}, {"forms", forms}});
  }
  if (cfg.format == Format::json) {
    out << all.dump() << '\n';
  } else if (cfg.format == Format::csv) {
    out << "disc,h,r3,forms\n";
    for (const auto& e : all) {
      out << e["disc"] << ',' << e["h"] << ',' << e["r3"] << ',';
      for (std::size_t i = 0; i < e["forms"].size(); ++i) out << (i ? ";" : "") << join_form(e["forms"][i]);
      out << '\n';
    }
  } else {
    for (const auto& e : all) {
      out << "Cl(" << e["disc"] << "): h = " << e["h"] << ", 3-rank = " << e["r3"] << '\n';
      for (const auto& q : e["forms"]) out << "  " << q.dump() << '\n';
    }
  }
  return 0;
}

inline int run_verify(const Config& cfg, Cache* cache, std::ostream& out, std::ostream& err) {
  const auto ds = selected(cfg, false);
  RangeOptions opts;
  opts.precision = cfg.precision;
  opts.cache = cache;
  opts.timings = cfg.timings;
  opts.jobs = cfg.jobs;
  opts.on_report = [&](const VerificationReport& r) {
    err << "d=" << r.d << " count=" << r.count() << ' ' << (r.pass() ? "PASS" : "FAIL") << '\n';
  };
  RangeResult result;
  if (cfg.disc) {
    result.reports.push_back(verify_discriminant(ds.front(), opts));
    opts.on_report(result.reports.back());
    if (cache) cache->flush();
    const auto& r = result.reports.back();
    result.summary = {r.d, r.d, 1, r.count(), r.pass() ? 0 : 1, r.pass(), {{r.count(), 1}}};
  } else {
    result = verify_range(cfg.range[0], cfg.range[1], opts);
  }

  if (cfg.format == Format::json) {
    json arr = json::array();
    for (const auto& r : result.reports) arr.push_back(to_json(r));
    out << arr.dump() << '\n';
  } else if (cfg.format == Format::csv) {
    out << kCsvHeader << '\n';
    for (const auto& r : result.reports) out << csv_row(r) << '\n';
  } else {
    for (const auto& r : result.reports) out << text_report(r);
    const auto& s = result.summary;
    out << "summary: " << s.discriminants << " discriminants, " << s.fields << " fields, " << s.failures
        << " failing, histogram";
    for (const auto& [count, n] : s.histogram) out << ' ' << count << ':' << n;
    out << (s.all_pass ? "  [ALL PASS]" : "  [FAIL]") << '\n';
  }
  err << "summary: " << to_json(result.summary).dump() << '\n';
  return result.summary.all_pass ? 0 : 1;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Theta series of totally real cubic fields: enumeration, class groups and verification",
               "cubictheta"};
  app.require_subcommand(1);
  Config cfg;
  std::string format = "text";

  const char* env_dir = std::getenv("CUBICTHETA_CACHE_DIR");
  cfg.cache_dir = env_dir && *env_dir ? env_dir : "./cache";

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"enumerate", "list the cubic fields of positive fundamental discriminant(s)"},
      {"theta", "theta series f_K of every cubic field of the discriminant(s)"},
      {"classgroup", "form class group and 3-rank of negative fundamental discriminant(s)"},
      {"verify", "full verification report per positive fundamental discriminant"},
  };
  for (const auto& spec : specs) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--disc", cfg.disc, "single discriminant");
    sub->add_option("--range", cfg.range, "inclusive range A B")->expected(2);
    sub->add_option("--precision", cfg.precision, "number of q-expansion coefficients")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--cache-dir", cfg.cache_dir, "cache directory (env CUBICTHETA_CACHE_DIR)");
    sub->add_flag("--no-cache", cfg.no_cache, "do not read or write the cache");
    sub->add_flag("--timings", cfg.timings, "record wall-clock millis in reports");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  }

  std::vector<std::string> argv_store{"cubictheta"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (cfg.disc.has_value() == !cfg.range.empty())
      throw UsageError("exactly one of --disc D or --range A B is required");
    cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;

    std::unique_ptr<Cache> cache;
    if (!cfg.no_cache && cfg.command != "classgroup") cache = std::make_unique<Cache>(cfg.cache_dir);

    int code = 0;
    if (cfg.command == "enumerate") code = detail::run_enumerate(cfg, cache.get(), out);
    else if (cfg.command == "theta") code = detail::run_theta(cfg, cache.get(), out);
    else if (cfg.command == "classgroup") code = detail::run_classgroup(cfg, out);
    else code = detail::run_verify(cfg, cache.get(), out, err);
    if (cache) cache->flush();
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n'
        << "grammar: cubictheta {enumerate|theta|classgroup|verify} (--disc D | --range A B) [--precision N]"
           " [--format json|csv|text] [--cache-dir PATH] [--jobs J]\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cubictheta::cli
