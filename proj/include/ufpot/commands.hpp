#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ufpot/ackermann.hpp"
#include "ufpot/disjoint_set.hpp"
#include "ufpot/harness.hpp"
#include "ufpot/potentials.hpp"
#include "ufpot/random.hpp"
#include "ufpot/report.hpp"
#include "ufpot/workloads.hpp"

// Implementations of the ufpot subcommands. Each returns the process exit
// code: 0 success, 1 a check failed, 2 bad input.
namespace ufpot::cli {

inline constexpr std::uint64_t default_seed = 20240601;

/// UFPOT_SEED when set and numeric, otherwise `fallback`.
inline std::uint64_t seed_from_env(std::uint64_t fallback = default_seed) {
  if (const char* s = std::getenv("UFPOT_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used);
      if (used == std::string(s).size()) return v;
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

inline std::vector<potential_kind> parse_kinds(const std::string& list) {
  if (list.empty() || list == "all") return default_kinds();
  std::vector<potential_kind> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(potential_kind::parse(item));
  return out;
}

// ---------------------------------------------------------------------------

struct run_options {
  std::string trace_path;
  std::string variant_name = "size";
  std::string kinds = "all";
  std::size_t oracle_cap = 256;
  bool fail_fast = false;
  std::string out_dir = ".";
  std::vector<std::string> constants;  // "<kind>.<field>=<value>"
};

inline int cmd_run(const run_options& o, std::ostream& out, std::ostream& err) {
  harness_options h;
  trace t;
  try {
    h.v = parse_variant(o.variant_name);
    h.kinds = parse_kinds(o.kinds);
    h.oracle_cap = o.oracle_cap;
    h.fail_fast = o.fail_fast;
    for (const auto& kv : o.constants) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("constant override needs key=value: " + kv);
      h.constants.set(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
    }
    std::ifstream in(o.trace_path);
    if (!in) throw std::runtime_error("cannot read trace file '" + o.trace_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    t = parse_trace(buf.str());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const run_report r = run_trace(t, h);
  std::error_code ec;
  std::filesystem::create_directories(o.out_dir, ec);
  const auto dir = std::filesystem::path(o.out_dir);
  {
    std::ofstream js(dir / "report.json");
    std::ofstream csv(dir / "finds.csv");
    if (!js || !csv) {
      err << "error: cannot write reports into '" << o.out_dir << "'\n";
      return 2;
    }
    js << to_json(r).dump(2) << '\n';
    write_finds_csv(csv, r);
  }

  out << "n=" << r.n << " variant=" << to_string(r.v) << " steps=" << r.steps << " find_paths=" << r.find_paths
      << (r.organic ? "" : " (analysis-only forest)") << '\n';
  for (const auto& c : r.criteria)
    if (c.failures > 0) out << "FAIL " << c.name << " (" << c.failures << "/" << c.checks << "): " << c.first_failure << '\n';
  out << (r.passed() ? "all checks passed" : "checks failed") << '\n';
  return r.passed() ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct gen_options {
  std::string generator = "random";
  std::uint64_t n = 16;
  std::uint64_t m = 32;
  std::optional<std::uint64_t> seed;
  double find_fraction = 0.5;
  unsigned k = 4;
  unsigned finds_per_leaf = 1;
  std::string output;  // empty writes to `out`
};

inline int cmd_gen(const gen_options& o, std::ostream& out, std::ostream& err) {
  trace t;
  try {
    if (o.generator == "random") t = gen_random(o.n, o.m, o.seed.value_or(seed_from_env()), o.find_fraction);
    else if (o.generator == "binomial") t = gen_binomial(o.k, o.finds_per_leaf);
    else throw std::invalid_argument("unknown generator '" + o.generator + "'");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (o.output.empty()) {
    out << emit_trace(t);
  } else {
    std::ofstream f(o.output);
    if (!f) {
      err << "error: cannot write '" << o.output << "'\n";
      return 2;
    }
    f << emit_trace(t);
  }
  return 0;
}

// ---------------------------------------------------------------------------

inline int cmd_bounds(const std::vector<std::uint64_t>& ns, std::ostream& out, std::ostream& err) {
  for (auto n : ns)
    if (n == 0) {
      err << "error: n must be at least 1\n";
      return 2;
    }
  out << std::left << std::setw(22) << "n" << std::setw(12) << "log2" << std::setw(12) << "log2log2" << std::setw(8)
      << "log*" << std::setw(10) << "loghat*" << std::setw(10) << "loghat**" << "alpha\n";
  for (auto n : ns) {
    const bound_row b = bounds_for(n);
    std::ostringstream l2;
    std::ostringstream ll2;
    l2 << std::fixed << std::setprecision(4) << b.log2n;
    ll2 << std::fixed << std::setprecision(4) << b.log2log2n;
    out << std::setw(22) << b.n << std::setw(12) << l2.str() << std::setw(12) << ll2.str() << std::setw(8) << b.log_star
        << std::setw(10) << b.loghat_star << std::setw(10) << b.loghat2 << b.alpha << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct check_lemmas_options {
  std::optional<std::uint64_t> grid_seed;
  std::size_t random_points = 1000;
  bool empty_grid = false;
};

inline int cmd_check_lemmas(const check_lemmas_options& o, std::ostream& out, std::ostream&) {
  const std::uint64_t seed = o.grid_seed.value_or(seed_from_env());
  std::vector<double> b1;
  std::vector<double> b2;
  std::vector<double> sandwich;
  if (!o.empty_grid) {
    b1 = log_grid(3, 62, o.random_points, seed);
    b2 = log_grid(0, 62, o.random_points, seed + 1);
    b2.push_back(0x1.0p63);
    sandwich = log_grid(1, 62, o.random_points, seed + 2);
  } else {
    out << "warning: empty grid, nothing checked\n";
  }
  const check_report reports[] = {check_appendix_a_sandwich(0, 4, sandwich), check_appendix_b1(b1),
                                  check_appendix_b2(b2)};
  bool ok = true;
  for (const auto& r : reports) {
    out << r.name << ": checked " << r.checked << ", skipped " << r.skipped << ", failures " << r.failures.size()
        << '\n';
    for (const auto& f : r.failures) out << "  " << f << '\n';
    ok = ok && r.ok();
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct bench_options {
  std::uint64_t n = 1'000'000;
  std::uint64_t m = 10'000'000;
  std::vector<std::string> variants = {"size"};
  unsigned repeats = 3;
  std::optional<std::uint64_t> seed;
  double find_fraction = 0.5;
  std::string workload = "random";  // or "binomial"
  unsigned k = 20;                  // binomial size exponent
};

struct bench_row {
  std::string variant_name;
  std::vector<double> seconds;
  double wall = 0.0;  // median over repeats
  std::uint64_t ops = 0;
  std::uint64_t checksum = 0;
};

/// Times the uninstrumented structure on one workload.
inline bench_row bench_variant(const bench_options& o, variant v) {
  bench_row row;
  row.variant_name = to_string(v);
  const std::uint64_t seed = o.seed.value_or(seed_from_env());
  std::optional<trace> bin;
  if (o.workload == "binomial") bin = gen_binomial(o.k, 1);
  for (unsigned rep = 0; rep < std::max(1U, o.repeats); ++rep) {
    std::uint64_t sum = 0;
    const auto t0 = std::chrono::steady_clock::now();
    if (bin) {
      disjoint_set d(bin->n, v);
      for (const auto& op : bin->ops) {
        if (op.what == trace_op::kind::unite) sum += d.unite(op.a, op.b).new_root;
        else sum += d.find(op.a);
      }
      row.ops = bin->ops.size();
    } else {
      // Same draws as gen_random, generated on the fly.
      disjoint_set d(o.n, v);
      splitmix64 rng(seed);
      for (std::uint64_t i = 0; i < o.m; ++i) {
        if (rng.unit() < o.find_fraction) {
          sum += d.find(static_cast<node_id>(rng.below(o.n)));
        } else {
          const auto a = static_cast<node_id>(rng.below(o.n));
          const auto b = static_cast<node_id>(rng.below(o.n));
          sum += d.unite(a, b).new_root;
        }
      }
      row.ops = o.m;
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    row.checksum = sum;
  }
  auto sorted = row.seconds;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t h = sorted.size() / 2;
  row.wall = sorted.size() % 2 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
  return row;
}

inline int cmd_bench(const bench_options& o, std::ostream& out, std::ostream& err) {
  std::vector<variant> vs;
  try {
    if (o.n == 0) throw std::invalid_argument("n must be at least 1");
    if (o.workload != "random" && o.workload != "binomial")
      throw std::invalid_argument("unknown workload '" + o.workload + "'");
    for (const auto& name : o.variants) {
      if (name == "all") vs.insert(vs.end(), std::begin(all_variants), std::end(all_variants));
      else vs.push_back(parse_variant(name));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const bool median = o.repeats > 1;
  out << std::left << std::setw(18) << "variant" << std::setw(12) << "ops" << std::setw(9) << "repeats" << std::setw(16)
      << (median ? "median_seconds" : "seconds") << "ops_per_second\n";
  for (const auto& v : vs) {
    const bench_row r = bench_variant(o, v);
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(4) << r.wall;
    out << std::setw(18) << r.variant_name << std::setw(12) << r.ops << std::setw(9) << r.seconds.size()
        << std::setw(16) << secs.str() << std::fixed << std::setprecision(0)
        << (r.wall > 0 ? static_cast<double>(r.ops) / r.wall : 0.0) << '\n';
  }
  return 0;
}

}  // namespace ufpot::cli
