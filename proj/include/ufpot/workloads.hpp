#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ufpot/disjoint_set.hpp"
#include "ufpot/random.hpp"

namespace ufpot {

struct trace_op {
  enum class kind : std::uint8_t { unite, find };
  kind what;
  node_id a;
  node_id b;  // unused for finds

  static trace_op unite(node_id a, node_id b) { return {kind::unite, a, b}; }
  static trace_op find(node_id p) { return {kind::find, p, 0}; }

  friend bool operator==(const trace_op&, const trace_op&) = default;
};

/// An operation log over [0, n). `prelude` lists (node, parent) pointers
/// set before the first operation.
struct trace {
  std::uint64_t n = 1;
  std::vector<std::pair<node_id, node_id>> prelude;
  std::vector<trace_op> ops;
  std::string generator;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const trace&, const trace&) = default;
};

class trace_error : public std::runtime_error {
 public:
  trace_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Each op is a find with probability find_fraction, otherwise a union of
/// two uniform nodes.
inline trace gen_random(std::uint64_t n, std::uint64_t m, std::uint64_t seed, double find_fraction) {
  if (n == 0) throw std::invalid_argument("gen_random needs n >= 1");
  if (!(find_fraction >= 0.0 && find_fraction <= 1.0)) throw std::invalid_argument("find_fraction must be in [0, 1]");
  trace t;
  t.n = n;
  t.generator = "random";
  t.seed = seed;
  t.ops.reserve(m);
  splitmix64 rng(seed);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (rng.unit() < find_fraction) {
      t.ops.push_back(trace_op::find(static_cast<node_id>(rng.below(n))));
    } else {
      const auto a = static_cast<node_id>(rng.below(n));
      const auto b = static_cast<node_id>(rng.below(n));
      t.ops.push_back(trace_op::unite(a, b));
    }
  }
  return t;
}

/// Builds a binomial tree over 2^k nodes by pairing equal-size trees level by
/// level (node i + 2^j goes under i), so node x sits at depth popcount(x).
/// Then finds each leaf finds_per_leaf times, deepest leaves first.
inline trace gen_binomial(unsigned k, unsigned finds_per_leaf) {
  if (k > 31) throw std::invalid_argument("gen_binomial supports k <= 31");
  trace t;
  t.n = std::uint64_t{1} << k;
  t.generator = "binomial";
  for (unsigned j = 0; j < k; ++j) {
    const std::uint64_t half = std::uint64_t{1} << j;
    for (std::uint64_t i = 0; i < t.n; i += 2 * half)
      t.ops.push_back(trace_op::unite(static_cast<node_id>(i), static_cast<node_id>(i + half)));
  }
  std::vector<node_id> leaves;
  if (k == 0) leaves.push_back(0);
  for (std::uint64_t x = 1; x < t.n; x += 2) leaves.push_back(static_cast<node_id>(x));
  std::stable_sort(leaves.begin(), leaves.end(),
                   [](node_id a, node_id b) { return std::popcount(a) > std::popcount(b); });
  for (node_id leaf : leaves)
    for (unsigned r = 0; r < finds_per_leaf; ++r) t.ops.push_back(trace_op::find(leaf));
  return t;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw trace_error(line, "expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Parses the line format
///   n <count>          first non-comment line
///   p <node> <parent>  optional prelude, before any u/f line
///   u <a> <b>
///   f <p>
/// '#' starts a comment. "# generator <name>" and "# seed <value>" are kept
/// as provenance.
inline trace parse_trace(std::string_view text) {
  trace t;
  bool have_n = false;
  bool ops_started = false;
  std::vector<bool> listed;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      const auto words = detail::split_ws(line.substr(hash + 1));
      if (words.size() == 2 && words[0] == "generator") t.generator = std::string(words[1]);
      if (words.size() == 2 && words[0] == "seed") t.seed = detail::parse_uint(words[1], line_no);
      line = line.substr(0, hash);
    }
    const auto w = detail::split_ws(line);
    if (w.empty()) continue;

    const auto need = [&](std::size_t count) {
      if (w.size() != count)
        throw trace_error(line_no, "'" + std::string(w[0]) + "' takes " + std::to_string(count - 1) + " argument(s)");
    };
    const auto id = [&](std::string_view s) {
      const std::uint64_t v = detail::parse_uint(s, line_no);
      if (v >= t.n) throw trace_error(line_no, "node " + std::to_string(v) + " out of range for n=" + std::to_string(t.n));
      return static_cast<node_id>(v);
    };

    if (w[0] == "n") {
      need(2);
      if (have_n) throw trace_error(line_no, "duplicate 'n' line");
      t.n = detail::parse_uint(w[1], line_no);
      if (t.n == 0) throw trace_error(line_no, "n must be at least 1");
      if (t.n > UINT32_MAX) throw trace_error(line_no, "n too large");
      have_n = true;
      listed.assign(t.n, false);
      continue;
    }
    if (!have_n) throw trace_error(line_no, "expected 'n <count>' before any operation");
    if (w[0] == "p") {
      need(3);
      if (ops_started) throw trace_error(line_no, "'p' lines must precede all 'u' and 'f' lines");
      const node_id node = id(w[1]);
      const node_id par = id(w[2]);
      if (listed[node]) throw trace_error(line_no, "node " + std::to_string(node) + " injected twice");
      listed[node] = true;
      t.prelude.emplace_back(node, par);
    } else if (w[0] == "u") {
      need(3);
      ops_started = true;
      t.ops.push_back(trace_op::unite(id(w[1]), id(w[2])));
    } else if (w[0] == "f") {
      need(2);
      ops_started = true;
      t.ops.push_back(trace_op::find(id(w[1])));
    } else {
      throw trace_error(line_no, "unknown directive '" + std::string(w[0]) + "'");
    }
  }
  if (!have_n) throw trace_error(line_no, "missing 'n <count>' line");
  if (!t.prelude.empty()) {
    std::vector<node_id> parent(t.n);
    for (std::size_t i = 0; i < t.n; ++i) parent[i] = static_cast<node_id>(i);
    for (const auto& [node, par] : t.prelude) parent[node] = par;
    if (!disjoint_set::is_forest(parent)) throw trace_error(line_no, "injected prelude contains a cycle");
  }
  return t;
}

inline std::string emit_trace(const trace& t) {
  std::ostringstream os;
  if (!t.generator.empty()) os << "# generator " << t.generator << '\n';
  if (t.seed) os << "# seed " << *t.seed << '\n';
  os << "n " << t.n << '\n';
  for (const auto& [node, par] : t.prelude) os << "p " << node << ' ' << par << '\n';
  for (const auto& op : t.ops) {
    if (op.what == trace_op::kind::unite) os << "u " << op.a << ' ' << op.b << '\n';
    else os << "f " << op.a << '\n';
  }
  return os.str();
}

}  // namespace ufpot
