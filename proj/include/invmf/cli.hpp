#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "invmf/engine.hpp"
#include "invmf/expression.hpp"
#include "invmf/oracle.hpp"

namespace invmf::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kResourceLimit = 2 };

using Json = nlohmann::ordered_json;

enum class Family { Factorial, Power10, Primorial };

inline Family parse_family(const std::string& name) {
  if (name == "factorial") return Family::Factorial;
  if (name == "power10") return Family::Power10;
  if (name == "primorial") return Family::Primorial;
  throw std::invalid_argument("unknown family '" + name + "' (expected factorial, power10 or primorial)");
}

/// Row m of a sequence family: m!, 10^m, or the product of the first m primes.
inline FactoredInteger family_member(Family family, std::uint64_t m) {
  switch (family) {
    case Family::Factorial: return factorial_factored(m);
    case Family::Power10: {
      if (m > 1'000'000'000) throw ResourceLimitError("power10 exponent too large");
      return FactoredInteger::from_factors(
          m == 0 ? std::vector<PrimePower>{} : std::vector<PrimePower>{{2, m}, {5, m}});
    }
    case Family::Primorial: return first_primes_product(m);
  }
  throw std::invalid_argument("unknown family");
}

struct TableRow {
  std::uint64_t m = 0;
  AnyReport report;
};

inline std::vector<TableRow> run_table(Family family, std::uint64_t from, std::uint64_t to, const AnyFunction& f,
                                       const AggregateSpec& aggregate, const InvertOptions& options = {}) {
  std::vector<TableRow> rows;
  for (std::uint64_t m = from; m <= to; ++m) rows.push_back({m, invert(family_member(family, m), f, aggregate, options)});
  return rows;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline bool is_additive(const AggregateSpec& spec) {
  return spec.kind == AggregateKind::Count || spec.kind == AggregateKind::Sum || spec.kind == AggregateKind::SumPow;
}

/// Empty pre-images: [] for set, "0" for count/sum/sumpow, null for min/max.
inline Json result_json(const AnyResult& result, const AggregateSpec& spec) {
  if (!result) {
    if (spec.kind == AggregateKind::Set) return Json::array();
    if (is_additive(spec)) return "0";
    return nullptr;
  }
  if (const auto* set = std::get_if<std::vector<BigInt>>(&*result)) {
    Json arr = Json::array();
    for (const auto& v : *set) arr.push_back(to_decimal(v));
    return arr;
  }
  return to_decimal(std::get<BigInt>(*result));
}

inline std::string result_text(const AnyResult& result, const AggregateSpec& spec) {
  if (!result) return is_additive(spec) ? "0" : "EMPTY";
  if (const auto* set = std::get_if<std::vector<BigInt>>(&*result)) {
    if (set->empty()) return "EMPTY";
    std::string out = "[";
    for (std::size_t i = 0; i < set->size(); ++i) {
      if (i) out += ", ";
      out += to_decimal((*set)[i]);
    }
    return out + "]";
  }
  return to_decimal(std::get<BigInt>(*result));
}

inline Json ops_json(const AnyReport& r) {
  Json ops;
  ops["mul"] = r.ops.mul_count;
  ops["add"] = r.ops.add_count;
  ops["atomic_series"] = r.atomic_count;
  ops["divisors"] = r.divisor_count;
  ops["pair_bound"] = to_decimal(r.pair_bound);
  return ops;
}

inline Json report_json(const AnyReport& r, const AnyFunction& f) {
  Json j;
  j["n"] = to_decimal(r.n);
  j["function"] = function_label(f);
  if (const auto* s = std::get_if<DivisorPowerSum>(&f)) j["k"] = s->k;
  j["aggregate"] = to_string(r.aggregate);
  j["result"] = result_json(r.result, r.aggregate);
  if (!r.divisor_results.empty()) {
    Json divs = Json::array();
    for (const auto& [d, c] : r.divisor_results) {
      Json row;
      row["d"] = to_decimal(d);
      row["result"] = result_json(c, r.aggregate);
      divs.push_back(std::move(row));
    }
    j["divisors"] = std::move(divs);
  }
  j["count_ops"] = ops_json(r);
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline void write_stats(std::ostream& err, const AnyReport& r) {
  err << "n=" << to_decimal(r.n) << " divisors=" << r.divisor_count << " atomic_series=" << r.atomic_count
      << " mul=" << r.ops.mul_count << " add=" << r.ops.add_count << " pair_bound=" << to_decimal(r.pair_bound)
      << " elapsed_ms=" << r.elapsed_ms << '\n';
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Runs the command line given as argv (program name first).
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverses of multiplicative functions (phi, sigma_k) and their aggregates"};
  app.name(argv.empty() ? "invmf" : argv.front());

  std::string function_name = "phi";
  unsigned long k = 1;
  std::string aggregate_text = "set";
  std::string format = "text";
  std::string n_text;
  bool all_divisors = false;
  bool stats = false;

  app.add_option("--function", function_name, "phi or sigma")->check(CLI::IsMember({"phi", "sigma"}));
  app.add_option("--k", k, "power k for sigma_k (default 1)")->check(CLI::PositiveNumber);
  app.add_option("--aggregate", aggregate_text, "set | count | sum | sumpow:Q | min | max");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--n", n_text, "input: INT, m!, m#, a^b, or a product of these joined by '*'");
  app.add_flag("--all-divisors", all_divisors, "also report the result for every divisor of n");
  app.add_flag("--stats", stats, "print operation counters to stderr");
  app.require_subcommand(0, 1);

  CLI::App* invert_cmd = app.add_subcommand("invert", "compute f^-1(n) or an aggregate of it (default)");
  invert_cmd->fallthrough();

  CLI::App* table_cmd = app.add_subcommand("table", "one row per member of a sequence family");
  std::string family_name;
  std::uint64_t from = 1, to = 1;
  table_cmd->add_option("--family", family_name, "factorial | power10 | primorial")->required();
  table_cmd->add_option("--from", from, "first index")->required();
  table_cmd->add_option("--to", to, "last index")->required();
  table_cmd->fallthrough();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force pre-images by exhaustive scan");
  std::uint64_t oracle_n = 0;
  std::uint64_t oracle_bound = 0;
  oracle_cmd->add_option("--n", oracle_n, "target value")->required()->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--bound", oracle_bound, "scan m <= bound (default: provable bound)");
  oracle_cmd->fallthrough();

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    const AnyFunction f = make_function(function_name, k);
    const AggregateSpec aggregate = parse_aggregate(aggregate_text);
    const bool json = format == "json";

    if (*oracle_cmd) {
      const oracle::FunctionRef ref{function_name == "phi" ? oracle::Function::Phi : oracle::Function::Sigma, k};
      std::uint64_t bound = oracle_bound;
      if (bound == 0) {
        if (ref.which == oracle::Function::Phi && oracle_n > (1ull << 31)) {
          throw ResourceLimitError("oracle bound 2n^2 overflows");
        }
        bound = ref.which == oracle::Function::Phi ? oracle::phi_search_bound(oracle_n)
                                                   : oracle::sigma_search_bound(oracle_n);
      }
      const auto start = std::chrono::steady_clock::now();
      const auto found = oracle::oracle_preimages(ref, oracle_n, bound);
      std::vector<BigInt> values;
      for (auto m : found) values.push_back(from_u64(m));
      const AnyResult result = values.empty() ? AnyResult{} : AnyResult{AnyValue{values}};
      const AggregateSpec set_spec{AggregateKind::Set};
      if (json) {
        Json j;
        j["n"] = std::to_string(oracle_n);
        j["function"] = function_label(f);
        if (ref.which == oracle::Function::Sigma) j["k"] = k;
        j["bound"] = std::to_string(bound);
        j["result"] = result_json(result, set_spec);
        j["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out << j.dump() << '\n';
      } else {
        out << result_text(result, set_spec) << '\n';
      }
      return kOk;
    }

    InvertOptions options;
    options.all_divisors = all_divisors;

    if (*table_cmd) {
      if (from > to) throw std::invalid_argument("--from must not exceed --to");
      const Family family = parse_family(family_name);
      const auto rows = run_table(family, from, to, f, aggregate, options);
      if (json) {
        Json j;
        j["family"] = family_name;
        j["function"] = function_label(f);
        if (const auto* s = std::get_if<DivisorPowerSum>(&f)) j["k"] = s->k;
        j["aggregate"] = to_string(aggregate);
        Json arr = Json::array();
        for (const auto& row : rows) {
          Json r;
          r["m"] = std::to_string(row.m);
          r["n"] = to_decimal(row.report.n);
          r["result"] = result_json(row.report.result, aggregate);
          r["count_ops"] = ops_json(row.report);
          r["elapsed_ms"] = row.report.elapsed_ms;
          arr.push_back(std::move(r));
        }
        j["rows"] = std::move(arr);
        out << j.dump() << '\n';
      } else {
        for (const auto& row : rows) out << row.m << '\t' << result_text(row.report.result, aggregate) << '\n';
      }
      if (stats) {
        for (const auto& row : rows) write_stats(err, row.report);
      }
      return kOk;
    }

    if (n_text.empty()) throw std::invalid_argument("--n is required");
    const FactoredInteger n = parse_and_evaluate(n_text);
    const AnyReport report = invert(n, f, aggregate, options);
    if (json) {
      out << report_json(report, f).dump() << '\n';
    } else if (all_divisors) {
      for (const auto& [d, c] : report.divisor_results) out << to_decimal(d) << ": " << result_text(c, aggregate) << '\n';
    } else {
      out << result_text(report.result, aggregate) << '\n';
    }
    if (stats) write_stats(err, report);
    return kOk;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace invmf::cli
