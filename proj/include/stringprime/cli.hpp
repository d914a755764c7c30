#pragma once

// Command-line front end. run() is separate from main() so tests can drive
// it in-process with captured streams.
//
// Exit codes: 0 success, 1 not found within the limit, 2 invalid arguments
// or domain errors, 3 resource limits (sieve ceiling, 128-bit overflow).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stringprime/bounds.hpp"
#include "stringprime/counting.hpp"
#include "stringprime/digits.hpp"
#include "stringprime/experiments.hpp"
#include "stringprime/primes.hpp"
#include "stringprime/self_check.hpp"
#include "stringprime/table.hpp"

namespace stringprime::cli {

enum ExitCode : int { kOk = 0, kNotFound = 1, kInvalid = 2, kResource = 3 };

inline std::uint64_t parse_u64(const std::string& text, const char* what) {
  const u128 v = parse_u128(text);
  if (v > ~std::uint64_t{0}) throw ResourceLimit(std::string(what) + " exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

inline unsigned parse_small(const std::string& text, const char* what) {
  const u128 v = parse_u128(text);
  if (v > 1'000'000) throw DomainError(std::string(what) + " is out of range");
  return static_cast<unsigned>(v);
}

// Sieve bound used by table1 for string length l.
inline std::uint64_t table1_limit(unsigned l) {
  std::uint64_t v = 1000;
  for (unsigned i = 0; i < l && v < kSieveCeiling; ++i) v *= 10;
  return std::min(v, kSieveCeiling);
}

inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Digit strings in the primes: counts, bounds and searches", "stringprime"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string format = "human";
  unsigned threads = 1;
  int precision = 6;
  std::string cache_dir;
  bool seed_check = false;
  app.add_option("--format", format, "Output format: human, csv, markdown")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads for sieving")->check(CLI::Range(1u, 256u));
  app.add_option("--precision", precision, "Significant digits for reals")->check(CLI::Range(1, 17));
  app.add_option("--cache-dir", cache_dir, "Directory for the on-disk sieve cache")->envname("STRINGPRIME_CACHE");
  app.add_flag("--seed-check", seed_check, "Run the built-in invariant checks");

  std::string l_text, b_text, pattern, x_text, limit_text, k_text, max_l_text, r_text, n_text, map_path;
  std::vector<unsigned> exponents;

  auto* bound = app.add_subcommand("bound", "Bound report for string length l");
  bound->add_option("--l", l_text, "String length")->required();
  auto* solve = app.add_subcommand("solve-logn", "Solve y / log y = B for y");
  solve->add_option("--b", b_text, "Right-hand side B > e")->required();
  auto* coupon = app.add_subcommand("coupon", "Coupon-collector prediction for length l");
  coupon->add_option("--l", l_text, "String length (>= 2)")->required();
  auto* count = app.add_subcommand("count-avoiders", "Count n <= x avoiding a pattern");
  count->add_option("--pattern", pattern, "Digit string")->required();
  count->add_option("--x", x_text, "Upper bound (up to 38 digits)")->required();
  auto* hw = app.add_subcommand("hw-bound", "Exact avoider count against the base-r majorant");
  hw->add_option("--pattern", pattern, "Digit string")->required();
  hw->add_option("--x", x_text, "Upper bound")->required();
  auto* least = app.add_subcommand("least-prime", "Least prime containing a pattern");
  least->add_option("--pattern", pattern, "Digit string")->required();
  least->add_option("--limit", limit_text, "Search limit")->required();
  auto* coverage = app.add_subcommand("coverage", "Bound covering all length-l strings");
  coverage->add_option("--l", l_text, "String length (1..6)")->required();
  coverage->add_option("--limit", limit_text, "Search limit")->required();
  coverage->add_option("--map", map_path, "Write string,first_containing_prime CSV here");
  auto* ap = app.add_subcommand("ap", "Arithmetic progression of pattern-containing primes");
  ap->add_option("--pattern", pattern, "Digit string")->required();
  ap->add_option("--k", k_text, "Progression length (3..6)")->required();
  ap->add_option("--limit", limit_text, "Search limit")->required();
  auto* density = app.add_subcommand("density", "Share of primes <= 10^e containing a pattern");
  density->add_option("--pattern", pattern, "Digit string")->required();
  density->add_option("--exponents", exponents, "Comma-separated exponents")->required()->delimiter(',');
  auto* table1 = app.add_subcommand("table1", "Coverage threshold M and log N for l = 1..max-l");
  table1->add_option("--max-l", max_l_text, "Largest string length (1..6)")->required();
  auto* pi = app.add_subcommand("pi", "Prime counting function");
  pi->add_option("--x", x_text, "Bound")->required();
  auto* isprime = app.add_subcommand("is-prime", "Deterministic 64-bit primality");
  isprime->add_option("--n", n_text, "Integer")->required();
  auto* rosser = app.add_subcommand("rosser", "Lower estimate x / log x");
  rosser->add_option("--x", r_text, "Real x >= 17")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    const OutputFormat fmt = parse_output_format(format);
    SieveConfig cfg;
    cfg.threads = threads;
    cfg.cache_dir = cache_dir;
    cfg.diagnostics = &err;
    auto real = [&](double v) { return format_real(v, precision); };
    auto parse_real = [](const std::string& s) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        throw InvalidInput("not a number: " + s);
      }
      if (used != s.size()) throw InvalidInput("not a number: " + s);
      return v;
    };
    auto not_found = [&](const NotFound& nf) {
      err << "not found ≤ " << nf.limit << '\n';
      return kNotFound;
    };

    int status = kOk;
    Table t;
    if (seed_check) {
      t.headers = {"check", "result"};
      for (const auto& c : run_invariant_checks(cfg)) {
        t.add({c.name, c.passed ? "pass" : "FAIL"});
        if (!c.passed) status = kInvalid;
      }
      render(out, t, fmt);
      if (app.get_subcommands().empty()) return status;
      t = {};
    } else if (app.get_subcommands().empty()) {
      err << app.help();
      return kInvalid;
    }

    if (*bound) {
      const auto rep = bound_report(parse_small(l_text, "l"));
      auto opt = [&](const std::optional<double>& v) { return v ? real(*v) : std::string(); };
      t.headers = {"l", "scale", "r", "bound_simple", "bound_exact", "logN", "coupon_pi", "coupon_n"};
      t.add({std::to_string(rep.l), rep.log_scale ? "ln" : "linear",
             rep.log_scale ? "10^" + std::to_string(rep.l) : real(rep.r), real(rep.bound_simple),
             real(rep.bound_exact), real(rep.log_n), opt(rep.coupon_pi), opt(rep.coupon_n)});
    } else if (*solve) {
      const double b = parse_real(b_text);
      t.headers = {"B", "logN"};
      t.add({real(b), real(solve_log_n(b))});
    } else if (*coupon) {
      const unsigned l = parse_small(l_text, "l");
      const auto c = coupon_prediction(l);
      const auto a = asymptotic_prediction(l);
      t.headers = {"l", "expected_pi", "predicted_n", "implied_constant"};
      t.add({std::to_string(l), real(c.expected_pi), real(c.predicted_n), real(a.implied_constant)});
    } else if (*count) {
      const auto s = parse_digit_string(pattern);
      const u128 x = parse_u128(x_text);
      if (x == 0) throw DomainError("x must be positive");
      if (x >= pow10_u128(38)) throw ResourceLimit("x must have at most 38 digits");
      t.headers = {"pattern", "x", "avoiders"};
      t.add({s.str(), to_string(x), count_avoiders(s, x).str()});
    } else if (*hw) {
      const auto s = parse_digit_string(pattern);
      const u128 x = parse_u128(x_text);
      if (x == 0) throw DomainError("x must be positive");
      if (x >= pow10_u128(38)) throw ResourceLimit("x must have at most 38 digits");
      const u128 r = pow10_u128(static_cast<unsigned>(s.length()));
      const auto ctx = BaseRContext::for_bound(r, 0, x);
      const auto exact = count_avoiders(s, x);
      t.headers = {"pattern", "x", "r", "k", "avoiders", "hw_bound", "density", "density_bound"};
      t.add({s.str(), to_string(x), to_string(r), std::to_string(ctx.k), exact.str(), hw_upper_bound(ctx).str(),
             real(static_cast<double>(exact.value) / static_cast<double>(x)), real(avoider_density_bound(ctx))});
    } else if (*least) {
      const auto s = parse_digit_string(pattern);
      const auto res = least_prime_containing(s, parse_u64(limit_text, "limit"), cfg);
      if (auto* nf = std::get_if<NotFound>(&res)) return not_found(*nf);
      t.headers = {"pattern", "prime"};
      t.add({s.str(), std::to_string(std::get<std::uint64_t>(res))});
    } else if (*coverage) {
      const auto res = coverage_threshold(parse_small(l_text, "l"), parse_u64(limit_text, "limit"), cfg);
      if (auto* nf = std::get_if<NotFound>(&res)) return not_found(*nf);
      const auto& c = std::get<CoverageResult>(res);
      if (!map_path.empty()) {
        std::ofstream f(map_path);
        if (!f) throw InvalidInput("cannot write " + map_path);
        write_coverage_csv(f, c);
      }
      t.headers = {"l", "universe", "M", "last_string"};
      t.add({std::to_string(c.l()), std::to_string(c.universe_size()), std::to_string(c.m()), c.last_string().str()});
    } else if (*ap) {
      const auto s = parse_digit_string(pattern);
      const auto res = find_prime_ap(s, parse_small(k_text, "k"), parse_u64(limit_text, "limit"), cfg);
      if (auto* nf = std::get_if<NotFound>(&res)) return not_found(*nf);
      const auto& a = std::get<APResult>(res);
      std::string terms;
      for (auto v : a.terms) terms += (terms.empty() ? "" : " ") + std::to_string(v);
      t.headers = {"pattern", "k", "first_term", "difference", "terms"};
      t.add({s.str(), std::to_string(a.length()), std::to_string(a.first_term), std::to_string(a.difference), terms});
    } else if (*density) {
      const auto s = parse_digit_string(pattern);
      t.headers = {"pattern", "n", "pi_n", "containing", "avoiding", "density"};
      for (const auto& r : density_table(s, exponents, cfg))
        t.add({s.str(), std::to_string(r.n), std::to_string(r.pi_n), std::to_string(r.containing),
               std::to_string(r.avoiding), real(r.density())});
    } else if (*table1) {
      const unsigned max_l = parse_small(max_l_text, "max-l");
      if (max_l < 1 || max_l > kMaxCoverageL) throw DomainError("max-l must be in 1..6");
      t.headers = {"l", "M", "logN"};
      for (unsigned l = 1; l <= max_l; ++l) {
        const auto res = coverage_threshold(l, table1_limit(l), cfg);
        if (auto* nf = std::get_if<NotFound>(&res)) return not_found(*nf);
        t.add({std::to_string(l), std::to_string(std::get<CoverageResult>(res).m()),
               real(solve_log_n(theorem_bound_simple(l)))});
      }
    } else if (*pi) {
      const std::uint64_t x = parse_u64(x_text, "x");
      t.headers = {"x", "pi"};
      t.add({std::to_string(x), std::to_string(prime_count(x, cfg))});
    } else if (*isprime) {
      const std::uint64_t n = parse_u64(n_text, "n");
      t.headers = {"n", "prime"};
      t.add({std::to_string(n), is_prime(n) ? "true" : "false"});
    } else if (*rosser) {
      const double x = parse_real(r_text);
      t.headers = {"x", "x_over_log_x"};
      t.add({real(x), real(rosser_lower(x))});
    }
    render(out, t, fmt);
    return status;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const Overflow& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  }
}

}  // namespace stringprime::cli
