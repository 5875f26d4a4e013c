#include "nckit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "nckit/cumulants.hpp"
#include "nckit/errors.hpp"
#include "nckit/ncpart.hpp"
#include "nckit/trees.hpp"
#include "nckit/verify.hpp"

namespace nckit {
namespace {

constexpr int kPartitionCap = 10;
constexpr int kTreeCap = 8;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int cap_for(int default_cap, bool unsafe) {
  if (unsafe)
    return std::numeric_limits<int>::max();
  if (const char *env = std::getenv("NCKIT_MAX_N")) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(env, &used);
      if (used == std::string(env).size() && v >= 1)
        return v;
    } catch (const std::exception &) {
    }
    throw UsageError("NCKIT_MAX_N must be a positive integer");
  }
  return default_cap;
}

void check_n(int n, int cap, const std::string &flag) {
  if (n < 1)
    throw UsageError(flag + " must be at least 1");
  if (n > cap)
    throw UsageError(flag + " " + std::to_string(n) + " exceeds the cap " +
                     std::to_string(cap) +
                     " (set NCKIT_MAX_N or pass --unsafe-no-cap)");
}

// ---- enumerate ----

struct EnumerateArgs {
  std::string kind;
  int n = 0;
  std::string format = "text";
  bool unsafe = false;
};

int run_enumerate(const EnumerateArgs &a, std::ostream &out) {
  const bool partitions = a.kind == "nc" || a.kind == "interval";
  check_n(a.n, cap_for(partitions ? kPartitionCap : kTreeCap, a.unsafe), "--n");

  std::vector<std::string> text;
  nlohmann::json items = nlohmann::json::array();
  auto add = [&](std::string t, nlohmann::json j) {
    text.push_back(std::move(t));
    items.push_back(std::move(j));
  };
  if (partitions) {
    for (const auto &p :
         a.kind == "nc" ? enumerate_nc(a.n) : enumerate_interval(a.n))
      add(p.to_string(), p.to_json());
  } else if (a.kind == "arrangement") {
    for (const auto &arr : enumerate_arrangements(a.n))
      add(arr.to_string(), arr.to_json());
  } else {
    for (const auto &t :
         a.kind == "schroder" ? enumerate_schroder(a.n) : enumerate_prime(a.n))
      add(t.tree().to_string(), t.tree().to_json());
  }

  if (a.format == "json") {
    nlohmann::json doc = {{"kind", a.kind},
                          {"n", a.n},
                          {"items", items},
                          {"count", items.size()}};
    out << doc.dump() << '\n';
  } else {
    for (const auto &line : text)
      out << line << '\n';
    out << "count: " << text.size() << '\n';
  }
  return kExitOk;
}

// ---- table ----

struct TableArgs {
  std::string kind;
  std::string direction = "cumulants";
  int n = 0;
  std::string method;
  std::string format = "text";
  bool unsafe = false;
};

TransformTable build_table(Direction d, const std::string &method, int n) {
  if (d == Direction::CumulantsFromMoments) {
    if (method == "mobius")
      return cumulants_from_moments_mobius(n);
    if (method == "trees")
      return cumulants_from_moments_trees(n);
    if (method == "lagrange")
      return cumulants_from_moments_lagrange(n);
  } else {
    if (method == "yoshida")
      return moments_from_cumulants(n);
    if (method == "fixedpoint")
      return moments_from_cumulants_fixed_point(n);
  }
  throw UsageError("method '" + method + "' is not available for direction " +
                   to_string(d));
}

TransformTable specialize_kind(const TransformTable &t, const std::string &kind) {
  if (kind == "free")
    return specialize(t, free_assignment(t.n));
  if (kind == "boolean")
    return specialize(t, boolean_assignment(t.n));
  return t;
}

void emit_table(const TransformTable &t, const std::string &format,
                std::ostream &out) {
  if (format == "json")
    out << t.to_json().dump() << '\n';
  else if (format == "csv")
    out << t.to_csv();
  else
    out << t.to_text();
}

int run_table(const TableArgs &a, std::ostream &out, std::ostream &err) {
  check_n(a.n, cap_for(kTreeCap, a.unsafe), "--n");
  const Direction d = a.direction == "moments" ? Direction::MomentsFromCumulants
                                               : Direction::CumulantsFromMoments;
  const std::vector<std::string> all =
      d == Direction::CumulantsFromMoments
          ? std::vector<std::string>{"mobius", "trees", "lagrange"}
          : std::vector<std::string>{"yoshida", "fixedpoint"};
  const std::string method =
      a.method.empty() ? all.front() : a.method;

  if (method != "all") {
    emit_table(specialize_kind(build_table(d, method, a.n), a.kind), a.format,
               out);
    return kExitOk;
  }

  std::vector<TransformTable> tables;
  for (const auto &m : all)
    tables.push_back(specialize_kind(build_table(d, m, a.n), a.kind));
  std::vector<std::string> names = all;
  // The specialized cumulant tables also have closed-form series routes.
  if (d == Direction::CumulantsFromMoments && a.kind != "delta") {
    tables.push_back(a.kind == "free" ? free_cumulants(a.n)
                                      : boolean_cumulants(a.n));
    names.push_back(a.kind + " series");
  }

  bool agree = true;
  nlohmann::json report = nlohmann::json::array();
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const bool same = same_entries(tables.front(), tables[i]);
    agree = agree && same;
    report.push_back({{"method", names[i]}, {"agrees", same}});
    lines.push_back(names[i] + ": " + (same ? "agrees" : "DISAGREES"));
  }
  lines.push_back(agree ? "cross-check: all " + std::to_string(tables.size()) +
                              " methods agree"
                        : "cross-check: methods disagree");

  if (a.format == "json") {
    out << nlohmann::json{{"table", tables.front().to_json()},
                          {"cross_check", report},
                          {"agree", agree}}
               .dump()
        << '\n';
  } else {
    emit_table(tables.front(), a.format, out);
    // keep CSV output machine-readable
    std::ostream &report_stream = a.format == "csv" ? err : out;
    for (const auto &line : lines)
      report_stream << line << '\n';
  }
  if (!agree) {
    err << "internal disagreement between methods\n";
    return kExitDisagreement;
  }
  return kExitOk;
}

// ---- convert ----

struct ConvertArgs {
  std::vector<std::string> moments;
  std::vector<std::string> cumulants;
  std::vector<std::string> deltas;
  std::string direction;
  bool unsafe = false;
};

std::vector<Rational> parse_list(const std::vector<std::string> &items,
                                 const std::string &flag) {
  std::vector<Rational> out;
  for (const auto &s : items) {
    try {
      out.push_back(parse_rational(s));
    } catch (const Error &e) {
      throw UsageError(flag + ": " + e.what());
    }
  }
  return out;
}

int run_convert(const ConvertArgs &a, std::ostream &out) {
  const bool from_moments = !a.moments.empty();
  if (from_moments == !a.cumulants.empty())
    throw UsageError("give exactly one of --moments and --cumulants");
  const std::string implied = from_moments ? "cumulants" : "moments";
  if (!a.direction.empty() && a.direction != implied)
    throw UsageError("--direction " + a.direction + " does not match the " +
                     (from_moments ? "--moments" : "--cumulants") + " input");

  const auto values =
      parse_list(from_moments ? a.moments : a.cumulants,
                 from_moments ? "--moments" : "--cumulants");
  const auto deltas = parse_list(a.deltas, "--deltas");
  check_n(static_cast<int>(values.size()), cap_for(kTreeCap, a.unsafe),
          "sequence length");
  if (values.size() != deltas.size())
    throw UsageError("sequence has " + std::to_string(values.size()) +
                     " values but --deltas has " +
                     std::to_string(deltas.size()));

  const auto result =
      numeric_convert(values, deltas,
                      from_moments ? Direction::CumulantsFromMoments
                                   : Direction::MomentsFromCumulants);
  for (std::size_t i = 0; i < result.size(); ++i)
    out << (i ? "," : "") << to_string(result[i]);
  out << '\n';
  return kExitOk;
}

// ---- verify ----

struct VerifyArgs {
  int max_n = 5;
  bool inject_fault = false;
  bool unsafe = false;
};

int run_verify(const VerifyArgs &a, std::ostream &out, std::ostream &err) {
  check_n(a.max_n, cap_for(kTreeCap, a.unsafe), "--max-n");
  const auto report = run_verification({a.max_n, a.inject_fault});
  out << report.to_text();
  if (const auto *f = report.first_failure()) {
    err << "verification failed: " << f->name << '\n';
    return kExitVerificationFailed;
  }
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Exact moment and cumulant transforms over noncrossing "
               "partitions",
               "nckit"};
  app.require_subcommand(1);

  EnumerateArgs ea;
  auto *enumerate = app.add_subcommand("enumerate", "List combinatorial objects");
  enumerate->add_option("kind", ea.kind, "nc|interval|schroder|prime|arrangement")
      ->required()
      ->check(CLI::IsMember({"nc", "interval", "schroder", "prime", "arrangement"}));
  enumerate->add_option("--n", ea.n, "Size")->required();
  enumerate->add_option("--format", ea.format)->check(CLI::IsMember({"text", "json"}));
  enumerate->add_flag("--unsafe-no-cap", ea.unsafe, "Lift the size cap");

  TableArgs ta;
  auto *table = app.add_subcommand("table", "Print a symbolic transform table");
  table->add_option("kind", ta.kind, "delta|free|boolean")
      ->required()
      ->check(CLI::IsMember({"delta", "free", "boolean"}));
  table->add_option("--direction", ta.direction)
      ->check(CLI::IsMember({"cumulants", "moments"}));
  table->add_option("--n", ta.n, "Size")->required();
  table->add_option("--method", ta.method,
                    "mobius|trees|lagrange|all, or yoshida|fixedpoint|all")
      ->check(CLI::IsMember(
          {"mobius", "trees", "lagrange", "yoshida", "fixedpoint", "all"}));
  table->add_option("--format", ta.format)
      ->check(CLI::IsMember({"text", "json", "csv"}));
  table->add_flag("--unsafe-no-cap", ta.unsafe, "Lift the size cap");

  ConvertArgs ca;
  auto *convert = app.add_subcommand("convert", "Convert an exact rational sequence");
  convert->add_option("--moments", ca.moments, "M1,M2,... (gives cumulants)")
      ->delimiter(',');
  convert->add_option("--cumulants", ca.cumulants, "C1,C2,... (gives moments)")
      ->delimiter(',');
  convert->add_option("--deltas", ca.deltas, "d1,d2,...")
      ->delimiter(',')
      ->required();
  convert->add_option("--direction", ca.direction)
      ->check(CLI::IsMember({"cumulants", "moments"}));
  convert->add_flag("--unsafe-no-cap", ca.unsafe, "Lift the size cap");

  VerifyArgs va;
  auto *verify = app.add_subcommand("verify", "Run the self-verification suite");
  verify->add_option("--max-n", va.max_n, "Largest size checked");
  verify->add_flag("--inject-weight-fault", va.inject_fault,
                   "Test mode: corrupt the tree weights");
  verify->add_flag("--unsafe-no-cap", va.unsafe, "Lift the size cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerate)
      return run_enumerate(ea, out);
    if (*table)
      return run_table(ta, out, err);
    if (*convert)
      return run_convert(ca, out);
    return run_verify(va, out, err);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

} // namespace nckit
