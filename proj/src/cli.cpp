#include "stirval/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stirval/bigmath.hpp"
#include "stirval/checked.hpp"
#include "stirval/errors.hpp"
#include "stirval/oracles.hpp"
#include "stirval/padic.hpp"
#include "stirval/report_io.hpp"
#include "stirval/verify.hpp"

namespace stirval::cli {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string> kFormats{"plain", "json", "csv"};

std::string paint(const Terminal& term, const std::string& text, const char* code) {
  if (!term.color) return text;
  return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
}

// Writes via a sibling temporary file and a rename so readers never see a
// partial file.
void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into place at " + path + ": " + ec.message());
  }
}

// ---- stirling -------------------------------------------------------------

struct StirlingArgs {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t shift = -1;
  std::string format = "plain";
};

int cmd_stirling(const StirlingArgs& args, std::ostream& out) {
  if (args.n < 0 || args.k < 0) throw DomainError("n and k must be nonnegative");
  const bool shifted = args.shift >= 0;
  const Natural value =
      shifted ? stirling1_shifted(static_cast<std::uint64_t>(args.shift), static_cast<std::uint64_t>(args.n),
                                  static_cast<std::uint64_t>(args.k))
              : stirling1(static_cast<std::uint64_t>(args.n), static_cast<std::uint64_t>(args.k));
  const std::int64_t m = shifted ? args.shift : 0;
  if (args.format == "json") {
    json doc{{"n", args.n}, {"k", args.k}, {"m", m}, {"value", value.get_str()}};
    out << doc.dump() << '\n';
  } else if (args.format == "csv") {
    out << "n,k,m,value\n" << args.n << ',' << args.k << ',' << m << ',' << value.get_str() << '\n';
  } else {
    out << value.get_str() << '\n';
  }
  return kSuccess;
}

// ---- val ------------------------------------------------------------------

struct ValArgs {
  std::int64_t p = 3;
  std::int64_t a = 1;
  std::int64_t n = 1;
  std::int64_t t = 1;
  std::string method = "formula";
  std::string format = "plain";
};

struct FormulaValue {
  Valuation value;
  bool proven = false;  // backed by a theorem rather than the open conjecture
};

FormulaValue formula_valuation(const ValArgs& v) {
  if (v.p == 3) return {full_valuation_3(v.a, v.n, v.t), true};
  const Prime p(v.p);
  if (v.a < 1 || v.a > v.p - 1) throw DomainError("need 1 <= a <= p-1");
  const std::int64_t top = checked::mul(v.a, checked::pow(v.p, v.n));
  if (v.t == top) return {Valuation(0), true};
  return {conjecture13_valuation(decompose_p(v.p, v.a, v.n, v.t)), false};
}

Valuation exact_valuation(std::int64_t p, std::int64_t a, std::int64_t n, std::int64_t t) {
  const Prime prime(p);
  if (n < 1) throw DomainError("n must be positive");
  if (a < 1) throw DomainError("a must be positive");
  const std::int64_t top = checked::mul(a, checked::pow(p, n));
  if (t < 1 || t > top) throw DomainError("need 1 <= t <= a*p^n = " + std::to_string(top));
  return vp_int(prime, stirling1(static_cast<std::uint64_t>(top), static_cast<std::uint64_t>(t)));
}

int cmd_val(const ValArgs& args, std::ostream& out) {
  std::optional<FormulaValue> formula;
  std::optional<Valuation> exact;
  if (args.method != "exact") {
    try {
      formula = formula_valuation(args);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + "; no closed form applies here, try --method exact");
    }
  }
  if (args.method != "formula") exact = exact_valuation(args.p, args.a, args.n, args.t);

  const bool both = formula && exact;
  const bool match = both && formula->value == *exact;
  if (args.format == "json") {
    json doc{{"p", args.p}, {"a", args.a}, {"n", args.n}, {"t", args.t}, {"method", args.method}};
    if (formula) {
      doc["formula"] = formula->value.to_string();
      doc["source"] = formula->proven ? "theorem" : "conjecture";
    }
    if (exact) doc["exact"] = exact->to_string();
    if (both) doc["match"] = match;
    out << doc.dump() << '\n';
  } else if (args.format == "csv") {
    out << "p,a,n,t,formula,exact,match\n"
        << args.p << ',' << args.a << ',' << args.n << ',' << args.t << ','
        << (formula ? formula->value.to_string() : "") << ',' << (exact ? exact->to_string() : "")
        << ',' << (both ? (match ? "true" : "false") : "") << '\n';
  } else if (both) {
    out << "formula=" << formula->value.to_string() << " exact=" << exact->to_string()
        << " match=" << (match ? "true" : "false") << '\n';
  } else {
    out << (formula ? formula->value.to_string() : exact->to_string()) << '\n';
  }
  if (both && !match) return formula->proven ? kVerificationFailure : kConjectureDeviation;
  return kSuccess;
}

// ---- table ----------------------------------------------------------------

struct TableArgs {
  std::int64_t a = 1;
  std::int64_t n = 1;
  std::string format = "csv";
  std::string output;
};

int cmd_table(const TableArgs& args, std::ostream& out) {
  if (args.a != 1 && args.a != 2) throw DomainError("a must be 1 or 2");
  if (args.n < 1) throw DomainError("n must be positive");
  const std::int64_t top = checked::mul(args.a, checked::pow(3, args.n));
  const StirlingRow row = stirling1_row(static_cast<std::uint64_t>(top));
  const Prime three(3);

  struct Line {
    std::int64_t t;
    std::optional<Query3> q;
    Valuation formula;
    Valuation exact;
  };
  std::vector<Line> lines;
  bool all_match = true;
  for (std::int64_t t = 1; t <= top; ++t) {
    Line line{t, std::nullopt, full_valuation_3(args.a, args.n, t),
              vp_int(three, row.entries[static_cast<std::size_t>(t)])};
    if (t <= top - 2) line.q = decompose(args.a, args.n, t);
    all_match = all_match && line.formula == line.exact;
    lines.push_back(line);
  }

  std::ostringstream doc;
  if (args.format == "json") {
    json rows = json::array();
    for (const auto& l : lines) {
      json r{{"a", args.a}, {"n", args.n}, {"t", l.t}};
      r["m"] = l.q ? json(l.q->m) : json(nullptr);
      r["k"] = l.q ? json(l.q->k) : json(nullptr);
      r["epsilon_k"] = l.q ? json(l.q->k & 1) : json(nullptr);
      r["v3_formula"] = l.formula.to_string();
      r["v3_exact"] = l.exact.to_string();
      r["match"] = l.formula == l.exact;
      rows.push_back(std::move(r));
    }
    doc << rows.dump(2) << '\n';
  } else if (args.format == "plain") {
    doc << std::setw(6) << "t" << std::setw(4) << "m" << std::setw(6) << "k" << std::setw(4) << "eps"
        << std::setw(10) << "formula" << std::setw(8) << "exact" << "  match\n";
    for (const auto& l : lines) {
      doc << std::setw(6) << l.t << std::setw(4) << (l.q ? std::to_string(l.q->m) : "-")
          << std::setw(6) << (l.q ? std::to_string(l.q->k) : "-") << std::setw(4)
          << (l.q ? std::to_string(l.q->k & 1) : "-") << std::setw(10) << l.formula.to_string()
          << std::setw(8) << l.exact.to_string() << "  " << (l.formula == l.exact ? "yes" : "NO")
          << '\n';
    }
  } else {
    doc << "a,n,t,m,k,epsilon_k,v3_formula,v3_exact,match\n";
    for (const auto& l : lines) {
      doc << args.a << ',' << args.n << ',' << l.t << ',' << (l.q ? std::to_string(l.q->m) : "")
          << ',' << (l.q ? std::to_string(l.q->k) : "") << ','
          << (l.q ? std::to_string(l.q->k & 1) : "") << ',' << l.formula.to_string() << ','
          << l.exact.to_string() << ',' << (l.formula == l.exact ? "true" : "false") << '\n';
    }
  }
  if (args.output.empty()) {
    out << doc.str();
  } else {
    write_atomically(args.output, doc.str());
  }
  return all_match ? kSuccess : kVerificationFailure;
}

// ---- harmonic -------------------------------------------------------------

struct HarmonicArgs {
  std::int64_t n = 1;
  std::int64_t k = 0;
  std::int64_t p = 3;
  bool check = false;
  std::string format = "plain";
};

int cmd_harmonic(const HarmonicArgs& args, std::ostream& out) {
  if (args.n < 1) throw DomainError("n must be positive");
  if (args.k < 0 || args.k > args.n) throw DomainError("need 0 <= k <= n");
  const Prime p(args.p);
  const BigRational h = harmonic_sym(static_cast<std::uint64_t>(args.n), static_cast<std::uint64_t>(args.k));
  const Valuation v = h_valuation(p, args.n, args.k);
  std::optional<bool> identity;
  if (args.check) {
    BigRational scaled = BigRational(factorial(static_cast<std::uint64_t>(args.n))) * h;
    scaled.canonicalize();
    identity = scaled == BigRational(stirling1(static_cast<std::uint64_t>(args.n + 1),
                                                 static_cast<std::uint64_t>(args.k + 1)));
  }
  if (args.format == "json") {
    json doc{{"n", args.n}, {"k", args.k}, {"p", args.p}, {"value", h.get_str()},
             {"numerator", h.get_num().get_str()}, {"denominator", h.get_den().get_str()},
             {"valuation", v.to_string()}};
    if (identity) doc["identity_holds"] = *identity;
    out << doc.dump() << '\n';
  } else if (args.format == "csv") {
    out << "n,k,p,numerator,denominator,valuation" << (identity ? ",identity_holds" : "") << '\n'
        << args.n << ',' << args.k << ',' << args.p << ',' << h.get_num().get_str() << ','
        << h.get_den().get_str() << ',' << v.to_string();
    if (identity) out << ',' << (*identity ? "true" : "false");
    out << '\n';
  } else {
    out << "H(" << args.n << "," << args.k << ") = " << h.get_str() << '\n'
        << "v_" << args.p << " = " << v.to_string() << '\n';
    if (identity) {
      out << "s(n+1,k+1) = n! H(n,k): " << (*identity ? "holds" : "FAILS") << '\n';
    }
  }
  return identity && !*identity ? kVerificationFailure : kSuccess;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  Limits limits;
  unsigned threads = 1;
  bool all = false;
  std::string format = "plain";
  std::string output;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, const Terminal& term) {
  const VerificationReport report = sweep(args.suite, args.limits, SweepOptions{args.threads});
  std::string text;
  if (args.format == "json") {
    text = report_to_json(report) + "\n";
  } else if (args.format == "csv") {
    text = report_to_csv(report);
  } else {
    text = report_to_plain(report, args.all);
    if (term.color) {
      const bool clean = report.failed == 0;
      const auto eol = text.find('\n');
      text = paint(term, text.substr(0, eol), clean ? "32" : report.exploratory ? "33" : "31") +
             text.substr(eol);
    }
  }
  if (args.output.empty()) {
    out << text;
  } else {
    write_atomically(args.output, text);
  }
  if (report.exploratory) return report.deviations > 0 ? kConjectureDeviation : kSuccess;
  return report.failed > 0 ? kVerificationFailure : kSuccess;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::int64_t a = 1;
  std::int64_t n = 1;
  std::int64_t repetitions = 3;
  std::string format = "plain";
};

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  if (args.a != 1 && args.a != 2) throw DomainError("a must be 1 or 2");
  if (args.n < 1) throw DomainError("n must be positive");
  if (args.repetitions < 1) throw DomainError("repetitions must be positive");
  const std::int64_t top = checked::mul(args.a, checked::pow(3, args.n));
  if (static_cast<std::uint64_t>(top) > kDefaultRowCap) {
    throw CapacityError("a*3^n = " + std::to_string(top) + " exceeds the row cap " +
                        std::to_string(kDefaultRowCap));
  }
  const Prime three(3);

  // Exact arm: build the row, then value every column.
  std::vector<Valuation> exact;
  const auto exact_start = clock::now();
  for (std::int64_t r = 0; r < args.repetitions; ++r) {
    exact = row_valuations(three, stirling1_row(static_cast<std::uint64_t>(top)));
  }
  const double exact_ns = std::chrono::duration<double, std::nano>(clock::now() - exact_start).count();

  // Formula arm: int64 only. Repeat until the measurement is long enough.
  std::int64_t formula_reps = 0;
  std::int64_t checksum = 0;
  std::int64_t mismatches = 0;
  const auto formula_start = clock::now();
  auto elapsed = clock::duration::zero();
  do {
    for (std::int64_t t = 1; t <= top; ++t) {
      const Valuation v = full_valuation_3(args.a, args.n, t);
      checksum += v.value();
      if (formula_reps == 0 && v != exact[static_cast<std::size_t>(t)]) ++mismatches;
    }
    ++formula_reps;
    elapsed = clock::now() - formula_start;
  } while (formula_reps < args.repetitions || elapsed < std::chrono::milliseconds(20));
  const double formula_ns = std::chrono::duration<double, std::nano>(elapsed).count();

  const double queries = static_cast<double>(top);
  const double exact_per_query = exact_ns / (static_cast<double>(args.repetitions) * queries);
  const double formula_per_query = formula_ns / (static_cast<double>(formula_reps) * queries);
  const double speedup = formula_per_query > 0 ? exact_per_query / formula_per_query : 0.0;

  if (args.format == "json") {
    json doc{{"a", args.a},
             {"n", args.n},
             {"queries", top},
             {"exact_repetitions", args.repetitions},
             {"formula_repetitions", formula_reps},
             {"exact_ns_per_query", exact_per_query},
             {"formula_ns_per_query", formula_per_query},
             {"speedup", speedup},
             {"mismatches", mismatches},
             {"checksum", checksum}};
    out << doc.dump() << '\n';
  } else if (args.format == "csv") {
    out << "a,n,queries,exact_ns_per_query,formula_ns_per_query,speedup,mismatches\n"
        << args.a << ',' << args.n << ',' << top << ',' << exact_per_query << ','
        << formula_per_query << ',' << speedup << ',' << mismatches << '\n';
  } else {
    out << std::fixed << std::setprecision(1) << "s(" << top << ", t), t = 1.." << top << '\n'
        << "  exact row:  " << exact_per_query << " ns/query (" << args.repetitions << " reps)\n"
        << "  formula:    " << formula_per_query << " ns/query (" << formula_reps << " reps)\n"
        << "  speedup:    " << speedup << "x\n"
        << "  mismatches: " << mismatches << '\n';
  }
  return mismatches == 0 ? kSuccess : kVerificationFailure;
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember(kFormats));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Terminal& terminal) {
  CLI::App app{"Exact Stirling numbers of the first kind and their p-adic valuations", "stirval"};
  app.require_subcommand(1);

  StirlingArgs st;
  auto* c_st = app.add_subcommand("stirling", "Exact s(n,k), or s_m(n,k) with --shift");
  c_st->add_option("n", st.n)->required();
  c_st->add_option("k", st.k)->required();
  c_st->add_option("--shift", st.shift, "Shift m of the m-th Stirling number");
  add_format(c_st, st.format);

  ValArgs va;
  auto* c_val = app.add_subcommand("val", "v_p(s(a p^n, t)) by closed form and/or exact row");
  c_val->add_option("--p", va.p, "Prime")->default_val(3);
  c_val->add_option("--a", va.a)->required();
  c_val->add_option("--n", va.n)->required();
  c_val->add_option("--t", va.t)->required();
  c_val->add_option("--method", va.method)->check(CLI::IsMember({"formula", "exact", "both"}));
  add_format(c_val, va.format);

  TableArgs ta;
  auto* c_tab = app.add_subcommand("table", "Closed form vs exact v_3(s(a 3^n, t)) for every t");
  c_tab->add_option("--a", ta.a)->required();
  c_tab->add_option("--n", ta.n)->required();
  c_tab->add_option("--output,-o", ta.output, "Write to this file instead of stdout");
  add_format(c_tab, ta.format);

  HarmonicArgs ha;
  auto* c_h = app.add_subcommand("harmonic", "Exact H(n,k) and its p-adic valuation");
  c_h->add_option("n", ha.n)->required();
  c_h->add_option("k", ha.k)->required();
  c_h->add_option("--p", ha.p)->default_val(3);
  c_h->add_flag("--check", ha.check, "Also check s(n+1,k+1) = n! H(n,k)");
  add_format(c_h, ha.format);

  VerifyArgs ve;
  std::int64_t v_a = 0, v_n = 0, v_nmax = 0, v_mmax = 0, v_p = 0;
  auto* c_ver = app.add_subcommand("verify", "Run a verification suite");
  c_ver->add_option("suite", ve.suite)->required();
  auto* o_a = c_ver->add_option("--a", v_a);
  auto* o_n = c_ver->add_option("--n", v_n);
  auto* o_nmax = c_ver->add_option("--n-max", v_nmax);
  auto* o_mmax = c_ver->add_option("--m-max", v_mmax);
  auto* o_p = c_ver->add_option("--p", v_p);
  c_ver->add_option("--threads", ve.threads)->check(CLI::Range(1u, 256u));
  c_ver->add_flag("--all", ve.all, "List passing records too (plain format)");
  c_ver->add_option("--output,-o", ve.output, "Write the report to this file");
  add_format(c_ver, ve.format);

  BenchArgs be;
  auto* c_b = app.add_subcommand("bench", "Time the closed form against exact row computation");
  c_b->add_option("--a", be.a)->required();
  c_b->add_option("--n", be.n)->required();
  c_b->add_option("--repetitions,-r", be.repetitions);
  add_format(c_b, be.format);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*c_st) return cmd_stirling(st, out);
    if (*c_val) return cmd_val(va, out);
    if (*c_tab) return cmd_table(ta, out);
    if (*c_h) return cmd_harmonic(ha, out);
    if (*c_ver) {
      if (*o_a) ve.limits["a"] = v_a;
      if (*o_n) ve.limits["n"] = v_n;
      if (*o_nmax) ve.limits["n_max"] = v_nmax;
      if (*o_mmax) ve.limits["m_max"] = v_mmax;
      if (*o_p) ve.limits["p"] = v_p;
      return cmd_verify(ve, out, terminal);
    }
    if (*c_b) return cmd_bench(be, out);
  } catch (const std::invalid_argument& e) {  // DomainError, UsageError
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::length_error& e) {  // CapacityError
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::runtime_error& e) {  // I/O
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace stirval::cli
