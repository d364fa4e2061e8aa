#pragma once

// Command-line front end. run_cli returns the process exit status:
// 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "paircorr/paircorr.hpp"

namespace paircorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

struct GlobalOptions {
  unsigned precision = 64;
  unsigned guard_band = kDefaultGuardBand;
  std::string out_path;
  std::string format = "csv";
  std::size_t max_points = std::size_t(1) << 27;
};

struct SequenceOptions {
  std::string kind = "kronecker";
  std::uint32_t base = 2;
  bool no_zero = false;
  std::string z = "golden";
  std::uint64_t seed = 0;

  SequenceSpec spec() const {
    SequenceSpec s;
    s.kind = parse_sequence_kind(kind);
    s.base = base;
    s.include_zero = !no_zero;
    s.z = ZSpec::parse(z);
    s.seed = seed;
    return s;
  }
};

struct GenOptions {
  std::uint64_t count = 0;
  bool binary = false;
};

struct FstatOptions {
  std::vector<std::uint64_t> n_list;
  std::vector<double> alphas;
  std::vector<double> s_values;
  std::string input;
  bool binary = false;
};

struct GapsOptions {
  std::uint64_t count = 0;
  bool merge_ulp = false;
  bool no_prediction = false;
};

struct CfOptions {
  std::string value;
  std::size_t terms = 20;
};

struct OstrowskiOptions {
  std::string n;
  std::string z = "golden";
};

inline const std::vector<double> kDefaultAlphas{0.25, 0.5, 0.75, 0.9, 1.0};
inline const std::vector<double> kDefaultS{0.5, 1, 2, 5};

// Default N-list: b^10..b^20 for vdc, q_10..q_30 for the golden rotation,
// restricted to the point cap.
inline std::vector<std::uint64_t> default_n_list(const SequenceSpec& spec, std::size_t cap) {
  std::vector<std::uint64_t> out;
  if (spec.kind == SequenceKind::vdc) {
    std::uint64_t p = 1;
    for (int k = 1; k <= 20; ++k) {
      if (p > cap / spec.base) break;
      p *= spec.base;
      if (k >= 10) out.push_back(spec.include_zero ? p : p - 1);
    }
  } else if (spec.kind == SequenceKind::kronecker && spec.z.kind == ZSpec::Kind::golden) {
    const ContinuedFraction cf = golden_cf(34);
    for (int h = 10; h <= 30; ++h)
      if (cf.q(h) <= cap) out.push_back(static_cast<std::uint64_t>(cf.q(h)));
  } else {
    throw UsageError("--n is required for this sequence");
  }
  if (out.empty()) throw UsageError("no default N fits under --max-points");
  return out;
}

class Runner {
 public:
  Runner(const GlobalOptions& g, std::ostream& out) : g_(g), out_(&out) {}

  std::ostream& sink() {
    if (g_.out_path.empty()) return *out_;
    if (!file_) {
      file_ = std::make_unique<std::ofstream>(g_.out_path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw UsageError("cannot write " + g_.out_path);
    }
    return *file_;
  }
  void finish() {
    if (file_) {
      file_->flush();
      if (!*file_) throw UsageError("write to " + g_.out_path + " failed");
    }
  }
  bool csv() const { return g_.format == "csv"; }

  template <PointWord W>
  int gen(const SequenceOptions& so, const GenOptions& o) {
    check_cap(o.count);
    const UnitBatch<W> pts = to_unit_batch(generate<W>(so.spec(), o.count));
    std::ostream& os = sink();
    if (o.binary) {
      write_points_binary(os, pts);
    } else if (csv()) {
      write_points_csv(os, pts);
    } else {
      for (const auto& p : pts) os << format_unit(p, kCsvDigits<W>) << '\n';
    }
    return kExitOk;
  }

  template <PointWord W>
  int fstat(const SequenceOptions& so, FstatOptions o) {
    std::sort(o.n_list.begin(), o.n_list.end());
    o.n_list.erase(std::unique(o.n_list.begin(), o.n_list.end()), o.n_list.end());
    const auto alphas = o.alphas.empty() ? kDefaultAlphas : o.alphas;
    const auto s_values = o.s_values.empty() ? kDefaultS : o.s_values;
    ProfileOptions popt;
    popt.max_points = g_.max_points;
    popt.guard = g_.guard_band;

    std::vector<ProfileRow> rows;
    if (!o.input.empty()) {
      std::ifstream in(o.input, std::ios::binary);
      if (!in) throw UsageError("cannot read " + o.input);
      PointBatch<W> batch;
      batch.points = o.binary ? read_points_binary<W>(in) : read_points_csv<W>(in);
      check_cap(batch.size());
      if (o.n_list.empty()) o.n_list.push_back(batch.size());
      rows = f_stat_profile<W>(batch, "file", "path=" + o.input, o.n_list, alphas, s_values, popt);
    } else {
      const SequenceSpec spec = so.spec();
      if (o.n_list.empty()) o.n_list = default_n_list(spec, g_.max_points);
      rows = f_stat_profile<W>(spec, o.n_list, alphas, s_values, popt);
    }
    if (csv()) write_results_csv(sink(), rows);
    else write_results_text(sink(), rows);
    return kExitOk;
  }

  template <PointWord W>
  int gaps(const SequenceOptions& so, const GapsOptions& o) {
    check_cap(o.count);
    const ZSpec z = ZSpec::parse(so.z);
    SequenceSpec spec;
    spec.kind = SequenceKind::kronecker;
    spec.z = z;
    const GapCensus c = gap_census(to_unit_batch(generate<W>(spec, o.count)), o.merge_ulp);
    std::optional<GapPrediction> p;
    if (!o.no_prediction) p = predict_gaps<W>(z, o.count);
    if (csv()) write_census_csv(sink(), c, p ? &*p : nullptr);
    else write_census_text(sink(), c, p ? &*p : nullptr);
    return kExitOk;
  }

  int cf(const CfOptions& o) {
    const ContinuedFraction cf = expansion_of(o.value, o.terms);
    std::ostream& os = sink();
    if (csv()) {
      os << "i,a,p,q\n";
      for (int i = 0; i <= cf.last(); ++i) os << i << ',' << cf.a(i).str() << ',' << cf.p(i).str() << ',' << cf.q(i).str() << '\n';
    } else {
      os << render_cf(cf) << '\n';
      for (int i = 0; i <= cf.last(); ++i) os << "  p_" << i << "/q_" << i << " = " << cf.p(i).str() << '/' << cf.q(i).str() << '\n';
    }
    return kExitOk;
  }

  int ostrowski_cmd(const OstrowskiOptions& o) {
    BigInt n;
    try {
      n = BigInt(o.n);
    } catch (const std::exception&) {
      throw UsageError("not an integer: " + o.n);
    }
    if (n < 1) throw UsageError("ostrowski needs N >= 1");
    // enough terms for q_last > N
    std::size_t terms = 8;
    ContinuedFraction cf = expansion_of(o.z, terms);
    while (!cf.terminated() && cf.q(cf.last()) <= n) cf = expansion_of(o.z, terms *= 2);
    const OstrowskiRep rep = ostrowski(n, cf);
    std::ostream& os = sink();
    if (csv()) {
      os << "index,digit,place\n";
      for (int i = rep.top(); i >= 1; --i)
        if (rep.digit(i) != 0) os << i << ',' << rep.digit(i).str() << ',' << rep.place(i).str() << '\n';
    } else {
      os << render_ostrowski_sum(rep) << '\n' << render_ostrowski(rep) << '\n';
    }
    return kExitOk;
  }

  template <PointWord W>
  int verify(const std::string& suite) {
    std::vector<std::string> names;
    if (suite == "all") names = suite_names();
    else names.push_back(suite);
    for (const auto& name : names)
      if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
        throw UsageError("unknown suite: " + name);
    bool ok = true;
    std::ostream& os = sink();
    for (std::size_t i = 0; i < names.size(); ++i) {
      const VerificationReport r = run_suite<W>(names[i]);
      ok = ok && r.passed();
      if (csv()) {
        std::ostringstream tmp;
        write_report_csv(tmp, r);
        std::string body = tmp.str();
        if (i > 0) body = body.substr(body.find('\n') + 1);  // one header
        os << body;
      } else {
        write_report_text(os, r);
      }
    }
    return ok ? kExitOk : kExitVerifyFailed;
  }

 private:
  void check_cap(std::size_t n) const {
    if (n > g_.max_points) {
      throw UsageError("N = " + std::to_string(n) + " exceeds --max-points " + std::to_string(g_.max_points));
    }
  }

  static ContinuedFraction expansion_of(const std::string& text, std::size_t terms) {
    if (text == "golden" || text == "phi") return golden_cf(terms);
    if (text.rfind("cf:", 0) == 0) {
      const ZSpec z = ZSpec::parse(text);
      return cf_expand(z.numerator, z.denominator);
    }
    if (const auto slash = text.find('/'); slash != std::string::npos) {
      BigInt p, q;
      try {
        p = BigInt(text.substr(0, slash));
        q = BigInt(text.substr(slash + 1));
      } catch (const std::exception&) {
        throw UsageError("not a fraction: " + text);
      }
      if (q <= 0) throw UsageError("denominator must be positive: " + text);
      return cf_expand(p, q);
    }
    const DecimalValue d = parse_decimal(text);
    return cf_expand(d.numerator, d.denominator);
  }

  GlobalOptions g_;
  std::ostream* out_;
  std::unique_ptr<std::ofstream> file_;
};

inline void add_sequence_options(CLI::App* cmd, SequenceOptions& so) {
  cmd->add_option("--seq", so.kind, "sequence: vdc, kronecker, sqrt, iid")->capture_default_str();
  cmd->add_option("--base", so.base, "van der Corput base")->capture_default_str();
  cmd->add_flag("--no-zero", so.no_zero, "van der Corput starts at n = 1");
  cmd->add_option("--z", so.z, "rotation: golden, p/q, cf:a1,a2,... or a decimal")->capture_default_str();
  cmd->add_option("--seed", so.seed, "seed for iid points")->capture_default_str();
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Pair correlations of sequences on the circle"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--precision", g.precision, "fixed-point bits")->check(CLI::IsMember({64u, 128u}))->capture_default_str();
  app.add_option("--guard-band", g.guard_band, "ulps around a threshold counted as ambiguous")->capture_default_str();
  app.add_option("--out", g.out_path, "output file (default stdout)");
  app.add_option("--format", g.format, "csv or text")->check(CLI::IsMember({"csv", "text"}))->capture_default_str();
  app.add_option("--max-points", g.max_points, "largest N accepted")->capture_default_str();

  SequenceOptions so;
  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "write the first N points of a sequence");
  add_sequence_options(gen_cmd, so);
  gen_cmd->add_option("-n,--n", gen.count, "number of points")->required();
  gen_cmd->add_flag("--binary", gen.binary, "raw little-endian P-bit words instead of CSV");

  FstatOptions fs;
  auto* fstat_cmd = app.add_subcommand("fstat", "pair-correlation statistic over an (N, alpha, s) grid");
  add_sequence_options(fstat_cmd, so);
  fstat_cmd->add_option("-n,--n", fs.n_list, "N values, comma separated")->delimiter(',');
  fstat_cmd->add_option("--alpha", fs.alphas, "alpha values in (0, 1]")->delimiter(',');
  fstat_cmd->add_option("--s", fs.s_values, "window scales s > 0")->delimiter(',');
  fstat_cmd->add_option("--input", fs.input, "read points from a file written by gen");
  fstat_cmd->add_flag("--binary", fs.binary, "the input file is binary");

  GapsOptions gp;
  auto* gaps_cmd = app.add_subcommand("gaps", "gap census of a Kronecker orbit with the predicted lengths");
  gaps_cmd->add_option("--z", so.z, "rotation")->capture_default_str();
  gaps_cmd->add_option("-n,--n", gp.count, "number of points {nz}, n = 0..N-1")->required();
  gaps_cmd->add_flag("--merge-ulp", gp.merge_ulp, "fold lengths one ulp apart");
  gaps_cmd->add_flag("--no-prediction", gp.no_prediction, "census only");

  CfOptions cfo;
  auto* cf_cmd = app.add_subcommand("cf", "continued fraction expansion and convergents");
  cf_cmd->add_option("value", cfo.value, "golden, p/q, cf:a1,a2,... or a decimal")->required();
  cf_cmd->add_option("--terms", cfo.terms, "terms shown for golden")->capture_default_str();

  OstrowskiOptions os;
  auto* ost_cmd = app.add_subcommand("ostrowski", "Ostrowski digits of N");
  ost_cmd->add_option("N", os.n, "positive integer")->required();
  ost_cmd->add_option("--z", os.z, "rotation")->capture_default_str();

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "run a named verification suite");
  verify_cmd->add_option("suite", suite, "oracle, thm6, thm7, lemma9, lemma10, lemma11, lemma12, threegap, cor5 or all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Runner run(g, out);
  const bool wide = g.precision == 128;
  try {
    int code = kExitOk;
    if (gen_cmd->parsed()) code = wide ? run.gen<u128>(so, gen) : run.gen<std::uint64_t>(so, gen);
    else if (fstat_cmd->parsed()) code = wide ? run.fstat<u128>(so, fs) : run.fstat<std::uint64_t>(so, fs);
    else if (gaps_cmd->parsed()) code = wide ? run.gaps<u128>(so, gp) : run.gaps<std::uint64_t>(so, gp);
    else if (cf_cmd->parsed()) code = run.cf(cfo);
    else if (ost_cmd->parsed()) code = run.ostrowski_cmd(os);
    else if (verify_cmd->parsed()) code = wide ? run.verify<u128>(suite) : run.verify<std::uint64_t>(suite);
    run.finish();
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConsistencyError& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}

}  // namespace paircorr::cli
