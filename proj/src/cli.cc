#include "mosip/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "mosip/errors.h"
#include "mosip/gap.h"
#include "mosip/kkt.h"
#include "mosip/oracle.h"
#include "mosip/quals.h"

namespace mosip {
namespace {

struct RunConfig {
  std::string command;
  std::string path;  // problem file, or the document for verify
  std::string point;
  std::string eps_grid;
  std::optional<std::size_t> truncation;
  std::string nu;
  std::size_t samples = 16;
  std::string lo, hi;
  std::string radius = "2";
  std::size_t resolution = 0;
  std::string format = "table";
};

class CliFailure : public std::runtime_error {
 public:
  CliFailure(int code, std::string kind, const std::string& msg)
      : std::runtime_error(msg), code_(code), kind_(std::move(kind)) {}
  int code() const { return code_; }
  const std::string& kind() const { return kind_; }

 private:
  int code_;
  std::string kind_;
};

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

std::size_t default_resolution(std::size_t n) {
  switch (n) {
    case 1: return 401;
    case 2: return 81;
    case 3: return 21;
    default: return 7;
  }
}

// --- document assembly -----------------------------------------------------

struct Inputs {
  MosipProblem problem;
  Vec point;
};

Inputs load_inputs(const RunConfig& cfg) {
  Json doc = read_json_file(cfg.path);
  Inputs in;
  in.problem = problem_from_json(doc);
  if (cfg.truncation) {
    if (in.problem.constraints.is_finite()) throw InputError("--truncation needs an indexed family");
    if (*cfg.truncation == 0) throw InputError("--truncation must be positive");
    in.problem.constraints = in.problem.constraints.retruncated(*cfg.truncation);
    in.problem.validate();
  }
  if (!cfg.point.empty()) {
    in.point = parse_vec(cfg.point);
  } else if (doc.contains("point")) {
    in.point = vec_from_json(doc["point"]);
  } else {
    throw InputError("no --point given and the problem file names none");
  }
  return in;
}

QualOptions quals_options(const RunConfig& cfg) {
  QualOptions o;
  if (!cfg.eps_grid.empty()) {
    o.eps_grid = parse_vec(cfg.eps_grid);
    if (o.eps_grid.empty()) throw InputError("--eps-grid is empty");
    for (std::size_t k = 0; k < o.eps_grid.size(); ++k) {
      if (o.eps_grid[k] <= 0 || (k > 0 && o.eps_grid[k] >= o.eps_grid[k - 1])) {
        throw InputError("--eps-grid must be positive and strictly decreasing");
      }
    }
  }
  return o;
}

struct QualsPart {
  std::vector<QualReport> reports;
  DiagramResult diagram;
};

QualsPart run_quals(const CandidatePoint& c, const QualOptions& o) {
  QualsPart q;
  q.reports = check_all(c, o);
  q.diagram = diagram_validate(c, q.reports);
  return q;
}

Json quals_json(const QualsPart& q) {
  Json j;
  j["reports"] = Json::array();
  for (const auto& r : q.reports) j["reports"].push_back(to_json(r));
  j["diagram"] = to_json(q.diagram);
  return j;
}

struct CertifyPart {
  WeakKkt weak;
  StrongKkt strong;
  PerturbedKkt perturbed;
};

Json certify_json(const CertifyPart& k) {
  Json j;
  j["weak"] = to_json(k.weak);
  j["strong"] = to_json(k.strong);
  j["perturbed"] = to_json(k.perturbed);
  return j;
}

struct GapPart {
  GapSearch weak, strong;
  std::optional<PerturbedGapReport> perturbed;
  std::string perturbed_note;
};

GapPart run_gap(const CandidatePoint& c, const std::optional<Rational>& nu, std::size_t samples) {
  GapPart g;
  g.weak = gap_zero_search(c, GapMode::kWeak);
  g.strong = gap_zero_search(c, GapMode::kStrong);
  if (nu) {
    if (c.tn()) {
      g.perturbed = perturbed_gap_check(c, *nu, samples);
    } else {
      g.perturbed_note = "no feasible_set description";
    }
  }
  return g;
}

Json gap_json(const GapPart& g, bool with_perturbed) {
  Json j;
  j["weak"] = to_json(g.weak);
  j["strong"] = to_json(g.strong);
  if (with_perturbed) {
    j["perturbed"] = g.perturbed ? to_json(*g.perturbed) : Json();
    if (!g.perturbed) j["perturbed_note"] = g.perturbed_note;
  }
  return j;
}

Box oracle_box(const RunConfig& cfg, const Vec& x) {
  const std::size_t n = x.size();
  if (!cfg.lo.empty() || !cfg.hi.empty()) {
    if (cfg.lo.empty() || cfg.hi.empty()) throw InputError("--lo and --hi go together");
    Box b{parse_vec(cfg.lo), parse_vec(cfg.hi)};
    return b;
  }
  Rational r = parse_rational(cfg.radius);
  if (r <= 0) throw InputError("--radius must be positive");
  Box b{Vec(n), Vec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    b.lo[i] = x[i] - r;
    b.hi[i] = x[i] + r;
  }
  return b;
}

// The nu used by the perturbed gap track: --nu, else the certified radius,
// else 1.
Rational gap_nu(const RunConfig& cfg, const PerturbedKkt& pk) {
  if (!cfg.nu.empty()) {
    Rational nu = parse_rational(cfg.nu);
    if (nu <= 0) throw InputError("--nu must be positive");
    return nu;
  }
  return pk.holds ? pk.nu : Rational(1);
}

ClaimInputs claim_inputs(const MosipProblem& p, const std::optional<CertifyPart>& k,
                         const std::vector<QualReport>& quals, const std::optional<GapPart>& g,
                         const std::optional<OracleReport>& o) {
  ClaimInputs in;
  if (k) {
    in.weak = k->weak;
    in.strong = k->strong;
    in.perturbed = k->perturbed;
  }
  in.quals = quals;
  if (g) {
    in.gap_zero_weak = g->weak.witness.has_value();
    in.gap_zero_strong = g->strong.witness.has_value();
  }
  if (o) {
    in.strict_dominator = o->weak_refuted;
    in.dominator = o->eff_refuted;
  }
  in.continuous = p.is_continuous();
  in.differentiable_constraints = p.differentiable_constraints;
  return in;
}

Json claims_json(const std::vector<EfficiencyClaim>& claims) {
  Json j = Json::array();
  for (const auto& c : claims) j.push_back(to_json(c));
  return j;
}

// --- table rendering -------------------------------------------------------

std::string cert_summary(const KktCertificate& k) {
  std::string s = "alpha (";
  for (std::size_t i = 0; i < k.objectives.size(); ++i) s += (i ? ", " : "") + to_string(k.objectives[i].alpha);
  s += ")";
  for (const auto& t : k.constraints) {
    s += " t" + std::to_string(t.t) + ":beta " + to_string(t.beta) + " zeta " + to_string(t.zeta);
  }
  return s;
}

std::string certify_table(const CertifyPart& k) {
  std::ostringstream out;
  out << "weak KKT:      ";
  if (k.weak.certificate) {
    out << "holds  " << cert_summary(*k.weak.certificate) << "\n";
  } else {
    out << "fails  separator h " << to_string(k.weak.separator->h) << " bound " << to_string(k.weak.separator->bound)
        << " [" << k.weak.provenance.to_string() << "]\n";
  }
  out << "strong KKT:    ";
  if (k.strong.certificate) {
    out << "holds  " << cert_summary(*k.strong.certificate) << " min alpha " << to_string(k.strong.tau) << "\n";
  } else {
    out << "fails  [" << k.strong.provenance.to_string() << "]\n";
  }
  out << "perturbed KKT: ";
  if (k.perturbed.holds) {
    out << "holds  nu " << to_string(k.perturbed.nu) << (k.perturbed.nu_exact ? " (exact inradius)" : " (lower bound)")
        << "\n";
  } else {
    out << "fails";
    if (k.perturbed.escape) out << "  escape direction " << to_string(*k.perturbed.escape);
    out << " [" << k.perturbed.provenance.to_string() << "]\n";
  }
  return out.str();
}

std::string gap_table(const GapPart& g, bool with_perturbed) {
  std::ostringstream out;
  for (const GapSearch* s : {&g.weak, &g.strong}) {
    out << "gap zero (" << gap_mode_name(s->mode) << "): ";
    if (s->witness) {
      out << "found  lambda " << to_string(s->witness->lambda) << " value " << s->witness->value.to_string() << "\n";
    } else {
      out << "none  (" << s->note << ")\n";
    }
  }
  if (with_perturbed) {
    if (g.perturbed) {
      const auto& r = *g.perturbed;
      std::size_t ok = std::count_if(r.per_w.begin(), r.per_w.end(), [](const TiltCheck& t) { return t.success; });
      out << "tilted problems at nu " << to_string(r.nu) << ": " << ok << " of " << r.per_w.size() << " succeed"
          << "; 0 interior to F*+N: " << (r.gap_interior ? "yes radius " + to_string(r.gap_radius) : "no")
          << "; within hypotheses: " << (r.within_hypotheses ? "yes" : "no") << "\n";
    } else {
      out << "tilted problems: skipped (" << g.perturbed_note << ")\n";
    }
  }
  return out.str();
}

std::string classify_table(const OracleReport& r) {
  std::ostringstream out;
  out << "grid: " << r.grid.points << " points, " << r.grid.feasible << " feasible, resolution "
      << r.grid.resolution << "\n";
  out << "strict dominator: " << (r.weak_refuted ? to_string(*r.weak_refuted) : "none") << "\n";
  out << "dominator:        " << (r.eff_refuted ? to_string(*r.eff_refuted) : "none") << "\n";
  out << "nu_hat:           ";
  if (r.nu_hat) {
    std::ostringstream v;
    v.precision(6);
    v << *r.nu_hat;
    out << v.str() << " at " << to_string(*r.nu_hat_at) << " (float evidence)\n";
  } else {
    out << "-\n";
  }
  return out.str();
}

// --- commands --------------------------------------------------------------

std::string run_command(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  const MosipProblem& p = in.problem;
  CandidatePoint c(p, in.point);
  const bool json = cfg.format == "json";
  const QualOptions qopts = quals_options(cfg);

  Json doc;
  doc["command"] = cfg.command;
  doc["problem"] = to_json(p);
  doc["point"] = to_json(in.point);
  Json options;
  std::ostringstream table;
  table << "point " << to_string(in.point) << "  (" << p.constraints.size() << " constraint(s)"
        << (p.truncated() ? ", truncated" : "") << ")\n";

  const bool all = cfg.command == "report";
  std::optional<QualsPart> quals;
  std::optional<CertifyPart> kkt;
  std::optional<GapPart> gap;
  std::optional<OracleReport> oracle;

  if (all || cfg.command == "quals") {
    options["quals"] = to_json(qopts);
    quals = run_quals(c, qopts);
  }
  if (all || cfg.command == "certify" || cfg.command == "gap") {
    kkt = CertifyPart{weak_kkt(c), strong_kkt(c), perturbed_kkt(c, qopts.eps_grid)};
    if (!options.contains("quals")) options["quals"] = to_json(qopts);
  }
  const bool perturbed_gap = all || cfg.command == "gap";
  if (all || cfg.command == "certify" || cfg.command == "gap") {
    std::optional<Rational> nu;
    if (perturbed_gap) {
      nu = gap_nu(cfg, kkt->perturbed);
      options["nu"] = to_json(*nu);
      options["samples"] = cfg.samples;
    }
    gap = run_gap(c, nu, cfg.samples);
  }
  if (all || cfg.command == "classify") {
    Box box = oracle_box(cfg, in.point);
    std::size_t res = cfg.resolution ? cfg.resolution : default_resolution(p.dim);
    options["box"] = {{"lo", to_json(box.lo)}, {"hi", to_json(box.hi)}};
    options["resolution"] = res;
    oracle = classify_grid(p, in.point, box, res);
  }
  doc["options"] = std::move(options);

  if (quals) {
    doc["quals"] = quals_json(*quals);
    table << "\n" << quals_table(quals->reports, quals->diagram);
  }
  if (kkt && cfg.command != "gap") {
    doc["certify"] = certify_json(*kkt);
    table << "\n" << certify_table(*kkt);
  }
  if (gap) {
    doc["gap"] = gap_json(*gap, perturbed_gap);
    table << "\n" << gap_table(*gap, perturbed_gap);
  }
  if (oracle) {
    doc["classify"] = to_json(*oracle);
    table << "\n" << classify_table(*oracle);
  }
  if (all || cfg.command == "certify") {
    std::vector<EfficiencyClaim> claims = assemble_claims(
        claim_inputs(p, kkt, quals ? quals->reports : std::vector<QualReport>{}, gap, oracle));
    if (!claims_consistent(claims)) throw InternalError("efficiency claims contradict each other");
    doc["claims"] = claims_json(claims);
    table << "\n" << claims_table(claims);
  }
  if (quals && !quals->diagram.violations.empty()) {
    throw InternalError("diagram violation: " + quals->diagram.violations.front().label());
  }
  return json ? dump(doc) : table.str();
}

// --- verify ----------------------------------------------------------------

class Verifier {
 public:
  explicit Verifier(VerifyResult* r) : r_(r) {}

  void expect(bool ok, const std::string& what) {
    ++r_->checked;
    if (!ok) {
      r_->ok = false;
      r_->failures.push_back(what);
    }
  }
  void same(const Json& original, const Json& rewritten, const std::string& what) {
    expect(dump(original) == dump(rewritten), what + ": re-serialization differs");
  }

 private:
  VerifyResult* r_;
};

}  // namespace

VerifyResult verify_document(const Json& doc) {
  VerifyResult result;
  Verifier v(&result);
  if (!doc.is_object() || !doc.contains("problem") || !doc.contains("point")) {
    throw InputError("verify: document needs 'problem' and 'point'");
  }
  MosipProblem p = problem_from_json(doc["problem"]);
  v.same(doc["problem"], to_json(p), "problem");
  Vec x = vec_from_json(doc["point"]);
  CandidatePoint c(p, x);
  QualOptions qopts;
  const Json empty = Json::object();
  const Json& options = doc.contains("options") ? doc["options"] : empty;
  if (options.contains("quals")) {
    qopts = qual_options_from_json(options["quals"]);
    v.same(options["quals"], to_json(qopts), "options.quals");
  }

  std::vector<QualReport> quals;
  if (doc.contains("quals")) {
    for (const auto& rj : doc["quals"].at("reports")) {
      QualReport r = qual_report_from_json(rj);
      const std::string name = "quals." + qual_name(r.qual);
      v.same(rj, to_json(r), name);
      v.expect(verify_witness(c, r, qopts), name + ": witness does not re-verify");
      v.same(rj, to_json(check(r.qual, c, qopts)), name + " recomputed");
      quals.push_back(std::move(r));
    }
    DiagramResult d = diagram_validate(c, quals);
    v.expect(d.violations.empty(), "quals: diagram violations");
    v.same(doc["quals"].at("diagram"), to_json(d), "quals.diagram");
  }

  std::optional<CertifyPart> kkt;
  if (doc.contains("certify")) {
    const Json& cj = doc["certify"];
    CertifyPart k{weak_kkt_from_json(cj.at("weak")), strong_kkt_from_json(cj.at("strong")),
                  perturbed_kkt_from_json(cj.at("perturbed"))};
    v.same(cj.at("weak"), to_json(k.weak), "certify.weak");
    v.same(cj.at("strong"), to_json(k.strong), "certify.strong");
    v.same(cj.at("perturbed"), to_json(k.perturbed), "certify.perturbed");
    if (k.weak.certificate) {
      v.expect(k.weak.certificate->kind == KktCertificate::Kind::kWeak && verify_certificate(c, *k.weak.certificate),
               "certify.weak: certificate does not re-verify");
    } else {
      v.expect(k.weak.separator && verify_separator(c, *k.weak.separator),
               "certify.weak: separator does not re-verify");
    }
    if (k.strong.certificate) {
      v.expect(k.strong.certificate->kind == KktCertificate::Kind::kStrong &&
                   verify_certificate(c, *k.strong.certificate),
               "certify.strong: certificate does not re-verify");
    }
    v.expect(verify_perturbed(c, k.perturbed), "certify.perturbed: verdict does not re-verify");
    kkt = std::move(k);
  }

  std::optional<GapPart> gap;
  if (doc.contains("gap")) {
    const Json& gj = doc["gap"];
    GapPart g;
    g.weak = gap_search_from_json(gj.at("weak"));
    g.strong = gap_search_from_json(gj.at("strong"));
    for (const GapSearch* s : {&g.weak, &g.strong}) {
      const std::string name = "gap." + gap_mode_name(s->mode);
      v.same(gj.at(gap_mode_name(s->mode)), to_json(*s), name);
      if (!s->witness) continue;
      const GapWitness& w = *s->witness;
      bool ok = w.value == ExtReal(0) && gap_eval(p, x, w.xi, w.lambda) == ExtReal(0);
      if (s->mode == GapMode::kStrong) {
        ok = ok && std::all_of(w.lambda.begin(), w.lambda.end(), [](const Rational& l) { return l > 0; });
      }
      v.expect(ok, name + ": witness does not re-verify");
    }
    const bool with_perturbed = gj.contains("perturbed");
    if (with_perturbed && !gj["perturbed"].is_null()) {
      g.perturbed = perturbed_gap_from_json(gj["perturbed"]);
      v.same(gj["perturbed"], to_json(*g.perturbed), "gap.perturbed");
      PerturbedGapReport again = perturbed_gap_check(c, g.perturbed->nu, options.at("samples").get<std::size_t>());
      v.same(gj["perturbed"], to_json(again), "gap.perturbed recomputed");
    }
    gap = std::move(g);
  }

  std::optional<OracleReport> oracle;
  if (doc.contains("classify")) {
    OracleReport o = oracle_report_from_json(doc["classify"]);
    v.same(doc["classify"], to_json(o), "classify");
    std::vector<ExtReal> fx;
    for (const auto& f : p.objectives) fx.push_back(eval(f, x));
    auto dominated = [&](const Vec& y, bool strict) {
      try {
        require_feasible(p, y);
      } catch (const InfeasibleCandidateError&) {
        return false;
      }
      bool some = false;
      for (std::size_t i = 0; i < fx.size(); ++i) {
        ExtReal fy = eval(p.objectives[i], y);
        if (strict ? !(fy < fx[i]) : fy > fx[i]) return false;
        some = some || fy < fx[i];
      }
      return some;
    };
    if (o.weak_refuted) v.expect(dominated(*o.weak_refuted, true), "classify: strict dominator does not re-verify");
    if (o.eff_refuted) v.expect(dominated(*o.eff_refuted, false), "classify: dominator does not re-verify");
    oracle = std::move(o);
  }

  if (doc.contains("claims")) {
    std::vector<EfficiencyClaim> claims;
    for (const auto& cj : doc["claims"]) claims.push_back(claim_from_json(cj));
    v.same(doc["claims"], claims_json(claims), "claims");
    v.expect(claims_consistent(claims), "claims: inconsistent");
    v.same(doc["claims"], claims_json(assemble_claims(claim_inputs(p, kkt, quals, gap, oracle))),
           "claims re-assembled");
  }
  return result;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimality certificates for multiobjective semi-infinite programs", "mosip"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool oracle, bool perturbed_gap) {
    sub->add_option("problem", cfg.path, "Problem file (JSON)")->required();
    sub->add_option("--point", cfg.point, "Candidate point, comma-separated rationals (default: the file's point)");
    sub->add_option("--truncation", cfg.truncation, "Override the truncation of an indexed family");
    sub->add_option("--eps-grid", cfg.eps_grid, "Decreasing eps grid, comma-separated");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    if (perturbed_gap) {
      sub->add_option("--nu", cfg.nu, "Radius for the tilted problems (default: certified nu, else 1)");
      sub->add_option("--samples", cfg.samples, "Sphere samples for the tilted problems");
    }
    if (oracle) {
      sub->add_option("--lo", cfg.lo, "Oracle box lower corner");
      sub->add_option("--hi", cfg.hi, "Oracle box upper corner");
      sub->add_option("--radius", cfg.radius, "Oracle box half-width about the point (default 2)");
      sub->add_option("--resolution", cfg.resolution, "Oracle grid points per axis");
    }
  };
  add_common(app.add_subcommand("quals", "Data qualification truth table"), false, false);
  add_common(app.add_subcommand("certify", "Weak, strong and perturbed KKT certificates"), false, false);
  add_common(app.add_subcommand("gap", "Gap function zeros and tilted problems"), false, true);
  add_common(app.add_subcommand("classify", "Brute-force grid classification"), true, false);
  add_common(app.add_subcommand("report", "Everything above plus efficiency claims"), true, true);
  CLI::App* verify = app.add_subcommand("verify", "Re-verify a JSON document written by this tool");
  verify->add_option("document", cfg.path, "JSON output of quals/certify/gap/classify/report")->required();

  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    err << "mosip: exit=" << code << " kind=" << kind << ": " << one_line(msg) << "\n";
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::ostringstream ignored;
      app.exit(e, out, ignored);
      return kExitOk;
    }
    return fail(kExitParse, "parse", e.what());
  }
  for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();

  try {
    if (cfg.command == "verify") {
      VerifyResult r = verify_document(read_json_file(cfg.path));
      if (!r.ok) return fail(kExitInternal, "verify", r.failures.front() + " (" +
                                                          std::to_string(r.failures.size()) + " failure(s))");
      out << "verified " << r.checked << " checks\n";
      return kExitOk;
    }
    out << run_command(cfg);
    return kExitOk;
  } catch (const InfeasibleCandidateError& e) {
    return fail(kExitInfeasible, "infeasible", e.what());
  } catch (const InputError& e) {
    return fail(kExitParse, "input", e.what());
  } catch (const InternalError& e) {
    return fail(kExitInternal, "internal", e.what());
  } catch (const UnsupportedError& e) {
    return fail(kExitUnsupported, "unsupported", e.what());
  } catch (const PreconditionError& e) {
    return fail(kExitUnsupported, "precondition", e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(kExitParse, "input", e.what());
  }
}

}  // namespace mosip
