#include "mosip/serialize.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <utility>

#include "mosip/errors.h"

namespace mosip {
namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError("json: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

const Json* opt_field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
      bad("unknown field '" + it.key() + "' in " + where);
    }
  }
}

bool get_bool(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) bad(std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

std::string get_string(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) bad(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t get_size(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    bad(std::string("'") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

const Json& get_array(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) bad(std::string("'") + key + "' must be an array");
  return v;
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    return Integer(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + start, s.end(), ::isdigit)) {
      bad("integer string '" + s + "' is not a decimal integer");
    }
    return Integer(s);
  }
  bad("rational entries must be integers");
}

template <typename T, typename F>
std::vector<T> list_from(const Json& arr, F&& f) {
  if (!arr.is_array()) bad("expected an array");
  std::vector<T> out;
  out.reserve(arr.size());
  for (const auto& e : arr) out.push_back(f(e));
  return out;
}

template <typename T, typename F>
Json list_to(const std::vector<T>& xs, F&& f) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

void check_len(const Vec& v, std::size_t n, const std::string& what) {
  if (v.size() != n) {
    bad(what + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
  }
}

Provenance provenance_from_name(const std::string& s) {
  if (s == "exact") return {false, false};
  if (s == "truncated") return {true, false};
  if (s == "approximated") return {false, true};
  if (s == "truncated+approximated") return {true, true};
  bad("unknown provenance '" + s + "'");
}

Status status_from_name(const std::string& s) {
  for (Status st : {Status::kHolds, Status::kFails, Status::kUndecidable}) {
    if (status_name(st) == s) return st;
  }
  bad("unknown status '" + s + "'");
}

const char* witness_kind_name(QualWitness::Kind k) {
  switch (k) {
    case QualWitness::Kind::kNone: return "none";
    case QualWitness::Kind::kPoint: return "point";
    case QualWitness::Kind::kDirection: return "direction";
    case QualWitness::Kind::kCombination: return "combination";
  }
  return "?";
}

QualWitness::Kind witness_kind_from_name(const std::string& s) {
  for (auto k : {QualWitness::Kind::kNone, QualWitness::Kind::kPoint, QualWitness::Kind::kDirection,
                 QualWitness::Kind::kCombination}) {
    if (s == witness_kind_name(k)) return k;
  }
  bad("unknown witness kind '" + s + "'");
}

const char* outcome_name(ArrowCheck::Outcome o) {
  switch (o) {
    case ArrowCheck::Outcome::kSatisfied: return "satisfied";
    case ArrowCheck::Outcome::kVacuous: return "vacuous";
    case ArrowCheck::Outcome::kSideConditionUnmet: return "side-condition-unmet";
    case ArrowCheck::Outcome::kUndecidable: return "undecidable";
    case ArrowCheck::Outcome::kViolated: return "violated";
  }
  return "?";
}

KktCertificate::Kind cert_kind_from_name(const std::string& s) {
  for (auto k : {KktCertificate::Kind::kWeak, KktCertificate::Kind::kStrong,
                 KktCertificate::Kind::kPerturbed}) {
    if (kind_name(k) == s) return k;
  }
  bad("unknown certificate kind '" + s + "'");
}

ConvexFunc::Kind func_kind_from_name(const std::string& s) {
  using K = ConvexFunc::Kind;
  for (K k : {K::kAffine, K::kMaxAffine, K::kScaledNormInf, K::kScaledNorm2, K::kNegSqrtParabola1D,
              K::kSupportPolygon, K::kPrecomputed}) {
    if (kind_name(k) == s) return k;
  }
  bad("unknown function kind '" + s + "'");
}

Json piece_json(const AffinePiece& p) {
  Json j;
  j["a"] = to_json(p.a);
  j["b"] = to_json(p.b);
  return j;
}

AffinePiece piece_from_json(const Json& j, std::size_t dim) {
  only_keys(j, {"a", "b"}, "affine piece");
  AffinePiece p{vec_from_json(field(j, "a")), rational_from_json(field(j, "b"))};
  check_len(p.a, dim, "affine coefficient");
  return p;
}

Json opt_vec(const std::optional<Vec>& v) { return v ? to_json(*v) : Json(); }

std::optional<Vec> opt_vec_from(const Json& j, const char* key) {
  const Json* v = opt_field(j, key);
  if (!v) return std::nullopt;
  return vec_from_json(*v);
}

std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' ');
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? sep : "") + xs[k];
  return out;
}

std::string witness_summary(const QualWitness& w) {
  switch (w.kind) {
    case QualWitness::Kind::kNone:
      return "-";
    case QualWitness::Kind::kPoint:
    case QualWitness::Kind::kDirection: {
      std::string s = std::string(witness_kind_name(w.kind)) + " " + to_string(w.vector);
      if (w.scalar) s += " slack " + to_string(*w.scalar);
      return s;
    }
    case QualWitness::Kind::kCombination: {
      if (w.coeffs.size() <= 6) return "combination " + to_string(w.coeffs);
      // Long weight vectors: nonzero entries only.
      std::vector<std::string> nz;
      for (std::size_t k = 0; k < w.coeffs.size(); ++k) {
        if (w.coeffs[k] != 0) nz.push_back("#" + std::to_string(k) + " " + to_string(w.coeffs[k]));
      }
      return "combination of " + std::to_string(w.coeffs.size()) + ": " + join(nz, ", ");
    }
  }
  return "?";
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("json: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

// --- scalars ---------------------------------------------------------------

Json to_json(const Rational& q) { return Json::array({integer_json(q.get_num()), integer_json(q.get_den())}); }

Json to_json(const Vec& v) { return list_to(v, [](const Rational& q) { return to_json(q); }); }

Json to_json(const Matrix& m) { return list_to(m, [](const Vec& v) { return to_json(v); }); }

Json to_json(const ExtReal& v) {
  switch (v.kind()) {
    case ExtReal::Kind::kFinite:
      return to_json(v.rational());
    case ExtReal::Kind::kPosInf:
      return "+inf";
    case ExtReal::Kind::kNegInf:
      return "-inf";
    case ExtReal::Kind::kRoot: {
      Json j;
      j["sign"] = v.root_sign();
      j["sqrt"] = to_json(v.radicand());
      return j;
    }
  }
  return nullptr;
}

Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("a rational is a [num, den] pair");
  Integer num = integer_from_json(j[0]);
  Integer den = integer_from_json(j[1]);
  if (den == 0) bad("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Vec vec_from_json(const Json& j) { return list_from<Rational>(j, rational_from_json); }

Matrix matrix_from_json(const Json& j) { return list_from<Vec>(j, vec_from_json); }

ExtReal extreal_from_json(const Json& j) {
  if (j.is_string()) {
    if (j == "+inf") return ExtReal::pos_inf();
    if (j == "-inf") return ExtReal::neg_inf();
    bad("unknown extended real '" + j.get<std::string>() + "'");
  }
  if (j.is_object()) {
    only_keys(j, {"sign", "sqrt"}, "root value");
    const Json& s = field(j, "sign");
    if (!s.is_number_integer() || (s != 1 && s != -1)) bad("root sign must be 1 or -1");
    Rational r = rational_from_json(field(j, "sqrt"));
    if (r < 0) bad("negative radicand");
    return ExtReal::root(s.get<int>(), r);
  }
  return ExtReal(rational_from_json(j));
}

// --- problems --------------------------------------------------------------

Json to_json(const HPolyhedron& s) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < s.a.size(); ++r) {
    Vec row = s.a[r];
    row.push_back(s.b[r]);
    rows.push_back(to_json(row));
  }
  Json j;
  j["rows"] = std::move(rows);
  return j;
}

HPolyhedron polyhedron_from_json(const Json& j, std::size_t dim) {
  only_keys(j, {"rows"}, "polyhedron");
  HPolyhedron s{dim, {}, {}};
  for (const auto& row : get_array(j, "rows")) {
    Vec v = vec_from_json(row);
    check_len(v, dim + 1, "polyhedron row");
    Rational b = v.back();
    v.pop_back();
    s.add_row(std::move(v), std::move(b));
  }
  return s;
}

Json to_json(const ConvexFunc& f) {
  using K = ConvexFunc::Kind;
  Json j;
  j["kind"] = kind_name(f.kind());
  switch (f.kind()) {
    case K::kAffine:
      j["a"] = to_json(f.pieces()[0].a);
      j["b"] = to_json(f.pieces()[0].b);
      break;
    case K::kMaxAffine:
      j["pieces"] = list_to(f.pieces(), piece_json);
      break;
    case K::kScaledNormInf:
    case K::kScaledNorm2:
      j["center"] = to_json(f.center());
      j["weight"] = to_json(f.param());
      break;
    case K::kNegSqrtParabola1D:
      j["t"] = to_json(f.param());
      break;
    case K::kSupportPolygon:
      j["vertices"] = to_json(f.vertices());
      if (f.exact_cone()) j["exact_cone"] = to_json(f.exact_cone()->generators);
      break;
    case K::kPrecomputed:
      j["table"] = list_to(f.table(), [](const TableEntry& e) {
        Json row;
        row["x"] = to_json(e.x);
        row["value"] = to_json(e.value);
        row["subgradients"] = to_json(e.subgradients);
        return row;
      });
      break;
  }
  if (f.domain()) j["domain"] = to_json(*f.domain());
  return j;
}

ConvexFunc func_from_json(const Json& j, std::size_t dim) {
  using K = ConvexFunc::Kind;
  const K kind = func_kind_from_name(get_string(j, "kind"));
  std::optional<ConvexFunc> f;
  switch (kind) {
    case K::kAffine: {
      only_keys(j, {"kind", "a", "b", "domain"}, "affine function");
      Vec a = vec_from_json(field(j, "a"));
      check_len(a, dim, "affine coefficient");
      f = ConvexFunc::affine(std::move(a), rational_from_json(field(j, "b")));
      break;
    }
    case K::kMaxAffine: {
      only_keys(j, {"kind", "pieces", "domain"}, "max_affine function");
      std::vector<AffinePiece> pieces;
      for (const auto& p : get_array(j, "pieces")) pieces.push_back(piece_from_json(p, dim));
      f = ConvexFunc::max_affine(std::move(pieces));
      break;
    }
    case K::kScaledNormInf:
    case K::kScaledNorm2: {
      only_keys(j, {"kind", "center", "weight", "domain"}, "norm function");
      Vec c = vec_from_json(field(j, "center"));
      check_len(c, dim, "norm center");
      Rational w = rational_from_json(field(j, "weight"));
      f = kind == K::kScaledNormInf ? ConvexFunc::scaled_norm_inf(std::move(c), std::move(w))
                                    : ConvexFunc::scaled_norm2(std::move(c), std::move(w));
      break;
    }
    case K::kNegSqrtParabola1D:
      only_keys(j, {"kind", "t", "domain"}, "neg_sqrt_parabola function");
      if (dim != 1) bad("neg_sqrt_parabola is one-dimensional");
      f = ConvexFunc::neg_sqrt_parabola(rational_from_json(field(j, "t")));
      break;
    case K::kSupportPolygon: {
      only_keys(j, {"kind", "vertices", "exact_cone", "domain"}, "support_polygon function");
      Matrix v = matrix_from_json(field(j, "vertices"));
      for (const auto& row : v) check_len(row, dim, "polygon vertex");
      std::optional<FGCone> cone;
      if (const Json* c = opt_field(j, "exact_cone")) {
        cone = FGCone{dim, matrix_from_json(*c)};
        for (const auto& row : cone->generators) check_len(row, dim, "cone generator");
      }
      f = ConvexFunc::support_polygon(std::move(v), std::move(cone));
      break;
    }
    case K::kPrecomputed: {
      only_keys(j, {"kind", "table", "domain"}, "precomputed function");
      std::vector<TableEntry> table;
      for (const auto& row : get_array(j, "table")) {
        only_keys(row, {"x", "value", "subgradients"}, "table row");
        table.push_back({vec_from_json(field(row, "x")), rational_from_json(field(row, "value")),
                         matrix_from_json(field(row, "subgradients"))});
      }
      f = ConvexFunc::precomputed(dim, std::move(table));
      break;
    }
  }
  if (const Json* d = opt_field(j, "domain")) f = f->with_domain(polyhedron_from_json(*d, dim));
  return *f;
}

Json to_json(const MosipProblem& p) {
  Json j;
  j["dimension"] = p.dim;
  j["objectives"] = list_to(p.objectives, [](const ConvexFunc& f) { return to_json(f); });
  Json cons;
  if (p.constraints.is_finite()) {
    cons["finite"] = list_to(p.constraints.members(), [](const ConvexFunc& f) { return to_json(f); });
  } else {
    Json idx;
    idx["family"] = p.constraints.family_name();
    Json params = Json::object();
    for (const auto& [k, v] : p.constraints.params()) params[k] = to_json(v);
    idx["params"] = std::move(params);
    idx["truncation"] = p.constraints.truncation();
    cons["indexed"] = std::move(idx);
  }
  j["constraints"] = std::move(cons);
  if (p.feasible_set) j["feasible_set"] = to_json(*p.feasible_set);
  if (p.psi_override) j["psi_override"] = to_json(*p.psi_override);
  j["continuous"] = p.continuous;
  j["differentiable_constraints"] = p.differentiable_constraints;
  return j;
}

MosipProblem problem_from_json(const Json& j) {
  only_keys(j,
            {"dimension", "objectives", "constraints", "feasible_set", "psi_override", "continuous",
             "differentiable_constraints", "name", "point", "notes"},
            "problem");
  MosipProblem p;
  p.dim = get_size(j, "dimension");
  if (p.dim == 0) bad("dimension must be positive");
  for (const auto& f : get_array(j, "objectives")) p.objectives.push_back(func_from_json(f, p.dim));
  const Json& cons = field(j, "constraints");
  only_keys(cons, {"finite", "indexed"}, "constraints");
  if (cons.contains("finite") == cons.contains("indexed")) {
    bad("constraints need exactly one of 'finite' and 'indexed'");
  }
  if (cons.contains("finite")) {
    std::vector<ConvexFunc> fs;
    for (const auto& f : get_array(cons, "finite")) fs.push_back(func_from_json(f, p.dim));
    p.constraints = ConstraintFamily::finite(std::move(fs));
  } else {
    const Json& idx = field(cons, "indexed");
    only_keys(idx, {"family", "params", "truncation"}, "indexed constraints");
    std::map<std::string, Rational> params;
    if (const Json* ps = opt_field(idx, "params")) {
      if (!ps->is_object()) bad("'params' must be an object");
      for (auto it = ps->begin(); it != ps->end(); ++it) params[it.key()] = rational_from_json(it.value());
    }
    std::size_t truncation = get_size(idx, "truncation");
    if (truncation == 0) bad("truncation must be positive");
    p.constraints = ConstraintFamily::indexed(get_string(idx, "family"), std::move(params), truncation);
  }
  if (const Json* s = opt_field(j, "feasible_set")) p.feasible_set = polyhedron_from_json(*s, p.dim);
  if (const Json* psi = opt_field(j, "psi_override")) p.psi_override = func_from_json(*psi, p.dim);
  if (opt_field(j, "continuous")) p.continuous = get_bool(j, "continuous");
  if (opt_field(j, "differentiable_constraints")) {
    p.differentiable_constraints = get_bool(j, "differentiable_constraints");
  }
  p.validate();
  return p;
}

// --- reports ---------------------------------------------------------------

Json to_json(const Provenance& p) { return p.to_string(); }

Provenance provenance_from_json(const Json& j) {
  if (!j.is_string()) bad("provenance must be a string");
  return provenance_from_name(j.get<std::string>());
}

Json to_json(const QualOptions& o) {
  Json j;
  j["eps_grid"] = to_json(o.eps_grid);
  j["search_box"] = to_json(o.search_box);
  j["search_step"] = to_json(o.search_step);
  return j;
}

QualOptions qual_options_from_json(const Json& j) {
  only_keys(j, {"eps_grid", "search_box", "search_step"}, "qualification options");
  QualOptions o;
  o.eps_grid = vec_from_json(field(j, "eps_grid"));
  o.search_box = rational_from_json(field(j, "search_box"));
  o.search_step = rational_from_json(field(j, "search_step"));
  return o;
}

Json to_json(const QualReport& r) {
  Json j;
  j["qual"] = qual_name(r.qual);
  j["status"] = status_name(r.status);
  j["provenance"] = to_json(r.provenance);
  if (r.witness.kind != QualWitness::Kind::kNone) {
    Json w;
    w["kind"] = witness_kind_name(r.witness.kind);
    w["vector"] = to_json(r.witness.vector);
    if (r.witness.scalar) w["scalar"] = to_json(*r.witness.scalar);
    w["coeffs"] = to_json(r.witness.coeffs);
    j["witness"] = std::move(w);
  }
  j["notes"] = r.notes;
  if (!r.eps_values.empty()) {
    j["eps_values"] = list_to(r.eps_values, [](const std::pair<Rational, ExtReal>& e) {
      Json row;
      row["eps"] = to_json(e.first);
      row["value"] = to_json(e.second);
      return row;
    });
  }
  return j;
}

QualReport qual_report_from_json(const Json& j) {
  only_keys(j, {"qual", "status", "provenance", "witness", "notes", "eps_values"}, "qualification report");
  QualReport r;
  r.qual = parse_qual(get_string(j, "qual"));
  r.status = status_from_name(get_string(j, "status"));
  r.provenance = provenance_from_json(field(j, "provenance"));
  if (const Json* w = opt_field(j, "witness")) {
    only_keys(*w, {"kind", "vector", "scalar", "coeffs"}, "witness");
    r.witness.kind = witness_kind_from_name(get_string(*w, "kind"));
    r.witness.vector = vec_from_json(field(*w, "vector"));
    if (const Json* s = opt_field(*w, "scalar")) r.witness.scalar = rational_from_json(*s);
    r.witness.coeffs = vec_from_json(field(*w, "coeffs"));
  }
  r.notes = get_string(j, "notes");
  if (const Json* ev = opt_field(j, "eps_values")) {
    for (const auto& row : *ev) {
      r.eps_values.emplace_back(rational_from_json(field(row, "eps")), extreal_from_json(field(row, "value")));
    }
  }
  return r;
}

Json to_json(const DiagramResult& d) {
  Json j;
  j["violations"] = list_to(d.violations, [](const Arrow& a) { return a.label(); });
  j["checks"] = list_to(d.checks, [](const ArrowCheck& c) {
    Json row;
    row["arrow"] = c.arrow.label();
    row["outcome"] = outcome_name(c.outcome);
    return row;
  });
  return j;
}

Json to_json(const Separator& s) {
  Json j;
  j["h"] = to_json(s.h);
  j["bound"] = to_json(s.bound);
  return j;
}

Separator separator_from_json(const Json& j) {
  only_keys(j, {"h", "bound"}, "separator");
  return {vec_from_json(field(j, "h")), rational_from_json(field(j, "bound"))};
}

Json to_json(const KktCertificate& k) {
  Json j;
  j["kind"] = kind_name(k.kind);
  j["target"] = to_json(k.target);
  j["objectives"] = list_to(k.objectives, [](const ObjectiveTerm& o) {
    Json row;
    row["alpha"] = to_json(o.alpha);
    row["xi"] = to_json(o.xi);
    row["coeffs"] = to_json(o.coeffs);
    return row;
  });
  j["constraints"] = list_to(k.constraints, [](const ConstraintTerm& c) {
    Json row;
    row["t"] = c.t;
    row["beta"] = to_json(c.beta);
    row["zeta"] = to_json(c.zeta);
    return row;
  });
  return j;
}

KktCertificate certificate_from_json(const Json& j) {
  only_keys(j, {"kind", "target", "objectives", "constraints"}, "certificate");
  KktCertificate k;
  k.kind = cert_kind_from_name(get_string(j, "kind"));
  k.target = vec_from_json(field(j, "target"));
  for (const auto& row : get_array(j, "objectives")) {
    only_keys(row, {"alpha", "xi", "coeffs"}, "objective term");
    k.objectives.push_back({rational_from_json(field(row, "alpha")), vec_from_json(field(row, "xi")),
                            vec_from_json(field(row, "coeffs"))});
  }
  for (const auto& row : get_array(j, "constraints")) {
    only_keys(row, {"t", "beta", "zeta"}, "constraint term");
    k.constraints.push_back(
        {get_size(row, "t"), rational_from_json(field(row, "beta")), vec_from_json(field(row, "zeta"))});
  }
  return k;
}

Json to_json(const WeakKkt& w) {
  Json j;
  j["holds"] = w.certificate.has_value();
  if (w.certificate) j["certificate"] = to_json(*w.certificate);
  if (w.separator) j["separator"] = to_json(*w.separator);
  j["provenance"] = to_json(w.provenance);
  return j;
}

WeakKkt weak_kkt_from_json(const Json& j) {
  only_keys(j, {"holds", "certificate", "separator", "provenance"}, "weak KKT report");
  WeakKkt w;
  if (const Json* c = opt_field(j, "certificate")) w.certificate = certificate_from_json(*c);
  if (const Json* s = opt_field(j, "separator")) w.separator = separator_from_json(*s);
  if (get_bool(j, "holds") != w.certificate.has_value()) bad("weak KKT 'holds' disagrees with its certificate");
  w.provenance = provenance_from_json(field(j, "provenance"));
  return w;
}

Json to_json(const StrongKkt& s) {
  Json j;
  j["holds"] = s.certificate.has_value();
  if (s.certificate) j["certificate"] = to_json(*s.certificate);
  j["tau"] = to_json(s.tau);
  j["weak_holds"] = s.weak_holds;
  j["ri_holds"] = s.ri_holds;
  if (s.ri_point) j["ri_point"] = to_json(*s.ri_point);
  j["provenance"] = to_json(s.provenance);
  return j;
}

StrongKkt strong_kkt_from_json(const Json& j) {
  only_keys(j, {"holds", "certificate", "tau", "weak_holds", "ri_holds", "ri_point", "provenance"},
            "strong KKT report");
  StrongKkt s;
  if (const Json* c = opt_field(j, "certificate")) s.certificate = certificate_from_json(*c);
  if (get_bool(j, "holds") != s.certificate.has_value()) {
    bad("strong KKT 'holds' disagrees with its certificate");
  }
  s.tau = rational_from_json(field(j, "tau"));
  s.weak_holds = get_bool(j, "weak_holds");
  s.ri_holds = get_bool(j, "ri_holds");
  s.ri_point = opt_vec_from(j, "ri_point");
  s.provenance = provenance_from_json(field(j, "provenance"));
  return s;
}

Json to_json(const PerturbedKkt& p) {
  Json j;
  j["holds"] = p.holds;
  j["nu"] = to_json(p.nu);
  j["nu_exact"] = p.nu_exact;
  if (p.escape) j["escape"] = to_json(*p.escape);
  j["axis"] = list_to(p.axis, [](const KktCertificate& k) { return to_json(k); });
  j["provenance"] = to_json(p.provenance);
  if (!p.eps_report.empty()) {
    j["eps_report"] = list_to(p.eps_report, [](const EpsInclusion& e) {
      Json row;
      row["eps"] = to_json(e.eps);
      row["inside"] = e.inside;
      row["radius"] = to_json(e.radius);
      return row;
    });
  }
  return j;
}

PerturbedKkt perturbed_kkt_from_json(const Json& j) {
  only_keys(j, {"holds", "nu", "nu_exact", "escape", "axis", "provenance", "eps_report"},
            "perturbed KKT report");
  PerturbedKkt p;
  p.holds = get_bool(j, "holds");
  p.nu = rational_from_json(field(j, "nu"));
  p.nu_exact = get_bool(j, "nu_exact");
  p.escape = opt_vec_from(j, "escape");
  p.axis = list_from<KktCertificate>(get_array(j, "axis"), certificate_from_json);
  p.provenance = provenance_from_json(field(j, "provenance"));
  if (const Json* er = opt_field(j, "eps_report")) {
    for (const auto& row : *er) {
      only_keys(row, {"eps", "inside", "radius"}, "eps inclusion");
      p.eps_report.push_back({rational_from_json(field(row, "eps")), get_bool(row, "inside"),
                              rational_from_json(field(row, "radius"))});
    }
  }
  return p;
}

Json to_json(const GapSearch& g) {
  Json j;
  j["mode"] = gap_mode_name(g.mode);
  j["found"] = g.witness.has_value();
  if (g.witness) {
    Json w;
    w["lambda"] = to_json(g.witness->lambda);
    w["xi"] = to_json(g.witness->xi);
    w["xi_coeffs"] = to_json(g.witness->xi_coeffs);
    w["value"] = to_json(g.witness->value);
    j["witness"] = std::move(w);
  }
  j["tau"] = to_json(g.tau);
  j["note"] = g.note;
  return j;
}

GapSearch gap_search_from_json(const Json& j) {
  only_keys(j, {"mode", "found", "witness", "tau", "note"}, "gap search");
  GapSearch g;
  const std::string mode = get_string(j, "mode");
  if (mode == "weak") {
    g.mode = GapMode::kWeak;
  } else if (mode == "strong") {
    g.mode = GapMode::kStrong;
  } else {
    bad("unknown gap mode '" + mode + "'");
  }
  if (const Json* w = opt_field(j, "witness")) {
    only_keys(*w, {"lambda", "xi", "xi_coeffs", "value"}, "gap witness");
    g.witness = GapWitness{vec_from_json(field(*w, "lambda")), matrix_from_json(field(*w, "xi")),
                           matrix_from_json(field(*w, "xi_coeffs")), extreal_from_json(field(*w, "value"))};
  }
  if (get_bool(j, "found") != g.witness.has_value()) bad("gap 'found' disagrees with its witness");
  g.tau = rational_from_json(field(j, "tau"));
  g.note = get_string(j, "note");
  return g;
}

Json to_json(const PerturbedGapReport& r) {
  Json j;
  j["nu"] = to_json(r.nu);
  j["gap_interior"] = r.gap_interior;
  j["gap_radius"] = to_json(r.gap_radius);
  j["kkt_interior"] = r.kkt_interior;
  j["equivalent"] = r.equivalent;
  j["within_hypotheses"] = r.within_hypotheses;
  j["all_success"] = r.all_success;
  j["per_w"] = list_to(r.per_w, [](const TiltCheck& t) {
    Json row;
    row["w"] = to_json(t.w);
    row["success"] = t.success;
    return row;
  });
  return j;
}

PerturbedGapReport perturbed_gap_from_json(const Json& j) {
  only_keys(j,
            {"nu", "gap_interior", "gap_radius", "kkt_interior", "equivalent", "within_hypotheses",
             "all_success", "per_w"},
            "perturbed gap report");
  PerturbedGapReport r;
  r.nu = rational_from_json(field(j, "nu"));
  r.gap_interior = get_bool(j, "gap_interior");
  r.gap_radius = rational_from_json(field(j, "gap_radius"));
  r.kkt_interior = get_bool(j, "kkt_interior");
  r.equivalent = get_bool(j, "equivalent");
  r.within_hypotheses = get_bool(j, "within_hypotheses");
  r.all_success = get_bool(j, "all_success");
  for (const auto& row : get_array(j, "per_w")) {
    only_keys(row, {"w", "success"}, "tilt check");
    r.per_w.push_back({vec_from_json(field(row, "w")), get_bool(row, "success")});
  }
  return r;
}

Json to_json(const OracleReport& r) {
  Json j;
  Json grid;
  grid["lo"] = to_json(r.grid.box.lo);
  grid["hi"] = to_json(r.grid.box.hi);
  grid["resolution"] = r.grid.resolution;
  grid["points"] = r.grid.points;
  grid["feasible"] = r.grid.feasible;
  j["grid"] = std::move(grid);
  j["weak_refuted"] = opt_vec(r.weak_refuted);
  j["eff_refuted"] = opt_vec(r.eff_refuted);
  j["nu_hat"] = r.nu_hat ? Json(*r.nu_hat) : Json();
  j["nu_hat_at"] = opt_vec(r.nu_hat_at);
  return j;
}

OracleReport oracle_report_from_json(const Json& j) {
  only_keys(j, {"grid", "weak_refuted", "eff_refuted", "nu_hat", "nu_hat_at"}, "oracle report");
  OracleReport r;
  const Json& grid = field(j, "grid");
  only_keys(grid, {"lo", "hi", "resolution", "points", "feasible"}, "oracle grid");
  r.grid.box = {vec_from_json(field(grid, "lo")), vec_from_json(field(grid, "hi"))};
  r.grid.resolution = get_size(grid, "resolution");
  r.grid.points = get_size(grid, "points");
  r.grid.feasible = get_size(grid, "feasible");
  r.weak_refuted = opt_vec_from(j, "weak_refuted");
  r.eff_refuted = opt_vec_from(j, "eff_refuted");
  if (const Json* nu = opt_field(j, "nu_hat")) {
    if (!nu->is_number()) bad("'nu_hat' must be a number");
    r.nu_hat = nu->get<double>();
  }
  r.nu_hat_at = opt_vec_from(j, "nu_hat_at");
  return r;
}

Json to_json(const EfficiencyClaim& c) {
  Json j;
  j["level"] = level_name(c.level);
  j["holds"] = c.holds;
  j["direction"] = direction_name(c.direction);
  j["rule"] = c.rule;
  j["relied_on"] = list_to(c.relied_on, [](QualId q) { return qual_name(q); });
  j["evidence"] = c.evidence;
  return j;
}

EfficiencyClaim claim_from_json(const Json& j) {
  only_keys(j, {"level", "holds", "direction", "rule", "relied_on", "evidence"}, "claim");
  EfficiencyClaim c;
  const std::string level = get_string(j, "level");
  bool found = false;
  for (Level l : {Level::kWeakEfficient, Level::kEfficient, Level::kIsolatedEfficient}) {
    if (level_name(l) == level) c.level = l, found = true;
  }
  if (!found) bad("unknown level '" + level + "'");
  c.holds = get_bool(j, "holds");
  const std::string dir = get_string(j, "direction");
  found = false;
  using D = EfficiencyClaim::Direction;
  for (D d : {D::kSufficient, D::kNecessaryGiven, D::kCharacterization, D::kCounterexample}) {
    if (direction_name(d) == dir) c.direction = d, found = true;
  }
  if (!found) bad("unknown direction '" + dir + "'");
  c.rule = get_string(j, "rule");
  for (const auto& q : get_array(j, "relied_on")) {
    if (!q.is_string()) bad("'relied_on' entries must be strings");
    c.relied_on.push_back(parse_qual(q.get<std::string>()));
  }
  c.evidence = get_string(j, "evidence");
  return c;
}

// --- text tables -----------------------------------------------------------

std::string quals_table(const std::vector<QualReport>& reports, const DiagramResult& d) {
  std::ostringstream out;
  out << pad("qual", 7) << pad("status", 12) << pad("provenance", 24) << "witness\n";
  std::vector<std::string> holds, fails, undecided;
  for (const auto& r : reports) {
    out << pad(qual_name(r.qual), 7) << pad(status_name(r.status), 12)
        << pad(r.provenance.to_string(), 24) << witness_summary(r.witness) << "\n";
    auto& bucket = r.status == Status::kHolds ? holds : r.status == Status::kFails ? fails : undecided;
    bucket.push_back(qual_name(r.qual));
  }
  auto line = [&](const char* label, const std::vector<std::string>& xs) {
    out << label << (xs.empty() ? "-" : join(xs, ", ")) << "\n";
  };
  line("Holds: ", holds);
  line("Fails: ", fails);
  line("Undecidable: ", undecided);
  out << "diagram: " << d.violations.size() << " violation(s) over " << d.checks.size() << " arrows\n";
  for (const auto& a : d.violations) out << "  violated " << a.label() << "\n";
  return out.str();
}

std::string claims_table(const std::vector<EfficiencyClaim>& claims) {
  std::ostringstream out;
  out << pad("level", 19) << pad("verdict", 8) << pad("direction", 18) << "rule\n";
  for (const auto& c : claims) {
    out << pad(level_name(c.level), 19) << pad(c.holds ? "yes" : "NOT", 8)
        << pad(direction_name(c.direction), 18) << c.rule;
    if (!c.relied_on.empty()) {
      std::vector<std::string> qs;
      for (QualId q : c.relied_on) qs.push_back(qual_name(q));
      out << " [" << join(qs, ", ") << "]";
    }
    out << "\n";
  }
  if (claims.empty()) out << "(no claims)\n";
  return out.str();
}

}  // namespace mosip
