#include "mosip/funcs.h"

#include <algorithm>
#include <cmath>

#include "mosip/errors.h"

namespace mosip {

// --- ExtReal ---------------------------------------------------------------

ExtReal ExtReal::pos_inf() {
  ExtReal e;
  e.kind_ = Kind::kPosInf;
  return e;
}

ExtReal ExtReal::neg_inf() {
  ExtReal e;
  e.kind_ = Kind::kNegInf;
  return e;
}

ExtReal ExtReal::root(int sign, const Rational& radicand) {
  if (radicand < 0) throw InputError("square root of a negative rational");
  Rational r;
  if (exact_sqrt(radicand, r)) return ExtReal(sign < 0 ? Rational(-r) : r);
  ExtReal e;
  e.kind_ = Kind::kRoot;
  e.value_ = radicand;
  e.root_sign_ = sign < 0 ? -1 : 1;
  return e;
}

const Rational& ExtReal::rational() const {
  if (kind_ != Kind::kFinite) throw UnsupportedError("value " + to_string() + " is not rational");
  return value_;
}

int ExtReal::sign() const {
  switch (kind_) {
    case Kind::kFinite:
      return sgn(value_);
    case Kind::kRoot:
      return root_sign_;
    case Kind::kPosInf:
      return 1;
    case Kind::kNegInf:
      return -1;
  }
  return 0;
}

double ExtReal::to_double() const {
  switch (kind_) {
    case Kind::kFinite:
      return value_.get_d();
    case Kind::kRoot:
      return root_sign_ * std::sqrt(value_.get_d());
    case Kind::kPosInf:
      return HUGE_VAL;
    case Kind::kNegInf:
      return -HUGE_VAL;
  }
  return 0;
}

std::string ExtReal::to_string() const {
  switch (kind_) {
    case Kind::kFinite:
      return value_.get_str();
    case Kind::kRoot:
      return std::string(root_sign_ < 0 ? "-" : "") + "sqrt(" + value_.get_str() + ")";
    case Kind::kPosInf:
      return "+inf";
    case Kind::kNegInf:
      return "-inf";
  }
  return "";
}

ExtReal ExtReal::operator-() const {
  switch (kind_) {
    case Kind::kFinite:
      return ExtReal(Rational(-value_));
    case Kind::kRoot:
      return root(-root_sign_, value_);
    case Kind::kPosInf:
      return neg_inf();
    case Kind::kNegInf:
      return pos_inf();
  }
  return {};
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  using K = ExtReal::Kind;
  if ((a.kind_ == K::kPosInf && b.kind_ == K::kNegInf) ||
      (a.kind_ == K::kNegInf && b.kind_ == K::kPosInf)) {
    throw InputError("+inf + -inf is undefined");
  }
  if (a.kind_ == K::kPosInf || b.kind_ == K::kPosInf) return ExtReal::pos_inf();
  if (a.kind_ == K::kNegInf || b.kind_ == K::kNegInf) return ExtReal::neg_inf();
  if (a.kind_ == K::kFinite && b.kind_ == K::kFinite) return ExtReal(Rational(a.value_ + b.value_));
  if (a.kind_ == K::kFinite && a.value_ == 0) return b;
  if (b.kind_ == K::kFinite && b.value_ == 0) return a;
  if (a.kind_ == K::kRoot && b.kind_ == K::kRoot && a.value_ == b.value_) {
    if (a.root_sign_ != b.root_sign_) return ExtReal(0);
    return ExtReal::root(a.root_sign_, a.value_ * 4);
  }
  throw UnsupportedError("sum " + a.to_string() + " + " + b.to_string() + " is not representable");
}

ExtReal ExtReal::scaled(const Rational& c) const {
  switch (kind_) {
    case Kind::kFinite:
      return ExtReal(Rational(value_ * c));
    case Kind::kRoot:
      if (c == 0) return ExtReal(0);
      return root(root_sign_ * sgn(c), value_ * c * c);
    case Kind::kPosInf:
    case Kind::kNegInf:
      if (c == 0) return ExtReal(0);
      return c > 0 ? *this : -*this;
  }
  return {};
}

int compare(const ExtReal& a, const ExtReal& b) {
  using K = ExtReal::Kind;
  auto rank = [](const ExtReal& e) {
    return e.kind_ == K::kNegInf ? 0 : e.kind_ == K::kPosInf ? 2 : 1;
  };
  if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
  if (rank(a) != 1) return 0;
  if (a.kind_ == K::kFinite && b.kind_ == K::kFinite) {
    return a.value_ < b.value_ ? -1 : (a.value_ > b.value_ ? 1 : 0);
  }
  int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  Rational qa = a.kind_ == K::kRoot ? a.value_ : Rational(a.value_ * a.value_);
  Rational qb = b.kind_ == K::kRoot ? b.value_ : Rational(b.value_ * b.value_);
  int c = qa < qb ? -1 : (qa > qb ? 1 : 0);
  return sa > 0 ? c : -c;
}

// --- ConvexFunc --------------------------------------------------------------

namespace {

void check_dim(const Vec& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw InputError(std::string(what) + ": expected dimension " + std::to_string(n) +
                     ", got " + std::to_string(v.size()));
  }
}

}  // namespace

FGCone cone_closure(const Subdifferential& s) {
  if (s.exact_cone) return *s.exact_cone;
  FGCone c{s.base.dim, s.base.vertices};
  for (const auto& r : s.recession.generators) c.generators.push_back(r);
  return c;
}

ConvexFunc ConvexFunc::affine(Vec a, Rational b) {
  ConvexFunc f(Kind::kAffine, a.size());
  f.pieces_.push_back({std::move(a), std::move(b)});
  return f;
}

ConvexFunc ConvexFunc::max_affine(std::vector<AffinePiece> pieces) {
  if (pieces.empty()) throw InputError("max_affine needs at least one piece");
  ConvexFunc f(Kind::kMaxAffine, pieces.front().a.size());
  for (const auto& p : pieces) check_dim(p.a, f.dim_, "max_affine piece");
  f.pieces_ = std::move(pieces);
  return f;
}

ConvexFunc ConvexFunc::scaled_norm_inf(Vec center, Rational weight) {
  if (weight < 0) throw InputError("norm weight must be nonnegative");
  ConvexFunc f(Kind::kScaledNormInf, center.size());
  f.center_ = std::move(center);
  f.param_ = std::move(weight);
  return f;
}

ConvexFunc ConvexFunc::scaled_norm2(Vec center, Rational weight) {
  if (weight < 0) throw InputError("norm weight must be nonnegative");
  ConvexFunc f(Kind::kScaledNorm2, center.size());
  f.center_ = std::move(center);
  f.param_ = std::move(weight);
  return f;
}

ConvexFunc ConvexFunc::neg_sqrt_parabola(Rational t) {
  if (t <= 0) throw InputError("neg_sqrt_parabola needs t > 0");
  ConvexFunc f(Kind::kNegSqrtParabola1D, 1);
  f.param_ = std::move(t);
  return f;
}

ConvexFunc ConvexFunc::support_polygon(Matrix vertices, std::optional<FGCone> exact_cone) {
  if (vertices.empty()) throw InputError("support_polygon needs at least one vertex");
  ConvexFunc f(Kind::kSupportPolygon, vertices.front().size());
  for (const auto& v : vertices) check_dim(v, f.dim_, "support_polygon vertex");
  if (exact_cone && exact_cone->dim != f.dim_) throw InputError("exact_cone dimension mismatch");
  f.vertices_ = std::move(vertices);
  f.approximates_ = exact_cone.has_value();
  f.exact_cone_ = std::move(exact_cone);
  return f;
}

ConvexFunc ConvexFunc::precomputed(std::size_t dim, std::vector<TableEntry> table) {
  ConvexFunc f(Kind::kPrecomputed, dim);
  for (const auto& e : table) {
    check_dim(e.x, dim, "precomputed point");
    for (const auto& g : e.subgradients) check_dim(g, dim, "precomputed subgradient");
  }
  f.table_ = std::move(table);
  return f;
}

ConvexFunc ConvexFunc::with_domain(HPolyhedron domain) const {
  if (domain.dim != dim_) throw InputError("domain dimension mismatch");
  domain.validate();
  ConvexFunc f = *this;
  f.domain_ = std::move(domain);
  return f;
}

bool ConvexFunc::polyhedral() const {
  return kind_ == Kind::kAffine || kind_ == Kind::kMaxAffine || kind_ == Kind::kScaledNormInf ||
         kind_ == Kind::kSupportPolygon;
}

bool ConvexFunc::in_domain(const Vec& x) const {
  check_dim(x, dim_, "function argument");
  if (domain_ && !domain_->contains(x)) return false;
  if (kind_ == Kind::kNegSqrtParabola1D) return x[0] >= 0 && x[0] <= 2 * param_;
  return true;
}

std::string kind_name(ConvexFunc::Kind kind) {
  switch (kind) {
    case ConvexFunc::Kind::kAffine:
      return "affine";
    case ConvexFunc::Kind::kMaxAffine:
      return "max_affine";
    case ConvexFunc::Kind::kScaledNormInf:
      return "scaled_norm_inf";
    case ConvexFunc::Kind::kScaledNorm2:
      return "scaled_norm2";
    case ConvexFunc::Kind::kNegSqrtParabola1D:
      return "neg_sqrt_parabola";
    case ConvexFunc::Kind::kSupportPolygon:
      return "support_polygon";
    case ConvexFunc::Kind::kPrecomputed:
      return "precomputed";
  }
  return "";
}

namespace {

const TableEntry& lookup(const ConvexFunc& f, const Vec& x) {
  for (const auto& e : f.table()) {
    if (e.x == x) return e;
  }
  throw UnsupportedError("precomputed function has no entry at " + to_string(x));
}

// Pieces of a polyhedral function together with their values at x.
std::vector<std::size_t> active_pieces(const std::vector<AffinePiece>& pieces, const Vec& x,
                                       Rational* value) {
  std::vector<std::size_t> active;
  Rational best;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    Rational v = dot(pieces[k].a, x) + pieces[k].b;
    if (active.empty() || v > best) {
      best = v;
      active.assign(1, k);
    } else if (v == best) {
      active.push_back(k);
    }
  }
  if (value) *value = best;
  return active;
}

}  // namespace

std::vector<AffinePiece> to_max_affine(const ConvexFunc& f) {
  using K = ConvexFunc::Kind;
  switch (f.kind()) {
    case K::kAffine:
    case K::kMaxAffine:
      return f.pieces();
    case K::kSupportPolygon: {
      std::vector<AffinePiece> out;
      for (const auto& v : f.vertices()) out.push_back({v, Rational(0)});
      return out;
    }
    case K::kScaledNormInf: {
      std::vector<AffinePiece> out;
      const Vec& c = f.center();
      for (std::size_t i = 0; i < f.dim(); ++i) {
        for (int s : {1, -1}) {
          Rational w = f.param() * s;
          out.push_back({unit(f.dim(), i, w), Rational(-w * c[i])});
        }
      }
      return out;
    }
    default:
      throw UnsupportedError(kind_name(f.kind()) + " is not polyhedral");
  }
}

ExtReal eval(const ConvexFunc& f, const Vec& x) {
  using K = ConvexFunc::Kind;
  if (!f.in_domain(x)) return ExtReal::pos_inf();
  switch (f.kind()) {
    case K::kAffine:
    case K::kMaxAffine:
    case K::kSupportPolygon:
    case K::kScaledNormInf: {
      Rational v;
      active_pieces(to_max_affine(f), x, &v);
      return ExtReal(v);
    }
    case K::kScaledNorm2: {
      Vec diff = sub(x, f.center());
      return ExtReal::root(1, f.param() * f.param() * squared_norm(diff));
    }
    case K::kNegSqrtParabola1D: {
      const Rational& t = f.param();
      return ExtReal::root(-1, 2 * t * x[0] - x[0] * x[0]);
    }
    case K::kPrecomputed:
      return ExtReal(lookup(f, x).value);
  }
  return {};
}

Subdifferential subdiff(const ConvexFunc& f, const Vec& x) {
  using K = ConvexFunc::Kind;
  const std::size_t n = f.dim();
  ExtReal value = eval(f, x);
  if (!value.is_finite()) {
    throw PreconditionError("subdifferential requested outside the domain at " + to_string(x));
  }
  Subdifferential out{{n, {}}, FGCone::zero(n), false, std::nullopt};
  if (f.domain()) {
    for (auto r : f.domain()->active_rows(x)) out.recession.generators.push_back(f.domain()->a[r]);
    out.recession = canonical(out.recession);
  }
  switch (f.kind()) {
    case K::kAffine:
    case K::kMaxAffine:
    case K::kScaledNormInf: {
      auto pieces = to_max_affine(f);
      for (auto k : active_pieces(pieces, x, nullptr)) out.base.vertices.push_back(pieces[k].a);
      break;
    }
    case K::kSupportPolygon: {
      auto pieces = to_max_affine(f);
      for (auto k : active_pieces(pieces, x, nullptr)) out.base.vertices.push_back(pieces[k].a);
      out.approximated = f.approximates();
      if (f.exact_cone()) {
        // At the origin the subdifferential of a support function is the
        // whole set, whose closed conic hull is known.
        if (is_zero(x) && out.recession.generators.empty()) out.exact_cone = f.exact_cone();
      }
      break;
    }
    case K::kScaledNorm2: {
      Vec diff = sub(x, f.center());
      if (is_zero(diff)) {
        if (f.param() == 0) {
          out.base.vertices.push_back(zeros(n));
          break;
        }
        throw UnsupportedError("subdifferential of the 2-norm at its center is a ball");
      }
      Rational norm;
      if (!exact_sqrt(squared_norm(diff), norm)) {
        throw UnsupportedError("2-norm gradient at " + to_string(x) + " is irrational");
      }
      out.base.vertices.push_back(scaled(diff, f.param() / norm));
      break;
    }
    case K::kNegSqrtParabola1D: {
      const Rational& t = f.param();
      if (x[0] == 0 || x[0] == 2 * t) break;  // vertical tangent: no subgradient
      Rational root;
      if (!exact_sqrt(2 * t * x[0] - x[0] * x[0], root)) {
        throw UnsupportedError("derivative of neg_sqrt_parabola at " + to_string(x) +
                               " is irrational");
      }
      out.base.vertices.push_back({Rational(-(t - x[0]) / root)});
      break;
    }
    case K::kPrecomputed:
      out.base.vertices = lookup(f, x).subgradients;
      break;
  }
  out.base = canonical(out.base);
  return out;
}

ExtReal dir_derivative(const ConvexFunc& f, const Vec& x, const Vec& d) {
  using K = ConvexFunc::Kind;
  check_dim(d, f.dim(), "direction");
  if (!eval(f, x).is_finite()) {
    throw PreconditionError("directional derivative requested outside the domain");
  }
  if (f.domain()) {
    for (auto r : f.domain()->active_rows(x)) {
      if (dot(f.domain()->a[r], d) > 0) return ExtReal::pos_inf();
    }
  }
  switch (f.kind()) {
    case K::kAffine:
    case K::kMaxAffine:
    case K::kScaledNormInf:
    case K::kSupportPolygon: {
      auto pieces = to_max_affine(f);
      std::optional<Rational> best;
      for (auto k : active_pieces(pieces, x, nullptr)) {
        Rational v = dot(pieces[k].a, d);
        if (!best || v > *best) best = v;
      }
      return ExtReal(*best);
    }
    case K::kScaledNorm2: {
      const Rational& w = f.param();
      Vec diff = sub(x, f.center());
      if (is_zero(diff)) return ExtReal::root(1, w * w * squared_norm(d));
      Rational s = dot(diff, d);
      return ExtReal::root(sgn(s), w * w * s * s / squared_norm(diff));
    }
    case K::kNegSqrtParabola1D: {
      const Rational& t = f.param();
      const Rational& dd = d[0];
      if (dd == 0) return ExtReal(0);
      // Vertical tangents: into the interval the slope is -inf, outward the
      // function jumps to +inf.
      if (x[0] == 0) return dd > 0 ? ExtReal::neg_inf() : ExtReal::pos_inf();
      if (x[0] == 2 * t) return dd < 0 ? ExtReal::neg_inf() : ExtReal::pos_inf();
      Rational q = 2 * t * x[0] - x[0] * x[0];
      Rational slope_num = -(t - x[0]) * dd;
      return ExtReal::root(sgn(slope_num), slope_num * slope_num / q);
    }
    case K::kPrecomputed: {
      const auto& e = lookup(f, x);
      if (e.subgradients.empty()) throw UnsupportedError("precomputed entry has no subgradients");
      Rational best = dot(e.subgradients.front(), d);
      for (const auto& g : e.subgradients) best = std::max(best, Rational(dot(g, d)));
      return ExtReal(best);
    }
  }
  return {};
}

ConvexFunc tilt(const ConvexFunc& f, const Vec& w) {
  check_dim(w, f.dim(), "tilt vector");
  ConvexFunc out = f;
  switch (f.kind()) {
    case ConvexFunc::Kind::kAffine: {
      const auto& p = f.pieces().front();
      out = ConvexFunc::affine(sub(p.a, w), p.b);
      break;
    }
    case ConvexFunc::Kind::kSupportPolygon: {
      Matrix shifted;
      for (const auto& v : f.vertices()) shifted.push_back(sub(v, w));
      // The exact conic hull does not survive the shift.
      out.vertices_ = std::move(shifted);
      out.exact_cone_.reset();
      break;
    }
    default: {
      auto pieces = to_max_affine(f);
      for (auto& p : pieces) p.a = sub(p.a, w);
      out = ConvexFunc::max_affine(std::move(pieces));
      break;
    }
  }
  if (f.domain()) out = out.with_domain(*f.domain());
  return out;
}

}  // namespace mosip
