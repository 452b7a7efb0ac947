#include "ctphs/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ctphs/error.hpp"
#include "ctphs/quadrature.hpp"

namespace ctphs {
namespace {

constexpr double kPi = std::numbers::pi;

Quaternion load(const ManifoldSpec& spec, const std::vector<double>& c, int i) {
  const int f = spec.field_dim();
  const double* p = c.data() + static_cast<std::ptrdiff_t>(i) * f;
  switch (f) {
    case 1: return {p[0], 0.0, 0.0, 0.0};
    case 2: return {p[0], p[1], 0.0, 0.0};
    default: return {p[0], p[1], p[2], p[3]};
  }
}

void store(const ManifoldSpec& spec, std::vector<double>& c, int i, const Quaternion& q) {
  const int f = spec.field_dim();
  double* p = c.data() + static_cast<std::ptrdiff_t>(i) * f;
  p[0] = q.w;
  if (f >= 2) p[1] = q.x;
  if (f == 4) {
    p[2] = q.y;
    p[3] = q.z;
  }
}

void require_points(const ManifoldSpec& spec, const char* op) {
  if (!spec.supports_points()) {
    throw UnsupportedKind(std::string(op) +
                          ": no point model for the Cayley plane (radial operations only)");
  }
}

void require_same_length(const ManifoldSpec& spec, const Point& x, const Point& y) {
  const auto n = static_cast<std::size_t>(spec.ambient_dim());
  if (x.coords.size() != n || y.coords.size() != n) {
    throw ParameterError("point dimension does not match spec (expected " + std::to_string(n) +
                         " reals)");
  }
}

// Right-multiplies every coordinate by q.
void right_multiply(const ManifoldSpec& spec, std::vector<double>& c, const Quaternion& q) {
  for (int i = 0; i < spec.coord_count(); ++i) store(spec, c, i, load(spec, c, i) * q);
}

void canonicalize_in_place(const ManifoldSpec& spec, std::vector<double>& c) {
  if (!spec.projective()) return;
  for (int i = 0; i < spec.coord_count(); ++i) {
    const Quaternion q = load(spec, c, i);
    const double mod = std::sqrt(q.norm2());
    if (mod > 1e-9) {
      right_multiply(spec, c, q.conj() * (1.0 / mod));
      // Exact zero imaginary parts on the pivot.
      store(spec, c, i, Quaternion{mod, 0.0, 0.0, 0.0});
      return;
    }
  }
}

// |y - x <x,y>| for unit x, y: the sine of the (half-)angle between the
// fibers, accurate for nearby points.
double residual_norm(const ManifoldSpec& spec, const Point& x, const Point& y,
                     const Quaternion& c) {
  double s = 0.0;
  for (int i = 0; i < spec.coord_count(); ++i) {
    const Quaternion r = load(spec, y.coords, i) + (load(spec, x.coords, i) * c) * -1.0;
    s += r.norm2();
  }
  return std::sqrt(s);
}

}  // namespace

std::string_view kind_name(Kind kind) noexcept {
  switch (kind) {
    case Kind::Sphere: return "sphere";
    case Kind::RealProjective: return "real-projective";
    case Kind::ComplexProjective: return "complex-projective";
    case Kind::QuaternionProjective: return "quaternion-projective";
    case Kind::CayleyPlane: return "cayley-plane";
  }
  return "unknown";
}

Kind parse_kind(std::string_view name) {
  if (name == "sphere" || name == "s") return Kind::Sphere;
  if (name == "real-projective" || name == "rp") return Kind::RealProjective;
  if (name == "complex-projective" || name == "cp") return Kind::ComplexProjective;
  if (name == "quaternion-projective" || name == "hp") return Kind::QuaternionProjective;
  if (name == "cayley-plane" || name == "cay") return Kind::CayleyPlane;
  throw ParameterError("unknown manifold kind '" + std::string(name) + "'");
}

int ManifoldSpec::field_dim() const noexcept {
  switch (kind) {
    case Kind::Sphere:
    case Kind::RealProjective: return 1;
    case Kind::ComplexProjective: return 2;
    case Kind::QuaternionProjective: return 4;
    case Kind::CayleyPlane: return 0;
  }
  return 0;
}

int ManifoldSpec::coord_count() const noexcept {
  switch (kind) {
    case Kind::Sphere:
    case Kind::RealProjective: return d;
    case Kind::ComplexProjective: return (d + 1) / 2;
    case Kind::QuaternionProjective: return (d + 3) / 4;
    case Kind::CayleyPlane: return 0;
  }
  return 0;
}

ManifoldSpec make_spec(Kind kind, int d) {
  ManifoldSpec s;
  s.kind = kind;
  s.d = d;
  auto reject = [&](const char* rule) {
    throw ParameterError("d = " + std::to_string(d) + " is not admissible for " +
                         std::string(kind_name(kind)) + " (" + rule + ")");
  };
  switch (kind) {
    case Kind::Sphere:
      if (d < 3) reject("d >= 3");
      s.a = 0;
      s.b = d - 2;
      break;
    case Kind::RealProjective:
      if (d < 3) reject("d >= 3");
      s.a = d - 2;
      s.b = 0;
      break;
    case Kind::ComplexProjective:
      if (d < 5 || d % 2 == 0) reject("odd d >= 5");
      s.a = d - 3;
      s.b = 1;
      break;
    case Kind::QuaternionProjective:
      if (d < 9 || d % 4 != 1) reject("d = 9, 13, 17, ...");
      s.a = d - 5;
      s.b = 3;
      break;
    case Kind::CayleyPlane:
      if (d != 17) reject("d = 17");
      s.a = 8;
      s.b = 7;
      break;
  }
  s.epsilon = kind == Kind::RealProjective ? 2 : 1;
  s.alpha = (d - 3) / 2.0;
  s.beta = ((d - 2) * (s.epsilon - 1) + s.b - 1) / 2.0;

  const int a = s.a, b = s.b;
  const double mass = integrate_gl_doubling(
      [a, b](double t) { return std::pow(std::sin(0.5 * t), a) * std::pow(std::sin(t), b); }, 0.0,
      kPi, 1e-13);
  s.radial_constant = 1.0 / mass;
  return s;
}

Point make_point(const ManifoldSpec& spec, std::vector<double> coords) {
  require_points(spec, "make_point");
  if (coords.size() != static_cast<std::size_t>(spec.ambient_dim())) {
    throw ParameterError("make_point: expected " + std::to_string(spec.ambient_dim()) +
                         " coordinates, got " + std::to_string(coords.size()));
  }
  double n2 = 0.0;
  for (double v : coords) n2 += v * v;
  if (!(n2 > 1e-300) || !std::isfinite(n2)) throw ParameterError("make_point: zero or non-finite vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (double& v : coords) v *= inv;
  canonicalize_in_place(spec, coords);
  return Point{std::move(coords)};
}

void validate_point(const ManifoldSpec& spec, const Point& p) {
  require_points(spec, "validate_point");
  if (p.coords.size() != static_cast<std::size_t>(spec.ambient_dim())) {
    throw ParameterError("point dimension does not match spec");
  }
  double n2 = 0.0;
  for (double v : p.coords) n2 += v * v;
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12) throw ParameterError("point is not a unit vector");
}

Quaternion field_inner(const ManifoldSpec& spec, const Point& x, const Point& y) {
  require_points(spec, "field_inner");
  require_same_length(spec, x, y);
  if (spec.field_dim() == 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.coords.size(); ++i) s += x.coords[i] * y.coords[i];
    return {s, 0.0, 0.0, 0.0};
  }
  Quaternion s;
  for (int i = 0; i < spec.coord_count(); ++i) {
    s = s + load(spec, x.coords, i).conj() * load(spec, y.coords, i);
  }
  return s;
}

double distance(const ManifoldSpec& spec, const Point& x, const Point& y) {
  const Quaternion c = field_inner(spec, x, y);
  const double s = residual_norm(spec, x, y, c);
  if (!spec.projective()) return std::atan2(s, c.w);
  return 2.0 * std::atan2(s, std::sqrt(c.norm2()));
}

double addition_argument(const ManifoldSpec& spec, const Point& x, const Point& y) {
  const Quaternion c = field_inner(spec, x, y);
  switch (spec.kind) {
    case Kind::Sphere: return std::clamp(c.w, -1.0, 1.0);
    case Kind::RealProjective: return std::min(std::abs(c.w), 1.0);
    default: return std::clamp(2.0 * c.norm2() - 1.0, -1.0, 1.0);
  }
}

double cos_distance(const ManifoldSpec& spec, const Point& x, const Point& y) {
  if (spec.kind == Kind::RealProjective) {
    const double c = std::min(std::abs(field_inner(spec, x, y).w), 1.0);
    return 2.0 * c * c - 1.0;
  }
  return addition_argument(spec, x, y);
}

double radial_density(const ManifoldSpec& spec, double t) {
  if (t < 0.0 || t > kPi) return 0.0;
  return spec.radial_constant * std::pow(std::sin(0.5 * t), spec.a) * std::pow(std::sin(t), spec.b);
}

double radial_integrate(const ManifoldSpec& spec, const std::function<double(double)>& g,
                        double tol) {
  return radial_integrate(spec, g, 0.0, kPi, tol);
}

double radial_integrate(const ManifoldSpec& spec, const std::function<double(double)>& g,
                        double lo, double hi, double tol) {
  if (!(lo <= hi)) throw ParameterError("radial_integrate: empty range");
  lo = std::max(lo, 0.0);
  hi = std::min(hi, kPi);
  if (hi <= lo) return 0.0;
  auto integrand = [&](double t) {
    const double v = g(t);
    if (!std::isfinite(v)) throw NumericError("radial_integrate: integrand is not finite");
    return v * radial_density(spec, t);
  };
  double err = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 20, tol, &err);
  if (!std::isfinite(value)) throw NumericError("radial_integrate: non-finite result");
  return value;
}

double ball_measure(const ManifoldSpec& spec, double r) {
  if (r <= 0.0) return 0.0;
  if (r >= kPi) return 1.0;
  // Relative accuracy matters for tiny balls, so integrate the density itself.
  const double a = spec.a, b = spec.b, c = spec.radial_constant;
  auto density = [=](double t) { return c * std::pow(std::sin(0.5 * t), a) * std::pow(std::sin(t), b); };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 0.0, r, 15, 1e-14,
                                                                       &err);
}

Point sample_uniform(const ManifoldSpec& spec, Rng& rng) {
  require_points(spec, "sample_uniform");
  std::normal_distribution<double> normal;
  std::vector<double> c(static_cast<std::size_t>(spec.ambient_dim()));
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& v : c) {
      v = normal(rng);
      n2 += v * v;
    }
  } while (n2 < 1e-20);
  return make_point(spec, std::move(c));
}

Point sample_uniform(const ManifoldSpec& spec, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_uniform(spec, rng);
}

Point point_at_distance(const ManifoldSpec& spec, const Point& x, double t, Rng& rng) {
  require_points(spec, "point_at_distance");
  if (t < 0.0 || t > kPi) throw ParameterError("point_at_distance: t must lie in [0, pi]");
  std::normal_distribution<double> normal;
  const int n = spec.ambient_dim();
  std::vector<double> v(static_cast<std::size_t>(n));
  double vn = 0.0;
  for (int attempt = 0; attempt < 64 && vn < 1e-6; ++attempt) {
    for (double& e : v) e = normal(rng);
    // Remove the component along the fiber of x: v <- v - x <x, v>.
    const Quaternion c = field_inner(spec, x, Point{v});
    for (int i = 0; i < spec.coord_count(); ++i) {
      store(spec, v, i, load(spec, v, i) + (load(spec, x.coords, i) * c) * -1.0);
    }
    vn = 0.0;
    for (double e : v) vn += e * e;
    vn = std::sqrt(vn);
  }
  if (vn < 1e-6) throw NumericError("point_at_distance: could not draw a tangent direction");
  const double s = spec.projective() ? 0.5 * t : t;
  const double cs = std::cos(s), sn = std::sin(s) / vn;
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) y[i] = cs * x.coords[i] + sn * v[i];
  return make_point(spec, std::move(y));
}

Point sample_in_ball(const ManifoldSpec& spec, const Point& x, double r, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double t = std::min(r, kPi) * std::pow(unif(rng), 1.0 / spec.dimension());
  return point_at_distance(spec, x, t, rng);
}

}  // namespace ctphs
