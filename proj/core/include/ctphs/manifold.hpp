#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "ctphs/random.hpp"

namespace ctphs {

/// The five families of compact two-point homogeneous spaces.
enum class Kind { Sphere, RealProjective, ComplexProjective, QuaternionProjective, CayleyPlane };

std::string_view kind_name(Kind kind) noexcept;
/// Accepts the canonical names ("sphere", "real-projective", ...) and the
/// short aliases s, rp, cp, hp, cay. Throws ParameterError otherwise.
Kind parse_kind(std::string_view name);

/// Identity of a space M^{d-1} together with its structure constants.
///
/// The radial law of the distance to a fixed pole is
///   alpha(t) = radial_constant * sin(t/2)^a * sin(t)^b,   0 <= t <= pi,
/// and zonal harmonic analysis uses Jacobi parameters (alpha, beta) with
/// degree scaling epsilon (2 for real projective spaces, 1 otherwise).
struct ManifoldSpec {
  Kind kind = Kind::Sphere;
  int d = 3;
  int a = 0;
  int b = 1;
  int epsilon = 1;
  double alpha = 0.0;
  double beta = 0.0;
  /// Normalization C of alpha(t); cached at construction.
  double radial_constant = 0.5;

  int dimension() const noexcept { return d - 1; }
  /// Real dimension of the base field: 1, 2 or 4. Zero for the Cayley plane.
  int field_dim() const noexcept;
  /// Number of field scalars in a point representative.
  int coord_count() const noexcept;
  /// Length of Point::coords (field components interleaved).
  int ambient_dim() const noexcept { return field_dim() * coord_count(); }
  bool projective() const noexcept { return kind != Kind::Sphere; }
  bool supports_points() const noexcept { return kind != Kind::CayleyPlane; }

  bool operator==(const ManifoldSpec&) const = default;
};

/// Builds the spec for (kind, d). Throws ParameterError when d is not
/// admissible for the kind (Sphere/RealProjective: d >= 3; ComplexProjective:
/// odd d >= 5; QuaternionProjective: d = 9, 13, 17, ...; CayleyPlane: d = 17).
ManifoldSpec make_spec(Kind kind, int d);

/// Unit quaternion arithmetic, also used for the real and complex fields by
/// leaving the unused components at zero.
struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  Quaternion conj() const noexcept { return {w, -x, -y, -z}; }
  double norm2() const noexcept { return w * w + x * x + y * y + z * z; }
  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) noexcept {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }
  friend Quaternion operator+(const Quaternion& p, const Quaternion& q) noexcept {
    return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
  }
  Quaternion operator*(double s) const noexcept { return {w * s, x * s, y * s, z * s}; }
};

/// A point stored as a unit representative over the base field. Projective
/// points are canonical: the first coordinate with modulus > 1e-9 is real
/// and positive.
struct Point {
  std::vector<double> coords;
  bool operator==(const Point&) const = default;
};

/// Normalizes and canonicalizes raw coordinates. Throws ParameterError on a
/// length mismatch or a (near) zero vector, UnsupportedKind for CayleyPlane.
Point make_point(const ManifoldSpec& spec, std::vector<double> coords);
/// Throws ParameterError unless p has the right length and unit norm (1e-12).
void validate_point(const ManifoldSpec& spec, const Point& p);

/// Field inner product <x, y> = sum_i conj(x_i) y_i.
Quaternion field_inner(const ManifoldSpec& spec, const Point& x, const Point& y);

/// Geodesic distance in [0, pi], normalized so closed geodesics have length
/// 2 pi: arccos<x,y> on spheres, 2 arccos|<x,y>| on projective spaces.
double distance(const ManifoldSpec& spec, const Point& x, const Point& y);

/// cos(d(x,y) / epsilon): the argument of the addition formula. Computed from
/// the inner product without trigonometric round trips.
double addition_argument(const ManifoldSpec& spec, const Point& x, const Point& y);

/// cos d(x, y).
double cos_distance(const ManifoldSpec& spec, const Point& x, const Point& y);

double radial_density(const ManifoldSpec& spec, double t);

/// Integral of g(t) alpha(t) over [lo, hi] (default [0, pi]) by adaptive
/// Gauss–Kronrod. Equals the integral over M of g(d(., o)) when the range is
/// the full [0, pi]. Throws NumericError if g is non-finite at a node.
double radial_integrate(const ManifoldSpec& spec, const std::function<double(double)>& g,
                        double tol = 1e-10);
double radial_integrate(const ManifoldSpec& spec, const std::function<double(double)>& g,
                        double lo, double hi, double tol = 1e-10);

/// Normalized measure of a geodesic ball of radius r.
double ball_measure(const ManifoldSpec& spec, double r);

/// Uniform sample with respect to the normalized invariant measure.
Point sample_uniform(const ManifoldSpec& spec, Rng& rng);
Point sample_uniform(const ManifoldSpec& spec, std::uint64_t seed);

/// A point at distance exactly t (0 <= t <= pi) from x along a random
/// geodesic.
Point point_at_distance(const ManifoldSpec& spec, const Point& x, double t, Rng& rng);

/// A random point of the closed ball B(x, r); radii follow r U^{1/(d-1)},
/// which is volume-uniform to leading order for small r.
Point sample_in_ball(const ManifoldSpec& spec, const Point& x, double r, Rng& rng);

}  // namespace ctphs
