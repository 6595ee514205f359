#pragma once

// Spherical vectors, the intertwining kernel and the model bilinear form in
// the non-compact picture, plus the test-function scaling experiment.

#include <vector>

#include "rsverify/params.hpp"
#include "rsverify/quadrature.hpp"

namespace rsv::model {

struct Point3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

Complex sphere_gl3(const GL3Parameter& p, double x, double y, double z);
Complex sphere_gl2(const GL2Parameter& q, double w);

// K_{lambda,nu,t}((x,y,z), w). Throws DomainError on a singular hyperplane.
Complex kernel(const GL3Parameter& p, const GL2Parameter& q, double t, Point3 pt, double w);
Complex kernel_nu(const GL3Parameter& p, const NuPair& nu, Point3 pt, double w);

// Default spec for the 3D integrals.
quad::QuadratureSpec default_spec_3d();

// A_{lambda,-nu,-t} phi_lambda (0), integrated over R^3.
quad::IntegralResult intertwine_at_zero(const GL3Parameter& p, const GL2Parameter& q, double t,
                                        const quad::QuadratureSpec& spec);
// Same integral for a general pair nu (A_{lambda,-nu} phi_lambda (0)).
quad::IntegralResult intertwine_at_zero_nu(const GL3Parameter& p, const NuPair& nu, const quad::QuadratureSpec& spec);

// pi * intertwine_at_zero
quad::IntegralResult model_value_numeric(const GL3Parameter& p, const GL2Parameter& q, double t,
                                         const quad::QuadratureSpec& spec);

// Direct 4D evaluation of the bilinear form (cross-check only; slow).
quad::IntegralResult model_value_4d(const GL3Parameter& p, const GL2Parameter& q, double t,
                                    const quad::QuadratureSpec& spec);

// Six-gamma closed form with c = 1.
Complex model_value_closed(const GL3Parameter& p, const NuPair& nu);
Complex model_value_closed_t(const GL3Parameter& p, const GL2Parameter& q, double t);

struct CalibrationPoint {
  GL3Parameter p;
  GL2Parameter q;
  double t = 0.0;
};

struct CalibrationRecord {
  CalibrationPoint point;
  Complex numeric;
  Complex closed;
  Complex ratio;
  double error_estimate = 0.0;
};

struct Calibration {
  double c = 0.0;       // mean of Re(ratio)
  double spread = 0.0;  // (max |ratio| - min |ratio|) / c
  double max_imag = 0.0;  // max |Im ratio| / c
  bool consistent = false;  // spread <= 1e-2
  std::vector<CalibrationRecord> records;
};

std::vector<CalibrationPoint> calibration_points();
Calibration calibrate_constant(const quad::QuadratureSpec& spec, const std::vector<CalibrationPoint>& points);
Calibration calibrate_constant(const quad::QuadratureSpec& spec);

double reciprocity_modulus(const GL3Parameter& p, const GL2Parameter& q, double t);

struct BumpProfile {
  double radius_eps = 0.25;

  // C with ||C (1 - |v|^2/eps^2)^4||_2 = 1
  double normalization() const;
  double value(double r) const;  // u at distance r from the centre
  double integral() const;      // int u
};

// int K_{lambda,-nu,-t}((x,y,z),0) u_T(x,y,z) over the support of u_T.
quad::IntegralResult bump_value(double T, const GL3Parameter& p, const GL2Parameter& q, double t,
                                const BumpProfile& bump, const quad::QuadratureSpec& spec);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
};

SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace rsv::model
