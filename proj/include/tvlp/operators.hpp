#pragma once

#include "tvlp/grid.hpp"

namespace tvlp {

/// Forward differences divided by the spacing; the last row of comp1 and the
/// last column of comp2 are zero (homogeneous Neumann condition).
VectorField2D gradient(const Image2D& u);

/// Negative adjoint of gradient: <-div w, u> = <w, grad u> for all u, w.
Image2D divergence(const VectorField2D& w);

/// div(grad u). Negative semidefinite; constants span its kernel.
Image2D laplacian(const Image2D& u);

/// Plain (unweighted) Euclidean inner products.
double inner(const Image2D& a, const Image2D& b);
double inner(const VectorField2D& a, const VectorField2D& b);

/// (sum |w(i,j)|^p)^(1/p) with |.| the pointwise Euclidean magnitude,
/// optionally weighted by t^d.
double field_lp_norm(const VectorField2D& w, double p, bool quadrature);

/// Isotropic discrete total variation, field_lp_norm(gradient(u), 1, .).
double tv_value(const Image2D& u, bool quadrature);

}  // namespace tvlp
