#pragma once

// Kernels and Fourier symbols of (-Delta)^s, Log(-Delta) and (-Delta)^{s+Log}.

#include "fraclog/specfun.hpp"

namespace fraclog {

struct KernelSplit {
    double full;   // c (b - 2 ln r) r^{-n-2s}
    double plus;   // c r^{-n-2s} (-ln r)_+
    double minus;  // c r^{-n-2s} (-ln r)_-
    double frac;   // c r^{-n-2s}
};

KernelSplit kernel_split(double r, const OperatorParams& params);

/// e^{b/2}: the kernel is positive inside this radius and negative outside.
double kernel_sign_radius(const OperatorParams& params);

enum class SymbolKind { fractional, logarithmic, fraclog };

const char* to_string(SymbolKind kind);
SymbolKind symbol_kind_from_string(const char* name);

/// |xi|^{2s}, 2 ln|xi|, or their product. The logarithmic symbol returns
/// -infinity at xi = 0; the fraclog symbol is continued by 0 there.
double symbol(double xi_norm, SymbolKind kind, const OperatorParams& params);

/// m(xi) = 2 int (1 - cos xi.z) k_+(z) dz, reduced to one radial integral
/// over (0,1): cos for n = 1, J0 for n = 2. Adaptive Gauss-Legendre to
/// relative 1e-10; throws NumericalError past 20 bisection levels.
double form_multiplier(double xi_norm, const OperatorParams& params);

/// Constant C with m(xi) <= C (1 + |xi|^{2s} (1 + |ln|xi||)) for all xi.
/// Obtained from m = sigma - b|xi|^{2s} + c|S|/(2s^2) - 2 int_{|z|>1} cos(xi.z) k_-,
/// whose last term is bounded by c|S|/(2 s^2).
double form_multiplier_bound_constant(const OperatorParams& params);

}  // namespace fraclog
