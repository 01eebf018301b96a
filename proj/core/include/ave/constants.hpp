#pragma once

// Shared numeric tolerances. Residual tolerances and iteration caps live in
// SolverConfig; the values here govern factorization health and membership
// tests and are deliberately not per-call knobs.

namespace ave::tol {

// A factorization is treated as unusable when its reciprocal condition
// estimate drops below this (condition number above 1e12).
inline constexpr double rcond_min = 1e-12;

// Singular values below svd_truncation * sigma_max are treated as zero when
// building the pseudo-inverse fallback.
inline constexpr double svd_truncation = 1e-12;

// Membership in the affine set is tested as residual <= affine_tol * (1 + ||c||).
inline constexpr double affine_tol = 1e-8;

// Principal-minor zero/positivity threshold, scaled by max(1, maxabs^k).
inline constexpr double minor_threshold = 1e-10;

// Principal-minor enumeration gives up (tri-state Skipped) beyond this order.
inline constexpr int minor_cap = 12;

// Set-valued complementarity projection refuses to enumerate more ties.
inline constexpr int tie_cap = 16;

}  // namespace ave::tol
