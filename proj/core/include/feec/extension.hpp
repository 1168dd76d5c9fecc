#pragma once

#include <feec/localform.hpp>
#include <feec/spaces.hpp>

#include <vector>

namespace feec {

// Extension operators from a face F onto a simplex T along the vertex
// inclusion iota: {0..m} -> {0..n} (strictly increasing positions of F's
// vertices inside T; m = dim F = w.n(), n = dim T).
//
// Trimmed family, order r: the input is re-expressed over the spanning set
// lambda^alpha phi_rho (|alpha| = r-1) and extended term by term via index
// lifting. Full family, order r: the input is homogenized to degree exactly
// r and each lambda^alpha d(lambda_sigma) maps to
// lambda^(lifted alpha) wedge_i (d(lambda_iota(sigma_i))
//                                - (alpha_lifted(iota(sigma_i))/r) sum_j d(lambda_iota(j))).

LocalForm ext_trimmed(const LocalForm& w, int r, const std::vector<int>& iota, int n);
LocalForm ext_full(const LocalForm& w, int r, const std::vector<int>& iota, int n);
LocalForm ext_form(const LocalForm& w, SpaceTag tag, const std::vector<int>& iota, int n);

} // namespace feec
