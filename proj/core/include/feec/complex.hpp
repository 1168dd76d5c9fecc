#pragma once

#include <feec/geometry.hpp>
#include <feec/ratmat.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace feec {

// Raised on malformed meshes, order specs, and other bad user input.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite simplicial complex with an optional boundary subcomplex U.
// Simplices are stored as strictly increasing vertex-ID tuples, grouped and
// canonically ordered by dimension; the ascending-ID order also fixes the
// reference orientation of every simplex. Immutable after build_complex.
class Complex {
public:
    int dim() const { return n_; }
    int ambient_dim() const { return N_; }
    int vertex_count() const { return static_cast<int>(coords_.size()); }

    int count(int k) const;
    const std::vector<int>& simplex(int k, int i) const { return simplices_[k][i]; }
    const std::vector<std::vector<int>>& simplices(int k) const { return simplices_[k]; }

    // Index of a vertex tuple (must be sorted ascending), or -1.
    int index_of(int k, const std::vector<int>& verts) const;

    bool in_boundary(int k, int i) const { return marked_[k][i] != 0; }

    // Canonically ordered indices of the k-simplices of C_k(T,U)
    // (relative: those outside U) or C_k(T).
    std::vector<int> free_simplices(int k, bool relative) const;

    // Top cells whose closure contains simplex (k, i).
    const std::vector<int>& star_top(int k, int i) const { return cofaces_[k][i]; }

    const std::vector<Rational>& vertex(int v) const { return coords_[v]; }

    // Metric data of an individual simplex, built from its vertex coordinates.
    SimplexGeometry geometry(int k, int i) const;

    // Sign of det[v1-v0, ..., vn-v0] of a top cell; requires ambient
    // dimension == complex dimension and a non-degenerate cell.
    int orientation_sign(int top_index) const;

private:
    int n_ = 0, N_ = 0;
    std::vector<std::vector<Rational>> coords_;
    std::vector<std::vector<std::vector<int>>> simplices_; // [k][i] ascending
    std::vector<std::map<std::vector<int>, int>> lookup_;
    std::vector<std::vector<char>> marked_;                // U membership
    std::vector<std::vector<std::vector<int>>> cofaces_;   // [k][i] -> top cells

    friend Complex build_complex(const std::vector<std::vector<int>>& cells,
                                 const std::vector<std::vector<Rational>>& coords,
                                 bool boundary_auto,
                                 const std::vector<std::vector<int>>& boundary);
};

// Builds the downward closure of the given top cells and validates the
// complex conditions. boundary_auto marks U as every facet incident to
// exactly one top cell, closed under subsimplices; otherwise the explicit
// list (tuples of any dimension, each present in the complex) is closed
// downward. Throws InputError on malformed input.
Complex build_complex(const std::vector<std::vector<int>>& cells,
                      const std::vector<std::vector<Rational>>& coords,
                      bool boundary_auto = true,
                      const std::vector<std::vector<int>>& boundary = {});

// Matrix of the boundary operator C_k -> C_{k-1} (relative variant: both
// spaces modulo U) in canonical simplex order, with position-parity signs
// o(F, T) = (-1)^p for the facet omitting vertex p.
RatMat boundary_matrix(const Complex& c, int k, bool relative);

// b_k = dim ker boundary_k - rank boundary_{k+1}, exact ranks; k = 0..dim.
std::vector<int> betti_numbers(const Complex& c, bool relative);

// Positions of the entries of sub within super (both strictly increasing);
// throws if sub is not a subsequence.
std::vector<int> positions_in(const std::vector<int>& sub, const std::vector<int>& super);

} // namespace feec
