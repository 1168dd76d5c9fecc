#pragma once

#include <feec/complex.hpp>
#include <feec/extension.hpp>
#include <feec/spaces.hpp>

#include <string>
#include <vector>

namespace feec {

// Degrees of freedom of the global space P Lambda^k(T) or P Lambda^k(T,U)
// in geometric-decomposition coordinates:
//
//   [ Whitney block: one coefficient per k-simplex (outside U) ]
//   [ per-simplex interior blocks: coordinates in the underline-ring basis
//     of P_F(k) on F, for every simplex F with dim F >= k (outside U) ]
//
// The Whitney coefficient convention is c_F = k! * int_F tr_F omega, which
// makes the Whitney block exactly the coefficients over the global Whitney
// forms phi_F. Empty interior spaces get zero-width blocks so positions are
// stable across orders.
struct DofLayout {
    const Complex* complex = nullptr;
    SequenceAssignment assignment;
    int k = 0;
    bool relative = false;

    std::vector<int> whitney;           // k-simplex indices, canonical order
    std::vector<int> whitney_pos;       // simplex index -> slot or -1

    struct Block {
        int sdim = 0;     // simplex dimension
        int index = 0;    // simplex index within that dimension
        SpaceTag tag;     // the space symbol of that simplex at degree k
        int offset = 0;   // first coefficient slot
        int size = 0;     // dim of the underline-ring space
    };
    std::vector<Block> blocks;
    std::vector<std::vector<int>> block_of; // [sdim][index] -> block id or -1

    int total = 0;
    std::string hash; // stable hex digest of the layout descriptor

    int dim() const { return total; }
};

DofLayout make_layout(const Complex& c, const SequenceAssignment& a, int k,
                      bool relative);

struct GlobalForm {
    const DofLayout* layout = nullptr;
    std::vector<Rational> coeff;

    bool is_zero() const
    {
        for (const auto& c : coeff)
            if (c != 0) return false;
        return true;
    }
};

GlobalForm zero_form(const DofLayout& layout);

// The piecewise polynomial form represented by g on one top cell.
LocalForm localize(const GlobalForm& g, int top_cell);

// Exact geometric decomposition of a piecewise form (one LocalForm per top
// cell, in the local spaces of the assignment, with matching traces) into
// layout coordinates. Throws InputError on trace mismatches, hierarchy /
// membership failures, or nonzero boundary traces for relative layouts.
GlobalForm geometric_decompose(const std::vector<LocalForm>& per_cell,
                               const DofLayout& layout);

// Embedding of an underline-ring form on simplex (sdim, index) as a global
// form supported on the star of that simplex.
GlobalForm global_extension(const DofLayout& layout, int sdim, int index,
                            const LocalForm& w);

// Matrix of the exterior derivative in decomposition coordinates,
// columns over layout_k, rows over layout_k1 (same assignment, k1 = k+1).
RatMat assemble_global_d(const DofLayout& layout_k, const DofLayout& layout_k1);

} // namespace feec
