#pragma once

#include <feec/complex.hpp>

// Shared small test meshes.
namespace testmesh {

// 8-triangle fan around the origin (triangulated octagonal disk).
inline feec::Complex disk()
{
    std::vector<std::vector<feec::Rational>> pts = {
        {0, 0},
        {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    std::vector<std::vector<int>> cells;
    for (int i = 1; i <= 8; ++i)
        cells.push_back({0, i, i % 8 + 1});
    return feec::build_complex(cells, pts);
}

// 8-triangle square ring (annulus): outer corners (+-2,+-2), inner (+-1,+-1).
inline feec::Complex annulus()
{
    std::vector<std::vector<feec::Rational>> pts = {
        {2, 2}, {-2, 2}, {-2, -2}, {2, -2},  // outer 0..3
        {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}; // inner 4..7
    std::vector<std::vector<int>> cells;
    for (int i = 0; i < 4; ++i) {
        int o0 = i, o1 = (i + 1) % 4, i0 = 4 + i, i1 = 4 + (i + 1) % 4;
        cells.push_back({o0, o1, i0});
        cells.push_back({o1, i1, i0});
    }
    return feec::build_complex(cells, pts);
}

// Two triangles sharing an edge (unit square split along a diagonal).
inline feec::Complex two_triangles()
{
    std::vector<std::vector<feec::Rational>> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    return feec::build_complex({{0, 1, 2}, {0, 2, 3}}, pts);
}

// Fan of three tetrahedra around the common edge (0,1) on the z-axis.
inline feec::Complex tet_fan()
{
    std::vector<std::vector<feec::Rational>> pts = {
        {0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
    return feec::build_complex({{0, 1, 2, 3}, {0, 1, 3, 4}, {0, 1, 4, 5}}, pts);
}

} // namespace testmesh
