#pragma once

#include <compare>
#include <vector>

namespace feec {

// Exponent vector of a barycentric monomial on an n-simplex; length n+1.
struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(int n) : e(n + 1, 0) {}
    MultiIndex(std::initializer_list<int> init) : e(init) {}

    int n() const { return static_cast<int>(e.size()) - 1; }
    int degree() const;
    int operator[](int i) const { return e[i]; }
    int& operator[](int i) { return e[i]; }

    MultiIndex plus(int i) const;  // alpha + e_i
    MultiIndex minus(int i) const; // alpha - e_i (requires e[i] > 0)
    MultiIndex operator+(const MultiIndex& o) const;

    auto operator<=>(const MultiIndex&) const = default;
};

// All multiindices of absolute value r in n+1 variables.
// Deterministic order: first entry descending, recursively.
// Count is C(n+r, n); empty for r < 0.
std::vector<MultiIndex> enumerate_multiindices(int r, int n);

// Strictly increasing index sequence, the combinatorial part of an
// alternator d(lambda_sigma) or a Whitney form phi_rho. The lower bound
// (a = 0 or 1) is contextual and not stored.
struct AltIndex {
    std::vector<int> idx;

    AltIndex() = default;
    AltIndex(std::initializer_list<int> init) : idx(init) {}
    explicit AltIndex(std::vector<int> v) : idx(std::move(v)) {}

    int size() const { return static_cast<int>(idx.size()); }
    int operator[](int i) const { return idx[i]; }
    bool contains(int j) const;
    AltIndex without(int i) const; // drop entry at position i

    auto operator<=>(const AltIndex&) const = default;
};

// All strictly increasing maps {1..k} -> {lo..hi} (k entries).
std::vector<AltIndex> enumerate_alternators(int k, int lo, int hi);

} // namespace feec
