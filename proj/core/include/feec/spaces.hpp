#pragma once

#include <feec/complex.hpp>
#include <feec/localform.hpp>

#include <compare>
#include <vector>

namespace feec {

enum class Family { Full, Trimmed };

// Formal symbol P_r (full) or P_r^- (trimmed). The total order
// P_r^- < P_r < P_{r+1}^- is realized by value() = 2r resp. 2r-1.
struct SpaceTag {
    Family family = Family::Full;
    int order = 0;

    int value() const { return family == Family::Full ? 2 * order : 2 * order - 1; }

    bool operator==(const SpaceTag& o) const { return value() == o.value(); }
    auto operator<=>(const SpaceTag& o) const { return value() <=> o.value(); }

    static SpaceTag full(int r) { return {Family::Full, r}; }
    static SpaceTag trimmed(int r) { return {Family::Trimmed, r}; }
};

// One space symbol per form degree k = 0..n on a single simplex.
struct SequenceType {
    std::vector<SpaceTag> tags;

    int degrees() const { return static_cast<int>(tags.size()); }
    const SpaceTag& at(int k) const { return tags[k]; }
};

// P(k) in {P_r^-, P_r}  implies  P(k+1) in {P_r^-, P_{r-1}}.
bool check_admissible(const SequenceType& s);

// Per-simplex sequence types over a complex; types[k][i] covers form
// degrees 0..k for the i-th k-simplex.
struct SequenceAssignment {
    const Complex* complex = nullptr;
    std::vector<std::vector<SequenceType>> types; // [simplex dim][index]

    const SequenceType& at(int k, int i) const { return types[k][i]; }
    SpaceTag tag(int sdim, int i, int k) const { return types[sdim][i].at(k); }
};

// Same space symbols at every simplex, degree-independent order for the
// trimmed family, P(k) = P_{r-k} for the full family (both admissible).
SequenceAssignment uniform_assignment(const Complex& c, Family family, int r);

// P_F <= P_T at every common degree for every subsimplex pair F <= T.
bool check_hierarchy(const SequenceAssignment& a);

// Every per-simplex sequence type passes check_admissible.
bool check_assignment_admissible(const SequenceAssignment& a);

enum class Variant { Plain, Ring, Underline, UnderlineRing };

// Basis of the chosen polynomial form space on the reference n-simplex,
// extracted from the canonical spanning set by exact elimination.
struct LocalBasis {
    int n = 0, k = 0;
    SpaceTag tag;
    Variant variant = Variant::Plain;
    std::vector<LocalForm> forms;
    // coordinate degree: every basis form homogenized to this degree
    int coord_degree = 0;

    int dim() const { return static_cast<int>(forms.size()); }
};

// Cached, thread-safe; returns an empty basis for empty spaces.
const LocalBasis& local_basis(int n, SpaceTag tag, int k, Variant variant);

// Closed-form dimension identities (0 for empty spaces).
long dim_full(int n, int k, int r);
long dim_trimmed(int n, int k, int r);
long dim_ring_full(int n, int k, int r);
long dim_ring_trimmed(int n, int k, int r);
long dim_space(int n, int k, SpaceTag tag, Variant variant);

// As printed in the source literature; disagrees with the rank oracle in
// small cases (see dim_ring_full), kept for the comparison tests.
long dim_ring_full_printed(int n, int k, int r);

} // namespace feec
