#include <feec/extension.hpp>

#include <feec/ratmat.hpp>

#include <stdexcept>

namespace feec {

namespace {

void check_iota(const std::vector<int>& iota, int m, int n)
{
    if (static_cast<int>(iota.size()) != m + 1)
        throw std::invalid_argument("face inclusion has wrong length");
    for (size_t i = 0; i < iota.size(); ++i) {
        if (iota[i] < 0 || iota[i] > n)
            throw std::invalid_argument("face inclusion out of range");
        if (i > 0 && iota[i] <= iota[i - 1])
            throw std::invalid_argument("face inclusion not strictly increasing");
    }
}

MultiIndex lift_multiindex(const MultiIndex& alpha, const std::vector<int>& iota, int n)
{
    MultiIndex out(n);
    for (int i = 0; i <= alpha.n(); ++i) out[iota[i]] = alpha[i];
    return out;
}

} // namespace

LocalForm ext_trimmed(const LocalForm& w, int r, const std::vector<int>& iota, int n)
{
    const int m = w.n(), k = w.k();
    check_iota(iota, m, n);
    LocalForm out(n, k);
    if (w.is_zero()) return out;
    if (r < 1) throw std::invalid_argument("trimmed extension needs order >= 1");

    // re-express w over the spanning set lambda^alpha phi_rho of the face
    SpanBuilder sb(form_coordinate_dim(m, k, r));
    std::vector<std::pair<MultiIndex, AltIndex>> accepted;
    for (const AltIndex& rho : enumerate_alternators(k + 1, 0, m)) {
        LocalForm phi = whitney_form(rho, m);
        for (const MultiIndex& alpha : enumerate_multiindices(r - 1, m)) {
            LocalForm el(m, k);
            for (const auto& [key, c] : phi.terms()) {
                LocalForm t(m, k);
                t.add_term(key.first + alpha, key.second.idx, c);
                el += t;
            }
            if (sb.insert(form_coordinates(el, r))) accepted.emplace_back(alpha, rho);
        }
    }
    auto coeffs = sb.coordinates(form_coordinates(w, r));
    if (!coeffs)
        throw std::invalid_argument("form is not in the trimmed space of the face");

    for (size_t j = 0; j < accepted.size(); ++j) {
        if ((*coeffs)[j] == 0) continue;
        const auto& [alpha, rho] = accepted[j];
        MultiIndex alpha_T = lift_multiindex(alpha, iota, n);
        std::vector<int> rho_T;
        for (int p = 0; p < rho.size(); ++p) rho_T.push_back(iota[rho[p]]);
        LocalForm phi_T = whitney_form(AltIndex(rho_T), n);
        for (const auto& [key, c] : phi_T.terms()) {
            LocalForm t(n, k);
            t.add_term(key.first + alpha_T, key.second.idx, c * (*coeffs)[j]);
            out += t;
        }
    }
    return out;
}

LocalForm ext_full(const LocalForm& w, int r, const std::vector<int>& iota, int n)
{
    const int m = w.n(), k = w.k();
    check_iota(iota, m, n);
    LocalForm out(n, k);
    if (w.is_zero()) return out;
    if (w.max_degree() > r)
        throw std::invalid_argument("form exceeds the stated order");

    if (r == 0) {
        for (const auto& [key, c] : w.terms()) {
            std::vector<int> sigma_T;
            for (int p = 0; p < key.second.size(); ++p) sigma_T.push_back(iota[key.second[p]]);
            LocalForm t(n, k);
            t.add_term(lift_multiindex(key.first, iota, n), sigma_T, c);
            out += t;
        }
        return out;
    }

    LocalForm h = w.homogenized(r);
    for (const auto& [key, c] : h.terms()) {
        const MultiIndex alpha_T = lift_multiindex(key.first, iota, n);
        // Psi_i = d(lambda_iota(sigma_i)) - (alpha_T(iota(sigma_i))/r) sum_j d(lambda_iota(j))
        LocalForm factor(n, 0);
        factor.add_term(MultiIndex(n), {}, c);
        LocalForm term = factor;
        for (int p = 0; p < key.second.size(); ++p) {
            int i = iota[key.second[p]];
            LocalForm psi(n, 1);
            psi.add_term(MultiIndex(n), {i}, 1);
            Rational coef = Rational(-alpha_T[i]) / r;
            if (coef != 0)
                for (int jj : iota) psi.add_term(MultiIndex(n), {jj}, coef);
            term = wedge(term, psi);
        }
        // attach the monomial
        LocalForm lifted(n, k);
        for (const auto& [tk, tc] : term.terms()) {
            LocalForm t(n, k);
            t.add_term(tk.first + alpha_T, tk.second.idx, tc);
            lifted += t;
        }
        out += lifted;
    }
    return out;
}

LocalForm ext_form(const LocalForm& w, SpaceTag tag, const std::vector<int>& iota, int n)
{
    return tag.family == Family::Trimmed ? ext_trimmed(w, tag.order, iota, n)
                                         : ext_full(w, tag.order, iota, n);
}

} // namespace feec
