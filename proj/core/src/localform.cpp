#include <feec/localform.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace feec {

void LocalForm::accumulate(const MultiIndex& alpha, const AltIndex& sigma, const Rational& c)
{
    if (c == 0) return;
    Key key{alpha, sigma};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void LocalForm::add_term(const MultiIndex& alpha, const std::vector<int>& sigma, const Rational& c)
{
    if (c == 0) return;
    // Sort with sign; repeated indices annihilate.
    std::vector<int> s = sigma;
    int sign = 1;
    for (size_t i = 1; i < s.size(); ++i)
        for (size_t j = i; j > 0 && s[j - 1] >= s[j]; --j) {
            if (s[j - 1] == s[j]) return;
            std::swap(s[j - 1], s[j]);
            sign = -sign;
        }
    if (!s.empty() && s.front() == 0) {
        // d(lambda_0) = -sum_{j>=1} d(lambda_j)
        for (int j = 1; j <= n_; ++j) {
            std::vector<int> t = s;
            t.front() = j;
            add_term(alpha, t, -Rational(sign) * c);
        }
        return;
    }
    accumulate(alpha, AltIndex(s), Rational(sign) * c);
}

LocalForm& LocalForm::operator+=(const LocalForm& o)
{
    if (o.n_ != n_ || o.k_ != k_)
        throw std::invalid_argument("LocalForm: mixing degrees or dimensions");
    for (const auto& [key, c] : o.terms_) accumulate(key.first, key.second, c);
    return *this;
}

LocalForm& LocalForm::operator-=(const LocalForm& o)
{
    if (o.n_ != n_ || o.k_ != k_)
        throw std::invalid_argument("LocalForm: mixing degrees or dimensions");
    for (const auto& [key, c] : o.terms_) accumulate(key.first, key.second, -c);
    return *this;
}

LocalForm LocalForm::operator+(const LocalForm& o) const
{
    LocalForm r = *this;
    r += o;
    return r;
}

LocalForm LocalForm::operator-(const LocalForm& o) const
{
    LocalForm r = *this;
    r -= o;
    return r;
}

LocalForm LocalForm::operator*(const Rational& c) const
{
    LocalForm r(n_, k_);
    if (c == 0) return r;
    for (const auto& [key, v] : terms_) r.terms_.emplace(key, v * c);
    return r;
}

bool LocalForm::operator==(const LocalForm& o) const
{
    return n_ == o.n_ && k_ == o.k_ && terms_ == o.terms_;
}

int LocalForm::max_degree() const
{
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first.degree());
    return d;
}

int LocalForm::min_degree() const
{
    int d = 0;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        int t = key.first.degree();
        d = first ? t : std::min(d, t);
        first = false;
    }
    return d;
}

LocalForm LocalForm::homogenized(int r) const
{
    LocalForm out(n_, k_);
    for (const auto& [key, c] : terms_) {
        int p = r - key.first.degree();
        if (p < 0) throw std::invalid_argument("homogenized: degree above target");
        if (p == 0) {
            out.accumulate(key.first, key.second, c);
            continue;
        }
        // (sum lambda)^p expanded multinomially.
        for (const MultiIndex& gamma : enumerate_multiindices(p, n_)) {
            Rational mult = factorial(p);
            for (int i = 0; i <= n_; ++i) mult /= factorial(gamma[i]);
            out.accumulate(key.first + gamma, key.second, c * mult);
        }
    }
    return out;
}

bool LocalForm::same_form(const LocalForm& o) const
{
    if (n_ != o.n_ || k_ != o.k_) return false;
    int r = std::max(max_degree(), o.max_degree());
    return homogenized(r) == o.homogenized(r);
}

LocalForm LocalForm::one(int n)
{
    LocalForm f(n, 0);
    f.accumulate(MultiIndex(n), AltIndex{}, 1);
    return f;
}

LocalForm LocalForm::lambda(int i, int n)
{
    LocalForm f(n, 0);
    f.accumulate(MultiIndex(n).plus(i), AltIndex{}, 1);
    return f;
}

LocalForm LocalForm::dlambda(int i, int n)
{
    LocalForm f(n, 1);
    f.add_term(MultiIndex(n), {i}, 1);
    return f;
}

LocalForm LocalForm::monomial(const MultiIndex& alpha, const AltIndex& sigma)
{
    LocalForm f(alpha.n(), sigma.size());
    f.add_term(alpha, sigma.idx, 1);
    return f;
}

LocalForm LocalForm::volume_form(int n)
{
    LocalForm f(n, n);
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i) full[i] = i + 1;
    f.add_term(MultiIndex(n), full, factorial(n));
    return f;
}

LocalForm exterior_derivative(const LocalForm& w)
{
    LocalForm out(w.n(), w.k() + 1);
    for (const auto& [key, c] : w.terms()) {
        const MultiIndex& alpha = key.first;
        for (int i = 0; i <= w.n(); ++i) {
            if (alpha[i] == 0) continue;
            std::vector<int> sigma;
            sigma.reserve(key.second.size() + 1);
            sigma.push_back(i);
            sigma.insert(sigma.end(), key.second.idx.begin(), key.second.idx.end());
            out.add_term(alpha.minus(i), sigma, c * alpha[i]);
        }
    }
    return out;
}

LocalForm wedge(const LocalForm& w, const LocalForm& e)
{
    if (w.n() != e.n()) throw std::invalid_argument("wedge: dimension mismatch");
    LocalForm out(w.n(), w.k() + e.k());
    for (const auto& [ka, ca] : w.terms())
        for (const auto& [kb, cb] : e.terms()) {
            std::vector<int> sigma = ka.second.idx;
            sigma.insert(sigma.end(), kb.second.idx.begin(), kb.second.idx.end());
            out.add_term(ka.first + kb.first, sigma, ca * cb);
        }
    return out;
}

LocalForm whitney_form(const AltIndex& rho, int n)
{
    int k = rho.size() - 1;
    LocalForm out(n, k);
    Rational sign = 1;
    for (int i = 0; i <= k; ++i) {
        out.add_term(MultiIndex(n).plus(rho[i]), rho.without(i).idx, sign);
        sign = -sign;
    }
    return out;
}

LocalForm trace(const LocalForm& w, const std::vector<int>& face)
{
    int m = static_cast<int>(face.size()) - 1;
    std::vector<int> pos(w.n() + 1, -1);
    for (int p = 0; p <= m; ++p) pos[face[p]] = p;
    LocalForm out(m, w.k());
    for (const auto& [key, c] : w.terms()) {
        const MultiIndex& alpha = key.first;
        bool dead = false;
        MultiIndex beta(m);
        for (int j = 0; j <= w.n(); ++j) {
            if (alpha[j] == 0) continue;
            if (pos[j] < 0) { dead = true; break; }
            beta[pos[j]] = alpha[j];
        }
        if (dead) continue;
        std::vector<int> sigma;
        sigma.reserve(key.second.size());
        for (int v : key.second.idx) {
            if (pos[v] < 0) { dead = true; break; }
            sigma.push_back(pos[v]);
        }
        if (dead) continue;
        out.add_term(beta, sigma, c);
    }
    return out;
}

Rational integrate_form_ref(const LocalForm& w)
{
    if (w.k() != w.n()) throw std::invalid_argument("integrate_form_ref: not top degree");
    Rational total = 0;
    for (const auto& [key, c] : w.terms()) {
        const MultiIndex& alpha = key.first;
        Rational v = c;
        for (int i = 0; i <= w.n(); ++i) v *= factorial(alpha[i]);
        v /= factorial(alpha.degree() + w.n());
        total += v;
    }
    return total;
}

int form_coordinate_dim(int n, int k, int r)
{
    return binomial_l(n + r, n) * binomial_l(n, k);
}

std::vector<Rational> form_coordinates(const LocalForm& w, int r)
{
    int n = w.n(), k = w.k();
    LocalForm h = w.homogenized(r);
    std::vector<MultiIndex> monos = enumerate_multiindices(r, n);
    std::vector<AltIndex> alts = enumerate_alternators(k, 1, n);
    std::map<MultiIndex, int> mono_ix;
    for (size_t i = 0; i < monos.size(); ++i) mono_ix[monos[i]] = static_cast<int>(i);
    std::map<AltIndex, int> alt_ix;
    for (size_t i = 0; i < alts.size(); ++i) alt_ix[alts[i]] = static_cast<int>(i);
    std::vector<Rational> out(monos.size() * alts.size(), Rational(0));
    for (const auto& [key, c] : h.terms())
        out[size_t(mono_ix.at(key.first)) * alts.size() + alt_ix.at(key.second)] = c;
    return out;
}

} // namespace feec
