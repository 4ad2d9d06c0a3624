#include "lhl/jantzen.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "lhl/errors.hpp"

namespace lhl {

namespace {

using Mono = std::vector<int>;
using Element = std::map<Mono, Poly>;

void add(Element& v, const Mono& m, const Poly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = v.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

void add_scaled(Element& v, const Element& w, const Poly& c) {
    for (const auto& [m, p] : w) add(v, m, p * c);
}

// U(n^-) v over the universal highest weight, by commutator reduction.
class VermaActor {
public:
    VermaActor(const SlnRootData& rd, const PbwOrder& order) : rd_(rd), key_(order.key) {
        for (int a = 0; a < rd.n; ++a) {
            Poly l(rd.cartan_vars, Rational(0));
            for (int i = a; i < rd.rank(); ++i) l += Poly::var(rd.cartan_vars, i);
            highest_.push_back(l);
        }
    }

    Poly one() const { return Poly(rd_.cartan_vars, Rational(1)); }

    // f_r * mono, r lowering.
    const Element& lower_mul(int r, const Mono& mono) {
        auto k = std::make_pair(r, mono);
        if (auto it = lower_memo_.find(k); it != lower_memo_.end()) return it->second;
        Element out;
        if (mono.empty() || key_[r] <= key_[mono.front()]) {
            Mono m{r};
            m.insert(m.end(), mono.begin(), mono.end());
            add(out, m, one());
        } else {
            const int m0 = mono.front();
            const Mono rest(mono.begin() + 1, mono.end());
            for (const auto& [m, c] : Element(lower_mul(r, rest))) add_scaled(out, Element(lower_mul(m0, m)), c);
            // [E_ji, E_lk] = d_il E_jk - d_kj E_li
            auto [i, j] = rd_.roots[r];
            auto [kk, l] = rd_.roots[m0];
            if (i == l) add_scaled(out, Element(lower_mul(rd_.root_index(kk, j), rest)), one());
            if (kk == j) add_scaled(out, Element(lower_mul(rd_.root_index(i, l), rest)), -one());
        }
        return lower_memo_.emplace(k, std::move(out)).first->second;
    }

    // E_ab * mono.
    const Element& act(int a, int b, const Mono& mono) {
        auto k = std::make_tuple(a, b, mono);
        if (auto it = act_memo_.find(k); it != act_memo_.end()) return it->second;
        Element out;
        if (a > b) {
            out = lower_mul(rd_.root_index(b, a), mono);
        } else if (a == b) {
            int shift = 0;
            for (int r : mono) shift += (rd_.roots[r].second == a) - (rd_.roots[r].first == a);
            add(out, mono, highest_[a] + Poly(rd_.cartan_vars, Rational(shift)));
        } else if (!mono.empty()) {
            const int m0 = mono.front();
            const Mono rest(mono.begin() + 1, mono.end());
            for (const auto& [m, c] : Element(act(a, b, rest))) add_scaled(out, Element(lower_mul(m0, m)), c);
            // [E_ab, E_lk] = d_bl E_ak - d_ka E_lb
            auto [kk, l] = rd_.roots[m0];
            if (b == l) add_scaled(out, Element(act(a, kk, rest)), one());
            if (kk == a) add_scaled(out, Element(act(l, b, rest)), -one());
        }
        return act_memo_.emplace(k, std::move(out)).first->second;
    }

    Element raise(int r, const Element& v) {
        Element out;
        auto [i, j] = rd_.roots[r];
        for (const auto& [m, c] : v) add_scaled(out, Element(act(i, j, m)), c);
        return out;
    }

private:
    const SlnRootData& rd_;
    std::vector<int> key_;
    std::vector<Poly> highest_;  // Lambda(E_aa), normalised by Lambda(E_nn) = 0
    std::map<std::pair<int, Mono>, Element> lower_memo_;
    std::map<std::tuple<int, int, Mono>, Element> act_memo_;
};

UniPoly truncate(const UniPoly& p, int n) { return p.truncated(n); }

}  // namespace

int SlnRootData::root_index(int i, int j) const {
    for (int r = 0; r < size(); ++r)
        if (roots[r] == std::make_pair(i, j)) return r;
    throw PreconditionFailed("no positive root e_" + std::to_string(i) + " - e_" + std::to_string(j));
}

Rational SlnRootData::coroot_value(const std::vector<Rational>& simple_values, int r) const {
    Rational v(0);
    for (int i = roots[r].first; i < roots[r].second; ++i) v += simple_values[i];
    return v;
}

SlnRootData sl_root_data(int n) {
    if (n < 2 || n > kMaxVars + 1) throw UnsupportedType("sl_" + std::to_string(n));
    SlnRootData rd;
    rd.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rd.roots.emplace_back(i, j);
    std::stable_sort(rd.roots.begin(), rd.roots.end(), [](auto a, auto b) {
        return a.second - a.first < b.second - b.first;
    });
    for (auto [i, j] : rd.roots) {
        std::vector<int> c(n - 1, 0);
        for (int k = i; k < j; ++k) c[k] = 1;
        rd.coords.push_back(c);
    }
    std::vector<std::string> names;
    for (int i = 0; i < n - 1; ++i) names.push_back("h_" + simple_letter(i));
    rd.cartan_vars = named_vars(names);
    return rd;
}

SlnRootData sl_root_data(const std::string& type) {
    if (type.size() < 2 || type[0] != 'A' || !std::all_of(type.begin() + 1, type.end(), ::isdigit))
        throw UnsupportedType("Shapovalov forms need type A, got " + type);
    return sl_root_data(std::stoi(type.substr(1)) + 1);
}

PbwOrder default_order(const SlnRootData& rd) {
    PbwOrder o;
    for (int r = 0; r < rd.size(); ++r) o.key.push_back(r);
    return o;
}

PbwOrder reversed_order(const SlnRootData& rd) {
    PbwOrder o;
    for (int r = 0; r < rd.size(); ++r) o.key.push_back(rd.size() - 1 - r);
    return o;
}

std::uint64_t kostant_dimension(const std::vector<int>& nu, const SlnRootData& rd) {
    if (static_cast<int>(nu.size()) != rd.rank()) throw PreconditionFailed("weight has the wrong rank");
    if (std::any_of(nu.begin(), nu.end(), [](int c) { return c < 0; }))
        throw PreconditionFailed("nu must be a non-negative combination of simple roots");
    std::map<std::pair<std::vector<int>, int>, std::uint64_t> memo;
    std::function<std::uint64_t(std::vector<int>, int)> count = [&](std::vector<int> v, int r) -> std::uint64_t {
        if (std::all_of(v.begin(), v.end(), [](int c) { return c == 0; })) return 1;
        if (r == rd.size()) return 0;
        auto k = std::make_pair(v, r);
        if (auto it = memo.find(k); it != memo.end()) return it->second;
        std::uint64_t total = 0;
        for (;;) {
            total += count(v, r + 1);
            bool fits = true;
            for (int i = 0; i < rd.rank(); ++i) fits &= v[i] >= rd.coords[r][i];
            if (!fits) break;
            for (int i = 0; i < rd.rank(); ++i) v[i] -= rd.coords[r][i];
        }
        return memo[k] = total;
    };
    return count(nu, 0);
}

std::vector<std::vector<int>> kostant_partitions(const std::vector<int>& nu, const SlnRootData& rd,
                                                 const PbwOrder& order) {
    kostant_dimension(nu, rd);
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& v, int r) {
        if (std::all_of(v.begin(), v.end(), [](int c) { return c == 0; })) {
            out.push_back(cur);
            return;
        }
        if (r == rd.size()) return;
        rec(v, r + 1);
        int taken = 0;
        for (;;) {
            bool fits = true;
            for (int i = 0; i < rd.rank(); ++i) fits &= v[i] >= rd.coords[r][i];
            if (!fits) break;
            for (int i = 0; i < rd.rank(); ++i) v[i] -= rd.coords[r][i];
            cur.push_back(r);
            ++taken;
            rec(v, r + 1);
        }
        for (int t = 0; t < taken; ++t) {
            cur.pop_back();
            for (int i = 0; i < rd.rank(); ++i) v[i] += rd.coords[r][i];
        }
    };
    std::vector<int> v = nu;
    rec(v, 0);
    for (auto& m : out)
        std::sort(m.begin(), m.end(), [&](int a, int b) { return order.key[a] < order.key[b]; });
    auto keys = [&](const std::vector<int>& m) {
        std::vector<int> k;
        for (int r : m) k.push_back(order.key[r]);
        return k;
    };
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return keys(a) > keys(b); });
    return out;
}

ShapovalovMatrix shapovalov_universal(const std::vector<int>& nu, const SlnRootData& rd, const PbwOrder& order,
                                      int max_dim) {
    const std::uint64_t dim = kostant_dimension(nu, rd);
    if (dim > static_cast<std::uint64_t>(max_dim))
        throw DimensionBound("weight space of dimension " + std::to_string(dim) + " exceeds " +
                             std::to_string(max_dim));
    ShapovalovMatrix m;
    m.nu = nu;
    m.basis = kostant_partitions(nu, rd, order);
    const int n = m.dim();
    if (n != static_cast<int>(dim)) throw InternalRankMismatch("Kostant enumeration disagrees with the count");
    VermaActor verma(rd, order);
    m.entries = Mat<Poly>(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            // <f_A v, f_B v> = HC(omega(f_A) f_B), omega(f_A) = e_{ak} ... e_{a1}.
            Element v;
            add(v, m.basis[b], verma.one());
            for (int r : m.basis[a]) v = verma.raise(r, v);
            auto it = v.find({});
            m.entries(a, b) = it == v.end() ? Poly(rd.cartan_vars, Rational(0)) : it->second;
            for (const auto& [mono, c] : v)
                if (!mono.empty()) throw InternalRankMismatch("raising operators left a nonzero lower term");
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b)
            if (m.entries(a, b) != m.entries(b, a)) throw InternalRankMismatch("Shapovalov matrix not symmetric");
    return m;
}

ShapovalovMatrix shapovalov_universal(const std::vector<int>& nu, const SlnRootData& rd, int max_dim) {
    return shapovalov_universal(nu, rd, default_order(rd), max_dim);
}

Mat<UniPoly> specialize_cartan(const Mat<Poly>& m, const std::vector<Rational>& lambda,
                               const std::vector<Rational>& gamma) {
    if (lambda.size() != gamma.size()) throw PreconditionFailed("lambda and gamma have different ranks");
    std::vector<UniPoly> lin;
    for (size_t i = 0; i < lambda.size(); ++i) lin.emplace_back(std::vector<Rational>{lambda[i], gamma[i]});
    Mat<UniPoly> out(m.rows(), m.cols());
    for (int a = 0; a < m.rows(); ++a)
        for (int b = 0; b < m.cols(); ++b) {
            const Poly& p = m(a, b);
            if (p.nvars() > static_cast<int>(lin.size())) throw VariableMismatch("Cartan rank mismatch");
            UniPoly acc;
            for (const auto& [mono, c] : p.terms()) {
                UniPoly t(c);
                for (int i = 0; i < p.nvars(); ++i)
                    for (int e = 0; e < mono.exponent(i); ++e) t *= lin[i];
                acc += t;
            }
            out(a, b) = acc;
        }
    return out;
}

std::vector<int> local_smith_valuations(const Mat<UniPoly>& m) {
    const int n = static_cast<int>(m.rows());
    if (n != m.cols()) throw PreconditionFailed("square matrix expected");
    if (n == 0) return {};
    const UniPoly det = determinant(m);
    if (det.is_zero()) throw SingularSpecialization("specialized determinant vanishes identically");
    const int bound = det.valuation() + 1;
    std::vector<std::vector<UniPoly>> a(n, std::vector<UniPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = truncate(m(i, j), bound);
    std::vector<int> rows(n), cols(n), out;
    for (int i = 0; i < n; ++i) rows[i] = cols[i] = i;
    while (!rows.empty()) {
        int best = -1, pr = -1, pc = -1;
        for (int r : rows)
            for (int c : cols) {
                const int v = a[r][c].valuation();
                if (v >= 0 && (best < 0 || v < best)) best = v, pr = r, pc = c;
            }
        if (best < 0) throw InternalRankMismatch("local Smith reduction ran out of pivots");
        const UniPoly unit = a[pr][pc].shifted_down(best);
        for (int r : rows) {
            if (r == pr || a[r][pc].is_zero()) continue;
            const UniPoly f = a[r][pc].shifted_down(best);
            for (int c : cols) a[r][c] = truncate(unit * a[r][c] - f * a[pr][c], bound);
        }
        out.push_back(best);
        rows.erase(std::find(rows.begin(), rows.end(), pr));
        cols.erase(std::find(cols.begin(), cols.end(), pc));
    }
    std::sort(out.begin(), out.end());
    int total = 0;
    for (int v : out) total += v;
    if (total != det.valuation()) throw InternalRankMismatch("elementary divisors disagree with the determinant");
    return out;
}

JantzenLayers jantzen_layers(const ShapovalovMatrix& m, const std::vector<Rational>& lambda,
                             const std::vector<Rational>& gamma) {
    JantzenLayers out;
    out.lambda = lambda;
    out.gamma = gamma;
    out.valuations = local_smith_valuations(specialize_cartan(m.entries, lambda, gamma));
    for (int v : out.valuations) {
        if (static_cast<int>(out.layers.size()) <= v) out.layers.resize(v + 1, 0);
        ++out.layers[v];
        out.det_valuation += v;
    }
    return out;
}

bool is_regular(const SlnRootData& rd, const std::vector<Rational>& gamma) {
    for (int r = 0; r < rd.size(); ++r)
        if (rd.coroot_value(gamma, r).is_zero()) return false;
    return true;
}

Weight dot_action(const CoxeterGroup& W, int x, const Weight& lambda) {
    const Realisation& R = W.realisation();
    const Poly rho = R.weight_poly(R.rho());
    return R.poly_weight(W.act(x, R.weight_poly(lambda) + rho) - rho);
}

std::vector<Rational> coroot_values(const Realisation& R, const Weight& lambda) {
    std::vector<Rational> out;
    for (int t = 0; t < R.rank(); ++t) out.push_back(R.coroot_pairing(lambda, t));
    return out;
}

}  // namespace lhl
