#include "lhl/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <regex>
#include <set>

#include "lhl/linalg.hpp"

namespace lhl {

namespace {

void add_edge(IMat& a, int i, int j) {
    a(i, j) = -1;
    a(j, i) = -1;
}

// Dynkin diagram of one irreducible component, nodes offset..offset+n-1.
void fill_component(IMat& a, char family, int n, int off) {
    switch (family) {
    case 'A':
        if (n < 1) throw UnsupportedType("A_n needs n >= 1");
        for (int i = 0; i + 1 < n; ++i) add_edge(a, off + i, off + i + 1);
        break;
    case 'D':
        if (n < 4) throw UnsupportedType("D_n needs n >= 4");
        for (int i = 0; i + 2 < n; ++i) add_edge(a, off + i, off + i + 1);
        add_edge(a, off + n - 3, off + n - 1);
        break;
    case 'E':
        if (n < 6 || n > 8) throw UnsupportedType("E_n needs 6 <= n <= 8");
        add_edge(a, off + 0, off + 2);
        add_edge(a, off + 1, off + 3);
        for (int i = 2; i + 1 < n; ++i) add_edge(a, off + i, off + i + 1);
        break;
    default:
        throw UnsupportedType(std::string("unsupported family ") + family);
    }
}

std::string key_of(const IMat& m) {
    std::string k;
    k.reserve(static_cast<size_t>(m.size()) * 3);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        k += std::to_string(m.data()[i]);
        k += ',';
    }
    return k;
}

bool all_nonneg(const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}

}  // namespace

// ---- Realisation ----

Realisation Realisation::from_type(const std::string& type) {
    static const std::regex part("([ADE])([0-9]+)");
    std::vector<std::pair<char, int>> comps;
    size_t start = 0;
    while (start <= type.size()) {
        size_t x = type.find('x', start);
        std::string piece = type.substr(start, x == std::string::npos ? std::string::npos : x - start);
        std::smatch mt;
        if (!std::regex_match(piece, mt, part)) throw UnsupportedType("cannot parse type '" + type + "'");
        comps.emplace_back(mt[1].str()[0], std::stoi(mt[2].str()));
        if (x == std::string::npos) break;
        start = x + 1;
    }
    Realisation r;
    r.type_ = type;
    for (auto& [f, n] : comps) r.rank_ += n;
    if (r.rank_ > kMaxVars) throw UnsupportedType("rank above " + std::to_string(kMaxVars));
    r.cartan_ = IMat::Zero(r.rank_, r.rank_);
    int off = 0;
    for (auto& [f, n] : comps) {
        fill_component(r.cartan_, f, n, off);
        off += n;
    }
    for (int i = 0; i < r.rank_; ++i) {
        r.cartan_(i, i) = 2;
        r.letters_.push_back(simple_letter(i));
    }
    r.vars_ = root_vars(r.rank_);
    return r;
}

int Realisation::coxeter_m(int s, int t) const {
    if (s == t) return 1;
    return cartan_(s, t) == 0 ? 2 : 3;
}

int Realisation::letter_index(char c) const {
    for (int i = 0; i < rank_; ++i)
        if (letters_[i][0] == c) return i;
    throw ParseError(std::string("unknown generator '") + c + "' for type " + type_);
}

Rational Realisation::coroot_pairing(const Weight& lambda, int t) const {
    Rational v(0);
    for (int i = 0; i < rank_; ++i) v += lambda.at(i) * Rational(cartan_(i, t));
    return v;
}

Weight Realisation::rho() const {
    QMat at(rank_, rank_);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) at(i, j) = Rational(cartan_(j, i));
    QVec ones = QVec::Constant(rank_, Rational(1));
    auto x = solve(at, ones);
    if (!x) throw DegenerateMatrix("Cartan matrix is singular");
    return Weight(x->data(), x->data() + rank_);
}

Poly Realisation::weight_poly(const Weight& lambda) const { return Poly::linear(vars_, lambda); }

Weight Realisation::poly_weight(const Poly& p) const {
    if (p.total_degree() > 1 || !p.constant_term().is_zero())
        throw PreconditionFailed("not a linear form: " + p.str());
    Weight w(rank_);
    for (int i = 0; i < rank_; ++i) w[i] = p.coeff(Monomial::var(i));
    return w;
}

// ---- CoxeterGroup ----

CoxeterGroup::CoxeterGroup(Realisation r, int size_bound) : real_(std::move(r)) {
    const int n = real_.rank();
    std::vector<IMat> gens;
    for (int s = 0; s < n; ++s) {
        IMat m = IMat::Identity(n, n);
        for (int j = 0; j < n; ++j) m(s, j) -= real_.pairing(j, s);
        gens.push_back(m);
    }
    mats_.push_back(IMat::Identity(n, n));
    index_[key_of(mats_[0])] = 0;
    length_.push_back(0);
    word_.push_back({});
    // Breadth-first closure under right multiplication; the first word found
    // for each element is its lexicographically least reduced word.
    for (size_t head = 0; head < mats_.size(); ++head) {
        for (int s = 0; s < n; ++s) {
            IMat m = mats_[head] * gens[s];
            std::string k = key_of(m);
            if (index_.count(k)) continue;
            if (static_cast<int>(mats_.size()) >= size_bound)
                throw InfiniteGroup("closure exceeds bound " + std::to_string(size_bound));
            index_[k] = static_cast<int>(mats_.size());
            mats_.push_back(m);
            length_.push_back(length_[head] + 1);
            auto w = word_[head];
            w.push_back(s);
            word_.push_back(std::move(w));
        }
    }
    const int N = size();
    right_.assign(N, std::vector<int>(n));
    left_.assign(N, std::vector<int>(n));
    inverse_.resize(N);
    for (int w = 0; w < N; ++w) {
        for (int s = 0; s < n; ++s) {
            right_[w][s] = find(mats_[w] * gens[s]);
            left_[w][s] = find(gens[s] * mats_[w]);
        }
        if (length_[w] > length_[longest_]) longest_ = w;
    }
    for (int w = 0; w < N; ++w) {
        int v = 0;
        const auto& word = word_[w];
        for (auto it = word.rbegin(); it != word.rend(); ++it) v = right_[v][*it];
        inverse_[w] = v;
    }
    for (int s = 0; s < n; ++s) simple_.push_back(right_[0][s]);

    // Roots: orbit of the simple roots under the simple reflections.
    std::set<std::vector<int>> seen;
    std::deque<std::vector<int>> queue;
    for (int s = 0; s < n; ++s) {
        std::vector<int> e(n, 0);
        e[s] = 1;
        seen.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (int s = 0; s < n; ++s) {
            std::vector<int> u(n);
            for (int i = 0; i < n; ++i) {
                int acc = 0;
                for (int j = 0; j < n; ++j) acc += gens[s](i, j) * v[j];
                u[i] = acc;
            }
            if (seen.insert(u).second) queue.push_back(u);
        }
    }
    for (const auto& v : seen)
        if (all_nonneg(v)) roots_.push_back(Root{v});
    std::sort(roots_.begin(), roots_.end());
    for (const auto& beta : roots_) {
        IMat m = IMat::Identity(n, n);
        for (int j = 0; j < n; ++j) {
            int p = 0;
            for (int k = 0; k < n; ++k) p += beta.c[k] * real_.pairing(j, k);
            for (int i = 0; i < n; ++i) m(i, j) -= p * beta.c[i];
        }
        reflection_.push_back(find(m));
    }
}

int CoxeterGroup::find(const IMat& m) const {
    auto it = index_.find(key_of(m));
    if (it == index_.end()) throw PreconditionFailed("matrix is not a group element");
    return it->second;
}

int CoxeterGroup::mul(int a, int b) const {
    int v = a;
    for (int s : word_[b]) v = right_[v][s];
    return v;
}

int CoxeterGroup::from_word(const std::vector<int>& word) const {
    int v = 0;
    for (int s : word) {
        if (s < 0 || s >= rank()) throw ParseError("letter out of range");
        v = right_[v][s];
    }
    return v;
}

bool CoxeterGroup::is_reduced(const std::vector<int>& word) const {
    return length_[from_word(word)] == static_cast<int>(word.size());
}

std::vector<int> CoxeterGroup::parse_word(const std::string& text) const {
    std::vector<int> w;
    if (text == "id" || text == "e" || text == "1" || text.empty()) return w;
    for (char c : text) {
        if (c == ' ' || c == ',') continue;
        w.push_back(real_.letter_index(c));
    }
    return w;
}

int CoxeterGroup::parse_element(const std::string& text) const { return from_word(parse_word(text)); }

std::string CoxeterGroup::word_name(const std::vector<int>& word) const {
    if (word.empty()) return "id";
    std::string s;
    for (int i : word) s += real_.letter(i);
    return s;
}

std::string CoxeterGroup::name(int w) const { return word_name(word_[w]); }

bool CoxeterGroup::bruhat_leq(int x, int y) const {
    std::lock_guard<std::mutex> lock(bruhat_mutex_);
    auto it = below_.find(y);
    if (it == below_.end()) {
        // Subexpressions of the fixed reduced word of y.
        std::vector<bool> reach(size(), false);
        reach[0] = true;
        for (int s : word_[y]) {
            std::vector<bool> next = reach;
            for (int v = 0; v < size(); ++v)
                if (reach[v]) next[right_[v][s]] = true;
            reach.swap(next);
        }
        it = below_.emplace(y, std::move(reach)).first;
    }
    return it->second[x];
}

std::vector<std::vector<int>> CoxeterGroup::all_reduced_words(int w) const {
    if (w == 0) return {{}};
    std::vector<std::vector<int>> out;
    for (int s = 0; s < rank(); ++s) {
        int v = right_[w][s];
        if (length_[v] >= length_[w]) continue;
        for (auto word : all_reduced_words(v)) {
            word.push_back(s);
            out.push_back(std::move(word));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int CoxeterGroup::root_index(const Root& r) const {
    auto it = std::lower_bound(roots_.begin(), roots_.end(), r);
    if (it == roots_.end() || !(*it == r)) throw PreconditionFailed("not a positive root");
    return static_cast<int>(it - roots_.begin());
}

Root CoxeterGroup::apply(int w, const Root& r) const {
    const IMat& m = mats_[w];
    Root out{std::vector<int>(rank(), 0)};
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) out.c[i] += m(i, j) * r.c[j];
    return out;
}

int CoxeterGroup::inversion_length(int w) const {
    int n = 0;
    for (const auto& beta : roots_)
        if (!all_nonneg(apply(w, beta).c)) ++n;
    return n;
}

std::vector<std::pair<int, int>> CoxeterGroup::left_inversions(int y) const {
    std::vector<std::pair<int, int>> out;
    int yi = inverse_[y];
    for (int i = 0; i < static_cast<int>(roots_.size()); ++i)
        if (!all_nonneg(apply(yi, roots_[i]).c)) out.emplace_back(reflection_[i], i);
    return out;
}

Weight CoxeterGroup::act(int w, const Weight& lambda) const {
    const IMat& m = mats_[w];
    Weight out(rank(), Rational(0));
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j)
            if (m(i, j)) out[i] += Rational(m(i, j)) * lambda.at(j);
    return out;
}

Poly CoxeterGroup::act(int w, const Poly& f) const {
    if (w == 0 || f.is_constant()) return f;
    const IMat& m = mats_[w];
    std::vector<Poly> images;
    for (int j = 0; j < rank(); ++j) {
        std::vector<int> col(rank());
        for (int i = 0; i < rank(); ++i) col[i] = m(i, j);
        images.push_back(Poly::linear(real_.vars(), col));
    }
    return f.substitute(images);
}

RatFunc CoxeterGroup::act(int w, const RatFunc& f) const {
    if (w == 0) return f;
    std::map<Root, int> den;
    Poly num = act(w, f.num());
    for (const auto& [r, m] : f.den()) {
        Root img = apply(w, r);
        if (img.normalize() < 0 && (m % 2)) num = -num;
        den[img] += m;
    }
    return RatFunc(std::move(num), std::move(den));
}

Root CoxeterGroup::root_image_form(int w, int s) const {
    Root e{std::vector<int>(rank(), 0)};
    e.c[s] = 1;
    return apply(w, e);
}

Poly divided_difference(const CoxeterGroup& W, int s, const Poly& f) {
    Poly diff = f - W.act(W.simple(s), f);
    if (diff.is_zero()) return Poly(W.realisation().vars(), Rational(0));
    auto q = divide_exact(diff, W.realisation().alpha(s));
    if (!q) throw InexactDivision("divided difference left a remainder");
    return *q;
}

RhoWitness refine_bruhat_by_rho(const CoxeterGroup& W, int x, int w, const Weight& rho,
                                const std::vector<Rational>& coweight) {
    auto value = [&](int v) {
        Weight img = W.act(v, rho);
        Rational s(0);
        for (int i = 0; i < W.rank(); ++i) s += img[i] * coweight.at(i);
        return s;
    };
    RhoWitness out{value(x), value(w), true};
    if (x == w)
        out.consistent = out.x_value == out.w_value;
    else if (W.bruhat_leq(x, w))
        out.consistent = out.x_value > out.w_value;
    return out;
}

}  // namespace lhl
