#include "lhl/p1sheaf.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lhl/errors.hpp"

namespace lhl {

namespace {

bool same_parity(int a, int b) { return ((a - b) % 2 + 2) % 2 == 0; }

std::vector<int> sorted_order(const std::vector<int>& deg) {
    std::vector<int> idx(deg.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return deg[a] < deg[b]; });
    return idx;
}

QMat columns(const QMat& m, const std::vector<int>& idx) {
    QMat out(m.rows(), idx.size());
    for (size_t k = 0; k < idx.size(); ++k) out.col(k) = m.col(idx[k]);
    return out;
}

QMat rows(const QMat& m, const std::vector<int>& idx) {
    QMat out(idx.size(), m.cols());
    for (size_t k = 0; k < idx.size(); ++k) out.row(k) = m.row(idx[k]);
    return out;
}

QMat block_diag(const QMat& a, const QMat& b) {
    QMat out = QMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

template <class T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool graded_map(const QMat& m, const std::vector<int>& target, const std::vector<int>& source) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && target[i] != source[j]) return false;
    return true;
}

bool in_span(const QMat& span, const QVec& v) {
    QMat both(span.rows(), span.cols() + 1);
    both << span, v;
    return rank(both) == rank(span);
}

Rational sigma(const Poly& p, const std::vector<Rational>& coweight) {
    if (p.is_zero()) return Rational(0);
    ZTerm t = RatFunc(p).specialize(coweight);
    return t.coef;
}

// Sign of a definite form, 0 if indefinite or empty.
int definite_sign(const QMat& form) {
    if (form.rows() == 0) return 0;
    auto in = inertia(form);
    if (in.plus == form.rows()) return 1;
    if (in.minus == form.rows()) return -1;
    return 0;
}

bool satisfies_hr(const SpecializedLattice& lat) {
    if (lat.rank() == 0) return true;
    try {
        return check_hodge_riemann(lat, 0).hr;
    } catch (const Error&) {
        return false;
    }
}

// Global sections of degree <= d, or of degree == d (mod 2) and <= d.
std::vector<int> sections_upto(const P1Sheaf& m, int d, bool parity) {
    std::vector<int> out;
    for (int k = 0; k < m.sections(); ++k)
        if (m.section_degrees[k] <= d && (!parity || same_parity(m.section_degrees[k], d))) out.push_back(k);
    return out;
}

void require_generated_nonpositive(const P1Sheaf& m) {
    if (m.sections() > 0 && m.section_degrees.back() > 0)
        throw PreconditionFailed("global sections not generated in degrees <= 0");
}

Rational sample_point(const std::vector<AmpleDegree>& degrees) {
    auto is_root = [&](const Rational& c) {
        return std::any_of(degrees.begin(), degrees.end(),
                           [&](const AmpleDegree& a) { return !a.det.is_zero() && a.det(c).is_zero(); });
    };
    Rational c(2);
    while (is_root(c)) c = (c + Rational(1)) / Rational(2);
    return c;
}

}  // namespace

SpecializedLattice P1Sheaf::lattice0() const { return make_lattice(deg0, form0); }
SpecializedLattice P1Sheaf::latticeinf() const { return make_lattice(deginf, forminf); }

QMat P1Sheaf::section_form(const Rational& c0, const Rational& cinf) const {
    QMat out = QMat(sec0.transpose() * form0 * sec0) * c0;
    out += QMat(secinf.transpose() * forminf * secinf) * cinf;
    return out;
}

SpecializedLattice P1Sheaf::global_sections() const {
    return make_lattice(section_degrees, section_form(Rational(1), Rational(1)));
}

P1Sheaf make_p1sheaf(std::vector<int> deg0, std::vector<int> deginf, std::vector<int> degc, QMat rho0,
                     QMat rhoinf, QMat form0, QMat forminf) {
    const int r0 = static_cast<int>(deg0.size()), ri = static_cast<int>(deginf.size());
    const int rc = static_cast<int>(degc.size());
    if (rho0.rows() != rc || rho0.cols() != r0 || rhoinf.rows() != rc || rhoinf.cols() != ri)
        throw NotP1Sheaf("restriction maps have the wrong shape");
    if (!std::is_sorted(degc.begin(), degc.end())) throw NotP1Sheaf("M_C* degrees not sorted");
    if (!graded_map(rho0, degc, deg0) || !graded_map(rhoinf, degc, deginf))
        throw NotP1Sheaf("restriction maps are not homogeneous");
    if (rank(rho0) != rc) throw NotP1Sheaf("rho_0 is not surjective");
    if (ri != rc || rank(rhoinf) != rc) throw NotP1Sheaf("rho_inf is not the quotient by z");

    P1Sheaf m;
    m.deg0 = std::move(deg0);
    m.deginf = std::move(deginf);
    m.degc = std::move(degc);
    m.rho0 = std::move(rho0);
    m.rhoinf = std::move(rhoinf);
    m.form0 = std::move(form0);
    m.forminf = std::move(forminf);
    for (const auto& lat : {m.lattice0(), m.latticeinf()})
        if (lat.rank() > 0 && determinant(lat.coef).is_zero()) throw NotP1Sheaf("degenerate polarisation");

    // (e_i, lift of rho0 e_i) in degree deg0[i] and (0, z f_j) in degree deginf[j] + 2.
    const QMat lift = ri ? QMat(inverse(m.rhoinf) * m.rho0) : QMat(0, r0);
    std::vector<int> deg;
    QMat s0 = QMat::Zero(r0, r0 + ri), si = QMat::Zero(ri, r0 + ri);
    for (int i = 0; i < r0; ++i) {
        s0(i, i) = Rational(1);
        si.col(i) = lift.col(i);
        deg.push_back(m.deg0[i]);
    }
    for (int j = 0; j < ri; ++j) {
        si(j, r0 + j) = Rational(1);
        deg.push_back(m.deginf[j] + 2);
    }
    auto order = sorted_order(deg);
    for (int k : order) m.section_degrees.push_back(deg[k]);
    m.sec0 = columns(s0, order);
    m.secinf = columns(si, order);
    return m;
}

P1Sheaf skyscraper(std::vector<int> deg, QMat form) {
    const int n = static_cast<int>(deg.size());
    return make_p1sheaf(std::move(deg), {}, {}, QMat(0, n), QMat(0, 0), std::move(form), QMat(0, 0));
}

P1Sheaf constant_sheaf(std::vector<int> deg, QMat form0, QMat forminf) {
    const int n = static_cast<int>(deg.size());
    QMat id = QMat::Identity(n, n);
    return make_p1sheaf(deg, deg, deg, id, id, std::move(form0), std::move(forminf));
}

P1Sheaf direct_sum(const P1Sheaf& a, const P1Sheaf& b) {
    auto d0 = concat(a.deg0, b.deg0), di = concat(a.deginf, b.deginf), dc = concat(a.degc, b.degc);
    auto o0 = sorted_order(d0), oi = sorted_order(di), oc = sorted_order(dc);
    auto pick = [](const std::vector<int>& d, const std::vector<int>& o) {
        std::vector<int> out;
        for (int k : o) out.push_back(d[k]);
        return out;
    };
    QMat r0 = columns(rows(block_diag(a.rho0, b.rho0), oc), o0);
    QMat ri = columns(rows(block_diag(a.rhoinf, b.rhoinf), oc), oi);
    QMat f0 = columns(rows(block_diag(a.form0, b.form0), o0), o0);
    QMat fi = columns(rows(block_diag(a.forminf, b.forminf), oi), oi);
    P1Sheaf out = make_p1sheaf(pick(d0, o0), pick(di, oi), pick(dc, oc), r0, ri, f0, fi);
    out.x = a.x;
    out.xs = a.xs;
    return out;
}

P1Sheaf scaled(P1Sheaf m, const Rational& w) {
    m.form0 *= w;
    m.forminf *= w;
    return m;
}

std::pair<std::vector<Poly>, std::vector<Poly>> stalk_components(const CoxeterGroup& W, const BSStalks& stalks,
                                                                 const GradedStalk& next, int x, int s,
                                                                 const std::vector<Poly>& coords) {
    const GradedStalk& A = stalks.at(x);
    const GradedStalk& B = stalks.at(W.rmul(x, s));
    const int len = static_cast<int>(stalks.word().size());
    const int half = 1 << len;
    const Poly xa = W.root_image(x, s);
    const VarsPtr& vars = W.realisation().vars();
    std::vector<Poly> a(A.rank(), Poly(vars, Rational(0))), b(B.rank(), Poly(vars, Rational(0)));
    for (int g = 0; g < next.rank(); ++g) {
        if (coords[g].is_zero()) continue;
        const int mask = next.generators[g];
        const int pi = mask & (half - 1);
        const bool top = mask >= half;
        for (int i = 0; i < A.rank(); ++i)
            if (!A.stalk_map(i, pi).is_zero()) a[i] += coords[g] * (top ? xa * A.stalk_map(i, pi) : A.stalk_map(i, pi));
        if (!top)
            for (int j = 0; j < B.rank(); ++j)
                if (!B.stalk_map(j, pi).is_zero()) b[j] += coords[g] * B.stalk_map(j, pi);
    }
    return {a, b};
}

P1Sheaf build_from_stalks(const CoxeterGroup& W, const BSStalks& stalks, int x, int s,
                          const std::vector<Rational>& coweight) {
    const int xs = W.rmul(x, s);
    if (W.length(xs) < W.length(x)) throw PreconditionFailed("build_from_stalks needs x < xs");
    const Rational kappa = sigma(W.root_image(x, s), coweight);
    if (kappa.is_zero()) throw DenominatorVanishes("sigma(x(alpha_s)) = 0");

    const GradedStalk& A = stalks.at(x);
    const GradedStalk& B = stalks.at(xs);
    const GradedStalk next = stalks.extended_at(x, s);
    const SpecializedLattice la = specialize_stalk(A, coweight), lb = specialize_stalk(B, coweight);
    const SpecializedLattice lnext = specialize_stalk(next, coweight);

    std::vector<int> deg0, deginf;
    for (int d : la.degrees) deg0.push_back(d - 1);
    for (int d : lb.degrees) deginf.push_back(d - 1);
    const int r0 = A.rank(), ri = B.rank(), n = next.rank();

    // Specialized generators of A (x) (B B(s))_x inside M_0 + M_inf.
    QMat gen(r0 + ri, n);
    const VarsPtr& vars = W.realisation().vars();
    for (int g = 0; g < n; ++g) {
        std::vector<Poly> unit(n, Poly(vars, Rational(0)));
        unit[g] = Poly(vars, Rational(1));
        auto [a, b] = stalk_components(W, stalks, next, x, s, unit);
        auto put = [&](const Poly& p, int row, int d) {
            gen(row, g) = Rational(0);
            if (p.is_zero()) return;
            ZTerm t = RatFunc(p).specialize(coweight);
            if (!t.is_zero() && 2 * t.exp != next.degrees[g] - d)
                throw NotP1Sheaf("global section generator is not homogeneous");
            gen(row, g) = t.coef;
        };
        for (int i = 0; i < r0; ++i) put(a[i], i, deg0[i]);
        for (int j = 0; j < ri; ++j) put(b[j], r0 + j, deginf[j]);
    }
    const std::vector<int> ambient = concat(deg0, deginf);
    auto generators_upto = [&](int d) {
        std::vector<int> idx;
        for (int g = 0; g < n; ++g)
            if (next.degrees[g] <= d && same_parity(next.degrees[g], d)) idx.push_back(g);
        return columns(gen, idx);
    };

    // z (M_0 + M_inf) lies in the image, so M_C* is the cokernel mod z.
    for (int k = 0; k < r0 + ri; ++k) {
        QVec e = QVec::Zero(r0 + ri);
        e(k) = Rational(1);
        if (!in_span(generators_upto(ambient[k] + 2), e)) throw NotP1Sheaf("M_C* is not killed by z");
    }
    std::vector<int> degc;
    std::vector<QVec> rows0, rowsi;
    for (int d : std::set<int>(ambient.begin(), ambient.end())) {
        std::vector<int> unit;
        for (int k = 0; k < r0 + ri; ++k)
            if (ambient[k] == d) unit.push_back(k);
        std::vector<int> top;
        for (int g = 0; g < n; ++g)
            if (next.degrees[g] == d) top.push_back(g);
        QMat t = rows(columns(gen, top), unit);
        QMat quotient = nullspace(t.transpose()).transpose();
        for (Eigen::Index r = 0; r < quotient.rows(); ++r) {
            degc.push_back(d);
            QVec v0 = QVec::Zero(r0), vi = QVec::Zero(ri);
            for (size_t u = 0; u < unit.size(); ++u) {
                if (unit[u] < r0) v0(unit[u]) = quotient(r, u);
                else vi(unit[u] - r0) = -quotient(r, u);
            }
            rows0.push_back(v0);
            rowsi.push_back(vi);
        }
    }
    QMat rho0(degc.size(), r0), rhoinf(degc.size(), ri);
    for (size_t r = 0; r < degc.size(); ++r) {
        rho0.row(r) = rows0[r].transpose();
        rhoinf.row(r) = rowsi[r].transpose();
    }
    P1Sheaf m = make_p1sheaf(deg0, deginf, degc, rho0, rhoinf, la.coef / kappa, lb.coef / kappa);
    m.x = x;
    m.xs = xs;

    // The push-out recovers exactly the image of (B B(s))_x.
    std::vector<int> sorted_next = next.degrees;
    if (sorted_next != m.section_degrees) throw NotP1Sheaf("graded rank of global sections is not p0 + v^2 pinf");
    QMat canonical(r0 + ri, m.sections());
    canonical << m.sec0, m.secinf;
    for (int k = 0; k < m.sections(); ++k)
        if (!in_span(generators_upto(m.section_degrees[k]), canonical.col(k)))
            throw NotP1Sheaf("global sections differ from (B B(s))_x");
    QMat g0 = gen.topRows(r0), gi = gen.bottomRows(ri);
    QMat pulled = QMat(g0.transpose() * m.form0 * g0) + QMat(gi.transpose() * m.forminf * gi);
    if (pulled != lnext.coef) throw NotP1Sheaf("global sections are not isometric to (B B(s))_x");
    return m;
}

GammaReport check_gamma(const P1Sheaf& m, const Rational& c) {
    require_generated_nonpositive(m);
    GammaReport rep;
    rep.c = c;
    rep.hl = true;
    if (m.sections() == 0) {
        rep.hr = true;
        return rep;
    }
    const QMat g0 = m.section_form(Rational(1), Rational(0)), gi = m.section_form(Rational(0), Rational(1));
    auto lefschetz = [&](int d, const std::vector<int>& idx) {
        QMat f = QMat(g0 * c.pow(-d)) + gi;
        return submatrix(f, idx);
    };
    const int lo = m.section_degrees.front();
    for (int d = lo; d <= 0; ++d)
        if (determinant(lefschetz(d, sections_upto(m, d, true))).is_zero()) rep.hl = false;
    std::vector<int> all = concat(m.deg0, m.deginf);
    bool parity = std::all_of(all.begin(), all.end(), [&](int d) { return same_parity(d, all.front()); });
    if (!rep.hl || !parity) return rep;
    std::map<int, int> count;
    for (int d : m.section_degrees) ++count[d];
    rep.hr = true;
    int cumulative = 0;
    for (int i = 0, d = lo; d <= 0; ++i, d += 2) {
        rep.levels.push_back(d);
        auto sig = signature(lefschetz(d, sections_upto(m, d, true)));
        rep.signatures.push_back(sig);
        cumulative += (i % 2 ? -1 : 1) * count[d];
        if (i == 0) rep.epsilon = sig.first > 0 ? 1 : -1;
        if (sig.first - sig.second != rep.epsilon * cumulative) rep.hr = false;
    }
    return rep;
}

AmpleReport check_HL_ample(const P1Sheaf& m) {
    require_generated_nonpositive(m);
    AmpleReport rep;
    rep.hl = true;
    if (m.sections() == 0) return rep;
    const QMat g0 = m.section_form(Rational(1), Rational(0)), gi = m.section_form(Rational(0), Rational(1));
    for (int d = m.section_degrees.front(); d <= 0; ++d) {
        auto idx = sections_upto(m, d, true);
        const int n = static_cast<int>(idx.size());
        Mat<UniPoly> f(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                f(a, b) = UniPoly::monomial(g0(idx[a], idx[b]), -d) + UniPoly(gi(idx[a], idx[b]));
        AmpleDegree ad{d, determinant(f), 0};
        ad.roots_above_one = ad.det.is_zero() ? -1 : sturm_roots_in_interval(ad.det, Rational(1), std::nullopt);
        if (ad.roots_above_one != 0) rep.hl = false;
        rep.degrees.push_back(std::move(ad));
    }
    return rep;
}

AmpleReport check_HR_ample(const P1Sheaf& m) {
    std::vector<int> all = concat(m.deg0, m.deginf);
    if (!std::all_of(all.begin(), all.end(), [&](int d) { return same_parity(d, all.front()); }))
        throw ParityViolation("M_0 and M_inf are not both even or both odd");
    AmpleReport rep = check_HL_ample(m);
    if (!rep.hl) throw HLRequired("hard Lefschetz fails on the ample cone");
    // Signatures are constant on the root-free interval (1, infinity).
    rep.sample = sample_point(rep.degrees);
    GammaReport g = check_gamma(m, rep.sample);
    rep.hr = g.hr;
    rep.epsilon = g.epsilon;
    rep.levels = g.levels;
    rep.signatures = g.signatures;
    return rep;
}

bool check_opposite_signs(const P1Sheaf& m) {
    std::vector<int> all = concat(m.deg0, m.deginf);
    if (!std::all_of(all.begin(), all.end(), [&](int d) { return same_parity(d, all.front()); })) return false;
    if (m.sections() > 0 && m.section_degrees.back() > 0) return false;
    const auto l0 = m.lattice0(), li = m.latticeinf();
    if (!satisfies_hr(l0) || !satisfies_hr(li)) return false;
    std::map<int, int> sign0, signi;
    if (l0.rank())
        for (const auto& b : primitive_decomposition(l0)) sign0[b.d] = definite_sign(b.form);
    if (li.rank())
        for (const auto& b : primitive_decomposition(li)) signi[b.d] = definite_sign(b.form);
    for (auto [d, s] : sign0) {
        auto it = signi.find(d);
        if (d <= 0 && it != signi.end() && s * it->second != -1) return false;
    }
    return true;
}

P1Decomposition classify_and_decompose(const P1Sheaf& m) {
    const auto l0 = m.lattice0(), li = m.latticeinf();
    if (!satisfies_hr(l0) || !satisfies_hr(li)) throw HRHypothesisFails("M_0 or M_inf fails HR");
    P1Decomposition out;
    out.projective_cover = out.orthogonal = true;
    std::map<int, int> dimc;
    for (int d : m.degc) ++dimc[d];
    if (l0.rank())
        for (const auto& b : primitive_decomposition(l0)) {
            // rho_0 only sees the degree-d coordinates of a primitive vector.
            std::vector<int> top;
            for (size_t a = 0; a < b.coords.size(); ++a)
                if (m.deg0[b.coords[a]] == b.d) top.push_back(static_cast<int>(a));
            std::vector<int> top_idx;
            for (int a : top) top_idx.push_back(b.coords[a]);
            QMat r = columns(m.rho0, top_idx) * rows(b.basis, top);
            QMat kernel = nullspace(r);
            QMat perp = nullspace(QMat(kernel.transpose() * b.form));
            out.skyscraper[b.d] = static_cast<int>(kernel.cols());
            out.constant[b.d] = static_cast<int>(perp.cols());
            if (rank(QMat(r * perp)) != perp.cols() || perp.cols() != dimc[b.d]) out.projective_cover = false;
            if (!QMat(kernel.transpose() * b.form * perp).isZero()) out.orthogonal = false;
        }
    if (li.rank())
        for (const auto& b : primitive_decomposition(li)) {
            std::vector<int> top, top_idx;
            for (size_t a = 0; a < b.coords.size(); ++a)
                if (m.deginf[b.coords[a]] == b.d) {
                    top.push_back(static_cast<int>(a));
                    top_idx.push_back(b.coords[a]);
                }
            QMat r = columns(m.rhoinf, top_idx) * rows(b.basis, top);
            if (rank(r) != b.basis.cols() || out.constant[b.d] != b.basis.cols()) out.projective_cover = false;
        }
    return out;
}

LimitReport limit_scan(const P1Sheaf& m) {
    if (!check_opposite_signs(m)) throw PreconditionFailed("limit scan needs opposite signs");
    LimitReport rep;
    rep.c0 = Rational(1);
    if (m.sections() == 0) {
        rep.hr_beyond = true;
        return rep;
    }
    AmpleReport hl = check_HL_ample(m);
    for (const auto& ad : hl.degrees) {
        if (ad.det.is_zero()) return rep;
        auto roots = isolate_roots(ad.det, Rational(1), std::nullopt, Rational(1, 16));
        if (!roots.empty() && roots.back().hi > rep.c0) rep.c0 = roots.back().hi;
    }
    const int lo = m.section_degrees.front();
    std::vector<int> J;
    for (int i = 0; i < m.rank0(); ++i)
        if (m.deg0[i] == lo) J.push_back(i);
    rep.epsilon = definite_sign(submatrix(m.form0, J));
    rep.hr_beyond = rep.epsilon != 0;
    for (const Rational& c : {rep.c0 + Rational(1), rep.c0 * Rational(4) + Rational(4)}) {
        GammaReport g = check_gamma(m, c);
        if (!g.hr || g.epsilon != rep.epsilon) rep.hr_beyond = false;
    }
    return rep;
}

std::pair<Rational, Rational> deformed_gamma(const CoxeterGroup& W, int x, int s, int y, const Poly& lambda,
                                             const Rational& a, const std::vector<Rational>& coweight) {
    const int xs = W.rmul(x, s), ys = W.rmul(y, s);
    const Poly xl = W.act(x, lambda), xsl = W.act(xs, lambda), ysl = W.act(ys, lambda);
    const Poly l0 = xl - ysl - (xsl - ysl) * a;
    // The middle term a s(lambda) is evaluated at xs on the B(y)_xs summand.
    const Poly li = (xl - ysl) * (Rational(1) - a);
    return {sigma(l0, coweight), sigma(li, coweight)};
}

WeakLefschetzInstance weak_lefschetz_instance(const CoxeterGroup& W, const std::vector<int>& y_word, int s,
                                              const Poly& lambda, const Rational& a, int x,
                                              const std::vector<Rational>& coweight) {
    WeakLefschetzInstance out;
    const int y = W.from_word(y_word);
    std::tie(out.lambda0, out.lambdainf) = deformed_gamma(W, x, s, y, lambda, a, coweight);
    out.ample = out.lambdainf.sign() > 0 && out.lambdainf < out.lambda0;
    const FactorizationDatum f = build_factorization(W, y_word, lambda, s, a);
    BSStalks source(W, y_word);
    const P1Sheaf M = build_from_stalks(W, source, x, s, coweight);
    const SpecializedLattice by = specialize_stalk(source.at(x), coweight);
    P1Sheaf N = scaled(skyscraper(by.degrees, by.coef), f.targets.front().weight);
    for (size_t t = 1; t < f.targets.size(); ++t) {
        std::vector<int> w(f.targets[t].word.begin(), f.targets[t].word.end() - 1);
        N = direct_sum(N, scaled(build_from_stalks(W, BSStalks(W, w), x, s, coweight), f.targets[t].weight));
    }
    if (!out.ample) return out;
    const Rational c = out.lambda0 / out.lambdainf;
    out.target_hr = check_gamma(N, c).hr;
    out.source_hl = check_gamma(M, c).hl;
    return out;
}

}  // namespace lhl
