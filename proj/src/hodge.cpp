#include "lhl/hodge.hpp"

#include "lhl/errors.hpp"
#include "lhl/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lhl {

namespace {

bool same_parity(int a, int b) { return ((a - b) % 2 + 2) % 2 == 0; }

int det_sign(const QMat& m) { return m.rows() == 0 ? 1 : determinant(m).sign(); }

}  // namespace

bool SpecializedLattice::is_parity() const {
    for (int d : degrees)
        if (!same_parity(d, degrees.front())) return false;
    return true;
}

std::vector<int> SpecializedLattice::upto(int d, bool parity) const {
    std::vector<int> out;
    for (int i = 0; i < rank(); ++i)
        if (degrees[i] <= d && (!parity || same_parity(degrees[i], d))) out.push_back(i);
    return out;
}

QMat submatrix(const QMat& m, const std::vector<int>& idx) {
    QMat out(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
    return out;
}

SpecializedLattice make_lattice(std::vector<int> degrees, QMat coef) {
    const int n = static_cast<int>(degrees.size());
    if (coef.rows() != n || coef.cols() != n) throw PreconditionFailed("lattice Gram has the wrong size");
    if (!std::is_sorted(degrees.begin(), degrees.end())) throw PreconditionFailed("lattice degrees not sorted");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (coef(i, j) != coef(j, i)) throw PreconditionFailed("lattice Gram not symmetric");
            if (!coef(i, j).is_zero() && !same_parity(degrees[i], degrees[j]))
                throw PreconditionFailed("lattice Gram pairs opposite parities");
        }
    SpecializedLattice lat;
    lat.degrees = std::move(degrees);
    lat.coef = std::move(coef);
    return lat;
}

SpecializedLattice specialize_stalk(const GradedStalk& stalk, const std::vector<Rational>& coweight) {
    const int n = stalk.rank();
    QMat c(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const RatFunc& g = stalk.gram(i, j);
            if (g.is_zero()) {
                c(i, j) = Rational(0);
                continue;
            }
            ZTerm t = g.specialize(coweight);
            if (!t.is_zero() && 2 * t.exp != stalk.degrees[i] + stalk.degrees[j])
                throw InternalRankMismatch("specialized Gram entry in the wrong degree");
            c(i, j) = t.coef;
        }
    SpecializedLattice lat = make_lattice(stalk.degrees, c);
    lat.coweight = coweight;
    return lat;
}

HLReport check_hard_lefschetz(const SpecializedLattice& lat) {
    HLReport rep;
    if (lat.rank() == 0) return rep;
    const int hi = std::max(0, lat.max_degree());
    for (int d = lat.min_degree(); d <= hi; ++d) {
        HLDegree h{d, true, true, true, true};
        auto I = lat.upto(d, false);
        QMat g = submatrix(lat.coef, I);
        h.filtration_det = !determinant(g).is_zero();
        h.graded_det = !determinant(submatrix(lat.coef, lat.upto(d, true))).is_zero() &&
                       !determinant(submatrix(lat.coef, lat.upto(d - 1, true))).is_zero();
        h.radical = nullspace(g).cols() == 0;
        // <n, z^{-d} n'> as a matrix over Q[z], shifted to non-negative exponents.
        const int n = static_cast<int>(I.size());
        Mat<UniPoly> L(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const int da = lat.degrees[I[a]], db = lat.degrees[I[b]];
                const Rational& c = lat.coef(I[a], I[b]);
                L(a, b) = c.is_zero() ? UniPoly() : UniPoly::monomial(c, (da + db) / 2 - d + (d - lat.min_degree()));
            }
        h.lefschetz_det = !determinant(L).is_zero();
        if (h.filtration_det != h.graded_det || h.filtration_det != h.radical || h.filtration_det != h.lefschetz_det)
            throw CriteriaDisagree("hard Lefschetz criteria disagree in degree " + std::to_string(d));
        rep.holds &= h.filtration_det;
        rep.degrees.push_back(h);
    }
    return rep;
}

bool hard_lefschetz_via_cohomology(const SpecializedLattice& lat) {
    if (lat.rank() == 0) return true;
    if (lat.max_degree() > 0) throw PreconditionFailed("lattice not generated in degrees <= 0");
    if (det_sign(lat.coef) == 0) return false;
    const QMat inv = inverse(lat.coef);
    const int n = lat.rank();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (!inv(i, k).is_zero() && lat.degrees[i] + lat.degrees[k] > 0)
                throw InternalRankMismatch("dual lattice not contained in the lattice");
    // z^a f_i with f_i = sum_k inv(i,k) z^{-(d_i+d_k)/2} e_k spans z N^! in degree j.
    auto relations = [&](int j, const std::vector<int>& J) {
        std::vector<QVec> rows;
        for (int i = 0; i < n; ++i) {
            if (!same_parity(j, lat.degrees[i]) || j + lat.degrees[i] < 2) continue;
            QVec v(J.size());
            for (size_t c = 0; c < J.size(); ++c) v(c) = inv(i, J[c]);
            rows.push_back(v);
        }
        QMat m(rows.size(), J.size());
        for (size_t r = 0; r < rows.size(); ++r) m.row(r) = rows[r].transpose();
        return m;
    };
    for (int d = 0; d <= -lat.min_degree(); ++d) {
        auto Jlo = lat.upto(-d, true), Jhi = lat.upto(d, true);
        QMat Ulo = relations(-d, Jlo), Uhi = relations(d, Jhi);
        const int dim_lo = static_cast<int>(Jlo.size()) - rank(Ulo);
        const int dim_hi = static_cast<int>(Jhi.size()) - rank(Uhi);
        if (dim_lo != dim_hi) return false;
        // Injectivity: images of the H^{-d} coordinates stay independent mod U_d.
        QMat stacked(Uhi.rows() + Jlo.size(), Jhi.size());
        stacked.setZero();
        stacked.topRows(Uhi.rows()) = Uhi;
        for (size_t a = 0; a < Jlo.size(); ++a) {
            auto pos = std::find(Jhi.begin(), Jhi.end(), Jlo[a]) - Jhi.begin();
            stacked(Uhi.rows() + a, pos) = Rational(1);
        }
        // The relations U_{-d} map into U_d, so rank counts the image dimension.
        if (rank(stacked) - rank(Uhi) != dim_lo) return false;
    }
    return true;
}

std::vector<PrimitiveBlock> primitive_decomposition(const SpecializedLattice& lat) {
    std::vector<PrimitiveBlock> out;
    std::set<int> present(lat.degrees.begin(), lat.degrees.end());
    for (int d : present) {
        PrimitiveBlock b;
        b.d = d;
        b.coords = lat.upto(d, true);
        std::vector<int> lower, fresh;
        for (size_t a = 0; a < b.coords.size(); ++a)
            (lat.degrees[b.coords[a]] < d ? lower : fresh).push_back(static_cast<int>(a));
        const QMat full = submatrix(lat.coef, b.coords);
        QMat low(lower.size(), lower.size());
        for (size_t i = 0; i < lower.size(); ++i)
            for (size_t j = 0; j < lower.size(); ++j) low(i, j) = full(lower[i], lower[j]);
        b.basis = QMat::Zero(b.coords.size(), fresh.size());
        for (size_t f = 0; f < fresh.size(); ++f) {
            b.basis(fresh[f], f) = Rational(1);
            if (lower.empty()) continue;
            QVec rhs(lower.size());
            for (size_t i = 0; i < lower.size(); ++i) rhs(i) = full(lower[i], fresh[f]);
            auto x = solve(low, rhs);
            if (!x) throw HLRequired("degree " + std::to_string(d) + " filtration step is degenerate");
            for (size_t i = 0; i < lower.size(); ++i) b.basis(lower[i], f) = -(*x)(i);
        }
        b.form = b.basis.transpose() * full * b.basis;
        out.push_back(std::move(b));
    }
    return out;
}

HRReport check_hodge_riemann(const SpecializedLattice& lat, int length_of_x) {
    HRReport rep;
    rep.length = length_of_x;
    rep.degrees = lat.degrees;
    const int standard_sign = length_of_x % 2 ? -1 : 1;
    if (lat.rank() == 0) {
        rep.hr = rep.standard = rep.cumulative = true;
        rep.epsilon = standard_sign;
        return rep;
    }
    if (!lat.is_parity()) throw ParityViolation("lattice has both even and odd degrees");
    if (!check_hard_lefschetz(lat).holds) throw HLRequired("hard Lefschetz fails");
    const int lo = lat.min_degree();
    std::map<int, int> count;
    for (int d : lat.degrees) ++count[d];
    auto blocks = primitive_decomposition(lat);
    std::map<int, const PrimitiveBlock*> by_degree;
    for (const auto& b : blocks) by_degree[b.d] = &b;

    rep.hr = rep.cumulative = true;
    int cumulative = 0;
    for (int i = 0, d = lo; d <= 0; ++i, d += 2) {
        rep.levels.push_back(d);
        QMat g = submatrix(lat.coef, lat.upto(d, true));
        rep.det_signs.push_back(det_sign(g));
        rep.signatures.push_back(signature(g));
        const int sign_i = i % 2 ? -1 : 1;
        cumulative += count[d] * sign_i;
        auto it = by_degree.find(d);
        int dim = 0;
        std::pair<int, int> psig{0, 0};
        if (it != by_degree.end()) {
            dim = static_cast<int>(it->second->form.rows());
            psig = signature(it->second->form);
        }
        rep.primitive_dims.push_back(dim);
        rep.primitive_signatures.push_back(psig);
        if (d == lo) {
            if (psig.first == dim) rep.epsilon = 1;
            else if (psig.second == dim) rep.epsilon = -1;
        }
        const int want = rep.epsilon * sign_i;
        if (dim > 0 && (want == 0 || (want > 0 ? psig.first : psig.second) != dim)) rep.hr = false;
        const auto& s = rep.signatures.back();
        if (s.first - s.second != rep.epsilon * cumulative) rep.cumulative = false;
        for (int k = 0; k < count[d]; ++k) rep.expected_pattern += standard_sign * sign_i > 0 ? '+' : '-';
    }
    rep.standard = rep.hr && rep.epsilon == standard_sign;
    return rep;
}

}  // namespace lhl
