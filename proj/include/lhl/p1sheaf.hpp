#pragma once

#include <map>
#include <utility>
#include <vector>

#include "lhl/hodge.hpp"

namespace lhl {

// Sheaf on the moment graph of P^1 over A = Q[z], with free M_0, M_inf and
// M_C* killed by z. Everything is stored over Q: rho0 and rhoinf are defined
// on M_0/zM_0 and M_inf/zM_inf, and the polarisation and global sections
// carry their z-powers implicitly through the degrees.
struct P1Sheaf {
    std::vector<int> deg0, deginf, degc;  // non-decreasing
    QMat rho0, rhoinf;
    QMat form0, forminf;  // <e_i, e_j> = form(i, j) z^{(d_i + d_j)/2}
    // Generator k of the global sections sits in degree section_degrees[k]
    // with components sec0.col(k) and secinf.col(k).
    std::vector<int> section_degrees;
    QMat sec0, secinf;
    int x = -1, xs = -1;

    int rank0() const { return static_cast<int>(deg0.size()); }
    int rankinf() const { return static_cast<int>(deginf.size()); }
    int sections() const { return static_cast<int>(section_degrees.size()); }
    SpecializedLattice lattice0() const;
    SpecializedLattice latticeinf() const;
    // Coefficients of c0 <-,->^0 + cinf <-,->^inf on the global sections.
    QMat section_form(const Rational& c0, const Rational& cinf) const;
    SpecializedLattice global_sections() const;
};

// Checks rho0 surjective, rhoinf invertible, gradings and a non-degenerate
// polarisation, then computes global sections. Throws NotP1Sheaf.
P1Sheaf make_p1sheaf(std::vector<int> deg0, std::vector<int> deginf, std::vector<int> degc, QMat rho0,
                     QMat rhoinf, QMat form0, QMat forminf);
P1Sheaf skyscraper(std::vector<int> deg, QMat form);
P1Sheaf constant_sheaf(std::vector<int> deg, QMat form0, QMat forminf);
P1Sheaf direct_sum(const P1Sheaf& a, const P1Sheaf& b);
P1Sheaf scaled(P1Sheaf m, const Rational& w);

// M(B, x, xs) for B = B(word): M_0 = A (x) B_x[1], M_inf = A (x) B_xs[1],
// M_C* the push-out through (B B(s))_x. Verifies the sheaf conditions, the
// graded rank p0 + v^2 pinf of global sections and that the global form is
// the specialized local form of B B(s) at x. Throws NotP1Sheaf.
P1Sheaf build_from_stalks(const CoxeterGroup& W, const BSStalks& stalks, int x, int s,
                          const std::vector<Rational>& coweight);

// Image of an element of (B B(s))_x, given in its stalk basis, in B_x + B_xs.
std::pair<std::vector<Poly>, std::vector<Poly>> stalk_components(const CoxeterGroup& W, const BSStalks& stalks,
                                                                 const GradedStalk& next, int x, int s,
                                                                 const std::vector<Poly>& coords);

// gamma = (c z, z).
struct GammaReport {
    Rational c;
    bool hl = false;
    bool hr = false;
    int epsilon = 0;
    std::vector<int> levels;
    std::vector<std::pair<int, int>> signatures;
};
GammaReport check_gamma(const P1Sheaf& m, const Rational& c);

struct AmpleDegree {
    int d;
    UniPoly det;             // in c, for gamma = (c z, z)
    int roots_above_one;     // -1 when det vanishes identically
};
struct AmpleReport {
    bool hl = false;
    bool hr = false;
    int epsilon = 0;
    Rational sample;
    std::vector<AmpleDegree> degrees;
    std::vector<int> levels;
    std::vector<std::pair<int, int>> signatures;  // at the sample point, per level
};
// Requires global sections generated in degrees <= 0.
AmpleReport check_HL_ample(const P1Sheaf& m);
// Throws ParityViolation and HLRequired.
AmpleReport check_HR_ample(const P1Sheaf& m);

bool check_opposite_signs(const P1Sheaf& m);

struct P1Decomposition {
    std::map<int, int> skyscraper;  // degree -> multiplicity
    std::map<int, int> constant;
    bool projective_cover = false;
    bool orthogonal = false;
};
// Throws HRHypothesisFails unless M_0 and M_inf satisfy HR.
P1Decomposition classify_and_decompose(const P1Sheaf& m);

struct LimitReport {
    Rational c0;
    bool hr_beyond = false;
    int epsilon = 0;  // sign of <-,->^0 in the minimal degree
};
// Throws PreconditionFailed unless m has opposite signs.
LimitReport limit_scan(const P1Sheaf& m);

// sigma of (x - ys)(lambda) - a (xs - ys)(lambda) and (1 - a)(x - ys)(lambda).
std::pair<Rational, Rational> deformed_gamma(const CoxeterGroup& W, int x, int s, int y, const Poly& lambda,
                                             const Rational& a, const std::vector<Rational>& coweight);

// Weak Lefschetz for P^1-sheaves on M = M(B(y), x, xs) and the target
// N = B(y)_x (skyscraper) + M(B', x, xs) of the deformed factorization.
struct WeakLefschetzInstance {
    Rational lambda0, lambdainf;
    bool ample = false;
    bool target_hr = false;
    bool source_hl = false;
    bool consistent() const { return !ample || !target_hr || source_hl; }
};
WeakLefschetzInstance weak_lefschetz_instance(const CoxeterGroup& W, const std::vector<int>& y_word, int s,
                                              const Poly& lambda, const Rational& a, int x,
                                              const std::vector<Rational>& coweight);

}  // namespace lhl
