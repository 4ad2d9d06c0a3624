#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lhl/bimodule.hpp"

namespace lhl {

// Free graded Q[z]-module with homogeneous basis e_i in degrees d_i and form
// <e_i, e_j> = coef(i, j) z^{(d_i + d_j)/2}.
struct SpecializedLattice {
    std::vector<int> degrees;  // non-decreasing
    QMat coef;
    std::vector<Rational> coweight;

    int rank() const { return static_cast<int>(degrees.size()); }
    bool is_parity() const;
    int min_degree() const { return degrees.front(); }
    int max_degree() const { return degrees.back(); }
    // Basis indices spanning deg_{<=d} N, or N^d when same_parity is set.
    std::vector<int> upto(int d, bool same_parity) const;
};

// Validates symmetry, sorting and parity of nonzero entries.
SpecializedLattice make_lattice(std::vector<int> degrees, QMat coef);
// Applies sigma: alpha_s -> coweight[s] z to every Gram entry.
SpecializedLattice specialize_stalk(const GradedStalk& stalk, const std::vector<Rational>& coweight);
QMat submatrix(const QMat& m, const std::vector<int>& idx);

struct HLDegree {
    int d;
    bool filtration_det;  // (1) det on deg_{<=d} N
    bool graded_det;      // (2) det on N^d
    bool radical;         // (3) no radical in deg_{<=d} N
    bool lefschetz_det;   // (4) det of <n, z^{-d} n'> on deg_{<=d} N
};
struct HLReport {
    std::vector<HLDegree> degrees;
    bool holds = true;
};
// Throws CriteriaDisagree if the four criteria do not agree.
HLReport check_hard_lefschetz(const SpecializedLattice& lat);
// Multiplication by z^d : H^{-d} -> H^d on H = N / z N^! is an isomorphism
// for all d >= 0. Requires generation in degrees <= 0.
bool hard_lefschetz_via_cohomology(const SpecializedLattice& lat);

struct PrimitiveBlock {
    int d;
    QMat basis;  // columns in the coordinates of the basis of N^d
    QMat form;   // Lefschetz form z^{-d} <p, p'>
    std::vector<int> coords;  // basis indices of N^d
};
std::vector<PrimitiveBlock> primitive_decomposition(const SpecializedLattice& lat);

struct HRReport {
    int point = 0;
    int length = 0;
    std::vector<int> degrees;
    std::vector<int> levels;                           // d = min + 2i up to 0
    std::vector<int> det_signs;                        // sign of det on N^d
    std::vector<std::pair<int, int>> signatures;       // Lefschetz form on N^d
    std::vector<std::pair<int, int>> primitive_signatures;
    std::vector<int> primitive_dims;
    int epsilon = 0;         // sign of the minimal-degree block
    bool hr = false;         // epsilon (-1)^i definiteness on every P^d
    bool standard = false;   // hr and epsilon = (-1)^length
    bool cumulative = false; // signatures match epsilon (tau_{<=i} f)(-1)
    std::string expected_pattern;
};
// Throws ParityViolation and HLRequired.
HRReport check_hodge_riemann(const SpecializedLattice& lat, int length_of_x);

}  // namespace lhl
