#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lhl/coxeter.hpp"
#include "lhl/linalg.hpp"

namespace lhl {

// sl_n with e_beta = E_ij and f_beta = E_ji for beta = eps_i - eps_j, i < j.
// The transpose antiautomorphism swaps them and fixes the Cartan.
struct SlnRootData {
    int n = 0;
    std::vector<std::pair<int, int>> roots;  // by height, then lexicographically
    std::vector<std::vector<int>> coords;    // simple-root coordinates
    VarsPtr cartan_vars;                     // h_s, h_t, ... = alpha^vee coordinates

    int rank() const { return n - 1; }
    int size() const { return static_cast<int>(roots.size()); }
    int height(int r) const { return roots[r].second - roots[r].first; }
    int root_index(int i, int j) const;
    // <gamma, beta^vee> from the simple coroot values.
    Rational coroot_value(const std::vector<Rational>& simple_values, int r) const;
};

SlnRootData sl_root_data(int n);
// "A3" -> sl_4.
SlnRootData sl_root_data(const std::string& type);

// key[r] is the position of root r in the PBW product.
struct PbwOrder {
    std::vector<int> key;
};
PbwOrder default_order(const SlnRootData& rd);
PbwOrder reversed_order(const SlnRootData& rd);

std::uint64_t kostant_dimension(const std::vector<int>& nu, const SlnRootData& rd);
// Multisets of positive roots summing to nu, each listed in PBW order; the
// list is sorted reverse-lexicographically in PBW keys.
std::vector<std::vector<int>> kostant_partitions(const std::vector<int>& nu, const SlnRootData& rd,
                                                 const PbwOrder& order);

struct ShapovalovMatrix {
    std::vector<int> nu;
    std::vector<std::vector<int>> basis;  // f_{r1} f_{r2} ... v
    Mat<Poly> entries;

    int dim() const { return static_cast<int>(basis.size()); }
};
// Throws DimensionBound past max_dim.
ShapovalovMatrix shapovalov_universal(const std::vector<int>& nu, const SlnRootData& rd, const PbwOrder& order,
                                      int max_dim = 60);
ShapovalovMatrix shapovalov_universal(const std::vector<int>& nu, const SlnRootData& rd, int max_dim = 60);

// h_i -> lambda_i + gamma_i z, values on simple coroots.
Mat<UniPoly> specialize_cartan(const Mat<Poly>& m, const std::vector<Rational>& lambda,
                               const std::vector<Rational>& gamma);

// Elementary-divisor valuations at z = 0, ascending. Throws
// SingularSpecialization when det vanishes identically.
std::vector<int> local_smith_valuations(const Mat<UniPoly>& m);

struct JantzenLayers {
    std::vector<Rational> lambda, gamma;
    std::vector<int> valuations;
    std::vector<int> layers;  // gr_0, gr_1, ... up to the largest valuation
    int det_valuation = 0;

    int dim() const { return static_cast<int>(valuations.size()); }
};
JantzenLayers jantzen_layers(const ShapovalovMatrix& m, const std::vector<Rational>& lambda,
                             const std::vector<Rational>& gamma);

bool is_regular(const SlnRootData& rd, const std::vector<Rational>& gamma);

// x . lambda = x(lambda + rho) - rho, simple-root coordinates.
Weight dot_action(const CoxeterGroup& W, int x, const Weight& lambda);
// Values of lambda on the simple coroots.
std::vector<Rational> coroot_values(const Realisation& R, const Weight& lambda);

}  // namespace lhl
