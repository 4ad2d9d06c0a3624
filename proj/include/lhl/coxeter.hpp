#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "lhl/ratfunc.hpp"

namespace lhl {

using IMat = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

// Weights and coweights are written in simple-root coordinates.
using Weight = std::vector<Rational>;

// Finite simply-laced realisation: pairing(s, t) = <alpha_s, alpha_t^vee>.
class Realisation {
public:
    // "A3", "A2xA1", "D4", "E6", ...
    static Realisation from_type(const std::string& type);

    int rank() const { return rank_; }
    const std::string& type() const { return type_; }
    int pairing(int s, int t) const { return cartan_(s, t); }
    const IMat& cartan() const { return cartan_; }
    int coxeter_m(int s, int t) const;
    const VarsPtr& vars() const { return vars_; }
    const std::string& letter(int s) const { return letters_.at(s); }
    int letter_index(char c) const;

    Poly alpha(int s) const { return Poly::var(vars_, s); }
    // <lambda, alpha_t^vee> for lambda in simple-root coordinates.
    Rational coroot_pairing(const Weight& lambda, int t) const;
    // The weight with <rho, alpha_s^vee> = 1 for all s.
    Weight rho() const;
    Poly weight_poly(const Weight& lambda) const;
    Weight poly_weight(const Poly& p) const;

private:
    int rank_ = 0;
    std::string type_;
    IMat cartan_;
    VarsPtr vars_;
    std::vector<std::string> letters_;
};

// Elements are dense indices; the identity is 0. The canonical form of an
// element is its integer matrix on h^* in the simple-root basis.
class CoxeterGroup {
public:
    explicit CoxeterGroup(Realisation r, int size_bound = 100000);

    const Realisation& realisation() const { return real_; }
    int rank() const { return real_.rank(); }
    int size() const { return static_cast<int>(mats_.size()); }
    int identity() const { return 0; }
    int simple(int s) const { return simple_[s]; }

    const IMat& matrix(int w) const { return mats_[w]; }
    int length(int w) const { return length_[w]; }
    const std::vector<int>& reduced_word(int w) const { return word_[w]; }
    int longest() const { return longest_; }

    int rmul(int w, int s) const { return right_[w][s]; }
    int lmul(int s, int w) const { return left_[w][s]; }
    int mul(int a, int b) const;
    int inverse(int w) const { return inverse_[w]; }
    int from_word(const std::vector<int>& word) const;
    bool is_reduced(const std::vector<int>& word) const;
    int find(const IMat& m) const;

    // Letters over the realisation's alphabet; "id", "e" or "" mean the identity.
    std::vector<int> parse_word(const std::string& text) const;
    int parse_element(const std::string& text) const;
    std::string name(int w) const;
    std::string word_name(const std::vector<int>& word) const;

    bool bruhat_leq(int x, int y) const;
    std::vector<std::vector<int>> all_reduced_words(int w) const;

    // Positive roots, sorted by height then a_s-heavy first.
    const std::vector<Root>& positive_roots() const { return roots_; }
    int root_index(const Root& r) const;
    // Image of a (possibly non-positive) linear form.
    Root apply(int w, const Root& r) const;
    int reflection(int root_idx) const { return reflection_[root_idx]; }
    // Inversion count: #{beta > 0 : w(beta) < 0}.
    int inversion_length(int w) const;
    // Pairs (reflection t, root alpha_t) with t y < y.
    std::vector<std::pair<int, int>> left_inversions(int y) const;

    Weight act(int w, const Weight& lambda) const;
    Poly act(int w, const Poly& f) const;
    RatFunc act(int w, const RatFunc& f) const;
    Poly root_image(int w, int s) const { return act(w, real_.alpha(s)); }
    Root root_image_form(int w, int s) const;

private:
    Realisation real_;
    std::vector<IMat> mats_;
    std::vector<int> length_, inverse_, simple_;
    std::vector<std::vector<int>> word_, right_, left_;
    std::unordered_map<std::string, int> index_;
    std::vector<Root> roots_;
    std::vector<int> reflection_;
    int longest_ = 0;
    mutable std::mutex bruhat_mutex_;
    mutable std::unordered_map<int, std::vector<bool>> below_;
};

Poly divided_difference(const CoxeterGroup& W, int s, const Poly& f);

struct RhoWitness {
    Rational x_value, w_value;
    bool consistent;
};
// Values <x(rho), rho^vee> and <w(rho), rho^vee>; consistent means strict
// inequality whenever x < w and equality when x == w.
RhoWitness refine_bruhat_by_rho(const CoxeterGroup& W, int x, int w, const Weight& rho,
                                const std::vector<Rational>& coweight);

}  // namespace lhl
