#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "lhl/coxeter.hpp"
#include "lhl/linalg.hpp"

namespace lhl {

// Left coefficients of an element of B(w) in the basis c_pi, indexed by mask
// (bit i set means c_s in tensor factor i).
using BSElement = std::vector<Poly>;

// B(s_1) ... B(s_m) as a free left R-module. The tensor slots are numbered
// 0..m; factor i sits between slots i and i+1.
class BottSamelson {
public:
    BottSamelson(const CoxeterGroup& W, std::vector<int> word);

    const CoxeterGroup& group() const { return *W_; }
    const std::vector<int>& word() const { return word_; }
    int length() const { return static_cast<int>(word_.size()); }
    int dim() const { return 1 << length(); }
    int full_mask() const { return dim() - 1; }
    // deg c_pi: -1 per zero, +1 per one.
    int degree(int mask) const;

    BSElement zero() const;
    BSElement basis(int mask) const;

    // b * g with g inserted in tensor slot k.
    BSElement times_slot(const BSElement& b, const Poly& g, int k) const;
    BSElement right_act(const BSElement& b, const Poly& g) const;
    BSElement left_act(const Poly& g, const BSElement& b) const;
    BSElement multiply(const BSElement& a, const BSElement& b) const;
    // c_pi * alpha_s for each generator s, from the table built at construction.
    const BSElement& right_generator(int mask, int s) const { return right_table_[mask][s]; }

    // Coefficient of c_{1...1}.
    Poly trace(const BSElement& b) const { return b[full_mask()]; }
    // Tr(c_pi c_pi') for all masks; computed on first use.
    const Mat<Poly>& gram() const;
    Poly form(const BSElement& a, const BSElement& b) const;

private:
    void push(int mask, const Poly& g, int slot, BSElement& out) const;
    BSElement times_cs(int mask, int i) const;

    const CoxeterGroup* W_;
    std::vector<int> word_;
    std::vector<std::vector<BSElement>> right_table_;
    struct GramCache {
        std::once_flag once;
        Mat<Poly> gram;
    };
    std::shared_ptr<GramCache> gram_ = std::make_shared<GramCache>();
};

// B_x as a free left R-module with a homogeneous basis, the images of the
// c_pi in that basis, and the local intersection form.
struct GradedStalk {
    int point = 0;
    std::vector<int> degrees;     // non-decreasing
    std::vector<int> generators;  // a mask whose image is the basis element
    Mat<Poly> stalk_map;          // rank x 2^m
    Mat<RatFunc> gram;

    int rank() const { return static_cast<int>(degrees.size()); }
    std::vector<Poly> image(const BSElement& b) const;
    RatFunc pair(const std::vector<Poly>& a, const std::vector<Poly>& b) const;
};

// Stalks of B(w) at every element of W, computed letter by letter.
class BSStalks {
public:
    BSStalks(const CoxeterGroup& W, std::vector<int> word);
    // Stalks of B(word)B(s) from those of B(word).
    BSStalks extend(int s) const;
    // The single stalk (B(word)B(s))_x.
    GradedStalk extended_at(int x, int s) const;

    const BottSamelson& bimodule() const { return bs_; }
    const std::vector<int>& word() const { return bs_.word(); }
    const GradedStalk& at(int x) const { return stalks_[x]; }
    // Image of c_{0...0} in B_x.
    std::vector<Poly> class_of_bottom(int x) const;
    // Sum over w of the local pairings of the stalk images.
    RatFunc total_form(const BSElement& a, const BSElement& b) const;

private:
    BSStalks(const CoxeterGroup& W, BottSamelson bs) : W_(&W), bs_(std::move(bs)) {}
    GradedStalk extend_at(int x, int s, const BottSamelson& next) const;

    const CoxeterGroup* W_;
    BottSamelson bs_;
    std::vector<GradedStalk> stalks_;
};

// A Bott-Samelson summand of a factorization target, polarised by weight
// times its intersection form.
struct Summand {
    std::vector<int> word;
    Rational weight;
    int offset = 0;  // first row in the stacked target basis
};

// d : source -> targets and its adjoint, with <lambda, alpha^vee> stored on d
// and 1 on d*, so the composite d* d is unchanged by the missing square roots.
struct FactorizationDatum {
    std::vector<int> source;
    std::vector<Summand> targets;
    Mat<Poly> d;      // target basis x source basis
    Mat<Poly> dstar;  // source basis x target basis
    Poly lambda;
    bool deformed = false;
    int s = -1;
    Rational a;

    int target_dim() const { return static_cast<int>(d.rows()); }
};

FactorizationDatum build_factorization(const CoxeterGroup& W, const std::vector<int>& y_word, const Poly& lambda);
// Source B(y)B(s); requires ys > y, <lambda, alpha_s^vee> > 0 and 0 <= a < 1.
FactorizationDatum build_factorization(const CoxeterGroup& W, const std::vector<int>& y_word, const Poly& lambda,
                                       int s, const Rational& a);

// The operator d* d should equal, applied to c_pi.
BSElement factorization_expected(const CoxeterGroup& W, const FactorizationDatum& f, int mask);
BSElement apply_matrix(const Mat<Poly>& m, const BSElement& v);
bool verify_composite(const CoxeterGroup& W, const FactorizationDatum& f);
// <d b, b'> = <b, d* b'> on all basis pairs, with the weighted target form.
bool verify_adjoint(const CoxeterGroup& W, const FactorizationDatum& f);

}  // namespace lhl
