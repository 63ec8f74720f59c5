#pragma once

#include <string>

namespace stable_limits {

enum class FunctionalTag { constant, sine, cosine, clamped_identity, reciprocal_quadratic };

// The closed registry of integrand functionals f. Every tag is bounded and
// carries a Holder certificate |f(x)-f(y)| <= K |x-y|^a, re-verified on a
// random pair grid at construction.
class FunctionalF {
public:
    explicit FunctionalF(FunctionalTag tag, double param = 0.0);

    // "sine", "cosine", "reciprocal_quadratic", "constant:<c>",
    // "clamped_identity:<C>".
    static FunctionalF parse(const std::string& id);

    double operator()(double x) const;

    FunctionalTag tag() const { return tag_; }
    double param() const { return param_; }
    double holder_K() const { return holder_K_; }
    double holder_a() const { return holder_a_; }
    double bound() const { return bound_; }  // sup |f|
    std::string id() const;

private:
    void verify_holder() const;

    FunctionalTag tag_;
    double param_;
    double holder_K_;
    double holder_a_;
    double bound_;
};

}  // namespace stable_limits
