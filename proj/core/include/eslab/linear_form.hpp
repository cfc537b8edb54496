#pragma once

#include <vector>

#include "eslab/integer.hpp"

namespace eslab {

// c1*k + c0 with integer coefficients.
struct LinearForm {
    Int c0{0};
    Int c1{0};

    Int operator()(const Int& k) const { return c1 * k + c0; }
    int degree() const { return sgn(c1) != 0 ? 1 : 0; }
    Int content() const { return sgn(c1) == 0 ? abs(c0) : gcd(abs(c0), abs(c1)); }
    bool positive_for_nonneg_k() const { return sgn(c0) > 0 && sgn(c1) >= 0; }
    bool operator==(const LinearForm&) const = default;
    bool operator<(const LinearForm& o) const {
        return c1 != o.c1 ? c1 < o.c1 : c0 < o.c0;
    }
};

// constant * product of linear forms.
struct ProductTerm {
    Int constant{1};
    std::vector<LinearForm> forms;

    Int eval(const Int& k) const {
        Int v = constant;
        for (const auto& f : forms) v *= f(k);
        return v;
    }
    int degree() const {
        int d = 0;
        for (const auto& f : forms) d += f.degree();
        return d;
    }

    // Pull the content out of every form and sort; two terms denote the same
    // polynomial product iff their normal forms are equal.
    ProductTerm normalized() const;
    bool operator==(const ProductTerm& o) const {
        return normalized().equal_raw(o.normalized());
    }
    bool equal_raw(const ProductTerm& o) const {
        return constant == o.constant && forms == o.forms;
    }
};

}  // namespace eslab
