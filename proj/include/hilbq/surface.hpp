#pragma once

#include <map>
#include <string>
#include <vector>

#include "hilbq/tscalar.hpp"

namespace hilbq {

struct BasisClass {
    std::string name;
    int deg = 0;  // cohomological degree 0..4
    bool odd = false;
};

// Linear combination of basis classes with TScalar coefficients.
using SurfaceClass = std::map<int, TScalar>;

struct TensorTerm {
    TScalar coeff;
    std::vector<int> comps;  // basis indices, in slot order (never reordered)
};

// Element of H*(S^r) as a sum of decomposable tensors. Slot order is part of
// the data; all Koszul bookkeeping happens where the class is consumed.
struct TensorClass {
    int factors = 0;
    std::vector<TensorTerm> terms;

    void add(const TScalar& c, std::vector<int> comps);
    TensorClass odd_projection(const std::vector<BasisClass>& basis) const;
};

// Finite graded-commutative frame for H*(S): named basis with degrees and
// parities, cup structure constants, an integration functional, and the
// distinguished classes the operator formulas consume (unit, fiber f,
// section sigma, point, K_S, c1). Immutable after construction.
class SurfaceModel {
public:
    std::vector<BasisClass> basis;
    std::vector<std::vector<SurfaceClass>> cup_table;  // basis x basis -> class
    std::vector<TScalar> integral;                     // functional on basis
    std::map<std::string, SurfaceClass> classes;       // one,f,sigma,point,K,c1
    int genus = 0;
    int dS = 0;
    bool equivariant = false;

    int d_sigma() const { return 2 - 2 * genus - dS; }
    size_t dim() const { return basis.size(); }

    int class_index(const std::string& name) const;
    SurfaceClass cls(const std::string& name) const;  // distinguished or basis name

    SurfaceClass cup(const SurfaceClass& x, const SurfaceClass& y) const;
    TScalar integrate(const SurfaceClass& x) const;
    TScalar pair(const SurfaceClass& x, const SurfaceClass& y) const;

    // Unique classes characterized by their integrals against tensor classes,
    // obtained by exact linear solve against the Gram matrix (no hand-chosen
    // sign conventions):
    //   diagonal:        int_{S^2} D.(x (x) y)     = int_S x.y
    //   small_diagonal:  int_{S^3} D.(x (x) y (x) z) = int_S x.y.z
    //   delta_push(g):   int_{S^2} D.(x (x) y)     = int_S g.x.y
    TensorClass diagonal() const;
    TensorClass small_diagonal() const;
    TensorClass delta_push(const SurfaceClass& g, bool odd_part) const;

    // Integral over S^r of a pure tensor against a TensorClass, with the
    // Koszul sign rule (x (x) y).(u (x) w) = (-1)^{deg y deg u} (x.u) (x) (y.w).
    TScalar pair_tensor(const TensorClass& tc, const std::vector<int>& slots) const;

    // Verifies graded-commutativity, associativity, perfect pairing,
    // distinguished classes, f.f = 0, f.sigma = point, and in the compact
    // case K = (2g-2+dS) f and the degree discipline of the integral.
    void verify() const;

    bool parity(int i) const { return basis[i].odd; }
    int degree(int i) const { return basis[i].deg; }

private:
    TensorClass solve_tensor(int r, const std::vector<TScalar>& rhs) const;
    mutable std::vector<std::vector<TScalar>> gram_inv_;  // cached
    const std::vector<std::vector<TScalar>>& gram_inverse() const;
};

// Built-in models: "p1xe" (the product of the line with an elliptic curve)
// and "exc" (the equivariant elliptic surface E x C with weight t).
SurfaceModel builtin_surface(const std::string& name);

SurfaceClass scale(const TScalar& c, const SurfaceClass& x);
SurfaceClass add(const SurfaceClass& x, const SurfaceClass& y);
std::string class_str(const SurfaceModel& s, const SurfaceClass& x);

}  // namespace hilbq
