#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "maxplus/scalar.hpp"

namespace maxplus {

/// Dense matrix over the completed max-plus semifield, row-major.
class MpMatrix {
public:
    MpMatrix() : rows_(0), cols_(0) {}
    MpMatrix(int rows, int cols);

    /// E_otimes: e on the diagonal, epsilon elsewhere.
    static MpMatrix identity(int n);
    /// The all-epsilon matrix (additive neutral).
    static MpMatrix all_bottom(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    ExtScalar& operator()(int i, int j) { return cells_[static_cast<size_t>(i) * cols_ + j]; }
    const ExtScalar& operator()(int i, int j) const {
        return cells_[static_cast<size_t>(i) * cols_ + j];
    }

    bool operator==(const MpMatrix& other) const = default;

    std::string str() const;

private:
    int rows_;
    int cols_;
    std::vector<ExtScalar> cells_;
};

std::ostream& operator<<(std::ostream& os, const MpMatrix& m);

/// Elementwise max; dimensions must agree.
MpMatrix oplus(const MpMatrix& a, const MpMatrix& b);

/// Elementwise min; dimensions must agree.
MpMatrix wedge(const MpMatrix& a, const MpMatrix& b);

/// Max-plus product: (A (x) C)_ij = max_k (A_ik + C_kj).
MpMatrix otimes(const MpMatrix& a, const MpMatrix& b);

/// Dual (min-plus flavoured) product: (A (.) C)_ij = min_k (A_ik (.) C_kj).
MpMatrix odot(const MpMatrix& a, const MpMatrix& b);

/// Conjugate A#: transpose with inverted entries (-A^T on finite values).
MpMatrix conjugate(const MpMatrix& a);

/// lambda (x) A for finite lambda: shift every finite entry, keep epsilon.
MpMatrix scalar_mul(const ExtScalar& coefficient, const MpMatrix& a);

/// k-fold max-plus power; mpow(a, 0) is the identity.
MpMatrix mpow(const MpMatrix& a, int k);

/// Kleene star E (+) A (+) A^2 (+) ... computed by a Floyd-Warshall sweep
/// in O(n^3).  Requires a square matrix without top entries.  Throws
/// PositiveCircuitError (with an elementary witness circuit) when the
/// precedence graph of A has a positive-weight circuit.
MpMatrix kleene_star(const MpMatrix& a);

/// Tensor (Kronecker) product: block (i,j) is A_ij (x) B.
MpMatrix tensor(const MpMatrix& a, const MpMatrix& b);

/// A matrix together with a scalar multiplier, kept unevaluated.
struct ScaledMatrix {
    ExtScalar coefficient;
    MpMatrix matrix;

    MpMatrix evaluate() const { return scalar_mul(coefficient, matrix); }
};

/// Max-plus matrix-vector product.
std::vector<ExtScalar> otimes(const MpMatrix& a, const std::vector<ExtScalar>& x);

} // namespace maxplus
