#include "maxplus/matrix.hpp"

#include <ostream>
#include <sstream>

#include "maxplus/detail/positive_circuit.hpp"
#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

void require_same_shape(const MpMatrix& a, const MpMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()) + " differ");
    }
}

void require_inner(const MpMatrix& a, const MpMatrix& b, const char* op) {
    if (a.cols() != b.rows()) {
        throw DimensionError(std::string(op) + ": inner dimensions " + std::to_string(a.cols()) +
                             " and " + std::to_string(b.rows()) + " differ");
    }
}

} // namespace

MpMatrix::MpMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) {
        throw DimensionError("matrix dimensions must be non-negative");
    }
    cells_.assign(static_cast<size_t>(rows) * cols, ExtScalar::bottom());
}

MpMatrix MpMatrix::identity(int n) {
    MpMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = ExtScalar(Rat(0));
    }
    return m;
}

MpMatrix MpMatrix::all_bottom(int rows, int cols) {
    return MpMatrix(rows, cols);
}

std::string MpMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " [");
        for (int j = 0; j < cols_; ++j) {
            os << (*this)(i, j).str() << (j + 1 < cols_ ? ", " : "");
        }
        os << "]" << (i + 1 < rows_ ? "\n" : "");
    }
    os << "]";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MpMatrix& m) {
    return os << m.str();
}

MpMatrix oplus(const MpMatrix& a, const MpMatrix& b) {
    require_same_shape(a, b, "oplus");
    MpMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out(i, j) = oplus(a(i, j), b(i, j));
        }
    }
    return out;
}

MpMatrix wedge(const MpMatrix& a, const MpMatrix& b) {
    require_same_shape(a, b, "wedge");
    MpMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out(i, j) = wedge(a(i, j), b(i, j));
        }
    }
    return out;
}

MpMatrix otimes(const MpMatrix& a, const MpMatrix& b) {
    require_inner(a, b, "otimes");
    MpMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            ExtScalar acc = ExtScalar::bottom();
            for (int k = 0; k < a.cols(); ++k) {
                acc = oplus(acc, otimes(a(i, k), b(k, j)));
            }
            out(i, j) = acc;
        }
    }
    return out;
}

MpMatrix odot(const MpMatrix& a, const MpMatrix& b) {
    require_inner(a, b, "odot");
    MpMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            ExtScalar acc = ExtScalar::top();
            for (int k = 0; k < a.cols(); ++k) {
                acc = wedge(acc, odot(a(i, k), b(k, j)));
            }
            out(i, j) = acc;
        }
    }
    return out;
}

MpMatrix conjugate(const MpMatrix& a) {
    MpMatrix out(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out(j, i) = inverse(a(i, j));
        }
    }
    return out;
}

MpMatrix scalar_mul(const ExtScalar& coefficient, const MpMatrix& a) {
    if (!coefficient.is_finite()) {
        throw DomainError("scalar_mul: coefficient must be finite");
    }
    MpMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out(i, j) = otimes(coefficient, a(i, j));
        }
    }
    return out;
}

MpMatrix mpow(const MpMatrix& a, int k) {
    if (!a.is_square()) {
        throw DimensionError("mpow: matrix must be square");
    }
    if (k < 0) {
        throw DomainError("mpow: negative exponent");
    }
    MpMatrix out = MpMatrix::identity(a.rows());
    for (int step = 0; step < k; ++step) {
        out = otimes(out, a);
    }
    return out;
}

MpMatrix kleene_star(const MpMatrix& a) {
    if (!a.is_square()) {
        throw DimensionError("kleene_star: matrix must be square");
    }
    const int n = a.rows();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (a(i, j).is_top()) {
                throw DomainError("kleene_star: +inf entry not allowed");
            }
        }
    }

    MpMatrix m = a;
    for (int i = 0; i < n; ++i) {
        m(i, i) = oplus(m(i, i), ExtScalar(Rat(0)));
    }
    // In-place relaxation; a strictly positive diagonal entry after a pivot
    // certifies a positive circuit, reported with a Bellman-Ford witness.
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if (m(i, k).is_bottom()) {
                continue;
            }
            for (int j = 0; j < n; ++j) {
                m(i, j) = oplus(m(i, j), otimes(m(i, k), m(k, j)));
            }
        }
        for (int i = 0; i < n; ++i) {
            if (m(i, i).is_finite() && m(i, i).finite() > 0) {
                auto witness = detail::positive_circuit(a);
                if (!witness) {
                    throw Error("kleene_star: diagonal check disagrees with detector");
                }
                throw PositiveCircuitError("kleene_star: positive circuit of weight " +
                                               rat_str(witness->weight),
                                           witness->nodes, witness->weight);
            }
        }
    }
    return m;
}

MpMatrix tensor(const MpMatrix& a, const MpMatrix& b) {
    MpMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            const ExtScalar& coeff = a(i, j);
            if (coeff.is_bottom()) {
                continue;
            }
            for (int k = 0; k < b.rows(); ++k) {
                for (int l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = otimes(coeff, b(k, l));
                }
            }
        }
    }
    return out;
}

std::vector<ExtScalar> otimes(const MpMatrix& a, const std::vector<ExtScalar>& x) {
    if (a.cols() != static_cast<int>(x.size())) {
        throw DimensionError("otimes: vector length " + std::to_string(x.size()) +
                             " does not match " + std::to_string(a.cols()) + " columns");
    }
    std::vector<ExtScalar> out(a.rows(), ExtScalar::bottom());
    for (int i = 0; i < a.rows(); ++i) {
        ExtScalar acc = ExtScalar::bottom();
        for (int k = 0; k < a.cols(); ++k) {
            acc = oplus(acc, otimes(a(i, k), x[k]));
        }
        out[i] = acc;
    }
    return out;
}

} // namespace maxplus
