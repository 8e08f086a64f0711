// Small complex linear algebra kernel for dimensions 2, 4 and 8:
// inner/outer/tensor products, trace, partial trace, Gram-Schmidt and
// density-operator predicates. Deliberately dense and serial; every matrix
// in this project fits in a cache line or two.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcard/tolerances.hpp"

namespace qcard::linalg {

using cplx = std::complex<double>;

inline bool is_supported_dim(int dim) { return dim == 2 || dim == 4 || dim == 8; }

class Ket {
public:
    explicit Ket(int dim);
    explicit Ket(std::vector<cplx> amplitudes);

    int dim() const { return static_cast<int>(amp_.size()); }
    const cplx& operator[](int i) const { return amp_[static_cast<size_t>(i)]; }
    cplx& operator[](int i) { return amp_[static_cast<size_t>(i)]; }
    const std::vector<cplx>& amplitudes() const { return amp_; }

    double norm() const;
    bool is_normalized(double tol = tol::kNorm) const;
    Ket normalized() const;

    /// Computational basis vector |index> of the given dimension.
    static Ket basis(int dim, int index);

private:
    std::vector<cplx> amp_;
};

Ket operator+(const Ket& u, const Ket& v);
Ket operator-(const Ket& u, const Ket& v);
Ket operator*(cplx scale, const Ket& u);

class Operator {
public:
    explicit Operator(int dim);

    int dim() const { return dim_; }
    const cplx& at(int r, int c) const { return e_[static_cast<size_t>(r * dim_ + c)]; }
    cplx& at(int r, int c) { return e_[static_cast<size_t>(r * dim_ + c)]; }

    static Operator identity(int dim);

private:
    int dim_;
    std::vector<cplx> e_;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(cplx scale, const Operator& a);

/// <u|v> with conjugation on the first argument.
cplx inner(const Ket& u, const Ket& v);

/// |u> (x) |v>, first-argument-major: index(i,j) = i*dim(v) + j.
Ket tensor(const Ket& u, const Ket& v);

/// |u><v|.
Operator outer(const Ket& u, const Ket& v);

cplx trace(const Operator& m);
Operator adjoint(const Operator& m);
Ket apply(const Operator& m, const Ket& v);

/// <u|M|u>.
cplx expectation(const Operator& m, const Ket& u);

/// max entry of |M - M^dag|.
double hermiticity_residual(const Operator& m);

enum class Subsystem { first, second };

/// Reduced operator of a bipartite M (dim = dims.first * dims.second),
/// keeping the tagged subsystem. Trace preserving.
Operator partial_trace(const Operator& m, Subsystem keep, std::pair<int, int> dims);

/// Raised by gram_schmidt when an input vector is (numerically) in the
/// span of its predecessors.
struct DegeneracyError : std::runtime_error {
    int index;
    DegeneracyError(int idx, double residual);
};

/// Orthonormalizes the input set (modified Gram-Schmidt with one
/// re-orthogonalization pass). Each output vector is rescaled by a unit
/// phase so its largest-magnitude coordinate is real and positive.
std::vector<Ket> gram_schmidt(const std::vector<Ket>& vs);

/// Eigenvalues of a Hermitian operator, ascending.
std::vector<double> hermitian_eigenvalues(const Operator& m);

struct DensityReport {
    bool ok = false;
    double hermiticity_residual = 0.0;
    double trace_residual = 0.0;
    double min_eigenvalue = 0.0;
    std::string worst;  // "hermiticity" | "trace" | "psd" | "none"
};

/// Hermitian + unit trace + positive semidefinite, all within tol.
DensityReport is_density(const Operator& m, double tol = tol::kPsdFloor);

}  // namespace qcard::linalg
