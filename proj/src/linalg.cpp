#include "qcard/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace qcard::linalg {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Ket::Ket(int dim) {
    require(is_supported_dim(dim), "Ket: dimension must be 2, 4 or 8");
    amp_.assign(static_cast<size_t>(dim), cplx{0.0, 0.0});
}

Ket::Ket(std::vector<cplx> amplitudes) : amp_(std::move(amplitudes)) {
    require(is_supported_dim(dim()), "Ket: dimension must be 2, 4 or 8");
}

double Ket::norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
}

bool Ket::is_normalized(double tol) const {
    double n2 = 0.0;
    for (const auto& a : amp_) n2 += std::norm(a);
    return std::abs(n2 - 1.0) < tol;
}

Ket Ket::normalized() const {
    double n = norm();
    require(n > 0.0, "Ket: cannot normalize the zero vector");
    Ket out = *this;
    for (auto& a : out.amp_) a /= n;
    return out;
}

Ket Ket::basis(int dim, int index) {
    Ket out(dim);
    require(index >= 0 && index < dim, "Ket::basis: index out of range");
    out[index] = cplx{1.0, 0.0};
    return out;
}

Ket operator+(const Ket& u, const Ket& v) {
    require(u.dim() == v.dim(), "Ket addition: dimension mismatch");
    Ket out = u;
    for (int i = 0; i < u.dim(); ++i) out[i] += v[i];
    return out;
}

Ket operator-(const Ket& u, const Ket& v) {
    require(u.dim() == v.dim(), "Ket subtraction: dimension mismatch");
    Ket out = u;
    for (int i = 0; i < u.dim(); ++i) out[i] -= v[i];
    return out;
}

Ket operator*(cplx scale, const Ket& u) {
    Ket out = u;
    for (int i = 0; i < u.dim(); ++i) out[i] *= scale;
    return out;
}

Operator::Operator(int dim) : dim_(dim) {
    require(is_supported_dim(dim), "Operator: dimension must be 2, 4 or 8");
    e_.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), cplx{0.0, 0.0});
}

Operator Operator::identity(int dim) {
    Operator out(dim);
    for (int i = 0; i < dim; ++i) out.at(i, i) = 1.0;
    return out;
}

Operator operator+(const Operator& a, const Operator& b) {
    require(a.dim() == b.dim(), "Operator addition: dimension mismatch");
    Operator out = a;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out.at(r, c) += b.at(r, c);
    return out;
}

Operator operator-(const Operator& a, const Operator& b) {
    require(a.dim() == b.dim(), "Operator subtraction: dimension mismatch");
    Operator out = a;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out.at(r, c) -= b.at(r, c);
    return out;
}

Operator operator*(cplx scale, const Operator& a) {
    Operator out = a;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out.at(r, c) *= scale;
    return out;
}

cplx inner(const Ket& u, const Ket& v) {
    require(u.dim() == v.dim(), "inner: dimension mismatch");
    cplx out{0.0, 0.0};
    for (int i = 0; i < u.dim(); ++i) out += std::conj(u[i]) * v[i];
    return out;
}

Ket tensor(const Ket& u, const Ket& v) {
    require(u.dim() == 2 || u.dim() == 4, "tensor: operands must have dimension 2 or 4");
    require(v.dim() == 2 || v.dim() == 4, "tensor: operands must have dimension 2 or 4");
    require(u.dim() * v.dim() <= 8, "tensor: resulting dimension unsupported");
    Ket out(u.dim() * v.dim());
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) out[i * v.dim() + j] = u[i] * v[j];
    return out;
}

Operator outer(const Ket& u, const Ket& v) {
    require(u.dim() == v.dim(), "outer: dimension mismatch");
    Operator out(u.dim());
    for (int r = 0; r < u.dim(); ++r)
        for (int c = 0; c < u.dim(); ++c) out.at(r, c) = u[r] * std::conj(v[c]);
    return out;
}

cplx trace(const Operator& m) {
    cplx out{0.0, 0.0};
    for (int i = 0; i < m.dim(); ++i) out += m.at(i, i);
    return out;
}

Operator adjoint(const Operator& m) {
    Operator out(m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out.at(r, c) = std::conj(m.at(c, r));
    return out;
}

Ket apply(const Operator& m, const Ket& v) {
    require(m.dim() == v.dim(), "apply: dimension mismatch");
    Ket out(m.dim());
    for (int r = 0; r < m.dim(); ++r) {
        cplx s{0.0, 0.0};
        for (int c = 0; c < m.dim(); ++c) s += m.at(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

cplx expectation(const Operator& m, const Ket& u) {
    return inner(u, apply(m, u));
}

double hermiticity_residual(const Operator& m) {
    double worst = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c)
            worst = std::max(worst, std::abs(m.at(r, c) - std::conj(m.at(c, r))));
    return worst;
}

Operator partial_trace(const Operator& m, Subsystem keep, std::pair<int, int> dims) {
    const int d1 = dims.first;
    const int d2 = dims.second;
    require(d1 >= 2 && d2 >= 2 && d1 * d2 == m.dim(), "partial_trace: incompatible dims");

    if (keep == Subsystem::first) {
        Operator out(d1);
        for (int i = 0; i < d1; ++i)
            for (int ip = 0; ip < d1; ++ip) {
                cplx s{0.0, 0.0};
                for (int j = 0; j < d2; ++j) s += m.at(i * d2 + j, ip * d2 + j);
                out.at(i, ip) = s;
            }
        return out;
    }
    Operator out(d2);
    for (int j = 0; j < d2; ++j)
        for (int jp = 0; jp < d2; ++jp) {
            cplx s{0.0, 0.0};
            for (int i = 0; i < d1; ++i) s += m.at(i * d2 + j, i * d2 + jp);
            out.at(j, jp) = s;
        }
    return out;
}

DegeneracyError::DegeneracyError(int idx, double residual)
    : std::runtime_error("gram_schmidt: input vector " + std::to_string(idx) +
                         " is degenerate (residual norm " + std::to_string(residual) + ")"),
      index(idx) {}

namespace {

// Unit-phase rescale so the largest-magnitude coordinate is real positive.
Ket canonical_phase(const Ket& v) {
    int k = 0;
    double best = 0.0;
    for (int i = 0; i < v.dim(); ++i) {
        double a = std::abs(v[i]);
        if (a > best) {
            best = a;
            k = i;
        }
    }
    if (best == 0.0) return v;
    cplx phase = std::conj(v[k]) / best;
    return phase * v;
}

}  // namespace

std::vector<Ket> gram_schmidt(const std::vector<Ket>& vs) {
    std::vector<Ket> out;
    out.reserve(vs.size());
    for (size_t i = 0; i < vs.size(); ++i) {
        Ket w = vs[i];
        // two orthogonalization passes keep the Gram residual near epsilon
        for (int pass = 0; pass < 2; ++pass)
            for (const Ket& u : out) w = w - (inner(u, w) * u);
        double scale = std::max(1.0, vs[i].norm());
        double res = w.norm();
        if (res < tol::kOrthonormal * scale)
            throw DegeneracyError(static_cast<int>(i), res);
        out.push_back(canonical_phase(w.normalized()));
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const Operator& m) {
    const int n = m.dim();
    Eigen::MatrixXcd h(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = m.at(r, c);
    // symmetrize so callers may pass operators with epsilon-level asymmetry
    Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = solver.eigenvalues()(i);
    return out;
}

DensityReport is_density(const Operator& m, double tol) {
    DensityReport rep;
    rep.hermiticity_residual = hermiticity_residual(m);
    rep.trace_residual = std::abs(trace(m) - cplx{1.0, 0.0});
    rep.min_eigenvalue = hermitian_eigenvalues(m).front();

    double worst_ratio = 0.0;
    rep.worst = "none";
    auto consider = [&](const char* name, double violation) {
        if (violation > worst_ratio) {
            worst_ratio = violation;
            rep.worst = name;
        }
    };
    consider("hermiticity", rep.hermiticity_residual);
    consider("trace", rep.trace_residual);
    consider("psd", std::max(0.0, -rep.min_eigenvalue));

    rep.ok = rep.hermiticity_residual < tol && rep.trace_residual < tol &&
             rep.min_eigenvalue > -tol;
    if (rep.ok) rep.worst = "none";
    return rep;
}

}  // namespace qcard::linalg
