#include "bondtherm/linear_solver.hpp"

#include "bondtherm/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bondtherm {

SpdSolver::SpdSolver(double relative_tolerance, Refactor policy, int slow_iterations, int max_iterations)
    : tolerance_(relative_tolerance),
      policy_(policy),
      slow_iterations_(slow_iterations),
      max_iterations_(max_iterations) {}

bool SpdSolver::same_pattern(const SparseMatrix& a) const {
    if (!analyzed_ || a.rows() != matrix_.rows() || a.nonZeros() != matrix_.nonZeros()) return false;
    const auto n = static_cast<std::size_t>(a.outerSize() + 1);
    return std::equal(a.outerIndexPtr(), a.outerIndexPtr() + n, matrix_.outerIndexPtr()) &&
           std::equal(a.innerIndexPtr(), a.innerIndexPtr() + a.nonZeros(), matrix_.innerIndexPtr());
}

void SpdSolver::factorize_current() {
    ldlt_.factorize(matrix_);
    ++factorizations_;
    if (ldlt_.info() != Eigen::Success || (ldlt_.vectorD().array() <= 0.0).any()) {
        factor_current_ = false;
        analyzed_ = false;
        throw NumericalError("sparse LDL^T factorization failed (matrix not positive definite?), n = " +
                             std::to_string(matrix_.rows()));
    }
    factor_current_ = true;
    refactor_next_ = false;
}

void SpdSolver::factorize(const SparseMatrix& a) {
    if (!a.isCompressed()) throw std::invalid_argument("SpdSolver expects a compressed matrix");
    const bool reuse = policy_ == Refactor::WhenSlow && same_pattern(a) && !refactor_next_;
    if (!same_pattern(a)) {
        ldlt_.analyzePattern(a);
        analyzed_ = true;
    }
    matrix_ = a;
    factor_current_ = false;
    if (!reuse) factorize_current();
}

bool SpdSolver::pcg(const Eigen::VectorXd& b, Eigen::VectorXd& x, double bnorm) {
    Eigen::VectorXd r = b - matrix_ * x;
    last_residual_ = r.norm() / bnorm;
    last_iterations_ = 0;
    if (last_residual_ <= tolerance_) return true;
    Eigen::VectorXd z = ldlt_.solve(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    while (last_iterations_ < max_iterations_) {
        const Eigen::VectorXd ap = matrix_ * p;
        const double pap = p.dot(ap);
        if (!(pap > 0.0) || !std::isfinite(rz)) return false;
        const double alpha = rz / pap;
        x += alpha * p;
        r -= alpha * ap;
        ++last_iterations_;
        last_residual_ = r.norm() / bnorm;
        if (last_residual_ <= tolerance_) {
            // confirm against the true residual
            r = b - matrix_ * x;
            last_residual_ = r.norm() / bnorm;
            if (last_residual_ <= tolerance_) return true;
        }
        z = ldlt_.solve(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    return false;
}

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& b, const Eigen::VectorXd* guess) {
    if (!analyzed_) throw std::logic_error("SpdSolver::solve called before factorize");
    if (b.size() != matrix_.rows() || (guess && guess->size() != b.size())) {
        throw std::invalid_argument("SpdSolver::solve: size mismatch");
    }
    last_iterations_ = 0;
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        last_residual_ = 0.0;
        return Eigen::VectorXd::Zero(b.size());
    }
    Eigen::VectorXd x = guess ? *guess : Eigen::VectorXd(ldlt_.solve(b));
    bool ok = pcg(b, x, bnorm);
    if (!ok && !factor_current_) {
        factorize_current();
        x = ldlt_.solve(b);
        ok = pcg(b, x, bnorm);
    }
    if (!ok) {
        std::ostringstream os;
        os << "linear solve did not reach relative residual " << tolerance_ << " (got " << last_residual_ << " after "
           << last_iterations_ << " iterations, n = " << b.size() << ")";
        throw NumericalError(os.str());
    }
    if (last_iterations_ > slow_iterations_) refactor_next_ = true;
    return x;
}

NodalOperator::NodalOperator(const Grid& grid, std::vector<std::pair<Index, Index>> links) {
    const Index n = grid.node_count();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(n + 2 * grid.edge_count() + 2 * static_cast<Index>(links.size())));
    for (Index i = 0; i < n; ++i) t.emplace_back(i, i, 1.0);
    for (Index e = 0; e < grid.edge_count(); ++e) {
        t.emplace_back(grid.edge_tail(e), grid.edge_head(e), 1.0);
        t.emplace_back(grid.edge_head(e), grid.edge_tail(e), 1.0);
    }
    for (const auto& [a, b] : links) {
        t.emplace_back(a, b, 1.0);
        t.emplace_back(b, a, 1.0);
    }
    matrix_.resize(n, n);
    matrix_.setFromTriplets(t.begin(), t.end());
    matrix_.makeCompressed();

    diag_slots_.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) diag_slots_[i] = slot(i, i);
    edge_slots_.reserve(static_cast<std::size_t>(grid.edge_count()));
    for (Index e = 0; e < grid.edge_count(); ++e) {
        const Index a = grid.edge_tail(e);
        const Index b = grid.edge_head(e);
        edge_slots_.push_back({diag_slots_[a], diag_slots_[b], slot(a, b), slot(b, a)});
    }
    for (const auto& [a, b] : links) {
        link_slots_.push_back({diag_slots_[a], diag_slots_[b], slot(a, b), slot(b, a)});
    }
}

Index NodalOperator::slot(Index row, Index col) const {
    const auto* outer = matrix_.outerIndexPtr();
    const auto* inner = matrix_.innerIndexPtr();
    const auto* begin = inner + outer[col];
    const auto* end = inner + outer[col + 1];
    const auto* it = std::lower_bound(begin, end, static_cast<int>(row));
    if (it == end || *it != row) throw std::logic_error("NodalOperator: entry outside the sparsity pattern");
    return it - inner;
}

const SparseMatrix& NodalOperator::assemble(std::span<const double> edge_weights, std::span<const double> link_weights,
                                            std::span<const double> diagonal) {
    if (edge_weights.size() != edge_slots_.size() || diagonal.size() != diag_slots_.size() ||
        (!link_weights.empty() && link_weights.size() != link_slots_.size())) {
        throw std::invalid_argument("NodalOperator::assemble: size mismatch");
    }
    double* v = matrix_.valuePtr();
    std::fill(v, v + matrix_.nonZeros(), 0.0);
    for (std::size_t i = 0; i < diag_slots_.size(); ++i) v[diag_slots_[i]] += diagonal[i];
    auto add = [v](const Slots& s, double w) {
        v[s.a] += w;
        v[s.b] += w;
        v[s.ab] -= w;
        v[s.ba] -= w;
    };
    for (std::size_t e = 0; e < edge_slots_.size(); ++e) add(edge_slots_[e], edge_weights[e]);
    for (std::size_t l = 0; l < link_weights.size(); ++l) add(link_slots_[l], link_weights[l]);
    return matrix_;
}

ReducedSystem reduce_dirichlet(const SparseMatrix& k, const DirichletSet& dirichlet) {
    const Index n_free = static_cast<Index>(dirichlet.free_nodes.size());
    const Index n_fixed = static_cast<Index>(dirichlet.fixed_nodes.size());
    ReducedSystem r;
    r.free_free.resize(n_free, n_free);
    r.free_fixed.resize(n_free, n_fixed);
    r.free_free.reserve(k.nonZeros());
    r.free_fixed.reserve(Eigen::VectorXi::Constant(n_fixed, 8));

    // Free and fixed node lists are ascending, so the row order inside every
    // column is preserved and insertBack stays valid.
    for (Index c = 0; c < n_free; ++c) {
        r.free_free.startVec(c);
        for (SparseMatrix::InnerIterator it(k, dirichlet.free_nodes[c]); it; ++it) {
            const Index row = dirichlet.reduced_index[it.row()];
            if (row >= 0) r.free_free.insertBack(row, c) = it.value();
        }
    }
    r.free_free.finalize();

    std::vector<Eigen::Triplet<double>> t;
    for (Index c = 0; c < n_fixed; ++c) {
        for (SparseMatrix::InnerIterator it(k, dirichlet.fixed_nodes[c]); it; ++it) {
            const Index row = dirichlet.reduced_index[it.row()];
            if (row >= 0) t.emplace_back(row, c, it.value());
        }
    }
    r.free_fixed.setFromTriplets(t.begin(), t.end());
    r.free_free.makeCompressed();
    return r;
}

Eigen::VectorXd solve_dirichlet(const SparseMatrix& k, const DirichletSet& dirichlet, SpdSolver& solver) {
    Eigen::VectorXd full(k.rows());
    Eigen::VectorXd fixed(static_cast<Index>(dirichlet.fixed_nodes.size()));
    for (std::size_t i = 0; i < dirichlet.fixed_nodes.size(); ++i) {
        fixed[static_cast<Index>(i)] = dirichlet.fixed_values[i];
        full[dirichlet.fixed_nodes[i]] = dirichlet.fixed_values[i];
    }
    if (dirichlet.free_nodes.empty()) return full;

    const ReducedSystem r = reduce_dirichlet(k, dirichlet);
    const Eigen::VectorXd rhs = -(r.free_fixed * fixed);
    solver.factorize(r.free_free);
    const Eigen::VectorXd x = solver.solve(rhs);
    for (std::size_t i = 0; i < dirichlet.free_nodes.size(); ++i) full[dirichlet.free_nodes[i]] = x[static_cast<Index>(i)];
    return full;
}

}  // namespace bondtherm
