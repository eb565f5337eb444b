#pragma once

#include "bondtherm/boundary.hpp"
#include "bondtherm/grid.hpp"

#include <Eigen/SparseCholesky>

#include <span>
#include <utility>
#include <vector>

namespace bondtherm {

/// Sparse LDL^T based solver for symmetric positive definite systems.
///
/// Every solve runs conjugate gradients preconditioned with the stored
/// factorization until ||b - Ax|| / ||b|| <= tolerance. With a fresh
/// factorization that is plain iterative refinement and converges in zero or
/// one step. Under Refactor::WhenSlow a new matrix with the same pattern keeps
/// the previous factorization, which remains an excellent preconditioner
/// while the coefficients drift slowly (Picard iterations, time steps); the
/// matrix is refactorized once the iteration count exceeds
/// `slow_iterations` or CG fails to converge.
class SpdSolver {
public:
    enum class Refactor { Always, WhenSlow };

    explicit SpdSolver(double relative_tolerance = 1e-10, Refactor policy = Refactor::Always,
                       int slow_iterations = 12, int max_iterations = 200);

    /// Sets the system matrix. Throws NumericalError when a factorization
    /// breaks down.
    void factorize(const SparseMatrix& a);

    /// Throws NumericalError when the residual target is not met. `guess`
    /// optionally seeds the iteration.
    Eigen::VectorXd solve(const Eigen::VectorXd& b, const Eigen::VectorXd* guess = nullptr);

    [[nodiscard]] double last_residual() const { return last_residual_; }
    [[nodiscard]] int last_iterations() const { return last_iterations_; }
    [[nodiscard]] long factorizations() const { return factorizations_; }
    [[nodiscard]] double tolerance() const { return tolerance_; }

private:
    bool same_pattern(const SparseMatrix& a) const;
    void factorize_current();
    /// Preconditioned CG from x; returns true on convergence.
    bool pcg(const Eigen::VectorXd& b, Eigen::VectorXd& x, double bnorm);

    double tolerance_;
    Refactor policy_;
    int slow_iterations_;
    int max_iterations_;
    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
    SparseMatrix matrix_;
    bool analyzed_ = false;
    bool factor_current_ = false;
    bool refactor_next_ = false;
    long factorizations_ = 0;
    double last_residual_ = 0.0;
    int last_iterations_ = 0;
};

/// Symmetric nodal operator of the form
///   G^T diag(w_edge) G + sum_l P_l w_l P_l^T + diag(d)
/// with a fixed sparsity pattern: grid edges plus extra node-to-node links
/// (lumped elements). Reassembly only rewrites the stored values.
class NodalOperator {
public:
    NodalOperator(const Grid& grid, std::vector<std::pair<Index, Index>> links);

    /// Rewrites and returns the matrix. `link_weights` may be empty when
    /// there are no links.
    const SparseMatrix& assemble(std::span<const double> edge_weights, std::span<const double> link_weights,
                                 std::span<const double> diagonal);

    [[nodiscard]] const SparseMatrix& matrix() const { return matrix_; }

private:
    struct Slots {
        Index a = 0;
        Index b = 0;
        Index ab = 0;
        Index ba = 0;
    };

    Index slot(Index row, Index col) const;

    std::vector<Slots> edge_slots_;
    std::vector<Slots> link_slots_;
    std::vector<Index> diag_slots_;
    SparseMatrix matrix_;
};

/// Blocks of K after eliminating the fixed rows and columns: K_ff acts on the
/// free unknowns and K_fc couples them to the prescribed values.
struct ReducedSystem {
    SparseMatrix free_free;
    SparseMatrix free_fixed;
};

ReducedSystem reduce_dirichlet(const SparseMatrix& k, const DirichletSet& dirichlet);

/// Solves K phi = 0 with phi fixed on the Dirichlet set; returns the full
/// nodal vector with the prescribed values reinserted.
Eigen::VectorXd solve_dirichlet(const SparseMatrix& k, const DirichletSet& dirichlet, SpdSolver& solver);

}  // namespace bondtherm
