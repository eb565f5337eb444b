#include "bondtherm/bondwire.hpp"
#include "bondtherm/error.hpp"
#include "bondtherm/linear_solver.hpp"

#include "catch_amalgamated.hpp"
#include "support.hpp"

#include <Eigen/Eigenvalues>

#include <random>

using namespace bondtherm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Eigen::VectorXd random_vector(std::mt19937_64& rng, Index n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::VectorXd v(n);
    for (Index i = 0; i < n; ++i) v[i] = u(rng);
    return v;
}

std::span<const double> view(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace

TEST_CASE("nodal operator equals G^T W G plus stamps plus diagonal") {
    std::mt19937_64 rng(11);
    const Grid g = Grid::build({testing::random_ticks(rng, 3, 5), testing::random_ticks(rng, 3, 5),
                                testing::random_ticks(rng, 2, 4)});
    const Index n = g.node_count();
    const std::vector<std::pair<Index, Index>> links{{0, n - 1}, {1, n - 2}, {0, 1}};
    NodalOperator op(g, links);

    const Eigen::VectorXd w = random_vector(rng, g.edge_count(), 0.1, 2.0);
    const Eigen::VectorXd lw = random_vector(rng, 3, 0.5, 5.0);
    const Eigen::VectorXd d = random_vector(rng, n, 0.0, 1.0);
    const SparseMatrix& k = op.assemble(view(w), view(lw), view(d));

    const SparseMatrix grad = gradient_operator(g);
    SparseMatrix expected = SparseMatrix(grad.transpose()) * w.asDiagonal() * grad;
    for (std::size_t l = 0; l < links.size(); ++l) {
        stamp_conductance(expected, {links[l].first, links[l].second, 1.0}, lw[static_cast<Index>(l)]);
    }
    for (Index i = 0; i < n; ++i) expected.coeffRef(i, i) += d[i];
    CHECK((Eigen::MatrixXd(k) - Eigen::MatrixXd(expected)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((Eigen::MatrixXd(k) - Eigen::MatrixXd(k).transpose()).norm() == 0.0);

    // Reassembly with new values keeps the pattern and reflects the values
    const Eigen::VectorXd w2 = 2.0 * w;
    const Eigen::VectorXd lw2 = 2.0 * lw;
    const Eigen::VectorXd d2 = 2.0 * d;
    const SparseMatrix& k2 = op.assemble(view(w2), view(lw2), view(d2));
    CHECK((Eigen::MatrixXd(k2) - 2.0 * Eigen::MatrixXd(expected)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("conduction operator without diagonal annihilates constants and is PSD") {
    std::mt19937_64 rng(5);
    const Grid g = Grid::build({testing::random_ticks(rng, 3, 4), testing::random_ticks(rng, 3, 4),
                                testing::random_ticks(rng, 2, 3)});
    NodalOperator op(g, {{0, g.node_count() - 1}});
    const Eigen::VectorXd w = random_vector(rng, g.edge_count(), 0.1, 2.0);
    const Eigen::VectorXd lw = Eigen::VectorXd::Constant(1, 3.0);
    const Eigen::VectorXd d = Eigen::VectorXd::Zero(g.node_count());
    const SparseMatrix& k = op.assemble(view(w), view(lw), view(d));
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.node_count());
    CHECK((k * ones).cwiseAbs().maxCoeff() < 1e-12);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::VectorXd x = random_vector(rng, g.node_count(), -1.0, 1.0);
        CHECK(x.dot(k * x) >= -1e-12);
    }
}

TEST_CASE("SPD solver reaches the residual target") {
    std::mt19937_64 rng(2);
    const Grid g = Grid::build({testing::uniform_ticks(0, 1, 9), testing::uniform_ticks(0, 1, 7),
                                testing::uniform_ticks(0, 1, 4)});
    NodalOperator op(g, {});
    const Eigen::VectorXd w = random_vector(rng, g.edge_count(), 0.5, 1.5);
    const Eigen::VectorXd d = random_vector(rng, g.node_count(), 0.01, 0.1);
    const SparseMatrix a = op.assemble(view(w), {}, view(d));
    const Eigen::VectorXd b = random_vector(rng, g.node_count(), -1.0, 1.0);

    SpdSolver solver(1e-10);
    solver.factorize(a);
    const Eigen::VectorXd x = solver.solve(b);
    CHECK((b - a * x).norm() / b.norm() <= 1e-10);
    CHECK(solver.last_residual() <= 1e-10);

    Eigen::SimplicialLLT<SparseMatrix> reference(a);
    const Eigen::VectorXd xr = reference.solve(b);
    CHECK((x - xr).norm() / xr.norm() < 1e-8);
}

TEST_CASE("stale factorization as preconditioner") {
    std::mt19937_64 rng(8);
    const Grid g = Grid::build({testing::uniform_ticks(0, 1, 12), testing::uniform_ticks(0, 1, 10),
                                testing::uniform_ticks(0, 1, 3)});
    NodalOperator op(g, {});
    Eigen::VectorXd w = random_vector(rng, g.edge_count(), 0.5, 1.5);
    const Eigen::VectorXd d = random_vector(rng, g.node_count(), 0.01, 0.1);
    const Eigen::VectorXd b = random_vector(rng, g.node_count(), -1.0, 1.0);

    SpdSolver solver(1e-10, SpdSolver::Refactor::WhenSlow);
    solver.factorize(op.assemble(view(w), {}, view(d)));
    solver.solve(b);
    CHECK(solver.factorizations() == 1);

    // Small drift of the coefficients: same pattern, the old factor is kept
    w *= 1.01;
    const SparseMatrix a = op.assemble(view(w), {}, view(d));
    solver.factorize(a);
    const Eigen::VectorXd x = solver.solve(b);
    CHECK(solver.factorizations() == 1);
    CHECK((b - a * x).norm() / b.norm() <= 1e-10);
    CHECK(solver.last_iterations() > 0);

    // A warm start at the solution needs no iterations
    solver.solve(b, &x);
    CHECK(solver.last_iterations() <= 1);

    // Under the Always policy every factorize call refactors
    SpdSolver eager(1e-10);
    eager.factorize(a);
    eager.factorize(a);
    CHECK(eager.factorizations() == 2);
}

TEST_CASE("indefinite matrices are reported") {
    SparseMatrix a(2, 2);
    a.insert(0, 0) = 1.0;
    a.insert(1, 1) = -1.0;
    a.makeCompressed();
    SpdSolver solver;
    CHECK_THROWS_AS(solver.factorize(a), NumericalError);
}

TEST_CASE("Dirichlet reduction") {
    // 1D chain of three unit conductances: 0 - 1 - 2 - 3, ends fixed at 1 and 0
    SparseMatrix k(4, 4);
    for (Index i = 0; i < 3; ++i) stamp_conductance(k, {i, i + 1, 1.0}, 1.0);
    DirichletSet d;
    d.fixed_nodes = {0, 3};
    d.fixed_values = {1.0, 0.0};
    d.free_nodes = {1, 2};
    d.reduced_index = {-1, 0, 1, -1};
    const ReducedSystem r = reduce_dirichlet(k, d);
    CHECK(r.free_free.rows() == 2);
    CHECK(r.free_fixed.cols() == 2);
    CHECK(r.free_free.coeff(0, 0) == 2.0);
    CHECK(r.free_fixed.coeff(0, 0) == -1.0);
    SpdSolver solver;
    const Eigen::VectorXd phi = solve_dirichlet(k, d, solver);
    CHECK(phi[0] == 1.0);
    CHECK(phi[3] == 0.0);
    CHECK_THAT(phi[1], WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(phi[2], WithinAbs(1.0 / 3.0, 1e-12));

    // Everything fixed: no solve, values reinserted
    DirichletSet all;
    all.fixed_nodes = {0, 1, 2, 3};
    all.fixed_values = {0.5, 0.5, 0.5, 0.5};
    all.reduced_index = {-1, -1, -1, -1};
    CHECK(solve_dirichlet(k, all, solver) == Eigen::VectorXd::Constant(4, 0.5));
}
