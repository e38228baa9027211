#include "sda/solver.hpp"

#include <Eigen/SparseLU>

#include <cctype>
#include <string>

namespace sda {

namespace {

// Eigen reports a zero pivot as "... ZERO COLUMN AT <j+1>" with j indexing
// the fill-reducing column order; map it back to an original column.
int parse_pivot_column(const std::string& msg,
                       const Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int>& perm) {
  std::size_t end = msg.size();
  while (end > 0 && std::isspace(static_cast<unsigned char>(msg[end - 1]))) --end;
  std::size_t begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(msg[begin - 1]))) --begin;
  if (begin == end) return -1;
  const int permuted = std::stoi(msg.substr(begin, end - begin)) - 1;
  if (permuted < 0 || permuted >= perm.size()) return -1;
  for (int j = 0; j < perm.size(); ++j) {
    if (perm.indices()(j) == permuted) return j;
  }
  return -1;
}

}  // namespace

VectorX solve_vector(const CoupledSystem& sys, Real residual_tol,
                     SolveReport* report) {
  if (sys.A.rows() != sys.A.cols() || sys.A.rows() != sys.b.size()) {
    throw SolverError("solve: system dimensions are inconsistent");
  }

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(sys.A);
  lu.factorize(sys.A);
  if (lu.info() != Eigen::Success) {
    const std::string msg = lu.lastErrorMessage();
    const int col = parse_pivot_column(msg, lu.colsPermutation());
    std::string what = "solve: factorization failed (" + msg + ")";
    if (col >= 0) {
      what += "; column " + std::to_string(col) + " lies in the " +
              sys.field_of(col) + " block";
    }
    throw SolverError(what);
  }

  const VectorX x = lu.solve(sys.b);
  if (lu.info() != Eigen::Success) {
    throw SolverError("solve: back substitution failed");
  }

  const Real bnorm = sys.b.size() ? sys.b.cwiseAbs().maxCoeff() : 0.0;
  const Real rnorm = (sys.A * x - sys.b).cwiseAbs().maxCoeff();
  Real residual;
  if (bnorm > 0.0) {
    residual = rnorm / bnorm;
    if (!(residual <= residual_tol)) {
      throw SolverError("solve: relative residual " + std::to_string(residual) +
                        " exceeds tolerance");
    }
  } else {
    residual = rnorm;
    if (!(residual <= 1e-12)) {
      throw SolverError("solve: residual " + std::to_string(residual) +
                        " nonzero for a zero right-hand side");
    }
  }
  if (report) {
    report->residual = residual;
    report->multiplier = sys.multiplier(x);
  }
  return x;
}

DiscreteSolution solve(const CoupledSystem& sys, Real residual_tol,
                       SolveReport* report) {
  const VectorX x = solve_vector(sys, residual_tol, report);
  return DiscreteSolution(*sys.mesh, *sys.layout, sys.expand(x));
}

}  // namespace sda
