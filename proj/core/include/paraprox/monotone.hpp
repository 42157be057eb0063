#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "paraprox/blockspace.hpp"
#include "paraprox/operators.hpp"

namespace paraprox {

enum class ProblemFamily {
  linear,
  separable_prox,
  saddle_quadratic,
  convex_program_qp,
  variational_inequality,
};

/// One coordinate of a separable convex function.
struct ProxAtom {
  enum class Kind { quadratic, absolute_value, box_indicator };

  Kind kind = Kind::quadratic;
  double a = 0.0;  // quadratic: f(t) = (a/2)(t - c)^2, a >= 0
  double c = 0.0;
  double lo = 0.0;  // box_indicator bounds, possibly infinite
  double hi = 0.0;

  static ProxAtom quadratic(double a, double c);
  static ProxAtom absolute_value();
  static ProxAtom box(double lo, double hi);

  friend bool operator==(const ProxAtom&, const ProxAtom&) = default;
};

/**
 * A cataloged monotone operator T with an exactly solvable resolvent
 * (I+T)^{-1}. Five families:
 *
 *  - linear:                 T = M with <Mx,x> >= 0
 *  - separable_prox:         T = subdifferential of a separable convex f
 *  - saddle_quadratic:       T(x,y) = (Px+q+A'y, -Ax-b+Ry), y free
 *  - convex_program_qp:      same with R = 0 plus the cone term N_{R+^m}(y);
 *                            the Lagrangian operator of
 *                            min (1/2)x'Px + q'x s.t. Ax + b <= 0
 *  - variational_inequality: T = G.+g + N_C with C a box (default C = R^n)
 *
 * All data is validated at construction: monotonicity of M and G, positive
 * semidefiniteness of P and R, atom parameter ranges, box bound ordering.
 * Instances are immutable; resolvent evaluations are pure.
 */
class MonotoneProblem {
 public:
  /// @throws InvalidParams if the symmetric part of M has an eigenvalue
  ///         below -1e-10 (scaled)
  static MonotoneProblem linear(Eigen::MatrixXd M);
  /// @throws InvalidAtom
  static MonotoneProblem separable_prox(std::vector<ProxAtom> atoms);
  /// dual_P adds a concave quadratic -(1/2)y'Ry in the dual variable;
  /// defaults to zero. @throws InvalidParams
  static MonotoneProblem saddle_quadratic(
      Eigen::MatrixXd P, Eigen::VectorXd q, Eigen::MatrixXd A,
      Eigen::VectorXd b, std::optional<Eigen::MatrixXd> dual_P = {});
  /// @throws InvalidParams
  static MonotoneProblem convex_program_qp(Eigen::MatrixXd P, Eigen::VectorXd q,
                                           Eigen::MatrixXd A,
                                           Eigen::VectorXd b);
  /// Empty bounds mean unconstrained (C = R^n). @throws InvalidParams
  static MonotoneProblem variational_inequality(Eigen::MatrixXd G,
                                                Eigen::VectorXd g,
                                                Eigen::VectorXd lo = {},
                                                Eigen::VectorXd hi = {});

  ProblemFamily family() const { return family_; }
  /// Ambient dimension: n for linear/prox/vi, n+m for the saddle families.
  std::size_t dimension() const;
  std::size_t primal_dimension() const { return n_; }
  std::size_t dual_dimension() const { return m_; }

  const Eigen::MatrixXd& matrix() const { return M_; }
  const std::vector<ProxAtom>& atoms() const { return atoms_; }
  const Eigen::MatrixXd& quadratic_term() const { return P_; }
  const Eigen::VectorXd& linear_term() const { return q_; }
  const Eigen::MatrixXd& constraint_matrix() const { return A_; }
  const Eigen::VectorXd& constraint_offset() const { return b_; }
  const Eigen::MatrixXd& dual_quadratic_term() const { return R_; }
  const Eigen::MatrixXd& vi_matrix() const { return G_; }
  const Eigen::VectorXd& vi_offset() const { return g_; }
  const Eigen::VectorXd& box_lower() const { return lo_; }
  const Eigen::VectorXd& box_upper() const { return hi_; }

  /// Flattened view z in (I + G. + g + N_C)(w) shared by the coupled
  /// resolvents. Defined for every family except separable_prox.
  struct AffineBoxForm {
    Eigen::MatrixXd G;
    Eigen::VectorXd g;
    Eigen::VectorXd lo;  // -inf where unconstrained
    Eigen::VectorXd hi;  // +inf where unconstrained
  };
  /// @throws InvalidParams for separable_prox
  AffineBoxForm affine_box_form() const;

  /// Distance of 0 to T(point): ||Mx|| for linear, subgradient distance for
  /// prox, inclusion residual for the box families. +inf outside the domain.
  double merit(const Eigen::VectorXd& point) const;

  /// Untrusted hint carried through problem files; tests recompute zeros
  /// with brute_force_zero instead of believing this.
  std::optional<Eigen::VectorXd> reference_solution;

  friend bool operator==(const MonotoneProblem& a, const MonotoneProblem& b);

 private:
  MonotoneProblem() = default;

  ProblemFamily family_ = ProblemFamily::linear;
  std::size_t n_ = 0;  // primal dimension
  std::size_t m_ = 0;  // dual dimension (saddle families)
  Eigen::MatrixXd M_;
  std::vector<ProxAtom> atoms_;
  Eigen::MatrixXd P_, A_, R_, G_;
  Eigen::VectorXd q_, b_, g_, lo_, hi_;
};

/// Primal/dual pair for the saddle families.
struct SaddlePoint {
  BlockVector x;  // dimension n
  BlockVector y;  // dimension m; >= 0 componentwise at convex-program zeros

  friend bool operator==(const SaddlePoint&, const SaddlePoint&) = default;
};

/// Solve (I+M)x = z to residual <= 1e-12 (1+||z||).
/// @throws SingularSystem if the solve fails, which requires M non-monotone
BlockVector resolvent_linear(const Eigen::MatrixXd& M, const BlockVector& z);

/// Coordinatewise resolvent of a separable subdifferential:
/// quadratic (z+ac)/(1+a); absolute value sign(z) max(|z|-1, 0);
/// box indicator clamp(z, lo, hi).
/// @throws InvalidAtom, DimensionMismatch
BlockVector prox_separable(const std::vector<ProxAtom>& atoms,
                           const BlockVector& z);

inline constexpr std::size_t kDefaultEnumerationCap = 20;

/// Resolvent of the saddle operator, computed by enumerating boundary /
/// interior patterns of the constrained dual coordinates; each pattern is one
/// linear solve accepted only when its bounds and multiplier signs are
/// consistent. Residual <= 1e-10 (scaled).
/// @throws NoConsistentPattern, DimensionTooLarge
SaddlePoint resolvent_saddle(const MonotoneProblem& prob, const SaddlePoint& z,
                             std::size_t enumeration_cap = kDefaultEnumerationCap);

/// Resolvent of G.+g + N_C by per-coordinate pattern enumeration (lower /
/// upper / interior), same consistency rules as resolvent_saddle.
/// @throws NoConsistentPattern, DimensionTooLarge
BlockVector resolvent_vi(const MonotoneProblem& prob, const BlockVector& z,
                         std::size_t enumeration_cap = kDefaultEnumerationCap);

/// Inner solver usable past the enumeration cap: damped projected iteration
/// for the affine families (contraction factor sqrt(1 - mu^2/L^2) < 1),
/// bisection on the monotone scalar inclusion for separable_prox. The result
/// is within tol of the direct resolvent.
/// @throws InnerSolverDiverged after max_inner steps
BlockVector iterative_resolvent(const MonotoneProblem& prob,
                                const BlockVector& z, double tol,
                                int max_inner);

/// Dual functional of a convex program: g0(y) = inf_x L(x,y), by the
/// closed-form minimizer of the quadratic. Requires y >= 0.
/// @throws DualUnbounded when L(.,y) has no finite infimum
double evaluate_dual(const MonotoneProblem& prob, const Eigen::VectorXd& y);

/// Rectangular grid for brute_force_zero.
struct GridSpec {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  double step = 0.0;
  double merit_threshold = 1e-6;
};

struct GridSearchResult {
  Eigen::VectorXd point;
  double merit = 0.0;
};

/// Exhaustive merit minimization over the grid; the independent reference
/// for zeros of T in tests. Deterministic: first lexicographic argmin wins.
/// @throws GridTooCoarse when the best merit exceeds grid.merit_threshold
GridSearchResult brute_force_zero(const MonotoneProblem& prob,
                                  const GridSpec& grid);

/// Wraps the resolvent as a fixed-point operator (claims_h3 = true,
/// claims_h2 = false). Evaluation computes the full resolvent; block
/// components are slices of it. For the saddle families the operator acts on
/// the concatenated (x, y) point.
/// @throws DimensionMismatch if partition.total() != prob.dimension()
std::unique_ptr<FixedPointOperator> as_fixed_point_operator(
    const MonotoneProblem& prob, BlockPartition partition);

/// Exact resolvent at a flat point; dispatches per family. The coupled
/// families fall back to the iterative path past the enumeration cap.
Eigen::VectorXd resolve_point(const MonotoneProblem& prob,
                              const Eigen::VectorXd& z);

}  // namespace paraprox
