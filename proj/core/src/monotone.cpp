#include "paraprox/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace paraprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Validation tolerance for monotonicity / semidefiniteness of input data.
constexpr double kEigTol = 1e-10;

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_monotone(const Eigen::MatrixXd& M, const char* name) {
  if (M.rows() != M.cols()) {
    throw InvalidParams(std::string("MonotoneProblem: ") + name +
                        " must be square");
  }
  if (!M.allFinite()) {
    throw InvalidParams(std::string("MonotoneProblem: ") + name +
                        " has non-finite entries");
  }
  if (M.rows() == 0) {
    throw InvalidParams(std::string("MonotoneProblem: ") + name + " is empty");
  }
  const Eigen::MatrixXd sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.eigenvalues().minCoeff() < -kEigTol) {
    throw InvalidParams(std::string("MonotoneProblem: ") + name +
                        " is not monotone (symmetric part has eigenvalue " +
                        std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
}

Eigen::MatrixXd require_psd_symmetric(Eigen::MatrixXd P, const char* name) {
  if (P.rows() != P.cols()) {
    throw InvalidParams(std::string("MonotoneProblem: ") + name +
                        " must be square");
  }
  if (!P.allFinite()) {
    throw InvalidParams(std::string("MonotoneProblem: ") + name +
                        " has non-finite entries");
  }
  const double asym = max_abs(P - P.transpose());
  if (asym > 1e-12 * (1.0 + max_abs(P))) {
    throw InvalidParams(std::string("MonotoneProblem: ") + name +
                        " must be symmetric");
  }
  P = 0.5 * (P + P.transpose());
  if (P.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
    if (es.eigenvalues().minCoeff() < -kEigTol) {
      throw InvalidParams(std::string("MonotoneProblem: ") + name +
                          " must be positive semidefinite");
    }
  }
  return P;
}

void validate_atom(const ProxAtom& atom) {
  switch (atom.kind) {
    case ProxAtom::Kind::quadratic:
      if (!(atom.a >= 0.0) || !std::isfinite(atom.a) ||
          !std::isfinite(atom.c)) {
        throw InvalidAtom("ProxAtom: quadratic needs finite c and a >= 0");
      }
      break;
    case ProxAtom::Kind::absolute_value:
      break;
    case ProxAtom::Kind::box_indicator:
      if (std::isnan(atom.lo) || std::isnan(atom.hi) || atom.lo > atom.hi ||
          atom.lo == kInf || atom.hi == -kInf) {
        throw InvalidAtom("ProxAtom: box needs lo <= hi and a non-empty box");
      }
      break;
  }
}

double prox_atom_exact(const ProxAtom& atom, double z) {
  switch (atom.kind) {
    case ProxAtom::Kind::quadratic:
      return (z + atom.a * atom.c) / (1.0 + atom.a);
    case ProxAtom::Kind::absolute_value:
      if (z > 1.0) return z - 1.0;
      if (z < -1.0) return z + 1.0;
      return 0.0;
    case ProxAtom::Kind::box_indicator:
      return std::clamp(z, atom.lo, atom.hi);
  }
  return z;  // unreachable
}

}  // namespace

ProxAtom ProxAtom::quadratic(double a, double c) {
  ProxAtom atom;
  atom.kind = Kind::quadratic;
  atom.a = a;
  atom.c = c;
  validate_atom(atom);
  return atom;
}

ProxAtom ProxAtom::absolute_value() {
  ProxAtom atom;
  atom.kind = Kind::absolute_value;
  return atom;
}

ProxAtom ProxAtom::box(double lo, double hi) {
  ProxAtom atom;
  atom.kind = Kind::box_indicator;
  atom.lo = lo;
  atom.hi = hi;
  validate_atom(atom);
  return atom;
}

MonotoneProblem MonotoneProblem::linear(Eigen::MatrixXd M) {
  require_monotone(M, "M");
  MonotoneProblem p;
  p.family_ = ProblemFamily::linear;
  p.n_ = static_cast<std::size_t>(M.rows());
  p.M_ = std::move(M);
  return p;
}

MonotoneProblem MonotoneProblem::separable_prox(std::vector<ProxAtom> atoms) {
  if (atoms.empty()) {
    throw InvalidParams("MonotoneProblem: atom list is empty");
  }
  for (const ProxAtom& atom : atoms) {
    validate_atom(atom);
  }
  MonotoneProblem p;
  p.family_ = ProblemFamily::separable_prox;
  p.n_ = atoms.size();
  p.atoms_ = std::move(atoms);
  return p;
}

MonotoneProblem MonotoneProblem::saddle_quadratic(
    Eigen::MatrixXd P, Eigen::VectorXd q, Eigen::MatrixXd A, Eigen::VectorXd b,
    std::optional<Eigen::MatrixXd> dual_P) {
  MonotoneProblem p;
  p.family_ = ProblemFamily::saddle_quadratic;
  p.P_ = require_psd_symmetric(std::move(P), "P");
  p.n_ = static_cast<std::size_t>(p.P_.rows());
  const std::size_t m = static_cast<std::size_t>(A.rows());
  if (m == 0) {
    throw InvalidParams("MonotoneProblem: saddle needs at least one dual row");
  }
  if (static_cast<std::size_t>(A.cols()) != p.n_ ||
      static_cast<std::size_t>(q.size()) != p.n_ ||
      static_cast<std::size_t>(b.size()) != m) {
    throw InvalidParams("MonotoneProblem: saddle data dimensions disagree");
  }
  if (!A.allFinite() || !q.allFinite() || !b.allFinite()) {
    throw InvalidParams("MonotoneProblem: saddle data has non-finite entries");
  }
  p.m_ = m;
  p.A_ = std::move(A);
  p.q_ = std::move(q);
  p.b_ = std::move(b);
  if (dual_P.has_value()) {
    p.R_ = require_psd_symmetric(std::move(*dual_P), "R");
    if (static_cast<std::size_t>(p.R_.rows()) != m) {
      throw InvalidParams("MonotoneProblem: R must be m x m");
    }
  } else {
    p.R_ = Eigen::MatrixXd::Zero(m, m);
  }
  return p;
}

MonotoneProblem MonotoneProblem::convex_program_qp(Eigen::MatrixXd P,
                                                   Eigen::VectorXd q,
                                                   Eigen::MatrixXd A,
                                                   Eigen::VectorXd b) {
  MonotoneProblem p =
      saddle_quadratic(std::move(P), std::move(q), std::move(A), std::move(b));
  p.family_ = ProblemFamily::convex_program_qp;
  return p;
}

MonotoneProblem MonotoneProblem::variational_inequality(Eigen::MatrixXd G,
                                                        Eigen::VectorXd g,
                                                        Eigen::VectorXd lo,
                                                        Eigen::VectorXd hi) {
  require_monotone(G, "G");
  const std::size_t n = static_cast<std::size_t>(G.rows());
  if (static_cast<std::size_t>(g.size()) != n || !g.allFinite()) {
    throw InvalidParams("MonotoneProblem: VI offset has wrong size or NaN");
  }
  if (lo.size() == 0) lo = Eigen::VectorXd::Constant(n, -kInf);
  if (hi.size() == 0) hi = Eigen::VectorXd::Constant(n, kInf);
  if (static_cast<std::size_t>(lo.size()) != n ||
      static_cast<std::size_t>(hi.size()) != n) {
    throw InvalidParams("MonotoneProblem: VI box has wrong size");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(lo[j]) || std::isnan(hi[j]) || lo[j] > hi[j] ||
        lo[j] == kInf || hi[j] == -kInf) {
      throw InvalidParams("MonotoneProblem: VI box needs lo <= hi");
    }
  }
  MonotoneProblem p;
  p.family_ = ProblemFamily::variational_inequality;
  p.n_ = n;
  p.G_ = std::move(G);
  p.g_ = std::move(g);
  p.lo_ = std::move(lo);
  p.hi_ = std::move(hi);
  return p;
}

std::size_t MonotoneProblem::dimension() const { return n_ + m_; }

MonotoneProblem::AffineBoxForm MonotoneProblem::affine_box_form() const {
  AffineBoxForm form;
  switch (family_) {
    case ProblemFamily::linear: {
      form.G = M_;
      form.g = Eigen::VectorXd::Zero(M_.rows());
      form.lo = Eigen::VectorXd::Constant(M_.rows(), -kInf);
      form.hi = Eigen::VectorXd::Constant(M_.rows(), kInf);
      return form;
    }
    case ProblemFamily::saddle_quadratic:
    case ProblemFamily::convex_program_qp: {
      const Eigen::Index n = static_cast<Eigen::Index>(n_);
      const Eigen::Index m = static_cast<Eigen::Index>(m_);
      form.G.setZero(n + m, n + m);
      form.G.topLeftCorner(n, n) = P_;
      form.G.topRightCorner(n, m) = A_.transpose();
      form.G.bottomLeftCorner(m, n) = -A_;
      form.G.bottomRightCorner(m, m) = R_;
      form.g.resize(n + m);
      form.g.head(n) = q_;
      form.g.tail(m) = -b_;
      form.lo = Eigen::VectorXd::Constant(n + m, -kInf);
      form.hi = Eigen::VectorXd::Constant(n + m, kInf);
      if (family_ == ProblemFamily::convex_program_qp) {
        form.lo.tail(m).setZero();
      }
      return form;
    }
    case ProblemFamily::variational_inequality: {
      form.G = G_;
      form.g = g_;
      form.lo = lo_;
      form.hi = hi_;
      return form;
    }
    case ProblemFamily::separable_prox:
      break;
  }
  throw InvalidParams(
      "MonotoneProblem: separable_prox has no affine representation");
}

double MonotoneProblem::merit(const Eigen::VectorXd& point) const {
  if (static_cast<std::size_t>(point.size()) != dimension()) {
    throw DimensionMismatch("MonotoneProblem::merit: wrong point dimension");
  }
  if (family_ == ProblemFamily::separable_prox) {
    double acc = 0.0;
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
      const ProxAtom& atom = atoms_[j];
      const double t = point[static_cast<Eigen::Index>(j)];
      double dist = 0.0;
      switch (atom.kind) {
        case ProxAtom::Kind::quadratic:
          dist = std::abs(atom.a * (t - atom.c));
          break;
        case ProxAtom::Kind::absolute_value:
          dist = (t == 0.0) ? 0.0 : 1.0;
          break;
        case ProxAtom::Kind::box_indicator:
          if (t < atom.lo || t > atom.hi) return kInf;
          dist = 0.0;  // some normal-cone element is always available
          break;
      }
      acc += dist * dist;
    }
    return std::sqrt(acc);
  }

  const AffineBoxForm form = affine_box_form();
  const Eigen::VectorXd v = form.G * point + form.g;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < point.size(); ++j) {
    const double lo = form.lo[j];
    const double hi = form.hi[j];
    const double lo_tol = 1e-9 * (1.0 + std::abs(std::isfinite(lo) ? lo : 0.0));
    const double hi_tol = 1e-9 * (1.0 + std::abs(std::isfinite(hi) ? hi : 0.0));
    if (point[j] < lo - lo_tol || point[j] > hi + hi_tol) return kInf;
    double dist = std::abs(v[j]);  // interior interpretation, n = 0
    if (std::isfinite(lo) && point[j] <= lo + lo_tol) {
      dist = std::min(dist, std::max(0.0, -v[j]));
    }
    if (std::isfinite(hi) && point[j] >= hi - hi_tol) {
      dist = std::min(dist, std::max(0.0, v[j]));
    }
    acc += dist * dist;
  }
  return std::sqrt(acc);
}

bool operator==(const MonotoneProblem& a, const MonotoneProblem& b) {
  auto same = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() &&
           (x.size() == 0 || (x.array() == y.array()).all());
  };
  auto same_vec = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return x.size() == y.size() &&
           (x.size() == 0 || (x.array() == y.array()).all());
  };
  bool ref_equal =
      a.reference_solution.has_value() == b.reference_solution.has_value() &&
      (!a.reference_solution.has_value() ||
       same_vec(*a.reference_solution, *b.reference_solution));
  return a.family_ == b.family_ && a.n_ == b.n_ && a.m_ == b.m_ &&
         same(a.M_, b.M_) && a.atoms_ == b.atoms_ && same(a.P_, b.P_) &&
         same(a.A_, b.A_) && same(a.R_, b.R_) && same(a.G_, b.G_) &&
         same_vec(a.q_, b.q_) && same_vec(a.b_, b.b_) && same_vec(a.g_, b.g_) &&
         same_vec(a.lo_, b.lo_) && same_vec(a.hi_, b.hi_) && ref_equal;
}

// -- resolvents ---------------------------------------------------------------

namespace {

/// Solve (I+M)x = z with one step of iterative refinement.
Eigen::VectorXd solve_shifted(const Eigen::MatrixXd& M,
                              const Eigen::VectorXd& z) {
  const Eigen::MatrixXd B =
      Eigen::MatrixXd::Identity(M.rows(), M.cols()) + M;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
  if (!lu.isInvertible()) {
    throw SingularSystem(
        "resolvent_linear: I+M is singular; M is not monotone");
  }
  Eigen::VectorXd x = lu.solve(z);
  x += lu.solve(z - B * x);
  const double resid = (B * x - z).norm();
  if (resid > 1e-12 * (1.0 + z.norm())) {
    throw SingularSystem(
        "resolvent_linear: solve residual " + std::to_string(resid) +
        " too large; M is not monotone enough for a stable resolvent");
  }
  return x;
}

enum class CoordStatus { interior, at_lower, at_upper };

/// Solve z in (I + G)w + g + N_C(w) by enumerating boundary/interior
/// statuses of the finitely-bounded coordinates. Every principal submatrix
/// of I+G has symmetric part >= I, so each pattern is a well-posed solve.
Eigen::VectorXd box_resolvent_enumerate(
    const MonotoneProblem::AffineBoxForm& form, const Eigen::VectorXd& z,
    std::size_t cap) {
  const Eigen::Index d = form.G.rows();
  const Eigen::MatrixXd B = Eigen::MatrixXd::Identity(d, d) + form.G;

  std::vector<Eigen::Index> constrained;
  std::vector<std::vector<CoordStatus>> options;
  for (Eigen::Index j = 0; j < d; ++j) {
    const bool has_lo = std::isfinite(form.lo[j]);
    const bool has_hi = std::isfinite(form.hi[j]);
    if (!has_lo && !has_hi) continue;
    constrained.push_back(j);
    std::vector<CoordStatus> opts{CoordStatus::interior};
    if (has_lo) opts.push_back(CoordStatus::at_lower);
    if (has_hi) opts.push_back(CoordStatus::at_upper);
    options.push_back(std::move(opts));
  }
  if (constrained.size() > cap) {
    throw DimensionTooLarge(
        "box resolvent: " + std::to_string(constrained.size()) +
        " constrained coordinates exceed the enumeration cap " +
        std::to_string(cap) + "; pass a larger cap or use the inner solver");
  }

  const double scale = 1.0 + z.cwiseAbs().maxCoeff() +
                       (form.g.size() ? form.g.cwiseAbs().maxCoeff() : 0.0);
  double best_violation = kInf;
  Eigen::VectorXd best_w;

  std::vector<std::size_t> counter(constrained.size(), 0);
  while (true) {
    std::vector<CoordStatus> status(static_cast<std::size_t>(d),
                                    CoordStatus::interior);
    for (std::size_t k = 0; k < constrained.size(); ++k) {
      status[static_cast<std::size_t>(constrained[k])] = options[k][counter[k]];
    }

    std::vector<Eigen::Index> free_idx;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      switch (status[static_cast<std::size_t>(j)]) {
        case CoordStatus::interior:
          free_idx.push_back(j);
          break;
        case CoordStatus::at_lower:
          w[j] = form.lo[j];
          break;
        case CoordStatus::at_upper:
          w[j] = form.hi[j];
          break;
      }
    }

    if (!free_idx.empty()) {
      const Eigen::Index f = static_cast<Eigen::Index>(free_idx.size());
      Eigen::MatrixXd Bff(f, f);
      Eigen::VectorXd rhs(f);
      for (Eigen::Index r = 0; r < f; ++r) {
        const Eigen::Index j = free_idx[static_cast<std::size_t>(r)];
        double acc = z[j] - form.g[j];
        for (Eigen::Index c = 0; c < d; ++c) {
          if (status[static_cast<std::size_t>(c)] != CoordStatus::interior) {
            acc -= B(j, c) * w[c];
          }
        }
        rhs[r] = acc;
        for (Eigen::Index cc = 0; cc < f; ++cc) {
          Bff(r, cc) = B(j, free_idx[static_cast<std::size_t>(cc)]);
        }
      }
      const Eigen::VectorXd wf = Bff.partialPivLu().solve(rhs);
      for (Eigen::Index r = 0; r < f; ++r) {
        w[free_idx[static_cast<std::size_t>(r)]] = wf[r];
      }
    }

    const Eigen::VectorXd residual = z - B * w - form.g;  // candidate cone element
    double violation = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      switch (status[static_cast<std::size_t>(j)]) {
        case CoordStatus::interior:
          if (std::isfinite(form.lo[j])) {
            violation = std::max(violation, form.lo[j] - w[j]);
          }
          if (std::isfinite(form.hi[j])) {
            violation = std::max(violation, w[j] - form.hi[j]);
          }
          break;
        case CoordStatus::at_lower:
          violation = std::max(violation, residual[j]);  // need n <= 0
          break;
        case CoordStatus::at_upper:
          violation = std::max(violation, -residual[j]);  // need n >= 0
          break;
      }
    }

    if (violation < best_violation) {
      best_violation = violation;
      best_w = w;
    }
    if (best_violation <= 1e-12 * scale) break;

    std::size_t k = 0;
    while (k < counter.size() && ++counter[k] == options[k].size()) {
      counter[k] = 0;
      ++k;
    }
    if (k == counter.size()) break;  // all patterns tried
  }

  if (best_violation <= 1e-10 * scale) {
    return best_w;
  }
  throw NoConsistentPattern(
      "box resolvent: no boundary/interior pattern is consistent (best "
      "violation " +
      std::to_string(best_violation) + "); problem data is not monotone");
}

/// Damped projected iteration for z in (I+G)w + g + N_C(w). With
/// mu = 1 + min eig sym(G) and L = ||I+G|| the map contracts with factor
/// rho = sqrt(1 - mu^2/L^2) < 1.
Eigen::VectorXd box_resolvent_iterate(
    const MonotoneProblem::AffineBoxForm& form, const Eigen::VectorXd& z,
    double tol, int max_inner) {
  const Eigen::Index d = form.G.rows();
  const Eigen::MatrixXd B = Eigen::MatrixXd::Identity(d, d) + form.G;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
  const double L = svd.singularValues().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 *
                                                    (B + B.transpose()));
  const double mu = std::max(es.eigenvalues().minCoeff(), 1e-6);
  const double tau = mu / (L * L);
  const double rho = std::sqrt(std::max(0.0, 1.0 - (mu * mu) / (L * L)));
  // Banach bound: ||w_k - w*|| <= rho/(1-rho) ||w_k - w_{k-1}||.
  const double step_tol = rho < 1e-12 ? tol : tol * (1.0 - rho) / rho;

  auto clamp_box = [&form, d](Eigen::VectorXd v) {
    for (Eigen::Index j = 0; j < d; ++j) {
      v[j] = std::clamp(v[j], form.lo[j], form.hi[j]);
    }
    return v;
  };

  Eigen::VectorXd w = clamp_box(z);
  for (int k = 0; k < max_inner; ++k) {
    Eigen::VectorXd next = clamp_box(w - tau * (B * w + form.g - z));
    const double step = (next - w).norm();
    w = std::move(next);
    if (step <= step_tol) {
      return w;
    }
  }
  throw InnerSolverDiverged(
      "box resolvent: damped projected iteration did not reach tolerance " +
      std::to_string(tol) + " within " + std::to_string(max_inner) +
      " steps");
}

/// Scalar inclusion z in w + df(w) for one atom, solved by bisection on the
/// monotone subgradient bracket. Independent of the closed-form prox.
double prox_atom_bisect(const ProxAtom& atom, double z, double tol,
                        int max_inner) {
  // -1: solution lies right of w; +1: left of w; 0: w solves the inclusion.
  auto classify = [&atom, z](double w) -> int {
    double sub_lo = 0.0;
    double sub_hi = 0.0;
    switch (atom.kind) {
      case ProxAtom::Kind::quadratic:
        sub_lo = sub_hi = atom.a * (w - atom.c);
        break;
      case ProxAtom::Kind::absolute_value:
        sub_lo = w > 0.0 ? 1.0 : -1.0;
        sub_hi = w < 0.0 ? -1.0 : 1.0;
        break;
      case ProxAtom::Kind::box_indicator:
        if (w < atom.lo) return -1;
        if (w > atom.hi) return +1;
        sub_lo = (w <= atom.lo) ? -kInf : 0.0;
        sub_hi = (w >= atom.hi) ? kInf : 0.0;
        break;
    }
    if (w - z + sub_hi < 0.0) return -1;
    if (w - z + sub_lo > 0.0) return +1;
    return 0;
  };

  double a = z - 1.0;
  double b = z + 1.0;
  double width = 1.0;
  int spent = 0;
  while (classify(a) == +1) {
    width *= 2.0;
    a -= width;
    if (++spent > 200) {
      throw InnerSolverDiverged("prox bisection: no lower bracket");
    }
  }
  while (classify(b) == -1) {
    width *= 2.0;
    b += width;
    if (++spent > 200) {
      throw InnerSolverDiverged("prox bisection: no upper bracket");
    }
  }
  for (int k = 0; k < max_inner; ++k) {
    if (b - a <= tol) {
      return 0.5 * (a + b);
    }
    const double mid = 0.5 * (a + b);
    const int c = classify(mid);
    if (c == 0) return mid;
    if (c < 0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  throw InnerSolverDiverged("prox bisection: interval did not shrink to " +
                            std::to_string(tol) + " within " +
                            std::to_string(max_inner) + " steps");
}

void require_family(const MonotoneProblem& prob, ProblemFamily family,
                    const char* where) {
  if (prob.family() != family) {
    throw InvalidParams(std::string(where) +
                        ": problem belongs to a different family");
  }
}

Eigen::VectorXd to_eigen(const BlockVector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data().data(),
                                           static_cast<Eigen::Index>(v.size()));
}

BlockVector from_eigen(const BlockPartition& partition,
                       const Eigen::VectorXd& v) {
  return BlockVector(partition,
                     std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

BlockVector resolvent_linear(const Eigen::MatrixXd& M, const BlockVector& z) {
  if (M.rows() != M.cols() ||
      static_cast<std::size_t>(M.rows()) != z.size()) {
    throw DimensionMismatch("resolvent_linear: M and z dimensions disagree");
  }
  return from_eigen(z.partition(), solve_shifted(M, to_eigen(z)));
}

BlockVector prox_separable(const std::vector<ProxAtom>& atoms,
                           const BlockVector& z) {
  if (atoms.size() != z.size()) {
    throw DimensionMismatch("prox_separable: one atom per coordinate");
  }
  BlockVector out = z;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    validate_atom(atoms[j]);
    out[j] = prox_atom_exact(atoms[j], z[j]);
  }
  return out;
}

SaddlePoint resolvent_saddle(const MonotoneProblem& prob, const SaddlePoint& z,
                             std::size_t enumeration_cap) {
  if (prob.family() != ProblemFamily::saddle_quadratic &&
      prob.family() != ProblemFamily::convex_program_qp) {
    throw InvalidParams("resolvent_saddle: not a saddle-family problem");
  }
  if (z.x.size() != prob.primal_dimension() ||
      z.y.size() != prob.dual_dimension()) {
    throw DimensionMismatch("resolvent_saddle: point dimensions disagree");
  }
  Eigen::VectorXd flat(z.x.size() + z.y.size());
  flat.head(static_cast<Eigen::Index>(z.x.size())) = to_eigen(z.x);
  flat.tail(static_cast<Eigen::Index>(z.y.size())) = to_eigen(z.y);
  const Eigen::VectorXd w =
      box_resolvent_enumerate(prob.affine_box_form(), flat, enumeration_cap);
  SaddlePoint out{BlockVector(z.x.partition()), BlockVector(z.y.partition())};
  for (std::size_t i = 0; i < z.x.size(); ++i) {
    out.x[i] = w[static_cast<Eigen::Index>(i)];
  }
  for (std::size_t i = 0; i < z.y.size(); ++i) {
    out.y[i] = w[static_cast<Eigen::Index>(z.x.size() + i)];
  }
  return out;
}

BlockVector resolvent_vi(const MonotoneProblem& prob, const BlockVector& z,
                         std::size_t enumeration_cap) {
  require_family(prob, ProblemFamily::variational_inequality, "resolvent_vi");
  if (z.size() != prob.dimension()) {
    throw DimensionMismatch("resolvent_vi: point dimension disagrees");
  }
  return from_eigen(z.partition(),
                    box_resolvent_enumerate(prob.affine_box_form(),
                                            to_eigen(z), enumeration_cap));
}

BlockVector iterative_resolvent(const MonotoneProblem& prob,
                                const BlockVector& z, double tol,
                                int max_inner) {
  if (!(tol > 0.0)) {
    throw InvalidParams("iterative_resolvent: tol must be > 0");
  }
  if (max_inner < 1) {
    throw InvalidParams("iterative_resolvent: max_inner must be >= 1");
  }
  if (z.size() != prob.dimension()) {
    throw DimensionMismatch("iterative_resolvent: point dimension disagrees");
  }
  if (prob.family() == ProblemFamily::separable_prox) {
    BlockVector out = z;
    const double per_coord =
        tol / std::sqrt(static_cast<double>(std::max<std::size_t>(z.size(), 1)));
    for (std::size_t j = 0; j < z.size(); ++j) {
      out[j] = prox_atom_bisect(prob.atoms()[j], z[j], per_coord, max_inner);
    }
    return out;
  }
  return from_eigen(z.partition(),
                    box_resolvent_iterate(prob.affine_box_form(), to_eigen(z),
                                          tol, max_inner));
}

double evaluate_dual(const MonotoneProblem& prob, const Eigen::VectorXd& y) {
  require_family(prob, ProblemFamily::convex_program_qp, "evaluate_dual");
  if (static_cast<std::size_t>(y.size()) != prob.dual_dimension()) {
    throw DimensionMismatch("evaluate_dual: y has wrong dimension");
  }
  if ((y.array() < 0.0).any()) {
    throw InvalidParams("evaluate_dual: y must be componentwise >= 0");
  }
  const Eigen::MatrixXd& P = prob.quadratic_term();
  const Eigen::VectorXd rhs =
      -(prob.linear_term() + prob.constraint_matrix().transpose() * y);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
  Eigen::VectorXd x;
  if (es.eigenvalues().minCoeff() > 1e-10 * (1.0 + max_abs(P))) {
    x = P.ldlt().solve(rhs);
  } else {
    // P is singular: the infimum is finite only when the stationarity
    // equation is consistent.
    x = P.completeOrthogonalDecomposition().solve(rhs);
    if ((P * x - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) {
      throw DualUnbounded(
          "evaluate_dual: L(., y) is unbounded below for this y");
    }
  }
  const double f0 = 0.5 * x.dot(P * x) + prob.linear_term().dot(x);
  return f0 + y.dot(prob.constraint_matrix() * x + prob.constraint_offset());
}

GridSearchResult brute_force_zero(const MonotoneProblem& prob,
                                  const GridSpec& grid) {
  const std::size_t d = prob.dimension();
  if (static_cast<std::size_t>(grid.lo.size()) != d ||
      static_cast<std::size_t>(grid.hi.size()) != d) {
    throw DimensionMismatch("brute_force_zero: grid bounds have wrong size");
  }
  if (!(grid.step > 0.0)) {
    throw InvalidParams("brute_force_zero: step must be > 0");
  }

  std::vector<std::size_t> counts(d);
  double total = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    if (!(grid.lo[static_cast<Eigen::Index>(j)] <=
          grid.hi[static_cast<Eigen::Index>(j)])) {
      throw InvalidParams("brute_force_zero: grid needs lo <= hi");
    }
    counts[j] = static_cast<std::size_t>(
                    std::floor((grid.hi[static_cast<Eigen::Index>(j)] -
                                grid.lo[static_cast<Eigen::Index>(j)]) /
                                   grid.step +
                               1e-9)) +
                1;
    total *= static_cast<double>(counts[j]);
  }
  if (total > 2e7) {
    throw InvalidParams("brute_force_zero: grid has too many points");
  }

  std::vector<std::size_t> index(d, 0);
  Eigen::VectorXd point(d);
  Eigen::VectorXd best_point(d);
  double best_merit = kInf;
  bool done = false;
  while (!done) {
    for (std::size_t j = 0; j < d; ++j) {
      point[static_cast<Eigen::Index>(j)] =
          grid.lo[static_cast<Eigen::Index>(j)] +
          static_cast<double>(index[j]) * grid.step;
    }
    const double m = prob.merit(point);
    if (m < best_merit) {
      best_merit = m;
      best_point = point;
    }
    std::size_t j = d;
    done = true;
    while (j > 0) {
      --j;
      if (++index[j] < counts[j]) {
        done = false;
        break;
      }
      index[j] = 0;
    }
  }

  if (best_merit > grid.merit_threshold) {
    throw GridTooCoarse("brute_force_zero: best merit " +
                        std::to_string(best_merit) +
                        " exceeds the declared threshold " +
                        std::to_string(grid.merit_threshold));
  }
  return {std::move(best_point), best_merit};
}

Eigen::VectorXd resolve_point(const MonotoneProblem& prob,
                              const Eigen::VectorXd& z) {
  switch (prob.family()) {
    case ProblemFamily::linear:
      return solve_shifted(prob.matrix(), z);
    case ProblemFamily::separable_prox: {
      Eigen::VectorXd out(z.size());
      for (Eigen::Index j = 0; j < z.size(); ++j) {
        out[j] = prox_atom_exact(prob.atoms()[static_cast<std::size_t>(j)],
                                 z[j]);
      }
      return out;
    }
    case ProblemFamily::saddle_quadratic:
    case ProblemFamily::convex_program_qp:
    case ProblemFamily::variational_inequality: {
      const auto form = prob.affine_box_form();
      std::size_t constrained = 0;
      for (Eigen::Index j = 0; j < form.lo.size(); ++j) {
        if (std::isfinite(form.lo[j]) || std::isfinite(form.hi[j])) {
          ++constrained;
        }
      }
      if (constrained <= kDefaultEnumerationCap) {
        return box_resolvent_enumerate(form, z, kDefaultEnumerationCap);
      }
      const double tol = 1e-12 * (1.0 + z.cwiseAbs().maxCoeff());
      return box_resolvent_iterate(form, z, tol, 1'000'000);
    }
  }
  throw InvalidParams("resolve_point: unknown family");
}

namespace {

/// (I+T)^{-1} wrapped as a fixed-point operator on the flat space.
class ResolventOperator final : public FixedPointOperator {
 public:
  ResolventOperator(MonotoneProblem prob, BlockPartition partition)
      : FixedPointOperator(std::move(partition), /*claims_h2=*/false,
                           /*claims_h3=*/true),
        prob_(std::move(prob)) {}

 private:
  void do_apply(const BlockVector& x, BlockVector& out) const override {
    try {
      const Eigen::VectorXd w = resolve_point(prob_, to_eigen(x));
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = w[static_cast<Eigen::Index>(i)];
      }
    } catch (const Error& e) {
      throw EvaluationFailure(std::string("resolvent evaluation failed: ") +
                              e.what());
    }
  }

  MonotoneProblem prob_;
};

}  // namespace

std::unique_ptr<FixedPointOperator> as_fixed_point_operator(
    const MonotoneProblem& prob, BlockPartition partition) {
  if (partition.total() != prob.dimension()) {
    throw DimensionMismatch(
        "as_fixed_point_operator: partition covers " +
        std::to_string(partition.total()) + " coordinates, problem has " +
        std::to_string(prob.dimension()));
  }
  return std::make_unique<ResolventOperator>(prob, std::move(partition));
}

}  // namespace paraprox
