#include "lotpricing/simplex.hpp"
#include <cstdio>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lotpricing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dictionary layout: basic variable of row i satisfies
//   x_B(i) = rhs[i] - sum_j tab[i][j] * x_N(j)
// and an objective row z = cst + sum_j cost[j] * x_N(j).  Variable ids:
// structural 0..n-1, slack n..n+m-1, artificial n+m (phase 1 only).
class Dictionary {
 public:
  Dictionary(std::vector<std::vector<double>> rows, std::vector<double> rhs,
             const std::vector<double>& objective, const SimplexOptions& opt)
      : m_(static_cast<int>(rows.size())),
        n_(static_cast<int>(objective.size())),
        ncols_(n_),
        width_(n_ + 1),
        rhs_(std::move(rhs)),
        opt_(opt) {
    tab_.assign(static_cast<std::size_t>(m_) * width_, 0.0);
    for (int i = 0; i < m_; ++i) std::copy(rows[i].begin(), rows[i].end(), row(i));
    B_.resize(m_);
    N_.resize(width_);
    for (int i = 0; i < m_; ++i) B_[i] = n_ + i;
    for (int j = 0; j < n_; ++j) N_[j] = j;
    cost1_.assign(width_, 0.0);
    cost2_.assign(width_, 0.0);
    std::copy(objective.begin(), objective.end(), cost2_.begin());
    cap_ = opt_.max_iters > 0 ? opt_.max_iters : 2000 + 50L * (m_ + n_);
  }

  LpStatus solve() {
    if (!phase_one()) return LpStatus::Infeasible;
    return run(cost2_, cst2_);
  }

  double objective_value() const { return cst2_; }

  // Ids of the basic variables of the final dictionary (structural ids are
  // < n, slack ids are n + original row index).
  const std::vector<int>& basis() const { return B_; }

  std::vector<double> values() const {
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (B_[i] < n_) x[B_[i]] = rhs_[i];
    return x;
  }

 private:
  double* row(int i) { return tab_.data() + static_cast<std::size_t>(i) * width_; }
  const double* row(int i) const { return tab_.data() + static_cast<std::size_t>(i) * width_; }

  [[noreturn]] void fail(const char* what) const { throw std::runtime_error(what); }

  void pivot(int r, int s) {
    double* pr = row(r);
    double a = pr[s];
    double inv = 1.0 / a;
    for (int j = 0; j < ncols_; ++j) pr[j] *= inv;
    rhs_[r] *= inv;
    pr[s] = inv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* pi = row(i);
      double f = pi[s];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols_; ++j) pi[j] -= f * pr[j];
      pi[s] = -f * inv;
      rhs_[i] -= f * rhs_[r];
    }
    update_cost(cost1_, cst1_, r, s);
    update_cost(cost2_, cst2_, r, s);
    std::swap(B_[r], N_[s]);
  }

  void update_cost(std::vector<double>& cost, double& cst, int r, int s) {
    double f = cost[s];
    if (f == 0.0) return;
    const double* pr = row(r);
    for (int j = 0; j < ncols_; ++j) cost[j] -= f * pr[j];
    cost[s] = -f * pr[s];
    cst += f * rhs_[r];
  }

  // Entering rule: Dantzig (most positive reduced cost) while the objective
  // is moving; Bland's smallest-id rule during degenerate stretches, which
  // rules out cycling.
  int entering(const std::vector<double>& cost, bool bland) const {
    int best = -1;
    for (int j = 0; j < ncols_; ++j) {
      if (cost[j] <= opt_.cost_tol) continue;
      if (bland ? (best == -1 || N_[j] < N_[best])
                : (best == -1 || cost[j] > cost[best]))
        best = j;
    }
    return best;
  }

  // Ratio test.  Degenerate problems leave cancellation noise in the
  // dictionary (entries and rhs values that should be exactly zero), so
  //   - pivots must be non-negligible both absolutely and relative to the
  //     largest positive entry of the column, and
  //   - slightly negative rhs values count as zero, otherwise they produce
  //     negative steps that walk the dictionary out of the feasible region.
  // Among rows attaining the minimum ratio the largest pivot wins (numerical
  // stability), or the smallest basic id in Bland mode.
  int leaving(int s, bool bland) const {
    double col_max = 0.0;
    for (int i = 0; i < m_; ++i) col_max = std::max(col_max, row(i)[s]);
    double admissible = std::max(opt_.pivot_tol, 1e-9 * col_max);

    double min_ratio = kInf;
    for (int i = 0; i < m_; ++i) {
      double a = row(i)[s];
      if (a <= admissible) continue;
      min_ratio = std::min(min_ratio, std::max(rhs_[i], 0.0) / a);
    }
    if (min_ratio == kInf) return -1;  // column unbounded
    double bound = min_ratio + min_ratio * 1e-12;
    int pick = -1;
    for (int i = 0; i < m_; ++i) {
      double a = row(i)[s];
      if (a <= admissible) continue;
      if (std::max(rhs_[i], 0.0) / a > bound) continue;
      if (pick == -1 ||
          (bland ? B_[i] < B_[pick] : a > row(pick)[s]))
        pick = i;
    }
    if (pick == -1) fail("simplex: ratio test found no admissible row");
    return pick;
  }

  LpStatus run(std::vector<double>& cost, double& cst) {
    // Highly degenerate programs (many identical tight rows, e.g. incentive
    // constraints) legitimately need thousands of zero-step pivots before the
    // objective moves, and Bland's rule walks such stretches orders of
    // magnitude slower than Dantzig.  The switch is therefore sized to the
    // problem: it only exists to break genuine cycles before the iteration
    // cap, not to police ordinary stalling.
    const long stall_cap = 1000L + m_ + ncols_;
    bool bland = false;
    long stalled = 0;
    double last = cst;
    for (;;) {
      if (++iters_ > cap_) fail("simplex: iteration limit exceeded");
      int s = entering(cost, bland);
      if (s == -1) return LpStatus::Optimal;
      int r = leaving(s, bland);
      if (r == -1) return LpStatus::Unbounded;
      pivot(r, s);
      if (cst > last + 1e-12 * (1.0 + std::abs(last))) {
        last = cst;
        stalled = 0;
        bland = false;
      } else if (++stalled > stall_cap) {
        bland = true;  // possible cycle: engage the anti-cycling rule
      }
    }
  }

  bool phase_one() {
    int worst = -1;
    for (int i = 0; i < m_; ++i)
      if (rhs_[i] < 0.0 && (worst == -1 || rhs_[i] < rhs_[worst])) worst = i;
    if (worst == -1) return true;  // slack basis already feasible

    // Append the artificial column: x_B(i) = rhs[i] - (... ) + artificial.
    int art_id = n_ + m_;
    int art_col = ncols_++;
    N_[art_col] = art_id;
    for (int i = 0; i < m_; ++i) row(i)[art_col] = -1.0;
    cost1_[art_col] = -1.0;  // maximize -artificial
    cst1_ = 0.0;

    pivot(worst, art_col);
    LpStatus st = run(cost1_, cst1_);
    if (st != LpStatus::Optimal) fail("simplex: phase one did not converge");
    if (cst1_ < -opt_.feas_tol) return false;

    // The artificial variable sits at value within feas_tol of zero; snap the
    // residual away and force it out of the basis on the largest available
    // pivot.  A small pivot here would amplify the residual into the
    // structural variables.
    for (int i = 0; i < m_; ++i) {
      if (B_[i] != art_id) continue;
      rhs_[i] = 0.0;
      int s = -1;
      for (int j = 0; j < ncols_; ++j) {
        if (N_[j] == art_id) continue;
        double a = std::abs(row(i)[j]);
        if (a > opt_.pivot_tol && (s == -1 || a > std::abs(row(i)[s]))) s = j;
      }
      if (s != -1) {
        pivot(i, s);
      } else {
        drop_row(i);  // the whole row reduced to 0 = 0
      }
      break;
    }
    int art_pos = -1;
    for (int j = 0; j < ncols_; ++j)
      if (N_[j] == art_id) art_pos = j;
    if (art_pos == -1) fail("simplex: lost track of the artificial variable");
    drop_col(art_pos);

    // Residual noise below the feasibility tolerance is snapped away so
    // phase 2 starts from a (numerically) feasible dictionary.
    for (int i = 0; i < m_; ++i)
      if (rhs_[i] < 0.0 && rhs_[i] >= -opt_.feas_tol) rhs_[i] = 0.0;
    return true;
  }

  void drop_row(int r) {
    int last = m_ - 1;
    if (r != last) {
      std::copy(row(last), row(last) + width_, row(r));
      rhs_[r] = rhs_[last];
      B_[r] = B_[last];
    }
    --m_;
  }

  void drop_col(int s) {
    int last = ncols_ - 1;
    if (s != last) {
      for (int i = 0; i < m_; ++i) row(i)[s] = row(i)[last];
      cost1_[s] = cost1_[last];
      cost2_[s] = cost2_[last];
      N_[s] = N_[last];
    }
    --ncols_;
  }

  int m_, n_, ncols_, width_;
  std::vector<double> tab_, rhs_;
  std::vector<int> B_, N_;
  std::vector<double> cost1_, cost2_;
  double cst1_ = 0.0, cst2_ = 0.0;
  const SimplexOptions& opt_;
  long iters_ = 0, cap_ = 0;
};

// Recompute the vertex named by the final basis directly from the original
// normal-form data.  Thousands of pivots leave small drift in the dictionary
// rhs, but the basis itself is combinatorial and exact: nonbasic variables
// are zero, and the rows whose slack is nonbasic hold with equality.  Solving
// those tight rows for the basic structural variables (one dense elimination,
// at most one column per structural variable) removes the drift.  Returns
// false, leaving y untouched, when the refined point is not clearly better
// (singular system, inconsistent tight rows, or a bound/row violation).
bool refine_vertex(const std::vector<std::vector<double>>& rows,
                   const std::vector<double>& rhs,
                   const std::vector<int>& basis, int nvars, double feas_tol,
                   std::vector<double>& y) {
  const int mrows = static_cast<int>(rows.size());
  std::vector<char> slack_basic(mrows, 0);
  std::vector<int> structural;
  for (int id : basis) {
    if (id < nvars)
      structural.push_back(id);
    else if (id < nvars + mrows)
      slack_basic[id - nvars] = 1;
    else
      return false;  // an artificial variable survived
  }
  std::sort(structural.begin(), structural.end());
  const int k = static_cast<int>(structural.size());
  std::vector<int> tight;
  for (int i = 0; i < mrows; ++i)
    if (!slack_basic[i]) tight.push_back(i);
  const int t = static_cast<int>(tight.size());
  if (t < k) return false;

  // Gauss-Jordan with partial pivoting on the t x (k+1) tight system.  Rows
  // beyond the rank must reduce to 0 = 0 (they were redundant copies); a
  // residual there means the basis does not describe a genuine vertex.
  const int w = k + 1;
  std::vector<double> a(static_cast<std::size_t>(t) * w);
  for (int r = 0; r < t; ++r) {
    const auto& src = rows[tight[r]];
    for (int c = 0; c < k; ++c) a[static_cast<std::size_t>(r) * w + c] = src[structural[c]];
    a[static_cast<std::size_t>(r) * w + k] = rhs[tight[r]];
  }
  for (int c = 0; c < k; ++c) {
    int best = -1;
    double mag = 1e-11;
    for (int r = c; r < t; ++r) {
      double v = std::abs(a[static_cast<std::size_t>(r) * w + c]);
      if (v > mag) {
        mag = v;
        best = r;
      }
    }
    if (best == -1) return false;  // numerically singular
    if (best != c)
      std::swap_ranges(a.begin() + static_cast<std::size_t>(c) * w,
                       a.begin() + static_cast<std::size_t>(c + 1) * w,
                       a.begin() + static_cast<std::size_t>(best) * w);
    const double* pr = a.data() + static_cast<std::size_t>(c) * w;
    double inv = 1.0 / pr[c];
    for (int r = 0; r < t; ++r) {
      if (r == c) continue;
      double* pi = a.data() + static_cast<std::size_t>(r) * w;
      double f = pi[c] * inv;
      if (f == 0.0) continue;
      for (int j = c; j <= k; ++j) pi[j] -= f * pr[j];
    }
  }
  for (int r = k; r < t; ++r)
    if (std::abs(a[static_cast<std::size_t>(r) * w + k]) > feas_tol) return false;

  std::vector<double> fresh(nvars, 0.0);
  for (int c = 0; c < k; ++c) {
    double v = a[static_cast<std::size_t>(c) * w + k] / a[static_cast<std::size_t>(c) * w + c];
    if (v < -feas_tol) return false;  // basis not primal feasible after all
    fresh[structural[c]] = v;
  }
  for (int i = 0; i < mrows; ++i) {
    double dot = 0.0;
    for (int c = 0; c < k; ++c) dot += rows[i][structural[c]] * fresh[structural[c]];
    if (dot - rhs[i] > feas_tol * std::max(1.0, std::abs(rhs[i]))) return false;
  }
  y = std::move(fresh);
  return true;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opt) {
  const std::size_t nvars = lp.objective.size();
  for (const auto& c : lp.constraints)
    if (c.coeffs.size() != nvars)
      throw std::invalid_argument("solve_lp: constraint arity must match variable count");
  if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != nvars)
    throw std::invalid_argument("solve_lp: lower bound count must match variable count");
  for (double v : lp.objective)
    if (!std::isfinite(v)) throw std::invalid_argument("solve_lp: objective must be finite");

  // Shift x = y + lower_bounds so the solver works with y >= 0 throughout.
  std::vector<double> lb(nvars, 0.0);
  if (!lp.lower_bounds.empty()) lb = lp.lower_bounds;
  double shift_const = 0.0;
  for (std::size_t j = 0; j < nvars; ++j) shift_const += lp.objective[j] * lb[j];

  // Normal form: every constraint becomes coeffs . y <= rhs.
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  auto push = [&](const std::vector<double>& a, double b, bool negate) {
    std::vector<double> r(nvars);
    double dot = 0.0;
    for (std::size_t j = 0; j < nvars; ++j) dot += a[j] * lb[j];
    double bb = b - dot;
    for (std::size_t j = 0; j < nvars; ++j) r[j] = negate ? -a[j] : a[j];
    rows.push_back(std::move(r));
    rhs.push_back(negate ? -bb : bb);
  };
  for (const auto& c : lp.constraints) {
    if (!std::isfinite(c.rhs)) throw std::invalid_argument("solve_lp: rhs must be finite");
    for (double v : c.coeffs)
      if (!std::isfinite(v)) throw std::invalid_argument("solve_lp: coefficients must be finite");
    switch (c.rel) {
      case Relation::LessEq: push(c.coeffs, c.rhs, false); break;
      case Relation::GreaterEq: push(c.coeffs, c.rhs, true); break;
      case Relation::Equal:
        push(c.coeffs, c.rhs, false);
        push(c.coeffs, c.rhs, true);
        break;
    }
  }

  Dictionary dict(rows, rhs, lp.objective, opt);  // keep rows/rhs for refinement
  LpStatus status = dict.solve();

  LpSolution out;
  out.status = status;
  if (status != LpStatus::Optimal) return out;

  std::vector<double> y = dict.values();
  refine_vertex(rows, rhs, dict.basis(), static_cast<int>(nvars), opt.feas_tol, y);
  out.values.resize(nvars);
  out.objective = shift_const;
  for (std::size_t j = 0; j < nvars; ++j) {
    double v = y[j];
    if (v < 0.0 && v >= -opt.feas_tol) v = 0.0;
    out.values[j] = v + lb[j];
    out.objective += lp.objective[j] * v;
  }

  // Cheap certificate: the reported point must satisfy the original program.
  for (const auto& c : lp.constraints) {
    double dot = 0.0;
    for (std::size_t j = 0; j < nvars; ++j) dot += c.coeffs[j] * out.values[j];
    double viol = 0.0;
    switch (c.rel) {
      case Relation::LessEq: viol = dot - c.rhs; break;
      case Relation::GreaterEq: viol = c.rhs - dot; break;
      case Relation::Equal: viol = std::abs(dot - c.rhs); break;
    }
    double scale = std::max(1.0, std::abs(c.rhs));
    if (viol > opt.feas_tol * scale) {
      char msg[96];
      std::snprintf(msg, sizeof(msg),
                    "solve_lp: reported solution violates feasibility by %.3g", viol);
      throw std::runtime_error(msg);
    }
  }
  return out;
}

std::string lp_to_string(const LinearProgram& lp) {
  std::ostringstream os;
  os << "max";
  for (std::size_t j = 0; j < lp.objective.size(); ++j)
    os << (j ? " + " : " ") << lp.objective[j] << "*x" << j;
  os << "\n";
  for (const auto& c : lp.constraints) {
    os << "  ";
    for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
      if (c.coeffs[j] == 0.0) continue;
      os << c.coeffs[j] << "*x" << j << " ";
    }
    switch (c.rel) {
      case Relation::LessEq: os << "<= "; break;
      case Relation::GreaterEq: os << ">= "; break;
      case Relation::Equal: os << "== "; break;
    }
    os << c.rhs << "\n";
  }
  if (!lp.lower_bounds.empty()) {
    os << "  bounds:";
    for (double b : lp.lower_bounds) os << " " << b;
    os << "\n";
  }
  return os.str();
}

}  // namespace lotpricing
