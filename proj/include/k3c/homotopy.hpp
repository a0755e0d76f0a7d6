#pragma once

#include <functional>
#include <string>
#include <vector>

#include "k3c/mpoly.hpp"
#include "k3c/rng.hpp"

namespace k3c {

struct TrackerConfig {
  double newton_tol = 1e-12;
  int max_newton = 6;
  double initial_step = 0.05;
  double min_step = 1e-8;
  double grow = 1.5;
  double shrink = 0.5;
  double success_residual = 1e-10;
  int sharpen_iters = 3;
  double infinity_norm = 1e8;
  double dedupe_tol = 1e-6;
  double max_failure_fraction = 0.05;
  int threads = 0;  // 0 = hardware concurrency

  // Excess paths of a total-degree start can diverge slowly and stall just
  // short of s = 1 without reaching the norm cutoff. With the endgame on, a
  // path stalling past endgame_start gets a direct Newton attempt on the
  // target system: convergence makes it a genuine endpoint, otherwise it is
  // classified divergent. Kept off for monodromy loops, where a Newton jump
  // could silently swap fibre points.
  bool endgame_newton = false;
  double endgame_start = 0.99;

  void validate() const;
};

/// A family of square systems H(x, s), s in [0, 1], smooth in s.
class Homotopy {
 public:
  virtual ~Homotopy() = default;
  virtual int nvars() const = 0;
  virtual CVec eval(double s, const CVec& x) const = 0;
  virtual CMat jacobian(double s, const CVec& x) const = 0;
  virtual CVec ds(double s, const CVec& x) const = 0;
  /// Magnitude of the terms feeding H(x, 1): residuals are measured relative
  /// to this, so machine-precision zeros of large-degree equations at large
  /// points still read as zeros.
  virtual double residual_scale(const CVec& x) const {
    (void)x;
    return 1.0;
  }
};

/// (1 - s) gamma A(x) + s B(x); the random complex gamma keeps the path off
/// the discriminant for all but finitely many gamma (the usual trick).
class LinearHomotopy : public Homotopy {
 public:
  LinearHomotopy(const PolySystem& a, const PolySystem& b, Cplx gamma);
  int nvars() const override { return a_->nvars; }
  CVec eval(double s, const CVec& x) const override;
  CMat jacobian(double s, const CVec& x) const override;
  CVec ds(double s, const CVec& x) const override;
  double residual_scale(const CVec& x) const override;

 private:
  const PolySystem* a_;
  const PolySystem* b_;
  Cplx gamma_;
  double coeff_sum_ = 1.0;  // largest sum of |coefficients| over the target equations
  int max_degree_ = 1;
};

enum class PathStatus { Converged, AtInfinity, Failed };

struct PathResult {
  CVec point;
  double residual = 0;
  PathStatus status = PathStatus::Failed;
  double last_s = 0;  // how far the path got
  int start_index = -1;
};

struct SolutionSet {
  std::vector<CVec> points;
  std::vector<double> residuals;
  std::vector<bool> multiplicity_suspect;
  std::vector<int> provenance;

  size_t size() const { return points.size(); }
  void push(const CVec& p, double res, bool suspect, int prov);
};

/// Adaptive 4th-order predictor / Newton corrector along s in [0, 1].
PathResult track_path(const Homotopy& h, const CVec& start, const TrackerConfig& cfg,
                      int start_index = -1);

/// Track every start in parallel; results ordered by start index regardless
/// of scheduling. Failed paths are flagged in the result, never dropped.
std::vector<PathResult> track_all(const Homotopy& h, const std::vector<CVec>& starts,
                                  const TrackerConfig& cfg);

/// Track a full SolutionSet and keep only converged endpoints, recording
/// their provenance; throws std::runtime_error when more than
/// max_failure_fraction of the paths fail outright.
SolutionSet track(const Homotopy& h, const SolutionSet& starts, const TrackerConfig& cfg);

/// Start system x_i^{d_i} - 1 with all product-of-roots-of-unity solutions.
std::pair<PolySystem, SolutionSet> total_degree_start(const PolySystem& sys);

/// Total-degree homotopy with the gamma trick; finite solutions only,
/// deduplicated at cfg.dedupe_tol (clusters become one point flagged
/// multiplicity-suspect).
SolutionSet solve(const PolySystem& sys, const TrackerConfig& cfg, Rng& rng);

}  // namespace k3c
