#include "k3c/homotopy.hpp"

#include <Eigen/LU>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace k3c {


namespace {

// Row-equilibrated 4x4-ish linear solve: J dx = f. The bitangency equations
// mix total degrees (and hence magnitudes) badly; normalizing rows keeps the
// LU honest near ill-conditioned fibre points.
inline CVec scaled_solve(const CMat& j, const CVec& f, bool& ok) {
  Eigen::Index n = j.rows();
  CMat js = j;
  CVec fs = f;
  for (Eigen::Index r = 0; r < n; ++r) {
    double m = js.row(r).cwiseAbs().maxCoeff();
    if (m > 0) {
      js.row(r) /= m;
      fs(r) /= m;
    }
  }
  Eigen::PartialPivLU<CMat> lu(js);
  CVec dx = lu.solve(fs);
  ok = dx.allFinite();
  return dx;
}

}  // namespace

void TrackerConfig::validate() const {
  if (newton_tol <= 0 || initial_step <= 0 || min_step <= 0 || grow <= 1 ||
      shrink <= 0 || shrink >= 1 || success_residual <= 0 || sharpen_iters < 0 ||
      infinity_norm <= 0 || dedupe_tol <= 0)
    throw std::invalid_argument("TrackerConfig: all parameters must be positive");
  if (min_step >= initial_step)
    throw std::invalid_argument("TrackerConfig: min_step must be below initial_step");
}

LinearHomotopy::LinearHomotopy(const PolySystem& a, const PolySystem& b, Cplx gamma)
    : a_(&a), b_(&b), gamma_(gamma) {
  if (a.nvars != b.nvars || a.eqs.size() != b.eqs.size())
    throw std::invalid_argument("LinearHomotopy: shape mismatch");
  if (!a.compiled() || !b.compiled())
    throw std::invalid_argument("LinearHomotopy: systems must be compiled");
  for (const auto& eq : b.eqs) {
    double sum = 0;
    for (const auto& t : eq.terms()) sum += std::abs(t.c);
    coeff_sum_ = std::max(coeff_sum_, sum);
    max_degree_ = std::max(max_degree_, eq.total_degree());
  }
}

double LinearHomotopy::residual_scale(const CVec& x) const {
  double xi = std::max(1.0, x.lpNorm<Eigen::Infinity>());
  return coeff_sum_ * std::pow(xi, max_degree_);
}

CVec LinearHomotopy::eval(double s, const CVec& x) const {
  return gamma_ * (1.0 - s) * a_->eval(x) + s * b_->eval(x);
}

CMat LinearHomotopy::jacobian(double s, const CVec& x) const {
  return gamma_ * (1.0 - s) * a_->jacobian(x) + s * b_->jacobian(x);
}

CVec LinearHomotopy::ds(double s, const CVec& x) const {
  return b_->eval(x) - gamma_ * a_->eval(x);
}

void SolutionSet::push(const CVec& p, double res, bool suspect, int prov) {
  points.push_back(p);
  residuals.push_back(res);
  multiplicity_suspect.push_back(suspect);
  provenance.push_back(prov);
}

namespace {

// dx/ds = -J^{-1} dH/ds, the Davidenko direction.
bool direction(const Homotopy& h, double s, const CVec& x, CVec& out) {
  bool ok = false;
  out = scaled_solve(h.jacobian(s, x), -h.ds(s, x), ok);
  return ok;
}

// Newton at fixed s; true on convergence within cfg.max_newton steps. The
// first correction is capped: a large jump means the predictor landed in a
// different basin, and accepting it would let paths swap silently.
bool correct(const Homotopy& h, double s, CVec& x, const TrackerConfig& cfg) {
  for (int it = 0; it < cfg.max_newton; ++it) {
    CVec f = h.eval(s, x);
    bool ok = false;
    CVec dx = scaled_solve(h.jacobian(s, x), f, ok);
    if (!ok) return false;
    if (it == 0 && dx.norm() > 0.25 * (1.0 + x.norm())) return false;
    x -= dx;
    if (dx.norm() < cfg.newton_tol * (1.0 + x.norm())) return true;
  }
  return false;
}

}  // namespace

namespace {

// Direct Newton on the target system H(., 1); used by the endgame and the
// final sharpening.
bool newton_at_one(const Homotopy& h, CVec& x, const TrackerConfig& cfg, int iters) {
  for (int it = 0; it < iters; ++it) {
    CVec f = h.eval(1.0, x);
    bool ok = false;
    CVec dx = scaled_solve(h.jacobian(1.0, x), f, ok);
    if (!ok) return false;
    x -= dx;
    if (!x.allFinite()) return false;
    if (dx.norm() < cfg.newton_tol * (1.0 + x.norm())) return true;
  }
  return false;
}

}  // namespace

PathResult track_path(const Homotopy& h, const CVec& start, const TrackerConfig& cfg,
                      int start_index) {
  PathResult res;
  res.start_index = start_index;
  CVec x = start;
  double s = 0.0;
  double step = cfg.initial_step;
  int streak = 0;

  while (s < 1.0) {
    double hstep = std::min(step, 1.0 - s);
    CVec k1, k2, k3, k4;
    CVec xt;
    bool ok = direction(h, s, x, k1);
    if (ok) { xt = x + (hstep / 2) * k1; ok = direction(h, s + hstep / 2, xt, k2); }
    if (ok) { xt = x + (hstep / 2) * k2; ok = direction(h, s + hstep / 2, xt, k3); }
    if (ok) { xt = x + hstep * k3; ok = direction(h, s + hstep, xt, k4); }
    CVec cand;
    if (ok) {
      cand = x + (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ok = correct(h, s + hstep, cand, cfg);
    }
    if (ok) {
      s += hstep;
      x = cand;
      if (++streak >= 3) {
        step = std::min(step * cfg.grow, cfg.initial_step);
        streak = 0;
      }
      if (x.norm() > cfg.infinity_norm) {
        res.status = PathStatus::AtInfinity;
        res.last_s = s;
        res.point = x;
        return res;
      }
    } else {
      streak = 0;
      step *= cfg.shrink;
      if (step < cfg.min_step) {
        res.last_s = s;
        res.point = x;
        if (cfg.endgame_newton && s >= cfg.endgame_start) {
          CVec cand = x;
          if (newton_at_one(h, cand, cfg, 4 * cfg.max_newton)) {
            double r = h.eval(1.0, cand).norm() / h.residual_scale(cand);
            if (r < cfg.success_residual && cand.norm() <= cfg.infinity_norm) {
              res.point = cand;
              res.residual = r;
              res.last_s = 1.0;
              res.status = PathStatus::Converged;
              return res;
            }
          }
          res.status = PathStatus::AtInfinity;  // stalled past the endgame line
          return res;
        }
        res.status = x.norm() > 0.01 * cfg.infinity_norm ? PathStatus::AtInfinity
                                                         : PathStatus::Failed;
        return res;
      }
    }
  }

  for (int it = 0; it < cfg.sharpen_iters; ++it) {
    CVec f = h.eval(1.0, x);
    bool ok = false;
    CVec dx = scaled_solve(h.jacobian(1.0, x), f, ok);
    if (!ok) break;
    x -= dx;
  }
  res.point = x;
  res.last_s = 1.0;
  res.residual = h.eval(1.0, x).norm() / h.residual_scale(x);
  if (x.norm() > cfg.infinity_norm) {
    res.status = PathStatus::AtInfinity;
  } else if (res.residual < cfg.success_residual) {
    res.status = PathStatus::Converged;
  } else if (cfg.endgame_newton) {
    res.status = PathStatus::AtInfinity;  // reached s=1 without a finite limit
  } else {
    res.status = PathStatus::Failed;
  }
  return res;
}

std::vector<PathResult> track_all(const Homotopy& h, const std::vector<CVec>& starts,
                                  const TrackerConfig& cfg) {
  cfg.validate();
  std::vector<PathResult> results(starts.size());
  unsigned nthreads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, std::max<size_t>(starts.size(), 1));
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= starts.size()) return;
      results[i] = track_path(h, starts[i], cfg, static_cast<int>(i));
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

SolutionSet track(const Homotopy& h, const SolutionSet& starts, const TrackerConfig& cfg) {
  std::vector<PathResult> results = track_all(h, starts.points, cfg);
  size_t failed = 0;
  for (const auto& r : results)
    if (r.status == PathStatus::Failed) ++failed;
  if (static_cast<double>(failed) >
      cfg.max_failure_fraction * static_cast<double>(results.size())) {
    std::ostringstream os;
    os << "track: " << failed << "/" << results.size() << " paths failed;";
    int shown = 0;
    for (const auto& r : results) {
      if (r.status != PathStatus::Failed || shown >= 8) continue;
      os << " [start " << r.start_index << " stalled at s=" << r.last_s << "]";
      ++shown;
    }
    throw std::runtime_error(os.str());
  }
  SolutionSet out;
  for (const auto& r : results) {
    if (r.status != PathStatus::Converged) continue;
    out.push(r.point, r.residual, false, r.start_index);
  }
  return out;
}

std::pair<PolySystem, SolutionSet> total_degree_start(const PolySystem& sys) {
  if (!sys.square()) throw std::invalid_argument("total_degree_start: square system required");
  std::vector<int> degs = sys.degrees();
  for (int d : degs)
    if (d < 1) throw std::domain_error("total_degree_start: zero-degree equation");
  const int n = sys.nvars;
  std::vector<MPoly> eqs;
  for (int i = 0; i < n; ++i) {
    MPoly e(n);
    std::vector<int> exp(static_cast<size_t>(n), 0);
    exp[static_cast<size_t>(i)] = degs[static_cast<size_t>(i)];
    e.add_term(exp, Cplx(1, 0));
    e.add_term(std::vector<int>(static_cast<size_t>(n), 0), Cplx(-1, 0));
    eqs.push_back(e);
  }
  PolySystem start(n, std::move(eqs));
  start.compile();

  SolutionSet starts;
  long total = 1;
  for (int d : degs) total *= d;
  std::vector<int> idx(static_cast<size_t>(n), 0);
  const double two_pi = 6.283185307179586476925286766559;
  for (long k = 0; k < total; ++k) {
    CVec p(n);
    for (int i = 0; i < n; ++i) {
      double ang = two_pi * idx[static_cast<size_t>(i)] / degs[static_cast<size_t>(i)];
      p(i) = Cplx(std::cos(ang), std::sin(ang));
    }
    starts.push(p, 0.0, false, static_cast<int>(k));
    for (int i = 0; i < n; ++i) {
      if (++idx[static_cast<size_t>(i)] < degs[static_cast<size_t>(i)]) break;
      idx[static_cast<size_t>(i)] = 0;
    }
  }
  return {std::move(start), std::move(starts)};
}

SolutionSet solve(const PolySystem& sys, const TrackerConfig& cfg, Rng& rng) {
  if (!sys.square()) throw std::invalid_argument("solve: square system required");
  PolySystem target = sys;
  if (!target.compiled()) target.compile();
  auto [start_sys, starts] = total_degree_start(target);
  Cplx gamma = rng.unit_complex();
  LinearHomotopy h(start_sys, target, gamma);
  TrackerConfig run = cfg;
  run.endgame_newton = true;
  SolutionSet finite = track(h, starts, run);

  // Dedupe into clusters; a cluster of two or more raw endpoints is a
  // multiplicity suspect.
  SolutionSet out;
  for (size_t i = 0; i < finite.size(); ++i) {
    bool merged = false;
    for (size_t j = 0; j < out.size(); ++j) {
      if ((finite.points[i] - out.points[j]).norm() < cfg.dedupe_tol) {
        out.multiplicity_suspect[j] = true;
        if (finite.residuals[i] < out.residuals[j]) {
          out.points[j] = finite.points[i];
          out.residuals[j] = finite.residuals[i];
        }
        merged = true;
        break;
      }
    }
    if (!merged)
      out.push(finite.points[i], finite.residuals[i], false, finite.provenance[i]);
  }
  return out;
}

}  // namespace k3c
