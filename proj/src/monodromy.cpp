#include "k3c/monodromy.hpp"

#include <algorithm>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "k3c/numroots.hpp"

namespace k3c {

std::vector<std::array<int, 3>> curve_monomials(int d) {
  std::vector<std::array<int, 3>> out;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
  return out;
}

PlaneCurve random_plane_curve(int d, Rng& rng) {
  PlaneCurve c;
  c.degree = d;
  auto monos = curve_monomials(d);
  c.coeffs = CVec(static_cast<Eigen::Index>(monos.size()));
  for (Eigen::Index i = 0; i < c.coeffs.size(); ++i) c.coeffs(i) = rng.box_complex();
  return c;
}

PlaneCurve transform_curve(const PlaneCurve& c, const Eigen::Matrix3cd& a) {
  const int d = c.degree;
  auto monos = curve_monomials(d);
  // Substitute x_i -> sum_j a(i, j) x_j and expand with MPoly arithmetic.
  std::array<MPoly, 3> lin;
  for (int i = 0; i < 3; ++i) {
    MPoly l(3);
    for (int j = 0; j < 3; ++j) {
      std::vector<int> e(3, 0);
      e[static_cast<size_t>(j)] = 1;
      if (std::abs(a(i, j)) != 0.0) l.add_term(e, a(i, j));
    }
    lin[static_cast<size_t>(i)] = l;
  }
  // Cache powers of the three linear forms.
  std::array<std::vector<MPoly>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[static_cast<size_t>(i)].push_back([] {
      MPoly one(3);
      one.add_term({0, 0, 0}, {1, 0});
      return one;
    }());
    for (int k = 1; k <= d; ++k)
      pw[static_cast<size_t>(i)].push_back(pw[static_cast<size_t>(i)].back() *
                                           lin[static_cast<size_t>(i)]);
  }
  MPoly total(3);
  for (size_t t = 0; t < monos.size(); ++t) {
    Cplx coef = c.coeffs(static_cast<Eigen::Index>(t));
    if (std::abs(coef) == 0.0) continue;
    MPoly term = pw[0][static_cast<size_t>(monos[t][0])] *
                 pw[1][static_cast<size_t>(monos[t][1])] *
                 pw[2][static_cast<size_t>(monos[t][2])];
    total = total + term.scaled(coef);
  }
  PlaneCurve out;
  out.degree = d;
  out.coeffs = CVec::Zero(static_cast<Eigen::Index>(monos.size()));
  for (const auto& term : total.terms()) {
    for (size_t t = 0; t < monos.size(); ++t) {
      if (term.e[0] == monos[t][0] && term.e[1] == monos[t][1] && term.e[2] == monos[t][2]) {
        out.coeffs(static_cast<Eigen::Index>(t)) = term.c;
        break;
      }
    }
  }
  return out;
}

long plucker_bitangents(int d) {
  return static_cast<long>(d) * (d - 2) * (d - 3) * (d + 3) / 2;
}

namespace {

constexpr int kE1 = 0, kE2 = 1, kM = 2, kC = 3;

long binom_l(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Spot-check smoothness: intersect with random lines and test the gradient
// at every intersection point.
bool spot_check_smooth(const PlaneCurve& c, Rng& rng) {
  auto monos = curve_monomials(c.degree);
  auto eval_grad = [&](const std::array<Cplx, 3>& p) {
    std::array<Cplx, 3> grad = {Cplx(0, 0), Cplx(0, 0), Cplx(0, 0)};
    for (size_t t = 0; t < monos.size(); ++t) {
      Cplx coef = c.coeffs(static_cast<Eigen::Index>(t));
      for (int v = 0; v < 3; ++v) {
        int e = monos[t][static_cast<size_t>(v)];
        if (e == 0) continue;
        Cplx m = coef * static_cast<double>(e);
        for (int w = 0; w < 3; ++w) {
          int k = monos[t][static_cast<size_t>(w)] - (w == v ? 1 : 0);
          for (int rep = 0; rep < k; ++rep) m *= p[static_cast<size_t>(w)];
        }
        grad[static_cast<size_t>(v)] += m;
      }
    }
    return grad;
  };
  for (int line = 0; line < 2; ++line) {
    std::array<Cplx, 3> P = {rng.box_complex(), rng.box_complex(), rng.box_complex()};
    std::array<Cplx, 3> Q = {rng.box_complex(), rng.box_complex(), rng.box_complex()};
    // f(P + t Q) coefficients by evaluation at d+1 nodes and interpolation is
    // overkill; evaluate on a root grid instead: build the univariate
    // coefficients directly by expanding per monomial.
    std::vector<Cplx> uni(static_cast<size_t>(c.degree) + 1, Cplx(0, 0));
    for (size_t t = 0; t < monos.size(); ++t) {
      Cplx coef = c.coeffs(static_cast<Eigen::Index>(t));
      if (std::abs(coef) == 0.0) continue;
      std::vector<Cplx> acc = {coef};
      for (int v = 0; v < 3; ++v) {
        for (int rep = 0; rep < monos[t][static_cast<size_t>(v)]; ++rep) {
          std::vector<Cplx> next(acc.size() + 1, Cplx(0, 0));
          for (size_t k = 0; k < acc.size(); ++k) {
            next[k] += acc[k] * P[static_cast<size_t>(v)];
            next[k + 1] += acc[k] * Q[static_cast<size_t>(v)];
          }
          acc = std::move(next);
        }
      }
      for (size_t k = 0; k < acc.size(); ++k) uni[k] += acc[k];
    }
    for (const Cplx& root : poly_roots(uni)) {
      std::array<Cplx, 3> pt = {P[0] + root * Q[0], P[1] + root * Q[1], P[2] + root * Q[2]};
      auto grad = eval_grad(pt);
      double gn = std::abs(grad[0]) + std::abs(grad[1]) + std::abs(grad[2]);
      double scale = std::abs(pt[0]) + std::abs(pt[1]) + std::abs(pt[2]);
      if (gn < 1e-8 * std::max(1.0, scale)) return false;
    }
  }
  return true;
}

}  // namespace

BitangentSystem bitangent_system(const PlaneCurve& c, Rng& rng) {
  if (c.degree < 3) throw std::domain_error("bitangent_system: degree >= 3 required");
  // Random chart, redrawn until comfortably invertible.
  Eigen::Matrix3cd chart;
  for (;;) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) chart(i, j) = rng.box_complex();
    if (std::abs(chart.determinant()) > 0.3) break;
  }
  BitangentSystem out;
  out.chart = chart;
  out.curve = transform_curve(c, chart);
  if (!spot_check_smooth(out.curve, rng))
    throw std::domain_error("bitangent_system: curve failed the smoothness spot check");

  const int d = c.degree;
  auto monos = curve_monomials(d);
  // g_k(m, c): coefficients of f(x, m x + c, 1) as MPolys in (e1, e2, m, c).
  std::vector<MPoly> g(static_cast<size_t>(d) + 1, MPoly(4));
  for (size_t t = 0; t < monos.size(); ++t) {
    Cplx coef = out.curve.coeffs(static_cast<Eigen::Index>(t));
    if (std::abs(coef) == 0.0) continue;
    int i = monos[t][0], j = monos[t][1];
    for (int s = 0; s <= j; ++s) {
      std::vector<int> e(4, 0);
      e[kM] = s;
      e[kC] = j - s;
      g[static_cast<size_t>(i + s)].add_term(e, coef * static_cast<double>(binom_l(j, s)));
    }
  }
  for (auto& gk : g) gk.normalize();

  // q(x) = (x^2 - e1 x + e2)^2 = x^4 - 2 e1 x^3 + (e1^2 + 2 e2) x^2
  //        - 2 e1 e2 x + e2^2; long division is exact since q is monic in x.
  std::array<MPoly, 4> q;
  for (auto& qq : q) qq = MPoly(4);
  q[3].add_term({1, 0, 0, 0}, {-2, 0});
  q[2].add_term({2, 0, 0, 0}, {1, 0});
  q[2].add_term({0, 1, 0, 0}, {2, 0});
  q[1].add_term({1, 1, 0, 0}, {-2, 0});
  q[0].add_term({0, 2, 0, 0}, {1, 0});
  for (int k = d; k >= 4; --k) {
    MPoly coef = g[static_cast<size_t>(k)];
    if (coef.is_zero()) continue;
    g[static_cast<size_t>(k)] = MPoly(4);
    for (int j = 0; j < 4; ++j) {
      g[static_cast<size_t>(k - 4 + j)] =
          g[static_cast<size_t>(k - 4 + j)] - coef * q[static_cast<size_t>(j)];
    }
  }
  // Equations ordered by falling degree: remainder coefficients x^0..x^3
  // have degrees 2d, 2d-1, 2d-2, 2d-3.
  std::vector<MPoly> eqs = {g[0], g[1], g[2], g[3]};
  out.sys = PolySystem(4, std::move(eqs));
  out.sys.compile();
  return out;
}

CurveSegmentHomotopy::CurveSegmentHomotopy(int degree, CVec a, CVec b)
    : d_(degree), a_(std::move(a)), monos_(curve_monomials(degree)) {
  if (a_.size() != static_cast<Eigen::Index>(monos_.size()) || a_.size() != b.size())
    throw std::invalid_argument("CurveSegmentHomotopy: coefficient size mismatch");
  diff_ = b - a_;
  coeff_scale_ = 1.0;
  for (Eigen::Index i = 0; i < a_.size(); ++i)
    coeff_scale_ += std::abs(a_(i)) + std::abs(diff_(i));
}

double CurveSegmentHomotopy::residual_scale(const CVec& x) const {
  double xi = std::max(1.0, x.lpNorm<Eigen::Infinity>());
  return coeff_scale_ * std::pow(xi, 2 * d_);
}

namespace {

// Remainder (and optionally quotient) of sum g_k x^k modulo
// x^4 - 2 e1 x^3 + (e1^2 + 2 e2) x^2 - 2 e1 e2 x + e2^2.
struct QuarticReducer {
  std::array<Cplx, 4> q;  // coefficients of x^0..x^3

  explicit QuarticReducer(Cplx e1, Cplx e2) {
    q[0] = e2 * e2;
    q[1] = -2.0 * e1 * e2;
    q[2] = e1 * e1 + 2.0 * e2;
    q[3] = -2.0 * e1;
  }

  void reduce(std::vector<Cplx>& g, std::vector<Cplx>* quotient = nullptr) const {
    int deg = static_cast<int>(g.size()) - 1;
    if (quotient) quotient->assign(static_cast<size_t>(std::max(deg - 3, 1)), Cplx(0, 0));
    for (int k = deg; k >= 4; --k) {
      Cplx coef = g[static_cast<size_t>(k)];
      if (quotient) (*quotient)[static_cast<size_t>(k - 4)] = coef;
      g[static_cast<size_t>(k)] = Cplx(0, 0);
      if (std::abs(coef) == 0.0) continue;
      for (int j = 0; j < 4; ++j) g[static_cast<size_t>(k - 4 + j)] -= coef * q[static_cast<size_t>(j)];
    }
    g.resize(4);
  }
};

}  // namespace

CVec CurveSegmentHomotopy::eval(double s, const CVec& x) const {
  CVec cs = a_ + s * diff_;
  Cplx m = x(kM), c = x(kC);
  std::vector<Cplx> mp(static_cast<size_t>(d_) + 1, Cplx(1, 0)), cp = mp;
  for (int k = 1; k <= d_; ++k) {
    mp[static_cast<size_t>(k)] = mp[static_cast<size_t>(k - 1)] * m;
    cp[static_cast<size_t>(k)] = cp[static_cast<size_t>(k - 1)] * c;
  }
  std::vector<Cplx> g(static_cast<size_t>(d_) + 1, Cplx(0, 0));
  for (size_t t = 0; t < monos_.size(); ++t) {
    Cplx coef = cs(static_cast<Eigen::Index>(t));
    if (std::abs(coef) == 0.0) continue;
    int i = monos_[t][0], j = monos_[t][1];
    for (int u = 0; u <= j; ++u)
      g[static_cast<size_t>(i + u)] += coef * static_cast<double>(binom_l(j, u)) *
                                       mp[static_cast<size_t>(u)] * cp[static_cast<size_t>(j - u)];
  }
  QuarticReducer red(x(kE1), x(kE2));
  red.reduce(g);
  CVec out(4);
  for (int k = 0; k < 4; ++k) out(k) = g[static_cast<size_t>(k)];
  return out;
}

CMat CurveSegmentHomotopy::jacobian(double s, const CVec& x) const {
  CVec cs = a_ + s * diff_;
  Cplx m = x(kM), c = x(kC);
  std::vector<Cplx> mp(static_cast<size_t>(d_) + 1, Cplx(1, 0)), cp = mp;
  for (int k = 1; k <= d_; ++k) {
    mp[static_cast<size_t>(k)] = mp[static_cast<size_t>(k - 1)] * m;
    cp[static_cast<size_t>(k)] = cp[static_cast<size_t>(k - 1)] * c;
  }
  std::vector<Cplx> g(static_cast<size_t>(d_) + 1, Cplx(0, 0));
  std::vector<Cplx> gm = g, gc = g;
  for (size_t t = 0; t < monos_.size(); ++t) {
    Cplx coef = cs(static_cast<Eigen::Index>(t));
    if (std::abs(coef) == 0.0) continue;
    int i = monos_[t][0], j = monos_[t][1];
    for (int u = 0; u <= j; ++u) {
      Cplx base = coef * static_cast<double>(binom_l(j, u));
      g[static_cast<size_t>(i + u)] += base * mp[static_cast<size_t>(u)] * cp[static_cast<size_t>(j - u)];
      if (u >= 1)
        gm[static_cast<size_t>(i + u)] += base * static_cast<double>(u) *
                                          mp[static_cast<size_t>(u - 1)] * cp[static_cast<size_t>(j - u)];
      if (j - u >= 1)
        gc[static_cast<size_t>(i + u)] += base * static_cast<double>(j - u) *
                                          mp[static_cast<size_t>(u)] * cp[static_cast<size_t>(j - u - 1)];
    }
  }
  Cplx e1 = x(kE1), e2 = x(kE2);
  QuarticReducer red(e1, e2);
  std::vector<Cplx> quotient;
  red.reduce(g, &quotient);
  red.reduce(gm);
  red.reduce(gc);
  // dr/de = -(Q * dq/de) mod q.
  std::vector<Cplx> de1(quotient.size() + 3, Cplx(0, 0)), de2 = de1;
  const std::array<Cplx, 4> dq1 = {Cplx(0, 0), -2.0 * e2, 2.0 * e1, Cplx(-2, 0)};
  const std::array<Cplx, 3> dq2 = {2.0 * e2, -2.0 * e1, Cplx(2, 0)};
  for (size_t k = 0; k < quotient.size(); ++k) {
    for (size_t j = 0; j < 4; ++j) de1[k + j] -= quotient[k] * dq1[j];
    for (size_t j = 0; j < 3; ++j) de2[k + j] -= quotient[k] * dq2[j];
  }
  de1.resize(std::max<size_t>(de1.size(), 4), Cplx(0, 0));
  de2.resize(std::max<size_t>(de2.size(), 4), Cplx(0, 0));
  red.reduce(de1);
  red.reduce(de2);

  CMat out(4, 4);
  for (int k = 0; k < 4; ++k) {
    out(k, kE1) = de1[static_cast<size_t>(k)];
    out(k, kE2) = de2[static_cast<size_t>(k)];
    out(k, kM) = gm[static_cast<size_t>(k)];
    out(k, kC) = gc[static_cast<size_t>(k)];
  }
  return out;
}

CVec CurveSegmentHomotopy::ds(double s, const CVec& x) const {
  (void)s;
  Cplx m = x(kM), c = x(kC);
  std::vector<Cplx> mp(static_cast<size_t>(d_) + 1, Cplx(1, 0)), cp = mp;
  for (int k = 1; k <= d_; ++k) {
    mp[static_cast<size_t>(k)] = mp[static_cast<size_t>(k - 1)] * m;
    cp[static_cast<size_t>(k)] = cp[static_cast<size_t>(k - 1)] * c;
  }
  std::vector<Cplx> g(static_cast<size_t>(d_) + 1, Cplx(0, 0));
  for (size_t t = 0; t < monos_.size(); ++t) {
    Cplx coef = diff_(static_cast<Eigen::Index>(t));
    if (std::abs(coef) == 0.0) continue;
    int i = monos_[t][0], j = monos_[t][1];
    for (int u = 0; u <= j; ++u)
      g[static_cast<size_t>(i + u)] += coef * static_cast<double>(binom_l(j, u)) *
                                       mp[static_cast<size_t>(u)] * cp[static_cast<size_t>(j - u)];
  }
  QuarticReducer red(x(kE1), x(kE2));
  red.reduce(g);
  CVec out(4);
  for (int k = 0; k < 4; ++k) out(k) = g[static_cast<size_t>(k)];
  return out;
}

namespace {

bool lex_point_less(const CVec& a, const CVec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

void sort_fibre(SolutionSet& s) {
  std::vector<size_t> idx(s.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t i, size_t j) { return lex_point_less(s.points[i], s.points[j]); });
  SolutionSet sorted;
  for (size_t i : idx)
    sorted.push(s.points[i], s.residuals[i], s.multiplicity_suspect[i], s.provenance[i]);
  s = std::move(sorted);
}

}  // namespace

namespace {

// Track an ordered fibre along one coefficient segment. Individual failures
// get one tight retry; survivors advance in place, failures are reported in
// `alive` (when given) or fail the whole segment (when not).
bool track_segment(int degree, const CVec& from, const CVec& to,
                   std::vector<CVec>& points, const TrackerConfig& cfg,
                   std::vector<bool>* alive = nullptr) {
  CurveSegmentHomotopy h(degree, from, to);
  std::vector<PathResult> res = track_all(h, points, cfg);
  TrackerConfig tight = cfg;
  tight.initial_step = cfg.initial_step / 10;
  tight.min_step = std::min(cfg.min_step, 1e-12);
  tight.max_newton = cfg.max_newton + 4;
  bool all = true;
  for (size_t i = 0; i < points.size(); ++i) {
    if (alive && !(*alive)[i]) continue;
    if (res[i].status == PathStatus::Converged) {
      points[i] = res[i].point;
      continue;
    }
    PathResult retry = track_path(h, points[i], tight, static_cast<int>(i));
    if (retry.status == PathStatus::Converged) {
      points[i] = retry.point;
      continue;
    }
    all = false;
    if (alive) (*alive)[i] = false;
  }
  return all;
}

// Mutual-nearest bijection between endpoints and the base fibre.
std::optional<Permutation> match_to_base(const std::vector<CVec>& endpoints,
                                         const std::vector<CVec>& base, double tol) {
  const size_t n = base.size();
  std::vector<int> images(n, -1);
  std::vector<bool> taken(n, false);
  for (size_t i = 0; i < n; ++i) {
    double best = 1e300, second = 1e300;
    int arg = -1;
    for (size_t j = 0; j < n; ++j) {
      double d = (endpoints[i] - base[j]).norm();
      if (d < best) {
        second = best;
        best = d;
        arg = static_cast<int>(j);
      } else if (d < second) {
        second = d;
      }
    }
    double scale = 1.0 + base[static_cast<size_t>(arg)].norm();
    if (arg < 0 || best > tol * scale || best * 4 > second ||
        taken[static_cast<size_t>(arg)])
      return std::nullopt;
    taken[static_cast<size_t>(arg)] = true;
    images[i] = arg;
  }
  return Permutation(images);
}

// Monodromy completion: bounce the known partial fibre around random loops
// in curve space; the transitive action quickly sweeps up missing points.
void complete_fibre(const BitangentSystem& bs, SolutionSet& sols, long expected,
                    const TrackerConfig& outer_cfg, Rng& rng) {
  const int d = bs.curve.degree;
  // Few paths, so afford patient settings: the stragglers being hunted are
  // exactly the ill-conditioned ones.
  TrackerConfig cfg = outer_cfg;
  cfg.initial_step = outer_cfg.initial_step / 5;
  cfg.min_step = 1e-13;
  cfg.max_newton = outer_cfg.max_newton + 6;
  cfg.newton_tol = std::max(outer_cfg.newton_tol, 1e-10);
  double scale = std::sqrt(bs.curve.coeffs.squaredNorm() /
                           static_cast<double>(bs.curve.coeffs.size()));
  for (int round = 0; round < 20 && static_cast<long>(sols.size()) < expected; ++round) {
    std::vector<CVec> verts = {bs.curve.coeffs};
    int nv = static_cast<int>(rng.intrange(3, 5));
    for (int k = 1; k < nv; ++k) {
      CVec v = bs.curve.coeffs;
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) += 0.25 * scale * rng.box_complex();
      verts.push_back(v);
    }
    verts.push_back(bs.curve.coeffs);
    // Paths may drop out individually; the survivors still permute.
    std::vector<CVec> pts = sols.points;
    std::vector<bool> alive(pts.size(), true);
    for (size_t v = 0; v + 1 < verts.size(); ++v)
      track_segment(d, verts[v], verts[v + 1], pts, cfg, &alive);
    CurveSegmentHomotopy at_base(d, bs.curve.coeffs, bs.curve.coeffs);
    for (size_t i = 0; i < pts.size(); ++i) {
      if (!alive[i]) continue;
      const CVec& p = pts[i];
      double r = at_base.eval(1.0, p).norm() / at_base.residual_scale(p);
      if (!(r < cfg.success_residual)) continue;
      bool known = false;
      for (const CVec& q : sols.points)
        if ((p - q).norm() < cfg.dedupe_tol) { known = true; break; }
      if (!known) sols.push(p, r, false, -1);
    }
  }
}

}  // namespace

BitangentFibre solve_bitangents(const PlaneCurve& c, const TrackerConfig& cfg, Rng& rng) {
  const long expected = plucker_bitangents(c.degree);
  TrackerConfig run = cfg;
  run.infinity_norm = std::min(run.infinity_norm, 1e6);
  std::ostringstream diag;
  for (int attempt = 0; attempt < 3; ++attempt) {
    BitangentSystem bs = bitangent_system(c, rng);
    SolutionSet sols;
    try {
      sols = solve(bs.sys, run, rng);
    } catch (const std::runtime_error& e) {
      diag << "[chart " << attempt << "] " << e.what() << "\n";
      continue;
    }
    if (static_cast<long>(sols.size()) < expected) {
      // Rescue pass: near-hyperflex bitangents sit close to branch points of
      // the cover and need shorter steps plus a more patient corrector.
      TrackerConfig tight = run;
      tight.initial_step = run.initial_step / 5;
      tight.min_step = 1e-13;
      tight.max_newton = run.max_newton + 6;
      tight.newton_tol = std::max(run.newton_tol, 1e-10);
      tight.endgame_start = 0.9;
      try {
        SolutionSet extra = solve(bs.sys, tight, rng);
        for (size_t i = 0; i < extra.size(); ++i) {
          bool known = false;
          for (const CVec& q : sols.points)
            if ((extra.points[i] - q).norm() < run.dedupe_tol) { known = true; break; }
          if (!known)
            sols.push(extra.points[i], extra.residuals[i], false, extra.provenance[i]);
        }
      } catch (const std::runtime_error&) {
      }
    }
    if (static_cast<long>(sols.size()) < expected)
      complete_fibre(bs, sols, expected, run, rng);
    if (static_cast<long>(sols.size()) != expected) {
      diag << "[chart " << attempt << "] found " << sols.size() << " of " << expected << "\n";
      continue;
    }
    // Every fibre point must be a regular solution for the labels to make
    // sense; a near-singular Jacobian means a degenerate chart.
    bool regular = true;
    for (const CVec& p : sols.points) {
      Eigen::JacobiSVD<CMat> svd(bs.sys.jacobian(p));
      double smin = svd.singularValues().minCoeff();
      double smax = svd.singularValues().maxCoeff();
      if (!(smin > 1e-8 * std::max(smax, 1.0))) {
        regular = false;
        break;
      }
    }
    if (!regular) {
      diag << "[chart " << attempt << "] near-singular fibre point\n";
      continue;
    }
    sort_fibre(sols);
    return BitangentFibre{std::move(bs), std::move(sols)};
  }
  throw std::runtime_error("solve_bitangents: count mismatch after 3 charts\n" + diag.str());
}

LoopSpec random_polygon_loop(const PlaneCurve& base, int vertex_count, double rel_radius,
                             Rng& rng) {
  if (vertex_count < 3) throw std::invalid_argument("random_polygon_loop: need >= 3 vertices");
  double scale = std::sqrt(base.coeffs.squaredNorm() /
                           static_cast<double>(base.coeffs.size()));
  LoopSpec loop;
  loop.vertices.push_back(base.coeffs);
  for (int k = 1; k < vertex_count; ++k) {
    CVec v = base.coeffs;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      v(i) += rel_radius * scale * rng.box_complex();
    loop.vertices.push_back(v);
  }
  loop.vertices.push_back(base.coeffs);
  return loop;
}

Permutation monodromy_loop(const BitangentFibre& base, const LoopSpec& loop,
                           const TrackerConfig& cfg) {
  if (loop.vertices.size() < 2 ||
      (loop.vertices.front() - loop.vertices.back()).norm() != 0.0)
    throw std::invalid_argument("monodromy_loop: loop is not closed");
  const int d = base.system.curve.degree;
  TrackerConfig run = cfg;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<CVec> pts = base.fibre.points;
    bool ok = true;
    for (size_t v = 0; ok && v + 1 < loop.vertices.size(); ++v)
      ok = track_segment(d, loop.vertices[v], loop.vertices[v + 1], pts, run);
    if (ok) {
      auto perm = match_to_base(pts, base.fibre.points, run.dedupe_tol);
      if (perm) return *perm;
    }
    // Ambiguous or failed: shrink the matching tolerance and re-track at
    // half step.
    run.initial_step *= 0.5;
    run.min_step *= 0.5;
    run.dedupe_tol *= 0.5;
  }
  throw std::runtime_error("monodromy_loop: loop rejected after re-tracks");
}

namespace {

struct PencilProbe {
  CVec dir;                  // curve(s) = base + s * dir
  std::vector<CVec> fibre;   // transported fibre at parameter s
  double s = 0;
};

double min_pairwise(const std::vector<CVec>& pts, int& ai, int& bi) {
  double best = 1e300;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double d = (pts[i] - pts[j]).norm();
      if (d < best) {
        best = d;
        ai = static_cast<int>(i);
        bi = static_cast<int>(j);
      }
    }
  return best;
}

}  // namespace

TranspositionHunt transposition_hunt(const BitangentFibre& base, const TrackerConfig& cfg,
                                     Rng& rng, int max_pencils) {
  const int d = base.system.curve.degree;
  double scale = std::sqrt(base.system.curve.coeffs.squaredNorm() /
                           static_cast<double>(base.system.curve.coeffs.size()));

  auto curve_at = [&](const CVec& dir, Cplx s) {
    CVec out = base.system.curve.coeffs;
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += s * dir(i);
    return out;
  };

  for (int pencil = 0; pencil < max_pencils; ++pencil) {
    CVec dir(base.system.curve.coeffs.size());
    for (Eigen::Index i = 0; i < dir.size(); ++i)
      dir(i) = 0.3 * scale * rng.box_complex();

    // March along real s, keeping the transported fibre; record the dip of
    // the minimal pairwise distance.
    std::vector<CVec> pts = base.fibre.points;
    double s = 0;
    double best_dip = 1e300, best_s = -1;
    std::vector<CVec> best_fibre;
    bool march_ok = true;
    const double ds_step = 0.04;
    while (s < 1.0 - 1e-12 && march_ok) {
      double sn = std::min(s + ds_step, 1.0);
      std::vector<CVec> next = pts;
      if (!track_segment(d, curve_at(dir, Cplx(s, 0)), curve_at(dir, Cplx(sn, 0)), next, cfg)) {
        march_ok = false;  // likely very near the discriminant: treat the
        break;             // last good sample as the dip candidate
      }
      pts = std::move(next);
      s = sn;
      int ai = -1, bi = -1;
      double dip = min_pairwise(pts, ai, bi);
      if (dip < best_dip) {
        best_dip = dip;
        best_s = s;
        best_fibre = pts;
      }
    }
    if (best_s < 0) continue;

    // The two colliding labels at the dip.
    int ai = -1, bi = -1;
    min_pairwise(best_fibre, ai, bi);

    // phi(s) = v . (x_a(s) - x_b(s)) vanishes like sqrt(s - s*); phi^2 is
    // analytic with a simple root at s*. Complex Newton with numeric
    // derivative, re-tracking the two points from the dip fibre each time.
    CVec va = best_fibre[static_cast<size_t>(ai)], vb = best_fibre[static_cast<size_t>(bi)];
    CVec probe_dir(4);
    for (int i = 0; i < 4; ++i) probe_dir(i) = rng.unit_complex();
    auto phi2 = [&](Cplx sc, bool& ok) -> Cplx {
      std::vector<CVec> two = {va, vb};
      CurveSegmentHomotopy h(d, curve_at(dir, Cplx(best_s, 0)), curve_at(dir, sc));
      auto res = track_all(h, two, cfg);
      ok = res[0].status == PathStatus::Converged && res[1].status == PathStatus::Converged;
      if (!ok) return Cplx(0, 0);
      Cplx phi = probe_dir.dot(res[0].point - res[1].point);
      return phi * phi;
    };

    Cplx sc(best_s, 0);
    bool refined = false;
    double h_fd = 1e-4;
    for (int it = 0; it < 24; ++it) {
      bool ok1 = false, ok2 = false, ok3 = false;
      Cplx f0 = phi2(sc, ok1);
      Cplx fp = phi2(sc + Cplx(h_fd, 0), ok2);
      Cplx fm = phi2(sc - Cplx(h_fd, 0), ok3);
      if (!ok1 || !ok2 || !ok3) break;
      Cplx dfds = (fp - fm) / (2 * h_fd);
      if (std::abs(dfds) < 1e-300) break;
      Cplx step = f0 / dfds;
      sc -= step;
      if (std::abs(step) < 1e-11) {
        refined = true;
        break;
      }
      h_fd = std::max(1e-9, std::min(1e-4, std::abs(step) * 0.1));
    }
    if (!refined) continue;

    // Small circle around s*; anchor the fibre at the real-direction point.
    double radius = std::max(2.0 * std::abs(sc - Cplx(best_s, 0)), 1e-6);
    for (int shrinks = 0; shrinks < 2; ++shrinks, radius *= 0.5) {
      Cplx anchor = sc + Cplx(radius, 0);
      // Hop from the transported dip fibre, which already carries base labels.
      std::vector<CVec> anchor_fibre = best_fibre;
      bool ok = track_segment(d, curve_at(dir, Cplx(best_s, 0)), curve_at(dir, anchor),
                              anchor_fibre, cfg);
      if (!ok) continue;
      std::vector<CVec> around = anchor_fibre;
      const int segs = 16;
      const double two_pi = 6.283185307179586476925286766559;
      for (int k = 1; ok && k <= segs; ++k) {
        Cplx from = sc + radius * std::exp(Cplx(0, two_pi * (k - 1) / segs));
        Cplx to = sc + radius * std::exp(Cplx(0, two_pi * k / segs));
        ok = track_segment(d, curve_at(dir, from), curve_at(dir, to), around, cfg);
      }
      if (!ok) continue;
      auto perm = match_to_base(around, anchor_fibre, cfg.dedupe_tol);
      if (!perm || !perm->is_transposition()) continue;
      // The exchanged labels must be the colliding pair.
      if ((*perm)(ai) != bi || (*perm)(bi) != ai) continue;
      TranspositionHunt hunt;
      hunt.perm = *perm;
      hunt.colliding = {ai, bi};
      hunt.s_star = sc;
      hunt.radius = radius;
      hunt.pencils_tried = pencil + 1;
      return hunt;
    }
  }
  throw std::runtime_error("transposition_hunt: no simple collision located");
}

CoverReport certify_cover(int d, int loops, std::uint64_t seed, const TrackerConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(seed);
  CoverReport report;
  report.degree = d;
  report.seed = seed;
  PlaneCurve curve = random_plane_curve(d, rng);
  BitangentFibre fibre = solve_bitangents(curve, cfg, rng);
  report.fibre_size = static_cast<long>(fibre.fibre.size());

  for (int k = 0; k < loops; ++k) {
    int verts = static_cast<int>(rng.intrange(4, 8));
    LoopSpec loop = random_polygon_loop(fibre.system.curve, verts, 0.3, rng);
    report.loop_perms.push_back(monodromy_loop(fibre, loop, cfg));
    if (report.fibre_size <= 64)
      report.order_history.push_back(schreier_sims_order(report.loop_perms));
  }

  std::vector<Permutation> gens = report.loop_perms;
  if (d != 4 && loops > 0) {
    TranspositionHunt hunt = transposition_hunt(fibre, cfg, rng);
    report.transposition = hunt.perm;
    gens.push_back(hunt.perm);
  }
  report.group = certify_symmetric(gens, rng);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace k3c
