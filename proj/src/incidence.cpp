#include "k3c/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "k3c/local_rings.hpp"
#include "k3c/numroots.hpp"

namespace k3c {

namespace {

void require_admissible(const std::vector<Rat>& vals, const char* what) {
  for (size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] == Rat(0) || vals[i] == Rat(1))
      throw std::domain_error(std::string(what) + " must avoid 0 and 1");
    for (size_t j = i + 1; j < vals.size(); ++j)
      if (vals[i] == vals[j])
        throw std::domain_error(std::string(what) + " must be pairwise distinct");
  }
}

}  // namespace

void PointConfigP2::validate() const {
  if (mu.empty()) throw std::domain_error("PointConfigP2: at least one mu required");
  require_admissible(mu, "mu");
}

void PointConfigQuadric::validate() const {
  require_admissible({mu[0], mu[1], mu[2]}, "mu");
  require_admissible({lambda[0], lambda[1], lambda[2]}, "lambda");
}

void ParamCurve::validate() const {
  if (target == CurveTarget::P2) {
    if (polys.size() != 3) throw std::domain_error("ParamCurve: P2 target needs 3 forms");
    for (const auto& f : polys)
      if (f.degree() != 4 || f.is_zero())
        throw std::domain_error("ParamCurve: P2 forms must be nonzero of degree 4");
    BinForm g = bin_gcd(bin_gcd(polys[0], polys[1]), polys[2]);
    if (g.degree() != 0)
      throw std::domain_error("ParamCurve: forms share a common root");
  } else {
    if (polys.size() != 4) throw std::domain_error("ParamCurve: quadric target needs 4 forms");
    for (const auto& f : polys)
      if (f.degree() != 3 || f.is_zero())
        throw std::domain_error("ParamCurve: quadric forms must be nonzero of degree 3");
    if (bin_gcd(polys[0], polys[1]).degree() != 0)
      throw std::domain_error("ParamCurve: (p, q) not coprime");
    if (bin_gcd(polys[2], polys[3]).degree() != 0)
      throw std::domain_error("ParamCurve: (r, s) not coprime");
  }
}

IncidenceMatrix build_A(const PointConfigQuadric& cfg) {
  cfg.validate();
  IncidenceMatrix m;
  m.entries = RatMatrix::Constant(4, 6, Rat(0));
  m.col_labels = {"p0", "p1", "p2", "q1", "q2", "q3"};
  m.row_labels = {"point [1:1]", "point [1:mu1]", "point [1:mu2]", "point [1:mu3]"};
  for (int j = 0; j < 3; ++j) {
    m.entries(0, j) = Rat(1);
    m.entries(0, j + 3) = Rat(-1);
  }
  for (int i = 0; i < 3; ++i) {
    const Rat& mu = cfg.mu[static_cast<size_t>(i)];
    const Rat& l = cfg.lambda[static_cast<size_t>(i)];
    Rat lp(1);
    for (int j = 0; j < 3; ++j) {
      m.entries(i + 1, j) = mu * lp;
      m.entries(i + 1, j + 3) = -(lp * l);
      lp *= l;
    }
  }
  return m;
}

GammaMinors gamma_minors(const std::array<Rat, 3>& lambda) {
  require_admissible({lambda[0], lambda[1], lambda[2]}, "lambda");
  // Rows of the lambda block: (-1,-1,-1) then (-l_i, -l_i^2, -l_i^3).
  RatMatrix block = RatMatrix::Constant(4, 3, Rat(0));
  for (int j = 0; j < 3; ++j) block(0, j) = Rat(-1);
  for (int i = 0; i < 3; ++i) {
    Rat lp = lambda[static_cast<size_t>(i)];
    for (int j = 0; j < 3; ++j) {
      block(i + 1, j) = -lp;
      lp *= lambda[static_cast<size_t>(i)];
    }
  }
  auto minor_det = [&](int drop) {
    RatMatrix sub = RatMatrix::Constant(3, 3, Rat(0));
    int r = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == drop) continue;
      for (int j = 0; j < 3; ++j) sub(r, j) = block(i, j);
      ++r;
    }
    return det_of(sub);
  };
  GammaMinors g;
  g.m1 = minor_det(0);
  g.m2 = -minor_det(1);
  g.m3 = minor_det(2);
  g.m4 = -minor_det(3);
  std::array<Rat, 3> ms = {g.m2, g.m3, g.m4};
  RatMatrix mu_mat = RatMatrix::Constant(3, 3, Rat(0));
  for (int j = 0; j < 3; ++j) {
    Rat lp(1);
    for (int i = 0; i < 3; ++i) {
      mu_mat(i, j) = ms[static_cast<size_t>(j)] * lp;
      lp *= lambda[static_cast<size_t>(j)];
    }
  }
  g.det_check = det_of(mu_mat);
  if (g.det_check.is_zero())
    throw std::logic_error("gamma_minors: mu-coefficient determinant vanished");
  Rat lhs = g.m1 * g.m2 * g.m3 * g.m4;
  Rat rhs = -(lambda[0] * lambda[1] * lambda[2]) * g.det_check;
  if (!(lhs == rhs))
    throw std::logic_error("gamma_minors: minor product identity failed");
  return g;
}

std::array<Rat, 3> gamma_locus_mu(const std::array<Rat, 3>& lambda) {
  GammaMinors g = gamma_minors(lambda);
  std::array<Rat, 3> ms = {g.m2, g.m3, g.m4};
  RatMatrix sys = RatMatrix::Constant(3, 4, Rat(0));
  for (int j = 0; j < 3; ++j) {
    Rat lp(1);
    for (int i = 0; i < 3; ++i) {
      sys(i, j) = ms[static_cast<size_t>(j)] * lp;
      lp *= lambda[static_cast<size_t>(j)];
    }
  }
  for (int i = 0; i < 3; ++i) sys(i, 3) = -g.m1;
  rref_in_place(sys);
  return {sys(0, 3), sys(1, 3), sys(2, 3)};
}

const std::vector<std::string> kFVars = {"r1", "r3", "p1", "p2", "p3",
                                         "q1", "q2", "q3", "q4"};

RatPoly build_F(const Rat& mu) {
  if (mu == Rat(0) || mu == Rat(1))
    throw std::domain_error("build_F: mu must avoid 0 and 1");
  const int n = 9;
  const int R1 = 0, R3 = 1, P1 = 2, Q4 = 8;
  auto var = [&](int i) { return RatPoly::variable(n, i); };
  RatPoly r1 = var(R1), r3 = var(R3);

  // p0 eliminated via the [1:1] condition.
  RatPoly p0 = var(5) + var(6) + var(7) + var(8) - var(2) - var(3) - var(4);
  std::array<RatPoly, 4> pc = {p0, var(2), var(3), var(4)};
  std::array<RatPoly, 4> qc = {var(5), var(6), var(7), var(8)};

  // mu * p(1, l) = q(1, l) with l = r1/r3, cleared by r3^4.
  RatPoly f(n);
  for (int k = 0; k <= 3; ++k)
    f += pc[static_cast<size_t>(k)] * r1.pow(k) * r3.pow(4 - k) * mu;
  for (int k = 1; k <= 4; ++k)
    f -= qc[static_cast<size_t>(k - 1)] * r1.pow(k) * r3.pow(4 - k);

  // Certification (i): multilinear in the p/q block, no p_i p_j or p_i q_j.
  for (const auto& [e, c] : f.terms()) {
    int block = 0;
    for (int v = P1; v <= Q4; ++v) block += e[static_cast<size_t>(v)];
    if (block > 1)
      throw std::logic_error("build_F: monomial quadratic in the p/q block");
  }
  // Certification (ii): not divisible by r3; the q4 r1^4 coefficient is -1.
  if (f.divisible_by_var(R3)) throw std::logic_error("build_F: divisible by r3");
  RatPoly::Exps e_q4(static_cast<size_t>(n), 0);
  e_q4[R1] = 4;
  e_q4[Q4] = 1;
  if (!(f.coeff(e_q4) == Rat(-1)))
    throw std::logic_error("build_F: q4 r1^4 coefficient is not -1");
  RatPoly mod_r3 = f.substitute(R3, Rat(0));
  if (!(mod_r3 == RatPoly::monomial(n, e_q4, Rat(-1))))
    throw std::logic_error("build_F: reduction mod r3 is not -q4 r1^4");
  // Certification (iii): not divisible by r1 - r3. Substituting r1 = r3
  // must give r3^4 (mu - 1)(q1 + q2 + q3 + q4), nonzero since mu != 1.
  RatPoly diag = f.substitute(R1, r3);
  RatPoly expected = (var(5) + var(6) + var(7) + var(8)) * r3.pow(4) * (mu - Rat(1));
  if (diag.is_zero() || !(diag == expected))
    throw std::logic_error("build_F: substitution r1 = r3 disagrees");
  return f;
}

namespace {

std::vector<Rat> draw_distinct_admissible(Rng& rng, int count) {
  std::vector<Rat> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 1000) throw std::logic_error("draw_distinct_admissible: exhausted");
    Rat r = rng.rat();
    if (r == Rat(0) || r == Rat(1)) continue;
    bool dup = false;
    for (const Rat& s : out) dup = dup || s == r;
    if (!dup) out.push_back(r);
  }
  return out;
}

// Degree-3 form from the coefficients of a^3, a^2 b, a b^2, b^3.
BinForm cubic_form(const Rat& c3, const Rat& c2, const Rat& c1, const Rat& c0) {
  BinForm f(3);
  f.c[3] = c3;
  f.c[2] = c2;
  f.c[1] = c1;
  f.c[0] = c0;
  return f;
}

RatVector random_kernel_element(const RatMatrix& kernel, Rng& rng) {
  RatVector v = RatVector::Constant(kernel.rows(), Rat(0));
  for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
    Rat c = rng.rat();
    for (Eigen::Index i = 0; i < kernel.rows(); ++i) v(i) += kernel(i, j) * c;
  }
  return v;
}

void verify_quadric_conditions(const ParamCurve& curve, const PointConfigQuadric& cfg) {
  const BinForm &p = curve.polys[0], &q = curve.polys[1], &r = curve.polys[2],
                &w = curve.polys[3];
  if (!q.c[3].is_zero() || !w.c[3].is_zero() || !p.c[0].is_zero() || !r.c[0].is_zero())
    throw std::logic_error("sample_curve: normalization broken");
  if (p.c[3].is_zero() || r.c[3].is_zero() || q.c[0].is_zero() || w.c[0].is_zero())
    throw std::domain_error("sample_curve: degenerate value at base point");
  auto at_point = [&](const Rat& b, const Rat& mu) {
    Rat pv = p.eval(Rat(1), b), qv = q.eval(Rat(1), b);
    Rat rv = r.eval(Rat(1), b), wv = w.eval(Rat(1), b);
    if (pv.is_zero() || rv.is_zero())
      throw std::domain_error("sample_curve: degenerate value at prescribed point");
    if (!(qv == mu * pv) || !(wv == mu * rv))
      throw std::logic_error("sample_curve: point condition failed exactly");
  };
  at_point(Rat(1), Rat(1));
  for (int i = 0; i < 3; ++i)
    at_point(cfg.lambda[static_cast<size_t>(i)], cfg.mu[static_cast<size_t>(i)]);
}

}  // namespace

PointConfigQuadric draw_quadric_config(const std::array<Rat, 3>& mu, Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto l = draw_distinct_admissible(rng, 3);
    PointConfigQuadric cfg{mu, {l[0], l[1], l[2]}};
    if (build_A(cfg).rank() == 4) return cfg;
  }
  throw std::domain_error("draw_quadric_config: no full-rank lambda found");
}

ParamCurve sample_curve(const PointConfigQuadric& cfg, Rng& rng) {
  IncidenceMatrix A = build_A(cfg);
  if (A.rank() != 4) {
    std::string ls;
    for (const Rat& l : cfg.lambda) ls += " " + l.str();
    throw std::domain_error("sample_curve: constraint matrix rank defect at lambda" + ls);
  }
  RatMatrix kernel = kernel_basis(A.entries);  // 6 x 2 by rank-nullity
  for (int attempt = 0; attempt < 64; ++attempt) {
    RatVector pq = random_kernel_element(kernel, rng);
    RatVector rs = random_kernel_element(kernel, rng);
    ParamCurve curve;
    curve.target = CurveTarget::Quadric;
    curve.polys = {cubic_form(pq(0), pq(1), pq(2), Rat(0)),
                   cubic_form(Rat(0), pq(3), pq(4), pq(5)),
                   cubic_form(rs(0), rs(1), rs(2), Rat(0)),
                   cubic_form(Rat(0), rs(3), rs(4), rs(5))};
    try {
      verify_quadric_conditions(curve, cfg);
      curve.validate();
    } catch (const std::domain_error&) {
      continue;  // degenerate draw
    }
    return curve;
  }
  throw std::domain_error("sample_curve: repeated degenerate kernel draws");
}

ParamCurve sample_curve(const PointConfigP2& cfg, Rng& rng) {
  cfg.validate();
  if (cfg.mu.size() != 1)
    throw std::domain_error("sample_curve: degree-4 plane case uses exactly one mu");
  const Rat mu = cfg.mu[0];
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rat l = rng.rat();
    if (l == Rat(0) || l == Rat(1) || l == mu) continue;
    // p/q block: unknowns (p0..p3, q1..q4); conditions at [1:1] and [1:l].
    RatMatrix rows = RatMatrix::Constant(2, 8, Rat(0));
    for (int j = 0; j < 4; ++j) {
      rows(0, j) = Rat(1);
      rows(0, j + 4) = Rat(-1);
    }
    Rat lp(1);
    for (int j = 0; j < 4; ++j) { rows(1, j) = mu * lp; lp *= l; }
    lp = l;
    for (int j = 4; j < 8; ++j) { rows(1, j) = -lp; lp *= l; }
    if (rank_of(rows) != 2) continue;
    RatVector pq = random_kernel_element(kernel_basis(rows), rng);
    // r block: r = a b (r1 a^2 + r2 a b + r3 b^2) vanishing at [1:1], [1:l].
    RatMatrix rrows = RatMatrix::Constant(2, 3, Rat(0));
    rrows(0, 0) = rrows(0, 1) = rrows(0, 2) = Rat(1);
    rrows(1, 0) = Rat(1);
    rrows(1, 1) = l;
    rrows(1, 2) = l * l;
    RatVector rv = random_kernel_element(kernel_basis(rrows), rng);

    BinForm p(4), q(4), r(4);
    p.c[4] = pq(0); p.c[3] = pq(1); p.c[2] = pq(2); p.c[1] = pq(3);  // p4 = 0
    q.c[3] = pq(4); q.c[2] = pq(5); q.c[1] = pq(6); q.c[0] = pq(7);  // q0 = 0
    r.c[3] = rv(0); r.c[2] = rv(1); r.c[1] = rv(2);                  // r0 = r4 = 0
    if (p.c[4].is_zero() || q.c[0].is_zero() || r.is_zero()) continue;
    Rat p11 = p.eval(Rat(1), Rat(1)), q11 = q.eval(Rat(1), Rat(1));
    Rat plv = p.eval(Rat(1), l), qlv = q.eval(Rat(1), l);
    if (p11.is_zero() || plv.is_zero()) continue;
    if (!(p11 == q11) || !(qlv == mu * plv))
      throw std::logic_error("sample_curve: exact point condition failed");
    if (!r.eval(Rat(1), Rat(1)).is_zero() || !r.eval(Rat(1), l).is_zero())
      throw std::logic_error("sample_curve: r does not vanish at prescribed points");
    ParamCurve curve;
    curve.target = CurveTarget::P2;
    curve.polys = {p, q, r};
    try {
      curve.validate();
    } catch (const std::domain_error&) {
      continue;
    }
    return curve;
  }
  throw std::domain_error("sample_curve: repeated degenerate draws");
}

// ---------------------------------------------------------------------------
// Double points and non-immersion analysis.

namespace {

std::complex<double> uni_eval_c(const UniPoly& f, std::complex<double> x) {
  std::complex<double> acc(0, 0);
  for (size_t i = f.c.size(); i-- > 0;) acc = acc * x + f.c[i].to_double();
  return acc;
}

// (f(s) g(t) - f(t) g(s)) / (t - s) as a polynomial in t with coefficients
// in Q[s]. The synthetic-division remainder is identically zero; asserted.
std::vector<UniPoly> symmetrized_minor(const BinForm& f, const BinForm& g) {
  UniPoly fs = f.dehomogenize(), gs = g.dehomogenize();
  int d = f.degree();
  std::vector<UniPoly> P(static_cast<size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    Rat fj = j <= fs.deg() ? fs.c[static_cast<size_t>(j)] : Rat(0);
    Rat gj = j <= gs.deg() ? gs.c[static_cast<size_t>(j)] : Rat(0);
    P[static_cast<size_t>(j)] = uni_sub(uni_scale(fs, gj), uni_scale(gs, fj));
  }
  std::vector<UniPoly> Q(static_cast<size_t>(d));
  UniPoly carry = P[static_cast<size_t>(d)];
  for (int j = d; j >= 1; --j) {
    Q[static_cast<size_t>(j - 1)] = carry;
    UniPoly shifted;  // s * carry
    shifted.c.assign(carry.c.size() + 1, Rat(0));
    for (size_t i = 0; i < carry.c.size(); ++i) shifted.c[i + 1] = carry.c[i];
    shifted.normalize();
    carry = uni_add(P[static_cast<size_t>(j - 1)], shifted);
  }
  if (!carry.is_zero())
    throw std::logic_error("symmetrized_minor: division by (t - s) left a remainder");
  return Q;
}

RatPoly uni_to_rp1(const UniPoly& f) {
  RatPoly p(1);
  for (size_t i = 0; i < f.c.size(); ++i)
    if (!f.c[i].is_zero()) p.add_term({static_cast<int>(i)}, f.c[i]);
  return p;
}

UniPoly rp1_to_uni(const RatPoly& p) {
  std::vector<Rat> c(static_cast<size_t>(std::max(0, p.total_degree())) + 1, Rat(0));
  for (const auto& [e, v] : p.terms()) c[static_cast<size_t>(e[0])] = v;
  return UniPoly(std::move(c));
}

// Cofactor expansion along the first column, zero entries pruned.
RatPoly poly_det(const std::vector<std::vector<RatPoly>>& m, int nvars) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  RatPoly acc(nvars);
  for (size_t i = 0; i < n; ++i) {
    if (m[i][0].is_zero()) continue;
    std::vector<std::vector<RatPoly>> sub;
    sub.reserve(n - 1);
    for (size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      sub.emplace_back(m[r].begin() + 1, m[r].end());
    }
    RatPoly term = m[i][0] * poly_det(sub, nvars);
    if (i % 2 == 0) acc += term;
    else acc -= term;
  }
  return acc;
}

// Resultant in t of sum a_j t^j and sum b_j t^j over a polynomial ring,
// via the Sylvester determinant; leading zero coefficients trimmed first.
RatPoly sylvester_resultant(std::vector<RatPoly> a, std::vector<RatPoly> b, int nvars) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  while (!b.empty() && b.back().is_zero()) b.pop_back();
  if (a.empty() || b.empty()) return RatPoly(nvars);
  int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
  if (da == 0) return a[0].pow(db);
  if (db == 0) return b[0].pow(da);
  int n = da + db;
  std::vector<std::vector<RatPoly>> m(
      static_cast<size_t>(n),
      std::vector<RatPoly>(static_cast<size_t>(n), RatPoly(nvars)));
  for (int row = 0; row < db; ++row)
    for (int j = 0; j <= da; ++j)
      m[static_cast<size_t>(row)][static_cast<size_t>(row + j)] =
          a[static_cast<size_t>(da - j)];
  for (int row = 0; row < da; ++row)
    for (int j = 0; j <= db; ++j)
      m[static_cast<size_t>(db + row)][static_cast<size_t>(row + j)] =
          b[static_cast<size_t>(db - j)];
  return poly_det(m, nvars);
}

// The pair of symmetrized minor forms as a 2x2 analytic system in (s, t),
// with Newton refinement for candidate double-point pairs.
struct MinorSystem {
  const std::vector<UniPoly>& A;
  const std::vector<UniPoly>& B;

  static std::complex<double> eval_list(const std::vector<UniPoly>& M,
                                        std::complex<double> s, std::complex<double> t) {
    std::complex<double> acc(0, 0);
    for (size_t j = M.size(); j-- > 0;) acc = acc * t + uni_eval_c(M[j], s);
    return acc;
  }
  static std::complex<double> eval_dt(const std::vector<UniPoly>& M,
                                      std::complex<double> s, std::complex<double> t) {
    std::complex<double> acc(0, 0);
    for (size_t j = M.size(); j-- > 1;)
      acc = acc * t + uni_eval_c(M[j], s) * static_cast<double>(j);
    return acc;
  }
  static std::complex<double> eval_ds(const std::vector<UniPoly>& M,
                                      std::complex<double> s, std::complex<double> t) {
    std::complex<double> acc(0, 0);
    for (size_t j = M.size(); j-- > 0;) acc = acc * t + uni_eval_c(uni_derivative(M[j]), s);
    return acc;
  }

  // Refine (s, t) on A = B = 0; returns false when Newton degenerates.
  bool polish(std::complex<double>& s, std::complex<double>& t) const {
    std::complex<double> bs = s, bt = t;
    double best = std::abs(eval_list(A, s, t)) + std::abs(eval_list(B, s, t));
    for (int it = 0; it < 40; ++it) {
      std::complex<double> fa = eval_list(A, s, t), fb = eval_list(B, s, t);
      std::complex<double> a11 = eval_ds(A, s, t), a12 = eval_dt(A, s, t);
      std::complex<double> a21 = eval_ds(B, s, t), a22 = eval_dt(B, s, t);
      std::complex<double> det = a11 * a22 - a12 * a21;
      if (std::abs(det) < 1e-300) break;
      std::complex<double> ds = (fa * a22 - fb * a12) / det;
      std::complex<double> dt = (fb * a11 - fa * a21) / det;
      s -= ds;
      t -= dt;
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag()) ||
          !std::isfinite(t.real()) || !std::isfinite(t.imag()))
        return false;
      double res = std::abs(eval_list(A, s, t)) + std::abs(eval_list(B, s, t));
      if (res < best) { best = res; bs = s; bt = t; }
      if (std::abs(ds) + std::abs(dt) < 1e-15 * (1.0 + std::abs(s) + std::abs(t))) break;
    }
    s = bs;
    t = bt;
    return true;
  }
};

struct ImageChecker {
  const ParamCurve& c;
  double match_tol = 1e-6;

  bool factor_match(const BinForm& f, const BinForm& g, std::complex<double> s,
                    std::complex<double> t) const {
    std::complex<double> fs = uni_eval_c(f.dehomogenize(), s);
    std::complex<double> gs = uni_eval_c(g.dehomogenize(), s);
    std::complex<double> ft = uni_eval_c(f.dehomogenize(), t);
    std::complex<double> gt = uni_eval_c(g.dehomogenize(), t);
    double ns = std::sqrt(std::norm(fs) + std::norm(gs));
    double nt = std::sqrt(std::norm(ft) + std::norm(gt));
    if (ns == 0 || nt == 0) return false;
    return std::abs(fs * gt - ft * gs) / (ns * nt) < match_tol;
  }

  bool images_match(std::complex<double> s, std::complex<double> t) const {
    if (c.target == CurveTarget::Quadric) {
      return factor_match(c.polys[0], c.polys[1], s, t) &&
             factor_match(c.polys[2], c.polys[3], s, t);
    }
    auto ev = [&](size_t i, std::complex<double> x) {
      return uni_eval_c(c.polys[i].dehomogenize(), x);
    };
    std::complex<double> ps = ev(0, s), qs = ev(1, s), rs = ev(2, s);
    std::complex<double> pt = ev(0, t), qt = ev(1, t), rt = ev(2, t);
    double ns = std::sqrt(std::norm(ps) + std::norm(qs) + std::norm(rs));
    double nt = std::sqrt(std::norm(pt) + std::norm(qt) + std::norm(rt));
    if (ns == 0 || nt == 0) return false;
    double mis = std::abs(ps * qt - pt * qs) + std::abs(ps * rt - pt * rs) +
                 std::abs(qs * rt - qt * rs);
    return mis / (ns * nt) < match_tol;
  }

  // Branch tangent directions at s and t differ => node.
  bool is_node(std::complex<double> s, std::complex<double> t) const {
    if (c.target == CurveTarget::P2) {
      std::complex<double> P[3], Ts[3], Tt[3];
      for (size_t i = 0; i < 3; ++i) {
        UniPoly f = c.polys[i].dehomogenize();
        UniPoly df = uni_derivative(f);
        P[i] = uni_eval_c(f, s);
        Ts[i] = uni_eval_c(df, s);
        Tt[i] = uni_eval_c(df, t);
      }
      std::complex<double> det = P[0] * (Ts[1] * Tt[2] - Ts[2] * Tt[1]) -
                                 P[1] * (Ts[0] * Tt[2] - Ts[2] * Tt[0]) +
                                 P[2] * (Ts[0] * Tt[1] - Ts[1] * Tt[0]);
      auto norm3 = [](std::complex<double>* v) {
        return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
      };
      double scale = norm3(P) * norm3(Ts) * norm3(Tt);
      return scale > 0 && std::abs(det) / scale > 1e-6;
    }
    // Quadric: derivative of (p/q, r/w) through the coordinate Wronskians.
    BinForm W1 = bin_wronskian(c.polys[0], c.polys[1]);
    BinForm W2 = bin_wronskian(c.polys[2], c.polys[3]);
    auto dir = [&](std::complex<double> x) {
      std::complex<double> q = uni_eval_c(c.polys[1].dehomogenize(), x);
      std::complex<double> w = uni_eval_c(c.polys[3].dehomogenize(), x);
      std::complex<double> u = uni_eval_c(W1.dehomogenize(), x) / (q * q);
      std::complex<double> v = uni_eval_c(W2.dehomogenize(), x) / (w * w);
      return std::pair<std::complex<double>, std::complex<double>>(u, v);
    };
    auto [us, vs] = dir(s);
    auto [ut, vt] = dir(t);
    double ns = std::sqrt(std::norm(us) + std::norm(vs));
    double nt = std::sqrt(std::norm(ut) + std::norm(vt));
    if (ns == 0 || nt == 0) return false;  // singular branch, not a plain node
    return std::abs(us * vt - ut * vs) / (ns * nt) > 1e-6;
  }
};

}  // namespace

DoublePointReport double_points(const ParamCurve& c, double cluster_tol) {
  c.validate();
  DoublePointReport report;
  const bool quadric = c.target == CurveTarget::Quadric;
  std::vector<UniPoly> A = symmetrized_minor(c.polys[0], c.polys[1]);
  std::vector<UniPoly> B = quadric ? symmetrized_minor(c.polys[2], c.polys[3])
                                   : symmetrized_minor(c.polys[0], c.polys[2]);

  std::vector<RatPoly> Arp, Brp;
  for (const auto& f : A) Arp.push_back(uni_to_rp1(f));
  for (const auto& f : B) Brp.push_back(uni_to_rp1(f));
  RatPoly Rrp = sylvester_resultant(Arp, Brp, 1);
  if (Rrp.is_zero())
    throw std::domain_error("double_points: identically zero resultant");
  UniPoly R = rp1_to_uni(Rrp);
  std::vector<std::complex<double>> roots = poly_roots(R.to_complex());

  ImageChecker checker{c};
  std::vector<DoublePoint> found;
  auto lex_less = [](std::complex<double> a, std::complex<double> b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  };
  double root_scale = 1.0;
  for (const auto& r : roots) root_scale = std::max(root_scale, std::abs(r));

  MinorSystem minors{A, B};
  for (const auto& s0 : roots) {
    // Candidate partners: roots in t of A(s0, t), falling back to B when the
    // whole A(s0, .) collapses numerically.
    std::vector<std::complex<double>> candidates;
    for (const auto* M : {&A, &B}) {
      std::vector<std::complex<double>> mc(M->size());
      double mmax = 0;
      for (size_t j = 0; j < M->size(); ++j) {
        mc[j] = uni_eval_c((*M)[j], s0);
        mmax = std::max(mmax, std::abs(mc[j]));
      }
      if (mmax < 1e-9) continue;
      while (!mc.empty() && std::abs(mc.back()) < 1e-12 * mmax) mc.pop_back();
      if (mc.size() > 1) candidates = poly_roots(mc);
      break;
    }
    for (const auto& t0 : candidates) {
      std::complex<double> s1 = s0, t1 = t0;
      if (!minors.polish(s1, t1)) continue;
      double local = 1.0 + std::abs(s1) + std::abs(t1);
      if (std::abs(t1 - s1) < 1e-9 * local) continue;  // diagonal: non-immersion territory
      if (!checker.images_match(s1, t1)) continue;
      DoublePoint dp;
      dp.s = s1;
      dp.t = t1;
      if (lex_less(dp.t, dp.s)) std::swap(dp.s, dp.t);
      bool dup = false;
      for (const auto& other : found) {
        double direct = std::abs(other.s - dp.s) + std::abs(other.t - dp.t);
        double swapped = std::abs(other.s - dp.t) + std::abs(other.t - dp.s);
        if (std::min(direct, swapped) < 1e-5 * local) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      dp.node = checker.is_node(dp.s, dp.t);
      found.push_back(dp);
    }
  }

  for (auto& a : found) {
    for (const auto& b : found) {
      if (&a == &b) continue;
      double d = std::min(std::min(std::abs(a.s - b.s), std::abs(a.s - b.t)),
                          std::min(std::abs(a.t - b.s), std::abs(a.t - b.t)));
      if (d < cluster_tol) a.unresolved = true;
    }
  }

  // Pairs with one member at [1:0], decided exactly through the minors
  // against phi([1:0]).
  int d = c.polys[0].degree();
  auto top = [&](const BinForm& f) { return f.c[static_cast<size_t>(d)]; };
  auto inf_minor = [&](const BinForm& f, const BinForm& g) {
    return uni_sub(uni_scale(g.dehomogenize(), top(f)),
                   uni_scale(f.dehomogenize(), top(g)));
  };
  UniPoly ginf;
  if (quadric) {
    ginf = uni_gcd(inf_minor(c.polys[0], c.polys[1]),
                   inf_minor(c.polys[2], c.polys[3]));
  } else {
    ginf = uni_gcd(uni_gcd(inf_minor(c.polys[0], c.polys[1]),
                           inf_minor(c.polys[0], c.polys[2])),
                   inf_minor(c.polys[1], c.polys[2]));
  }
  report.pairs_with_infinity = std::max(ginf.deg(), 0);

  report.pairs = std::move(found);
  return report;
}

BinRoots non_immersion_points(const ParamCurve& c) {
  c.validate();
  BinForm g;
  if (c.target == CurveTarget::Quadric) {
    g = bin_gcd(bin_wronskian(c.polys[0], c.polys[1]),
                bin_wronskian(c.polys[2], c.polys[3]));
  } else {
    g = bin_gcd(bin_gcd(bin_wronskian(c.polys[0], c.polys[1]),
                        bin_wronskian(c.polys[0], c.polys[2])),
                bin_wronskian(c.polys[1], c.polys[2]));
  }
  if (g.degree() <= 0) return BinRoots{};
  return bin_roots(g);
}

namespace {

// Eliminate t from f1(t) - u g1(t) and f2(t) - v g2(t). With f_i(0) = 0 and
// g_i(0) != 0 this is the local equation of the image of t -> (f1/g1, f2/g2)
// in the chart centered at the image of t = 0.
RatPoly eliminate_parameter(const UniPoly& f1, const UniPoly& g1, const UniPoly& f2,
                            const UniPoly& g2) {
  auto t_coeffs = [](const UniPoly& f, const UniPoly& g, int var) {
    size_t n = std::max(f.c.size(), g.c.size());
    std::vector<RatPoly> out(n, RatPoly(2));
    RatPoly x = RatPoly::variable(2, var);
    for (size_t j = 0; j < n; ++j) {
      Rat fj = j < f.c.size() ? f.c[j] : Rat(0);
      Rat gj = j < g.c.size() ? g.c[j] : Rat(0);
      out[j] = RatPoly::constant(2, fj) - x * gj;
    }
    return out;
  };
  return sylvester_resultant(t_coeffs(f1, g1, 0), t_coeffs(f2, g2, 1), 2);
}

}  // namespace

RatPoly local_image_equation_at_zero(const ParamCurve& c) {
  if (c.target != CurveTarget::Quadric)
    throw std::invalid_argument("local_image_equation_at_zero: quadric target only");
  return eliminate_parameter(c.polys[0].dehomogenize(), c.polys[1].dehomogenize(),
                             c.polys[2].dehomogenize(), c.polys[3].dehomogenize());
}

ParamCurve cusp_sample(const PointConfigQuadric& cfg, Rng& rng) {
  cfg.validate();
  // The cusp sits at the preimage [0:1] with a chosen rational image
  // ([1:alpha],[1:beta]) off the diagonal. Passage and tangency there are two
  // linear conditions per factor; together with [1:0], [1:1] and the three
  // mu-points each coefficient block carries 7 independent conditions on 8
  // unknowns, so each block has a one-dimensional solution space. An
  // on-diagonal cusp image (alpha = beta) would make the two blocks solve the
  // same system and collapse the image onto the diagonal, so it is excluded.
  // The curve still meets the diagonal in 6 points: the five prescribed ones
  // plus a sixth rational one forced by the degree count.
  std::array<Rat, 3> lambda = cfg.lambda;
  for (int attempt = 0; attempt < 200; ++attempt) {
    PointConfigQuadric use{cfg.mu, lambda};
    Rat alpha = rng.rat(), beta = rng.rat();
    bool admissible = !(alpha == beta) && !alpha.is_zero() && !beta.is_zero() &&
                      !(alpha == Rat(1)) && !(beta == Rat(1));

    // Conditions on (x0..x3, y0..y3) for one factor block, image slope m at
    // the cusp: y0 = 0 at [1:0]; y = x at [1:1]; y = mu_i x at [1:lambda_i];
    // y3 = m x3 and y2 = m x2 (passage + tangency at [0:1]).
    auto block_solve = [&](const Rat& m, RatVector& out) {
      RatMatrix rows = RatMatrix::Constant(7, 8, Rat(0));
      rows(0, 4) = Rat(1);  // y0 = 0
      for (int j = 0; j < 4; ++j) { rows(1, j) = Rat(1); rows(1, j + 4) = Rat(-1); }
      for (int i = 0; i < 3; ++i) {
        Rat lp(1);
        for (int j = 0; j < 4; ++j) {
          rows(2 + i, j) = use.mu[static_cast<size_t>(i)] * lp;
          rows(2 + i, j + 4) = -lp;
          lp *= lambda[static_cast<size_t>(i)];
        }
      }
      rows(5, 3) = m; rows(5, 7) = Rat(-1);  // y3 = m x3
      rows(6, 2) = m; rows(6, 6) = Rat(-1);  // y2 = m x2
      if (rank_of(rows) != 7) return false;
      RatMatrix kernel = kernel_basis(rows);  // 8 x 1
      out = kernel.col(0) * rng.rat();
      return true;
    };

    RatVector pq, rs;
    if (admissible && block_solve(alpha, pq) && block_solve(beta, rs)) {
      // Coefficient order (x0..x3) = (a^3, a^2 b, a b^2, b^3).
      ParamCurve curve;
      curve.target = CurveTarget::Quadric;
      curve.polys = {cubic_form(pq(0), pq(1), pq(2), pq(3)),
                     cubic_form(pq(4), pq(5), pq(6), pq(7)),
                     cubic_form(rs(0), rs(1), rs(2), rs(3)),
                     cubic_form(rs(4), rs(5), rs(6), rs(7))};
      const BinForm &p = curve.polys[0], &q = curve.polys[1];
      const BinForm &r = curve.polys[2], &w = curve.polys[3];
      bool ok = !p.c[3].is_zero() && !r.c[3].is_zero() &&  // [1:0] base point
                !p.c[0].is_zero() && !r.c[0].is_zero();    // cusp image finite
      if (ok) {
        try {
          curve.validate();
          Rat p11 = p.eval(Rat(1), Rat(1));
          if (p11.is_zero() || r.eval(Rat(1), Rat(1)).is_zero()) ok = false;
          for (int i = 0; ok && i < 3; ++i) {
            if (p.eval(Rat(1), lambda[static_cast<size_t>(i)]).is_zero() ||
                r.eval(Rat(1), lambda[static_cast<size_t>(i)]).is_zero())
              ok = false;
          }
        } catch (const std::domain_error&) {
          ok = false;
        }
      }
      if (ok) {
        // Exactly one non-immersion point and it must be [0:1] (the form a).
        BinForm g = bin_gcd(bin_wronskian(p, q), bin_wronskian(r, w));
        ok = g.degree() == 1 && g.c[0].is_zero() && !g.c[1].is_zero();
      }
      if (ok) {
        // Local equation at the cusp in the chart centered at its image:
        // u = (q - alpha p)/p, v = (w - beta r)/r.
        UniPoly f1 = uni_sub(q.dehomogenize(), uni_scale(p.dehomogenize(), alpha));
        UniPoly f2 = uni_sub(w.dehomogenize(), uni_scale(r.dehomogenize(), beta));
        RatPoly local = eliminate_parameter(f1, p.dehomogenize(), f2, r.dehomogenize());
        if (!local.is_zero() && local.coeff({0, 0}).is_zero()) {
          Colength mu_loc = milnor_number(local);
          if (!mu_loc.unbounded() && *mu_loc.value == 2) return curve;
        }
      }
    }
    auto l = draw_distinct_admissible(rng, 3);
    lambda = {l[0], l[1], l[2]};
  }
  throw std::domain_error("cusp_sample: could not realize the forced cusp");
}

int expected_double_points(const ParamCurve& c) {
  if (c.target == CurveTarget::P2) {
    int d = c.polys[0].degree();
    return (d - 1) * (d - 2) / 2;
  }
  int a = c.polys[0].degree(), b = c.polys[2].degree();
  return (a - 1) * (b - 1);
}

}  // namespace k3c
