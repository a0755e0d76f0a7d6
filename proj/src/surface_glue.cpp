#include "k3c/surface_glue.hpp"

#include <optional>
#include <stdexcept>

#include "k3c/linalg_exact.hpp"

namespace k3c {

namespace {

constexpr int X = 0, Y = 1, Z = 2, T = 3;

std::vector<Rat> to_vec(const std::array<Rat, 4>& p) {
  return {p[0], p[1], p[2], p[3]};
}

bool proj_equal(const std::array<Rat, 4>& a, const std::array<Rat, 4>& b) {
  // a ~ b iff all 2x2 minors vanish.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!(a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)] ==
            a[static_cast<size_t>(j)] * b[static_cast<size_t>(i)]))
        return false;
  return true;
}

void check_singular_on(const RatPoly& eq, const std::array<Rat, 4>& p,
                       const std::array<int, 3>& vars, const char* what) {
  std::vector<Rat> v = to_vec(p);
  if (!eq.eval(v).is_zero())
    throw std::domain_error(std::string(what) + ": listed point not on the curve");
  for (int var : vars)
    if (!eq.derivative(var).eval(v).is_zero())
      throw std::domain_error(std::string(what) + ": listed point not singular");
}

}  // namespace

void GlueInput::validate() const {
  if (g.nvars() != 4 || h.nvars() != 4)
    throw std::domain_error("GlueInput: polynomials must live in Q[x,y,z,t]");
  if (g.is_zero() || !g.is_homogeneous(4) || g.degree_in(X) > 0)
    throw std::domain_error("GlueInput: g must be a quartic in (y, z, t)");
  if (h.is_zero() || !h.is_homogeneous(4) || h.degree_in(T) > 0)
    throw std::domain_error("GlueInput: h must be a quartic in (x, y, z)");
  if (lambda.is_zero()) throw std::domain_error("GlueInput: lambda must be nonzero");
  RatPoly lhs = g.substitute(T, Rat(0));
  RatPoly rhs = h.substitute(X, Rat(0)) * lambda;
  if (!(lhs == rhs))
    throw std::domain_error("GlueInput: compatibility g(y,z,0) = lambda h(0,y,z) fails");
  for (const auto& p : sing_c) {
    if (!p[X].is_zero())
      throw std::domain_error("GlueInput: singular point of C must have x = 0");
    check_singular_on(g, p, {Y, Z, T}, "GlueInput(C)");
  }
  for (const auto& p : sing_cprime) {
    if (!p[T].is_zero())
      throw std::domain_error("GlueInput: singular point of C' must have t = 0");
    check_singular_on(h, p, {X, Y, Z}, "GlueInput(C')");
  }
  for (const auto& p : sing_c)
    for (const auto& q : sing_cprime)
      if (proj_equal(p, q))
        throw std::domain_error("GlueInput: Sing C meets Sing C'");
}

GlueOutput glue(const GlueInput& inp, Rng& rng) {
  inp.validate();
  const int n = 4;

  // f = g + lambda (h - h|_{x=0}) + mixed terms divisible by x t.
  RatPoly f = inp.g + (inp.h - inp.h.substitute(X, Rat(0))) * inp.lambda;
  RatPoly::Exps e_a = {1, 0, 0, 3};  // x t^3, tuned below
  RatPoly::Exps e_b = {3, 0, 0, 1};  // x^3 t
  for (int i = 1; i <= 3; ++i) {
    for (int l = 1; i + l <= 4; ++l) {
      for (int j = 0; i + l + j <= 4; ++j) {
        int k = 4 - i - l - j;
        RatPoly::Exps e = {i, j, k, l};
        if (e == e_a || e == e_b) continue;
        f.add_term(e, rng.rat());
      }
    }
  }

  // Pick the smallest positive integer coefficient avoiding the finitely
  // many excluded values, one exclusion per inspected point.
  auto choose = [](const std::vector<Rat>& excluded) {
    for (long cand = 1;; ++cand) {
      bool ok = true;
      for (const Rat& bad : excluded) ok = ok && !(bad == Rat(cand));
      if (ok) return Rat(cand);
    }
  };

  // Coefficient a: f_x(P) = base(P) + a t(P)^3 at P in Sing C; t(P) != 0
  // exactly when P is off C'.
  RatPoly fx0 = f.derivative(X);
  std::vector<Rat> bad_a;
  for (const auto& p : inp.sing_c) {
    Rat t3 = p[T] * p[T] * p[T];
    if (t3.is_zero()) continue;
    Rat base = fx0.eval(to_vec(p));
    bad_a.push_back(-base / t3);
  }
  Rat a = choose(bad_a);
  f.add_term(e_a, a);

  RatPoly ft0 = f.derivative(T);
  std::vector<Rat> bad_b;
  for (const auto& p : inp.sing_cprime) {
    Rat x3 = p[X] * p[X] * p[X];
    if (x3.is_zero()) continue;
    Rat base = ft0.eval(to_vec(p));
    bad_b.push_back(-base / x3);
  }
  Rat b = choose(bad_b);
  f.add_term(e_b, b);

  GlueOutput out;
  out.f = f;
  out.a = a;
  out.b = b;

  RatPoly fx = f.derivative(X), ft = f.derivative(T);
  for (const auto& p : inp.sing_c) {
    Rat v = fx.eval(to_vec(p));
    if (v.is_zero()) {
      if (p[T].is_zero())
        throw std::domain_error("glue: forced value vanished; C' is singular where C is");
      throw std::logic_error("glue: tuned f_x vanished at a singular point of C");
    }
    out.certificate.push_back({p, 'x', v});
  }
  for (const auto& p : inp.sing_cprime) {
    Rat v = ft.eval(to_vec(p));
    if (v.is_zero()) {
      if (p[X].is_zero())
        throw std::domain_error("glue: forced value vanished; C is singular where C' is");
      throw std::logic_error("glue: tuned f_t vanished at a singular point of C'");
    }
    out.certificate.push_back({p, 't', v});
  }

  // Restriction identities, exact.
  if (!(f.substitute(X, Rat(0)) == inp.g))
    throw std::logic_error("glue: restriction to {x=0} is not g");
  if (!(f.substitute(T, Rat(0)) == inp.h * inp.lambda))
    throw std::logic_error("glue: restriction to {t=0} is not lambda h");
  return out;
}

namespace {

std::vector<RatPoly::Exps> quartic_monomials(const std::array<int, 3>& vars) {
  std::vector<RatPoly::Exps> out;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) {
      RatPoly::Exps e(4, 0);
      e[static_cast<size_t>(vars[0])] = i;
      e[static_cast<size_t>(vars[1])] = j;
      e[static_cast<size_t>(vars[2])] = 4 - i - j;
      out.push_back(e);
    }
  return out;
}

// Solve grad(base + sum_k c_k m_k)(P_i) = 0 over the listed points and
// return base + a random solution; empty optional when inconsistent.
std::optional<RatPoly> solve_through_nodes(const RatPoly& base,
                                           const std::vector<RatPoly::Exps>& monos,
                                           const std::vector<std::array<Rat, 4>>& nodes,
                                           const std::array<int, 3>& vars, Rng& rng) {
  const int ncols = static_cast<int>(monos.size());
  const int nrows = 3 * static_cast<int>(nodes.size());
  RatMatrix sys = RatMatrix::Constant(nrows, ncols + 1, Rat(0));
  int row = 0;
  for (const auto& p : nodes) {
    std::vector<Rat> v = to_vec(p);
    for (int dv = 0; dv < 3; ++dv) {
      for (int col = 0; col < ncols; ++col) {
        RatPoly m = RatPoly::monomial(4, monos[static_cast<size_t>(col)], Rat(1));
        sys(row, col) = m.derivative(vars[static_cast<size_t>(dv)]).eval(v);
      }
      sys(row, ncols) = -base.derivative(vars[static_cast<size_t>(dv)]).eval(v);
      ++row;
    }
  }
  RatMatrix coef = sys.leftCols(ncols);
  if (rank_of(coef) != rank_of(sys)) return std::nullopt;
  // Particular solution via rref of the augmented system.
  RatMatrix aug = sys;
  std::vector<int> piv = rref_in_place(aug);
  RatVector part = RatVector::Constant(ncols, Rat(0));
  for (size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == ncols) return std::nullopt;  // inconsistent
    part(piv[r]) = aug(static_cast<Eigen::Index>(r), ncols);
  }
  RatMatrix kern = kernel_basis(coef);
  RatVector sol = part;
  for (Eigen::Index j = 0; j < kern.cols(); ++j) {
    Rat c = rng.rat();
    for (Eigen::Index i = 0; i < kern.rows(); ++i) sol(i) += kern(i, j) * c;
  }
  RatPoly out = base;
  for (int col = 0; col < ncols; ++col)
    out.add_term(monos[static_cast<size_t>(col)], sol(col));
  return out;
}

}  // namespace

GlueInput random_glue_input(int nodes_on_c, int nodes_on_cprime, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    GlueInput inp;
    inp.lambda = Rat(1);
    // Nodes of C at [0 : y : z : 1], nodes of C' at [1 : y : z : 0]; the two
    // lists can never meet projectively.
    std::vector<std::array<Rat, 4>> nc, ncp;
    for (int k = 0; k < nodes_on_c; ++k)
      nc.push_back({Rat(0), rng.rat(), rng.rat(), Rat(1)});
    for (int k = 0; k < nodes_on_cprime; ++k)
      ncp.push_back({Rat(1), rng.rat(), rng.rat(), Rat(0)});

    auto g = solve_through_nodes(RatPoly(4), quartic_monomials({Y, Z, T}), nc,
                                 {Y, Z, T}, rng);
    if (!g || g->is_zero()) continue;
    // h agrees with g on the common line; only x-divisible monomials free.
    RatPoly h_base = g->substitute(T, Rat(0));
    std::vector<RatPoly::Exps> free_h;
    for (const auto& e : quartic_monomials({X, Y, Z}))
      if (e[X] >= 1) free_h.push_back(e);
    auto h = solve_through_nodes(h_base, free_h, ncp, {X, Y, Z}, rng);
    if (!h || h->is_zero()) continue;
    inp.g = *g;
    inp.h = *h;
    inp.sing_c = nc;
    inp.sing_cprime = ncp;
    try {
      inp.validate();
    } catch (const std::domain_error&) {
      continue;
    }
    return inp;
  }
  throw std::domain_error("random_glue_input: could not build a compatible input");
}

}  // namespace k3c
