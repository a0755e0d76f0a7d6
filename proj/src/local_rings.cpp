#include "k3c/local_rings.hpp"

#include <stdexcept>

#include "k3c/linalg_exact.hpp"

namespace k3c {

RatPoly bipoly(const std::string& text) { return parse_poly(text, {"x", "y"}); }

LocalIdeal::LocalIdeal(std::vector<RatPoly> g) {
  for (auto& p : g) {
    if (p.is_zero()) continue;
    if (p.nvars() != 2) throw std::invalid_argument("LocalIdeal: generators must be bivariate");
    if (!p.coeff({0, 0}).is_zero())
      throw std::domain_error("LocalIdeal: generator has nonzero constant term");
    gens.push_back(std::move(p));
  }
}

namespace {

// Monomial x^i y^j of degree d = i+j gets index d(d+1)/2 + j: graded order,
// so sparse pivots sit at the lowest-degree monomial of each row.
int mono_index(int i, int j) {
  int d = i + j;
  return d * (d + 1) / 2 + j;
}

int slab_size(int t) { return t * (t + 1) / 2; }  // # monomials of degree < t

// Rank of the span of {m * g : g in gens, m monomial} inside the monomial
// basis of degree < t, together with the reducer for membership queries.
struct TruncatedImage {
  SparseReducer reducer;
  int dim;  // dim of Q[[x,y]]/(I + m^t)
};

TruncatedImage truncated_image(const std::vector<RatPoly>& gens, int t) {
  TruncatedImage out;
  for (const RatPoly& g : gens) {
    int low = g.low_degree();
    for (int md = 0; md + low < t; ++md) {
      for (int mi = 0; mi <= md; ++mi) {
        int mj = md - mi;
        SparseReducer::Row row;
        for (const auto& [e, c] : g.terms()) {
          int i = e[0] + mi, j = e[1] + mj;
          if (i + j < t) row[mono_index(i, j)] = c;
        }
        if (!row.empty()) out.reducer.add_row(std::move(row));
      }
    }
  }
  out.dim = slab_size(t) - out.reducer.rank();
  return out;
}

bool slab_certified(const SparseReducer& red, int t) {
  for (int j = 0; j < t; ++j) {
    SparseReducer::Row row;
    row[mono_index(t - 1 - j, j)] = Rat(1);
    if (!red.in_span(std::move(row))) return false;
  }
  return true;
}

}  // namespace

Colength colength(const LocalIdeal& ideal, const ColengthOptions& opt) {
  if (ideal.gens.empty()) return Colength{};  // the zero ideal: infinite quotient
  std::optional<long> prev;
  for (int t = opt.t0; t <= opt.cap; t *= opt.growth) {
    TruncatedImage img = truncated_image(ideal.gens, t);
    long dim = img.dim;
    if (prev && *prev == dim && slab_certified(img.reducer, t))
      return Colength{dim};
    prev = dim;
  }
  return Colength{};
}

Colength milnor_number(const RatPoly& f, const ColengthOptions& opt) {
  if (f.nvars() != 2) throw std::invalid_argument("milnor_number: bivariate input required");
  if (!f.coeff({0, 0}).is_zero())
    throw std::invalid_argument("milnor_number: f(0,0) != 0");
  RatPoly fx = f.derivative(0), fy = f.derivative(1);
  // A unit partial derivative means a smooth point.
  if (!fx.coeff({0, 0}).is_zero() || !fy.coeff({0, 0}).is_zero())
    return Colength{0};
  return colength(LocalIdeal({fx, fy}), opt);
}

bool ideal_member(const LocalIdeal& ideal, const RatPoly& g,
                  const ColengthOptions& opt) {
  Colength base = colength(ideal, opt);
  if (base.unbounded())
    throw std::domain_error("ideal_member: ideal colength not certified finite");
  if (g.is_zero()) return true;
  std::vector<RatPoly> extended = ideal.gens;
  RatPoly gg = g;
  Rat c0 = gg.coeff({0, 0});
  if (!c0.is_zero()) return false;  // I sits in the maximal ideal
  extended.push_back(gg);
  Colength ext = colength(LocalIdeal(std::move(extended)), opt);
  return ext == base;
}

Branch::Branch(UniPoly x_, UniPoly y_, int trunc_) : x(std::move(x_)), y(std::move(y_)), trunc(trunc_) {
  if (trunc < 1) throw std::invalid_argument("Branch: truncation must be >= 1");
  auto const0 = [](const UniPoly& p) { return p.is_zero() || p.c[0].is_zero(); };
  if (!const0(x) || !const0(y)) throw std::invalid_argument("Branch: x(0), y(0) must vanish");
  if (x.is_zero() && y.is_zero())
    throw std::invalid_argument("Branch: both coordinates identically zero");
}

BranchMult branch_hyperplane_multiplicity(const Branch& b, const Rat& a, const Rat& bcoef) {
  if (a.is_zero() && bcoef.is_zero())
    throw std::invalid_argument("branch_hyperplane_multiplicity: zero linear form");
  UniPoly s = uni_add(uni_scale(b.x, a), uni_scale(b.y, bcoef));
  for (int k = 0; k <= b.trunc; ++k) {
    if (k <= s.deg() && !s.c[static_cast<size_t>(k)].is_zero())
      return BranchMult{k, b.trunc};
  }
  return BranchMult{std::nullopt, b.trunc};
}

long generic_section_length(SingModel model, Rng& rng) {
  RatPoly eq = model == SingModel::Node ? bipoly("x*y") : bipoly("y^2 - x^3");
  for (int attempt = 0; attempt < 16; ++attempt) {
    Rat a = rng.rat(), b = rng.rat();
    if (a.is_zero() || b.is_zero()) continue;  // draws exclude zero, but stay safe
    RatPoly form = RatPoly::variable(2, 0) * a + RatPoly::variable(2, 1) * b;
    Colength len = colength(LocalIdeal({eq, form}));
    if (len.unbounded() || *len.value != 2)
      throw std::logic_error("generic_section_length: section length is not 2");
    return *len.value;
  }
  throw std::logic_error("generic_section_length: no nondegenerate draw");
}

namespace {

// Normal-form checks behind embedding_dimension, n <= 5. `model` is the
// local equation (xy or x^2 - y^3); membership of the model in the ideal
// says the length-n subscheme lies on the curve.
void verify_embedding_table(SingType sing, int n) {
  Rng rng(0x514b3bed ^ static_cast<std::uint64_t>(n) << 4 ^ static_cast<std::uint64_t>(sing));
  RatPoly x = RatPoly::variable(2, 0), y = RatPoly::variable(2, 1);

  auto ideal_xc = [&](const RatPoly& tail, int yn) {
    return LocalIdeal({x + tail, y.pow(yn)});
  };

  if (sing == SingType::Smooth) {
    // V(x): the unique length-n subscheme supported at 0 is (x, y^n).
    LocalIdeal ideal = ideal_xc(RatPoly(2), n);
    Colength len = colength(ideal);
    if (len.unbounded() || *len.value != n || !ideal_member(ideal, x))
      throw std::logic_error("embedding_dimension: smooth normal form failed");
    return;
  }

  RatPoly model = sing == SingType::Node ? x * y : x * x - y.pow(3);

  if (n == 1) {
    LocalIdeal ideal({x, y});
    if (!ideal_member(ideal, model))
      throw std::logic_error("embedding_dimension: n=1 normal form failed");
    return;
  }

  auto distinct_rats = [&rng](int count) {
    std::vector<Rat> out;
    while (static_cast<int>(out.size()) < count) {
      Rat r = rng.rat();
      bool dup = false;
      for (const Rat& s : out) dup = dup || s == r;
      if (!dup) out.push_back(r);
    }
    return out;
  };

  if (sing == SingType::Node) {
    // I_c = (x + c y^{n-1}, y^n) contains xy for every c; distinct c give
    // distinct ideals, which is the one-parameter family.
    std::vector<Rat> cs = distinct_rats(3);
    cs.push_back(Rat(0));
    for (const Rat& c : cs) {
      LocalIdeal ideal = ideal_xc(y.pow(n - 1) * c, n);
      Colength len = colength(ideal);
      if (len.unbounded() || *len.value != n || !ideal_member(ideal, model))
        throw std::logic_error("embedding_dimension: node normal form failed");
    }
    for (size_t i = 0; i + 1 < 3; ++i) {
      LocalIdeal other = ideal_xc(y.pow(n - 1) * cs[i + 1], n);
      if (ideal_member(other, x + y.pow(n - 1) * cs[i]))
        throw std::logic_error("embedding_dimension: node family degenerate");
    }
    return;
  }

  // Cusp, n >= 2. Curvilinear ideals have shape (x + f1(y), y^n) with
  // deg f1 <= n-1 and f1(0) = 0; membership of x^2 - y^3 decides which occur.
  auto tail = [&](const std::vector<Rat>& coef) {
    RatPoly t(2);
    for (size_t k = 0; k < coef.size(); ++k) t += y.pow(static_cast<int>(k) + 1) * coef[k];
    return t;
  };
  if (n == 2) {
    std::vector<Rat> cs = distinct_rats(3);
    cs.push_back(Rat(0));
    for (const Rat& c : cs) {
      LocalIdeal ideal = ideal_xc(y * c, 2);
      if (!ideal_member(ideal, model))
        throw std::logic_error("embedding_dimension: cusp n=2 normal form failed");
    }
    return;
  }
  if (n == 3) {
    // Only f1 = 0 works.
    LocalIdeal flat = ideal_xc(RatPoly(2), 3);
    if (!ideal_member(flat, model))
      throw std::logic_error("embedding_dimension: cusp n=3 normal form failed");
    for (int k = 0; k < 3; ++k) {
      LocalIdeal ideal = ideal_xc(tail({rng.rat(), rng.rat()}), 3);
      if (ideal_member(ideal, model))
        throw std::logic_error("embedding_dimension: cusp n=3 spurious member");
    }
    return;
  }
  // n in {4, 5}: no curvilinear subscheme of the cusp of this length.
  std::vector<std::vector<Rat>> tails = {{}};
  for (int k = 0; k < 3; ++k) {
    std::vector<Rat> coef;
    for (int j = 0; j + 1 < n; ++j) coef.push_back(rng.rat());
    tails.push_back(coef);
  }
  for (const auto& coef : tails) {
    LocalIdeal ideal = ideal_xc(tail(coef), n);
    if (ideal_member(ideal, model))
      throw std::logic_error("embedding_dimension: cusp n>=4 spurious member");
  }
}

}  // namespace

EmbedDim embedding_dimension(SingType sing, int n) {
  if (n < 1) throw std::invalid_argument("embedding_dimension: n >= 1 required");
  EmbedDim result;
  switch (sing) {
    case SingType::Smooth:
      result = EmbedDim::Dim0;
      break;
    case SingType::Node:
      result = n == 1 ? EmbedDim::Dim0 : EmbedDim::Dim1;
      break;
    case SingType::Cusp:
      if (n == 1 || n == 3) result = EmbedDim::Dim0;
      else if (n == 2) result = EmbedDim::Dim1;
      else result = EmbedDim::NoEmbedding;
      break;
    default:
      throw std::invalid_argument("embedding_dimension: bad singularity type");
  }
  if (n <= 5) verify_embedding_table(sing, n);
  return result;
}

}  // namespace k3c
