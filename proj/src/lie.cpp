#include "ecw/lie.hpp"

#include <algorithm>
#include <numeric>

namespace ecw {

GMatrix GMatrix::identity(int n) {
  GMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
  return m;
}

GMatrix GMatrix::operator+(const GMatrix& o) const {
  GMatrix r(n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

GMatrix GMatrix::operator-(const GMatrix& o) const {
  GMatrix r(n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

GMatrix GMatrix::operator*(const GMatrix& o) const {
  GMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < n_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
  return r;
}

GMatrix GMatrix::operator*(const GaussianRational& c) const {
  GMatrix r(n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
  return r;
}

GMatrix GMatrix::inverse() const {
  GMatrix a = *this, inv = identity(n_);
  for (int col = 0; col < n_; ++col) {
    int pivot = -1;
    for (int r = col; r < n_; ++r)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::invalid_argument("singular matrix");
    for (int c = 0; c < n_; ++c) {
      std::swap(a.at(col, c), a.at(pivot, c));
      std::swap(inv.at(col, c), inv.at(pivot, c));
    }
    GaussianRational p = a.at(col, col).inverse();
    for (int c = 0; c < n_; ++c) {
      a.at(col, c) *= p;
      inv.at(col, c) *= p;
    }
    for (int r = 0; r < n_; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      GaussianRational f = a.at(r, col);
      for (int c = 0; c < n_; ++c) {
        a.at(r, c) -= f * a.at(col, c);
        inv.at(r, c) -= f * inv.at(col, c);
      }
    }
  }
  return inv;
}

GaussianRational GMatrix::trace() const {
  GaussianRational t;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

namespace {

/// Solves sum_b y_b * basis[b] == target exactly; throws if impossible.
std::vector<GaussianRational> solve_in_basis(const std::vector<GMatrix>& basis,
                                             const GMatrix& target) {
  const int n = target.dim();
  const int unknowns = static_cast<int>(basis.size());
  const int rows = n * n;
  // augmented system
  std::vector<std::vector<GaussianRational>> m(rows,
                                               std::vector<GaussianRational>(unknowns + 1));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      int row = r * n + c;
      for (int b = 0; b < unknowns; ++b) m[row][b] = basis[b].at(r, c);
      m[row][unknowns] = target.at(r, c);
    }
  std::vector<int> pivot_of_col(unknowns, -1);
  int rank = 0;
  for (int col = 0; col < unknowns; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (!m[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    GaussianRational p = m[rank][col].inverse();
    for (auto& x : m[rank]) x *= p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      GaussianRational f = m[r][col];
      for (int c = 0; c <= unknowns; ++c) m[r][c] -= f * m[rank][c];
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  for (int r = rank; r < rows; ++r)
    if (!m[r][unknowns].is_zero())
      throw std::invalid_argument("element is not in the span of the basis");
  std::vector<GaussianRational> y(unknowns);
  for (int col = 0; col < unknowns; ++col)
    if (pivot_of_col[col] >= 0) y[col] = m[pivot_of_col[col]][unknowns];
  return y;
}

}  // namespace

bool LieAlgebraModel::is_abelian() const {
  for (const auto& layer : structure)
    for (const auto& row : layer)
      for (const auto& c : row)
        if (!c.is_zero()) return false;
  return true;
}

void LieAlgebraModel::validate() const {
  const int n = dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (structure[k][i][j] != -structure[k][j][i])
          throw std::invalid_argument("structure constants not antisymmetric");
  // Jacobi: [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj] = 0
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          GaussianRational total;
          for (int l = 0; l < n; ++l) {
            total += structure[l][i][j] * structure[m][l][k];
            total += structure[l][j][k] * structure[m][l][i];
            total += structure[l][k][i] * structure[m][l][j];
          }
          if (!total.is_zero()) throw std::invalid_argument("Jacobi identity fails");
        }
}

AlgebraPtr abelian_algebra(const std::string& name, int rank) {
  auto alg = std::make_shared<LieAlgebraModel>();
  alg->name = name;
  for (int i = 1; i <= rank; ++i) {
    alg->basis.push_back("X" + std::to_string(i));
    alg->dual_basis.push_back("xi" + std::to_string(i));
  }
  alg->structure.assign(rank, std::vector<std::vector<GaussianRational>>(
                                  rank, std::vector<GaussianRational>(rank)));
  alg->validate();
  return alg;
}

AlgebraPtr algebra_from_matrices(const std::string& name, std::vector<std::string> basis_names,
                                 std::vector<GMatrix> matrices) {
  auto alg = std::make_shared<LieAlgebraModel>();
  alg->name = name;
  alg->basis = basis_names;
  for (const auto& b : basis_names) alg->dual_basis.push_back(b + "*");
  alg->matrices = matrices;
  const int n = alg->dim();
  alg->structure.assign(n, std::vector<std::vector<GaussianRational>>(
                               n, std::vector<GaussianRational>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GMatrix comm = matrices[i] * matrices[j] - matrices[j] * matrices[i];
      std::vector<GaussianRational> y = solve_in_basis(matrices, comm);
      for (int k = 0; k < n; ++k) alg->structure[k][i][j] = y[k];
    }
  alg->validate();
  return alg;
}

AlgElement AlgElement::basis(AlgebraPtr a, int i) {
  AlgElement e{a, std::vector<GaussianRational>(a->dim())};
  e.coords[i] = GaussianRational(1);
  return e;
}

bool AlgElement::is_zero() const {
  for (const auto& c : coords)
    if (!c.is_zero()) return false;
  return true;
}

AlgElement bracket(const AlgElement& x, const AlgElement& y) {
  if (x.alg != y.alg) throw std::invalid_argument("bracket of mismatched algebras");
  const int n = x.alg->dim();
  AlgElement out{x.alg, std::vector<GaussianRational>(n)};
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.coords[k] += x.alg->structure[k][i][j] * x.coords[i] * y.coords[j];
  return out;
}

AlgElement Ad(const GMatrix& g, const AlgElement& x) {
  if (x.alg->matrices.empty()) {
    if (!x.alg->is_abelian())
      throw std::invalid_argument("Ad needs a matrix model or an abelian algebra");
    return x;
  }
  GMatrix xm(g.dim());
  for (int b = 0; b < x.alg->dim(); ++b) xm = xm + x.alg->matrices[b] * x.coords[b];
  GMatrix conj = g * xm * g.inverse();
  return AlgElement{x.alg, solve_in_basis(x.alg->matrices, conj)};
}

AlgebraValuedForm AlgebraValuedForm::zero(AlgebraPtr a, ChartPtr c) {
  AlgebraValuedForm f{a, c, {}};
  f.comps.assign(a->dim(), Form::zero(c));
  return f;
}

AlgebraValuedForm AlgebraValuedForm::operator+(const AlgebraValuedForm& o) const {
  AlgebraValuedForm r = *this;
  for (size_t i = 0; i < comps.size(); ++i) r.comps[i] += o.comps[i];
  return r;
}

AlgebraValuedForm AlgebraValuedForm::operator-(const AlgebraValuedForm& o) const {
  AlgebraValuedForm r = *this;
  for (size_t i = 0; i < comps.size(); ++i) r.comps[i] -= o.comps[i];
  return r;
}

AlgebraValuedForm AlgebraValuedForm::operator*(const Scalar& s) const {
  AlgebraValuedForm r = *this;
  for (auto& c : r.comps) c *= s;
  return r;
}

bool AlgebraValuedForm::is_zero() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

AlgebraValuedForm alg_d(const AlgebraValuedForm& a) {
  AlgebraValuedForm r = a;
  for (auto& c : r.comps) c = exterior_d(c);
  return r;
}

AlgebraValuedForm alg_contract(const VectorField& X, const AlgebraValuedForm& a) {
  AlgebraValuedForm r = a;
  for (auto& c : r.comps) c = contract(X, c);
  return r;
}

AlgebraValuedForm alg_pullback(const Substitution& sub, const AlgebraValuedForm& a) {
  AlgebraValuedForm r{a.alg, sub.target(), {}};
  for (const auto& c : a.comps) r.comps.push_back(sub.apply(c));
  return r;
}

AlgebraValuedForm bracket_wedge(const AlgebraValuedForm& a, const AlgebraValuedForm& b) {
  const int n = a.alg->dim();
  AlgebraValuedForm r = AlgebraValuedForm::zero(a.alg, a.chart);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const GaussianRational& c = a.alg->structure[k][i][j];
        if (!c.is_zero()) r.comps[k] += c * wedge(a.comps[i], b.comps[j]);
      }
  return r;
}

Form TorusGroupModel::maurer_cartan_component(const ChartPtr& chart,
                                              const std::vector<int>& group_vars, int j) const {
  int v = group_vars[j];
  int g = chart->generator_of_var(v);
  ExpVec e(chart->num_vars(), 0);
  e[v] = -1;
  Scalar coeff = Scalar::monomial(chart, std::move(e), -GaussianRational::i());
  Form f(chart);
  f.add_term(coeff, GenMask(1) << g);
  return f;
}

TorusPtr make_torus(const std::string& name, int rank) {
  auto t = std::make_shared<TorusGroupModel>();
  t->name = name;
  t->rank = rank;
  t->algebra = abelian_algebra(name + "-algebra", rank);
  return t;
}

bool ActionModel::is_invariant(const Form& on_space) const {
  Form moved = act->apply(on_space).drop_generators(group_gen_mask);
  return moved == proj->apply(on_space);
}

std::vector<Scalar> ActionModel::action_images_on(const ChartPtr& target,
                                                  const std::vector<int>& group_map,
                                                  const std::vector<int>& space_var_map) const {
  std::vector<int> var_map(product->num_vars(), -1);
  for (int j = 0; j < group->rank; ++j) var_map[group_vars[j]] = group_map[j];
  for (int v = 0; v < space->num_vars(); ++v) var_map[space_map[v]] = space_var_map[v];
  std::vector<Scalar> out;
  out.reserve(space->num_vars());
  for (int v = 0; v < space->num_vars(); ++v)
    out.push_back(act->image(v).transport(target, var_map));
  return out;
}

ActionPtr make_action(const std::string& name, TorusPtr group, ChartPtr space,
                      const std::function<std::vector<Scalar>(const ChartPtr&,
                                                              const std::vector<int>&,
                                                              const std::vector<int>&)>&
                          space_images) {
  auto action = std::make_shared<ActionModel>();
  action->name = name;
  action->group = group;
  action->space = space;

  ChartBuilder pb(name + "-product");
  std::vector<int> gvars;
  for (int j = 1; j <= group->rank; ++j) gvars.push_back(pb.add_unit("g" + std::to_string(j)));
  int off = pb.append_chart(*space);
  action->product = pb.build();
  action->group_vars = gvars;
  for (int v = 0; v < space->num_vars(); ++v) action->space_map.push_back(off + v);
  for (int j : gvars) {
    int g = action->product->generator_of_var(j);
    action->group_gen_mask |= GenMask(1) << g;
  }

  std::vector<Scalar> images = space_images(action->product, gvars, action->space_map);
  action->act = std::make_unique<Substitution>(space, action->product, images);
  action->proj = std::make_unique<Substitution>(
      Substitution::renaming(space, action->product, action->space_map));

  // identity at u = 1
  {
    std::vector<Scalar> collapse_images;
    for (int v = 0; v < action->product->num_vars(); ++v) {
      bool is_group = std::find(gvars.begin(), gvars.end(), v) != gvars.end();
      if (is_group) {
        collapse_images.push_back(Scalar::one(space));
      } else {
        int sv = v - off;
        collapse_images.push_back(Scalar::variable(space, space->var(sv).name));
      }
    }
    Substitution collapse(action->product, space, collapse_images);
    for (int v = 0; v < space->num_vars(); ++v) {
      if (collapse.apply(action->act->image(v)) != Scalar::variable(space, space->var(v).name))
        throw std::invalid_argument("action substitution is not the identity at e");
    }
  }

  // associativity on the triple chart [u][v][space]
  {
    ChartBuilder tb(name + "-triple");
    std::vector<int> uvars, vvars;
    for (int j = 1; j <= group->rank; ++j) uvars.push_back(tb.add_unit("u" + std::to_string(j)));
    for (int j = 1; j <= group->rank; ++j) vvars.push_back(tb.add_unit("v" + std::to_string(j)));
    int toff = tb.append_chart(*space);
    ChartPtr triple = tb.build();
    std::vector<int> tspace;
    for (int v = 0; v < space->num_vars(); ++v) tspace.push_back(toff + v);

    // route 1: substitute the product of the group entries
    std::vector<Scalar> prod_entries;
    for (int j = 0; j < group->rank; ++j)
      prod_entries.push_back(Scalar::variable(triple, triple->var(uvars[j]).name) *
                             Scalar::variable(triple, triple->var(vvars[j]).name));
    std::vector<int> dummy_map(group->rank, -1);
    // transport images by hand: group var j -> prod_entries[j] needs a real
    // substitution, so build it from the product chart:
    std::vector<Scalar> mult_images;
    for (int v = 0; v < action->product->num_vars(); ++v) {
      auto it = std::find(gvars.begin(), gvars.end(), v);
      if (it != gvars.end()) {
        mult_images.push_back(prod_entries[it - gvars.begin()]);
      } else {
        mult_images.push_back(Scalar::variable(triple, action->product->var(v).name));
      }
    }
    Substitution mult(action->product, triple, mult_images);
    // route 2: act with v first, then act with u on the space block
    std::vector<Scalar> nest_images;
    std::vector<Scalar> act_u = action->action_images_on(triple, uvars, tspace);
    for (int v = 0; v < action->product->num_vars(); ++v) {
      auto it = std::find(gvars.begin(), gvars.end(), v);
      if (it != gvars.end()) {
        nest_images.push_back(Scalar::variable(triple, triple->var(vvars[it - gvars.begin()]).name));
      } else {
        nest_images.push_back(act_u[v - off]);
      }
    }
    Substitution nest(action->product, triple, nest_images);
    for (int v = 0; v < space->num_vars(); ++v) {
      if (mult.apply(action->act->image(v)) != nest.apply(action->act->image(v)))
        throw std::invalid_argument("action substitution is not associative");
    }
    (void)dummy_map;
  }

  // fundamental vector fields from the one-parameter substitutions
  for (int j = 0; j < group->rank; ++j) {
    std::vector<Scalar> derivative_images;  // d/dt of each image at u = e
    for (int v = 0; v < space->num_vars(); ++v) {
      const Scalar& img = action->act->image(v);
      Scalar weighted(action->product);
      for (const auto& [e, c] : img.terms()) {
        int w = e[gvars[j]];
        if (w == 0) continue;
        ExpVec at_one = e;
        for (int gv : gvars) at_one[gv] = 0;
        weighted += Scalar::monomial(action->product, at_one,
                                     c * GaussianRational::i() * GaussianRational(w));
      }
      // transport to the space chart
      std::vector<int> back(action->product->num_vars(), -1);
      for (int s = 0; s < space->num_vars(); ++s) back[action->space_map[s]] = s;
      derivative_images.push_back(weighted.transport(space, back));
    }
    // express in the space coframe through the frame recovery rows
    VectorField vf = VectorField::zero(space);
    for (int g = 0; g < space->num_gens(); ++g) {
      Scalar coeff(space);
      for (const auto& [v, n] : space->frame_from_dv(g)) coeff += n * derivative_images[v];
      vf.add(g, coeff);
    }
    // validate: pairing with dv reproduces the derivative images
    for (int v = 0; v < space->num_vars(); ++v) {
      Scalar paired(space);
      for (const auto& [mask, c] : space->d_of_var(v).terms()) {
        for (int g = 0; g < 32; ++g)
          if (mask & (GenMask(1) << g)) {
            auto it = vf.coeffs.find(g);
            if (it != vf.coeffs.end()) paired += c * it->second;
          }
      }
      if (paired != derivative_images[v])
        throw std::invalid_argument("fundamental field does not solve in the coframe");
    }
    action->fundamental.push_back(std::move(vf));
  }
  return action;
}

VectorField fundamental_vf(const ActionModel& action, const AlgElement& x) {
  VectorField out = VectorField::zero(action.space);
  for (int j = 0; j < action.group->rank; ++j) {
    if (x.coords[j].is_zero()) continue;
    Scalar c = Scalar::constant(action.space, x.coords[j]);
    VectorField scaled = action.fundamental[j] * c;
    out += scaled;
  }
  return out;
}

void InvariantPolynomial::validate() const {
  for (const auto& [mono, c] : coeffs) {
    (void)c;
    if (static_cast<int>(mono.size()) != degree)
      throw std::invalid_argument("invariant polynomial monomial of wrong degree");
    if (!std::is_sorted(mono.begin(), mono.end()))
      throw std::invalid_argument("invariant polynomial monomial not sorted");
  }
  // infinitesimal invariance: sum_i P(Y_1, ..., [X, Y_i], ..., Y_q) = 0 on
  // all basis tuples
  const int n = alg->dim();
  std::vector<int> tuple(degree, 0);
  auto all_tuples = [&](auto&& self, int pos) -> void {
    if (pos == degree) {
      for (int xb = 0; xb < n; ++xb) {
        GaussianRational total;
        for (int i = 0; i < degree; ++i) {
          std::vector<AlgElement> args;
          for (int k = 0; k < degree; ++k) args.push_back(AlgElement::basis(alg, tuple[k]));
          args[i] = bracket(AlgElement::basis(alg, xb), args[i]);
          total += evaluate_inv_poly_elements(*this, args);
        }
        if (!total.is_zero())
          throw std::invalid_argument("polynomial is not infinitesimally invariant");
      }
      return;
    }
    for (tuple[pos] = 0; tuple[pos] < n; ++tuple[pos]) self(self, pos + 1);
  };
  all_tuples(all_tuples, 0);
}

namespace {

template <typename Value, typename Mul>
Value polarize(const InvariantPolynomial& P, const std::vector<Value>& args, const Value& zero,
               const Mul& product_of) {
  if (static_cast<int>(args.size()) != P.degree)
    throw std::invalid_argument("invariant polynomial arity mismatch");
  const int q = P.degree;
  std::vector<int> perm(q);
  std::iota(perm.begin(), perm.end(), 0);
  Value total = zero;
  GaussianRational norm(Rational(1));
  norm /= GaussianRational(Rational::factorial(q));
  if (P.kind == InvariantPolynomial::TracePower) {
    do {
      total = total + product_of(perm, {});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total * norm;
  }
  Value acc = zero;
  for (const auto& [mono, c] : P.coeffs) {
    std::iota(perm.begin(), perm.end(), 0);
    Value inner = zero;
    do {
      inner = inner + product_of(perm, mono);
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc = acc + inner * (norm * c);
  }
  return acc;
}

}  // namespace

Form evaluate_inv_poly(const InvariantPolynomial& P, const std::vector<AlgebraValuedForm>& args) {
  const ChartPtr& chart = args.at(0).chart;
  Form zero = Form::zero(chart);
  struct FW {
    Form f;
    FW operator+(const FW& o) const { return {f + o.f}; }
    FW operator*(const GaussianRational& c) const { return {f * c}; }
  };
  FW total;
  if (P.kind == InvariantPolynomial::TracePower) {
    const auto& mats = P.alg->matrices;
    const int n = mats.empty() ? 0 : mats[0].dim();
    if (n == 0) throw std::invalid_argument("trace polynomial needs a matrix model");
    auto matrix_of = [&](const AlgebraValuedForm& a) {
      std::vector<Form> m(n * n, Form::zero(chart));
      for (int b = 0; b < P.alg->dim(); ++b)
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) {
            const GaussianRational& e = mats[b].at(r, c);
            if (!e.is_zero()) m[r * n + c] += a.comps[b] * e;
          }
      return m;
    };
    total = polarize<FW>(P, std::vector<FW>(args.size()), FW{zero},
                         [&](const std::vector<int>& perm, const std::vector<int>&) {
                           std::vector<Form> acc = matrix_of(args[perm[0]]);
                           for (size_t k = 1; k < perm.size(); ++k) {
                             std::vector<Form> nxt = matrix_of(args[perm[k]]);
                             std::vector<Form> out(n * n, Form::zero(chart));
                             for (int r = 0; r < n; ++r)
                               for (int m2 = 0; m2 < n; ++m2)
                                 for (int c = 0; c < n; ++c)
                                   out[r * n + c] += wedge(acc[r * n + m2], nxt[m2 * n + c]);
                             acc = std::move(out);
                           }
                           Form tr = Form::zero(chart);
                           for (int r = 0; r < n; ++r) tr += acc[r * n + r];
                           return FW{tr};
                         });
  } else {
    total = polarize<FW>(P, std::vector<FW>(args.size()), FW{zero},
                         [&](const std::vector<int>& perm, const std::vector<int>& mono) {
                           Form acc = Form::from_scalar(Scalar::one(chart));
                           for (size_t k = 0; k < perm.size(); ++k)
                             acc = wedge(acc, args[perm[k]].comps[mono[k]]);
                           return FW{acc};
                         });
  }
  Form result = total.f;
  if (P.tau_power != 0) {
    int tau = chart->var_index("tau");
    if (tau < 0) throw std::invalid_argument("chart has no tau for normalization");
    ExpVec e(chart->num_vars(), 0);
    e[tau] = -P.tau_power;
    result *= Scalar::monomial(chart, std::move(e), GaussianRational(1));
  }
  return result;
}

GaussianRational evaluate_inv_poly_elements(const InvariantPolynomial& P,
                                            const std::vector<AlgElement>& args) {
  struct CW {
    GaussianRational c;
    CW operator+(const CW& o) const { return {c + o.c}; }
    CW operator*(const GaussianRational& x) const { return {c * x}; }
  };
  CW total;
  if (P.kind == InvariantPolynomial::TracePower) {
    const auto& mats = P.alg->matrices;
    auto matrix_of = [&](const AlgElement& a) {
      GMatrix m(mats[0].dim());
      for (int b = 0; b < P.alg->dim(); ++b) m = m + mats[b] * a.coords[b];
      return m;
    };
    total = polarize<CW>(P, std::vector<CW>(args.size()), CW{},
                         [&](const std::vector<int>& perm, const std::vector<int>&) {
                           GMatrix acc = matrix_of(args[perm[0]]);
                           for (size_t k = 1; k < perm.size(); ++k)
                             acc = acc * matrix_of(args[perm[k]]);
                           return CW{acc.trace()};
                         });
  } else {
    total = polarize<CW>(P, std::vector<CW>(args.size()), CW{},
                         [&](const std::vector<int>& perm, const std::vector<int>& mono) {
                           GaussianRational acc(1);
                           for (size_t k = 0; k < perm.size(); ++k)
                             acc *= args[perm[k]].coords[mono[k]];
                           return CW{acc};
                         });
  }
  return total.c;
}

}  // namespace ecw
