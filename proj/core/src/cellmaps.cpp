#include "klc/cellmaps.hpp"

#include <algorithm>

#include "klc/errors.hpp"
#include "klc/parallel.hpp"

namespace klc {

namespace {

std::string show_term_list(const CoxeterGroup& group, const SparseVec& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [z, c] : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*C[" + show(group, z) + "]";
  }
  return out;
}

struct LocalMaps {
  std::vector<Elem> rho, lambda;
  std::vector<int> eta;
};

// Signed basis element left after deleting the terms below w in the
// two-sided order; throws when the remainder has any other shape.
std::pair<Elem, int> surviving_term(const CoxeterGroup& group, const Preorder& lr, Elem w, const SparseVec& product,
                                    const char* side) {
  SparseVec rest;
  for (const auto& [z, c] : product)
    if (!lr.less(z, w)) rest.emplace_back(z, c);
  const auto sign = rest.size() == 1 ? rest.front().second.unit_sign() : std::nullopt;
  if (!sign || !lr.equivalent(rest.front().first, w)) {
    throw TheoremViolation(std::string("longest element action (") + side + ") is not a signed basis element",
                           "w = " + show(group, w) + ", remainder " + show_term_list(group, rest));
  }
  return {rest.front().first, *sign};
}

LocalMaps local_maps(const Workspace& ws) {
  const auto& H = ws.algebra();
  const auto& group = ws.group();
  const std::size_t n = group.size();
  const Elem w0 = group.longest();
  const auto& afn = ws.afunction();
  const auto& lr = ws.cells().two_sided();
  LocalMaps out;
  out.rho.resize(n);
  out.lambda.resize(n);
  out.eta.resize(n);
  std::vector<int> eta_right(n);
  parallel_for(n, ws.jobs(), [&](std::size_t i) {
    const Elem w = static_cast<Elem>(i);
    const LaurentPoly scale = LaurentPoly::monomial(afn.alpha(w));
    const HeckeElement cw = H.to_standard(H.kl(w));
    const HeckeElement left = scale * H.to_kl(H.left_mul_standard(w0, cw));
    const HeckeElement right = scale * H.to_kl(H.right_mul_standard(cw, w0));
    std::tie(out.rho[w], out.eta[w]) = surviving_term(group, lr, w, left.terms(), "left");
    std::tie(out.lambda[w], eta_right[w]) = surviving_term(group, lr, w, right.terms(), "right");
  });
  for (Elem w = 0; w < n; ++w) {
    if (eta_right[w] != out.eta[w]) {
      throw TheoremViolation("left and right multiplication by T_{w_0} give different signs",
                             "w = " + show(group, w));
    }
  }
  return out;
}

}  // namespace

CellularPair CellularPair::identity(std::size_t n, Side side) {
  CellularPair p;
  p.delta.resize(n);
  for (std::size_t w = 0; w < n; ++w) p.delta[w] = static_cast<Elem>(w);
  p.mu.assign(n, 1);
  p.side = side;
  return p;
}

Workspace::Workspace(const CoxeterSystem& system, const WeightFunction& weights, std::size_t jobs)
    : Workspace(CoxeterGroup::build(system), weights, jobs) {}

Workspace::Workspace(std::shared_ptr<const CoxeterGroup> group, const WeightFunction& weights, std::size_t jobs)
    : algebra_(std::make_shared<HeckeAlgebra>(std::move(group), weights, jobs)) {}

const CellDecomposition& Workspace::cells() const {
  std::lock_guard lock(mutex_);
  if (!cells_) cells_ = std::make_unique<CellDecomposition>(*algebra_);
  return *cells_;
}

const AFunction& Workspace::afunction() const {
  std::lock_guard lock(mutex_);
  if (!afunction_) afunction_ = std::make_unique<AFunction>(*algebra_);
  return *afunction_;
}

const Report& Workspace::hypotheses() const {
  std::lock_guard lock(mutex_);
  if (!hypotheses_) hypotheses_ = std::make_unique<Report>(verify_conjectures(afunction(), cells()));
  return *hypotheses_;
}

const Parabolic& Workspace::parabolic(GeneratorSet subset) const {
  std::lock_guard lock(mutex_);
  auto& slot = parabolics_[subset.bits()];
  if (!slot) slot = std::make_unique<Parabolic>(make_parabolic(group(), subset));
  return *slot;
}

const Workspace& Workspace::sub(GeneratorSet subset) const {
  if (subset == group().system().all()) return *this;
  std::lock_guard lock(mutex_);
  auto& slot = subs_[subset.bits()];
  if (!slot) {
    const auto& p = parabolic(subset);
    slot = std::make_unique<Workspace>(p.group, weights().restrict(p.group->system(), subset), jobs());
  }
  return *slot;
}

const MathasLusztig& Workspace::mathas_lusztig(GeneratorSet subset) const {
  std::lock_guard lock(mutex_);
  auto& slot = maps_[subset.bits()];
  if (slot) return *slot;

  const auto& p = parabolic(subset);
  const Workspace& local = sub(subset);
  const auto& sg = local.group();
  auto data = std::make_unique<MathasLusztig>();
  data->subset = subset;
  data->hypotheses = local.hypotheses();
  data->hypotheses_verified = data->hypotheses.passed();

  LocalMaps maps = local_maps(local);
  data->rho = std::move(maps.rho);
  data->lambda = std::move(maps.lambda);
  data->eta = std::move(maps.eta);
  for (Elem w = 0; w < sg.size(); ++w) data->alpha.push_back(local.afunction().alpha(w));

  const auto& cells = local.cells();
  const auto rho_op = op_map(sg, data->rho);
  auto& involutions = data->checks.add("rho and lambda are involutions");
  auto& op = data->checks.add("lambda = rho^op");
  auto& omega = data->checks.add("rho = lambda o omega");
  auto& left_cell = data->checks.add("rho(w) ~_L w");
  auto& right_cell = data->checks.add("lambda(w) ~_R w");
  for (Elem w = 0; w < sg.size(); ++w) {
    const std::string ws = show(sg, w);
    involutions.expect(data->rho[data->rho[w]] == w && data->lambda[data->lambda[w]] == w, ws);
    op.expect(rho_op[w] == data->lambda[w], ws);
    omega.expect(data->rho[w] == data->lambda[p.omega[w]], ws);
    left_cell.expect(cells.left().equivalent(data->rho[w], w), ws);
    right_cell.expect(cells.right().equivalent(data->lambda[w], w), ws);
  }

  const auto& G = group();
  data->lambda_L = extend_map(G, p, data->lambda, Side::Left);
  data->rho_R = extend_map(G, p, data->rho, Side::Right);
  data->eta_L = extend_signs(G, p, data->eta, Side::Left);
  data->eta_R = extend_signs(G, p, data->eta, Side::Right);
  slot = std::move(data);
  return *slot;
}

Report verify_cellular_pair(const Workspace& ws, const CellularPair& pair) {
  const auto& group = ws.group();
  const auto& H = ws.algebra();
  const std::size_t n = group.size();
  const bool left_side = pair.side == Side::Left;
  const auto& same = left_side ? ws.cells().left() : ws.cells().right();
  const auto& other = left_side ? ws.cells().right() : ws.cells().left();
  Report report;

  auto& bijective = report.add("bijection");
  std::vector<char> hit(n, 0);
  for (Elem w = 0; w < n; ++w) {
    const Elem d = pair.delta[w];
    const bool ok = d < n && !hit[d];
    if (d < n) hit[d] = 1;
    bijective.expect_lazy(ok, [&] { return "image of " + show(group, w) + " repeated"; });
  }
  auto& signs = report.add("signs");
  for (Elem w = 0; w < n; ++w)
    signs.expect_lazy(pair.mu[w] == 1 || pair.mu[w] == -1, [&] { return "mu(" + show(group, w) + ")"; });
  if (!bijective.passed() || !signs.passed()) return report;

  auto& lc1 = report.add("LC1");
  for (std::size_t c = 0; c < same.cell_count(); ++c) {
    const auto& members = same.members(c);
    const std::size_t target = same.cell_of(pair.delta[members.front()]);
    bool ok = same.members(target).size() == members.size();
    for (Elem w : members) ok = ok && same.cell_of(pair.delta[w]) == target;
    lc1.expect_lazy(ok, [&] { return "cell of " + show(group, members.front()) + " is not mapped onto a cell"; });
  }

  auto& lc2 = report.add("LC2");
  if (lc1.passed()) {
    // h_{s,w,u} = mu_w mu_u h_{s,delta(w),delta(u)} for w, u in one cell
    for (Elem w = 0; w < n; ++w) {
      const Elem dw = pair.delta[w];
      for (Generator s = 0; s < group.rank(); ++s) {
        const SparseVec& action = H.generator_action(s, w, pair.side);
        const SparseVec& image = H.generator_action(s, dw, pair.side);
        for (Elem u : same.members(same.cell_of(w))) {
          const LaurentPoly* h = find_coefficient(action, u);
          const LaurentPoly* hd = find_coefficient(image, pair.delta[u]);
          LaurentPoly lhs = h ? *h : LaurentPoly();
          LaurentPoly rhs = hd ? *hd * Integer(pair.mu[w] * pair.mu[u]) : LaurentPoly();
          lc2.expect_lazy(lhs == rhs, [&] {
            return "s = " + group.system().label(s) + ", w = " + show(group, w) + ", u = " + show(group, u);
          });
        }
      }
    }
  }

  auto& lc3 = report.add("LC3");
  for (Elem w = 0; w < n; ++w)
    lc3.expect_lazy(other.equivalent(pair.delta[w], w), [&] {
      return show(group, pair.delta[w]) + " and " + show(group, w) + " lie in different " +
             (left_side ? "right" : "left") + " cells";
    });
  return report;
}

Report verify_descent_invariance(const CoxeterGroup& group, const CellularPair& pair) {
  Report report;
  auto& check = report.add(pair.side == Side::Left ? "left descents" : "right descents");
  for (Elem w = 0; w < group.size(); ++w)
    check.expect_lazy(group.descents(pair.delta[w], pair.side) == group.descents(w, pair.side),
                      [&] { return show(group, w) + " -> " + show(group, pair.delta[w]); });
  return report;
}

Report verify_geck(const Workspace& ws, GeneratorSet subset) {
  const auto& group = ws.group();
  const auto& p = ws.parabolic(subset);
  const auto& local = ws.sub(subset);
  const auto& sub_left = local.cells().left();
  const auto& left = ws.cells().left();
  const GeckTable table = ws.algebra().geck_table(p);
  Report report;
  auto& diag = report.add("p(b,y,b,y) = 1");
  auto& negative = report.add("off-diagonal p in A_<0");
  auto& support = report.add("support: a < b, ax <= by, x <=_L y");
  for (Elem by = 0; by < group.size(); ++by) {
    const auto split = group.coset_decompose(by, subset, Side::Left);
    const LaurentPoly* d = find_coefficient(table.row(by), by);
    diag.expect_lazy(d && *d == ws.algebra().one(), [&] { return show(group, by); });
    for (const auto& [ax, c] : table.row(by)) {
      if (ax == by) continue;
      const auto s2 = group.coset_decompose(ax, subset, Side::Left);
      auto witness = [&] { return "a.x = " + show(group, ax) + ", b.y = " + show(group, by); };
      negative.expect_lazy(c.in_negative_part(), witness);
      const bool ok = s2.rep != split.rep && group.bruhat_leq(s2.rep, split.rep) && group.bruhat_leq(ax, by) &&
                      sub_left.leq(p.to_sub(s2.part), p.to_sub(split.part));
      support.expect_lazy(ok, witness);
    }
  }

  auto& restriction = report.add("<=_L on W_I is the restriction of <=_L");
  for (Elem x = 0; x < p.group->size(); ++x)
    for (Elem y = 0; y < p.group->size(); ++y)
      restriction.expect_lazy(sub_left.leq(x, y) == left.leq(p.to_full(x), p.to_full(y)),
                              [&] { return show(*p.group, x) + ", " + show(*p.group, y); });

  auto& projection = report.add("w <=_L w' implies pr(w) <=_L pr(w')");
  std::vector<Elem> pr(group.size());
  for (Elem w = 0; w < group.size(); ++w) pr[w] = p.to_sub(group.coset_decompose(w, subset, Side::Left).part);
  for (Elem w = 0; w < group.size(); ++w)
    for (Elem w2 = 0; w2 < group.size(); ++w2)
      if (left.leq(w, w2))
        projection.expect_lazy(sub_left.leq(pr[w], pr[w2]), [&] { return show(group, w) + ", " + show(group, w2); });
  return report;
}

Report verify_geck_sign_identity(const Workspace& ws, GeneratorSet subset, std::span<const Elem> delta,
                                 std::span<const int> mu) {
  const auto& group = ws.group();
  const auto& p = ws.parabolic(subset);
  const auto& sub_left = ws.sub(subset).cells().left();
  const GeckTable table = ws.algebra().geck_table(p);
  Report report;
  auto& check = report.add("p(a,x,b,y) = mu_x mu_y p(a,delta(x),b,delta(y))");
  for (Elem b : p.min_reps) {
    for (Elem y = 0; y < p.group->size(); ++y) {
      const SparseVec& row = table.row(group.multiply(b, p.to_full(y)));
      const SparseVec& image_row = table.row(group.multiply(b, p.to_full(delta[y])));
      for (Elem x : sub_left.members(sub_left.cell_of(y))) {
        for (Elem a : p.min_reps) {
          const LaurentPoly* lhs = find_coefficient(row, group.multiply(a, p.to_full(x)));
          const LaurentPoly* rhs = find_coefficient(image_row, group.multiply(a, p.to_full(delta[x])));
          const LaurentPoly l = lhs ? *lhs : LaurentPoly();
          const LaurentPoly r = rhs ? *rhs * Integer(mu[x] * mu[y]) : LaurentPoly();
          check.expect_lazy(l == r, [&] {
            return "a = " + show(group, a) + ", x = " + show(*p.group, x) + ", b = " + show(group, b) +
                   ", y = " + show(*p.group, y);
          });
        }
      }
    }
  }
  return report;
}

Report verify_characterization(const Workspace& ws, GeneratorSet subset) {
  const auto& group = ws.group();
  const auto& H = ws.algebra();
  const auto& p = ws.parabolic(subset);
  const auto& local = ws.sub(subset);
  const auto& ml = ws.mathas_lusztig(subset);
  const auto& sub_cells = local.cells();
  const std::size_t n = group.size();

  std::vector<Elem> pr_left(n), pr_right(n);
  for (Elem w = 0; w < n; ++w) {
    pr_left[w] = p.to_sub(group.coset_decompose(w, subset, Side::Left).part);
    pr_right[w] = p.to_sub(group.coset_decompose(w, subset, Side::Right).part);
  }

  Report report;
  for (Side side : {Side::Left, Side::Right}) {
    const bool left_side = side == Side::Left;
    auto& check = report.add(left_side ? "lambda^L congruence" : "rho^R congruence");
    const auto& pr = left_side ? pr_left : pr_right;
    const auto& order = left_side ? sub_cells.left() : sub_cells.right();
    std::vector<std::string> failures(n);
    parallel_for(n, ws.jobs(), [&](std::size_t i) {
      const Elem w = static_cast<Elem>(i);
      const Elem y = pr[w];
      const HeckeElement cw = H.to_standard(H.kl(w));
      const HeckeElement product =
          left_side ? H.right_mul_standard(cw, p.longest) : H.left_mul_standard(p.longest, cw);
      const LaurentPoly scale = LaurentPoly::monomial(ml.alpha[y], ml.eta[y]);
      HeckeElement lhs = scale * H.to_kl(product);
      lhs -= H.kl(left_side ? ml.lambda_L[w] : ml.rho_R[w]);
      const Elem bound = p.omega[y];
      for (const auto& [u, c] : lhs.terms()) {
        if (!order.less(pr[u], bound)) {
          failures[w] = "w = " + show(group, w) + ", stray term at " + show(group, u);
          break;
        }
      }
    });
    for (Elem w = 0; w < n; ++w) check.expect(failures[w].empty(), failures[w]);
  }
  return report;
}

Report verify_commutation(const Workspace& ws, GeneratorSet subset, const CellularPair& pair) {
  const auto& group = ws.group();
  const auto& ml = ws.mathas_lusztig(subset);
  const bool left_pair = pair.side == Side::Left;
  const auto& map = left_pair ? ml.rho_R : ml.lambda_L;
  const auto& eta = left_pair ? ml.eta_R : ml.eta_L;
  Report report;
  auto& commute = report.add(left_pair ? "delta o rho^R = rho^R o delta" : "delta o lambda^L = lambda^L o delta");
  auto& sign = report.add("sign identity");
  for (Elem w = 0; w < group.size(); ++w) {
    commute.expect_lazy(pair.delta[map[w]] == map[pair.delta[w]], [&] { return show(group, w); });
    sign.expect_lazy(eta[pair.delta[w]] == pair.mu[w] * pair.mu[map[w]] * eta[w], [&] { return show(group, w); });
  }
  return report;
}

Report verify_equivariance(const Workspace& ws) {
  const auto& group = ws.group();
  const auto& system = group.system();
  Report report;
  auto& left = report.add("sigma o lambda_I^L = lambda_sigma(I)^L o sigma");
  auto& right = report.add("sigma o rho_I^R = rho_sigma(I)^R o sigma");
  const auto autos = diagram_automorphisms(system, ws.weights());
  for (std::size_t k = 1; k < autos.size(); ++k) {
    const auto& sigma = autos[k];
    std::vector<Elem> image(group.size());
    for (Elem w = 0; w < group.size(); ++w) image[w] = group.apply_automorphism(sigma, w);
    for (std::uint32_t bits = 1; bits < (1u << system.rank()); ++bits) {
      const GeneratorSet I(bits);
      if (!system.is_finite(I)) continue;
      GeneratorSet J;
      for (Generator s : I.members()) J.insert(sigma[s]);
      const auto& a = ws.mathas_lusztig(I);
      const auto& b = ws.mathas_lusztig(J);
      for (Elem w = 0; w < group.size(); ++w) {
        auto witness = [&] { return "I = {" + system.render(I) + "}, w = " + show(group, w); };
        left.expect_lazy(image[a.lambda_L[w]] == b.lambda_L[image[w]], witness);
        right.expect_lazy(image[a.rho_R[w]] == b.rho_R[image[w]], witness);
      }
    }
  }
  return report;
}

Report verify_degree_bounds(const Workspace& ws) {
  const auto& group = ws.group();
  const auto& H = ws.algebra();
  const auto& afn = ws.afunction();
  const auto& left = ws.cells().left();
  const Elem w0 = group.longest();
  Report report;
  auto& support = report.add("support below y in <=_L");
  auto& upper = report.add("deg lambda(x,y) <= -alpha(x), equality only if x ~_L y");
  auto& lower = report.add("deg bar lambda(x,y) <= alpha(y), equality only if x ~_L y");
  for (Elem y = 0; y < group.size(); ++y) {
    const HeckeElement product = H.to_kl(H.left_mul_standard(w0, H.to_standard(H.kl(y))));
    for (const auto& [x, c] : product.terms()) {
      auto witness = [&] { return "x = " + show(group, x) + ", y = " + show(group, y); };
      support.expect_lazy(left.leq(x, y), witness);
      const Exponent d = *c.degree();
      const Exponent bound = -afn.alpha(x);
      upper.expect_lazy(d < bound || (d == bound && left.equivalent(x, y)), witness);
      const Exponent db = *c.bar().degree();
      const Exponent bound2 = afn.alpha(y);
      lower.expect_lazy(db < bound2 || (db == bound2 && left.equivalent(x, y)), witness);
    }
  }
  return report;
}

std::vector<std::size_t> mixed_sign_cells(const Workspace& ws) {
  const auto& ml = ws.mathas_lusztig(ws.group().system().all());
  const auto& lr = ws.cells().two_sided();
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < lr.cell_count(); ++c) {
    bool plus = false, minus = false;
    for (Elem w : lr.members(c)) (ml.eta[w] > 0 ? plus : minus) = true;
    if (plus && minus) out.push_back(c);
  }
  return out;
}

}  // namespace klc
