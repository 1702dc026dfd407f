#include "sigmacolim/lemma.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

namespace sigmacolim {

namespace {

using Path = std::vector<std::string>;

// Δ-data attached to a term: its ⋆ and the arrows a : A → ⋆, b : B → ⋆.
struct TermShape {
  std::string star;
  std::string src, tgt;  // Δ objects of A and B
  Path a, b;
};

Path concat(Path p, const std::string& g) {
  p.push_back(g);
  return p;
}

std::string idx(const char* prefix, int i) { return prefix + std::to_string(i); }

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError("lemma instance: " + what);
}

class DeltaBuilder {
 public:
  std::string object(const std::string& name, int image) {
    if (objects_.emplace(name, image).second) k_.objects.push_back(name);
    return name;
  }
  std::string arrow(const std::string& name, const std::string& src, const std::string& tgt,
                    int image, const SigmaClass& s) {
    if (arrows_.emplace(name, image).second) k_.arrows.push_back({name, src, tgt, s.contains(image)});
    return name;
  }
  void cell(const std::string& name, Path src, Path tgt, int image) {
    cells_.emplace(name, image);
    k_.cells.push_back({name, std::move(src), std::move(tgt)});
  }

  ComputadDiagram finish(const TwoCatRef& target) const {
    return diagram_from_computad(k_, target, objects_, arrows_, cells_);
  }

 private:
  TwoComputad k_;
  std::map<std::string, int> objects_, arrows_, cells_;
};

// Δ 1-cell of a path of generator names starting at `src`.
int delta_cell(const FreeCompletion& free, const std::string& src, const Path& path) {
  if (path.empty()) return free.category->id1(free.object_of.at(src));
  std::vector<int> gens;
  for (const auto& g : path)
    for (std::size_t i = 0; i < free.computad.arrows.size(); ++i)
      if (free.computad.arrows[i].name == g) gens.push_back(static_cast<int>(i));
  for (std::size_t c = 0; c < free.paths.size(); ++c)
    if (free.paths[c] == gens) return static_cast<int>(c);
  throw InputError("lemma: path missing from the free completion");
}

bool is_id_pair(const Fin2Category& a, const Premorphism& p) {
  return a.is_id1(p.u) && a.is_id1(p.v);
}

}  // namespace

LemmaOutput lemma_engine(const LemmaInstance& inst, const LemmaOptions& opts) {
  require(!inst.functors.empty(), "no functors");
  const auto& first_f = *inst.functors.front();
  const TwoCatRef index = first_f.index;
  const auto& a = *index;
  for (const auto& f : inst.functors)
    require(f && (f->index == index || *f->index == a) && f->sigma == first_f.sigma,
            "functors must share the index pair");
  const SigmaClass& sigma = first_f.sigma;

  LemmaOutput out;
  const int np = static_cast<int>(inst.premorphisms.size());
  const int nt = static_cast<int>(inst.terms.size());
  for (int i = 0; i < np; ++i) {
    const auto& lp = inst.premorphisms[i];
    require(lp.functor >= 0 && lp.functor < static_cast<int>(inst.functors.size()),
            "premorphism " + std::to_string(i) + " names an unknown functor");
    require(validate_premorphism(*inst.functors[lp.functor], lp.p).empty(),
            "premorphism " + std::to_string(i) + " is ill-typed");
  }

  // Resolve the composites over their γ.
  out.term_functor.resize(nt);
  out.term_value.resize(nt);
  out.term_gamma.resize(nt);
  for (int k = 0; k < nt; ++k) {
    const auto& t = inst.terms[k];
    if (t.kind == LemmaTerm::Kind::Leaf) {
      require(t.premorphism >= 0 && t.premorphism < np, "term " + std::to_string(k));
      out.term_functor[k] = inst.premorphisms[t.premorphism].functor;
      out.term_value[k] = inst.premorphisms[t.premorphism].p;
      continue;
    }
    require(t.first >= 0 && t.first < k && t.second >= 0 && t.second < k,
            "term " + std::to_string(k) + " must compose earlier terms");
    require(out.term_functor[t.first] == out.term_functor[t.second],
            "term " + std::to_string(k) + " mixes functors");
    const auto& f = *inst.functors[out.term_functor[t.first]];
    const auto& xi = out.term_value[t.first];
    const auto& eta = out.term_value[t.second];
    require(xi.target == eta.source, "term " + std::to_string(k) + " is not composable");
    out.term_functor[k] = out.term_functor[t.first];
    out.term_gamma[k] = t.gamma ? *t.gamma : canonical_gamma(f, eta, xi);
    out.term_value[k] = compose_premorphisms(f, eta, xi, out.term_gamma[k]);
  }

  // Homotopy witnesses for the equations.
  for (std::size_t q = 0; q < inst.equations.size(); ++q) {
    const auto& eq = inst.equations[q];
    const std::string name = "equation " + std::to_string(q);
    require(eq.lhs >= 0 && eq.lhs < nt && eq.rhs >= 0 && eq.rhs < nt, name);
    require(out.term_functor[eq.lhs] == out.term_functor[eq.rhs], name + " mixes functors");
    const auto& f = *inst.functors[out.term_functor[eq.lhs]];
    const auto& l = out.term_value[eq.lhs];
    const auto& r = out.term_value[eq.rhs];
    require(l.source == r.source && l.target == r.target, name + " has unequal endpoints");
    if (eq.witness) {
      require(check_homotopy(f, l, r, *eq.witness).empty(), name + " has an invalid witness");
      out.equation_witness.push_back(*eq.witness);
    } else {
      auto w = is_homotopic(f, l, r);
      require(w.has_value(), name + " does not hold");
      out.equation_witness.push_back(*w);
    }
  }

  DeltaBuilder d;
  auto node = [&](int obj) { return d.object("A" + std::to_string(obj), obj); };

  // One object per index object, one star and arrow pair per leaf.
  std::vector<TermShape> shape(nt);
  std::vector<TermShape> leaf_shape(np);
  for (int i = 0; i < np; ++i) {
    const auto& p = inst.premorphisms[i].p;
    auto& s = leaf_shape[i];
    s.src = node(p.source.index);
    s.tgt = node(p.target.index);
  }
  for (int i = 0; i < np; ++i) {
    const auto& p = inst.premorphisms[i].p;
    auto& s = leaf_shape[i];
    if (is_id_pair(a, p)) {
      s.star = s.src;
      continue;
    }
    int c = a.tgt(p.u);
    s.star = d.object(idx("S", c), c);
    s.a = {d.arrow(idx("g", p.u), s.src, s.star, p.u, sigma)};
    s.b = {d.arrow(idx("g", p.v), s.tgt, s.star, p.v, sigma)};
  }

  // Composites over γ, once per distinct composite.
  std::map<std::tuple<int, int, int, int, int>, int> seen;  // (first, second, r, s, γ)
  std::vector<int> canon(nt);
  for (int k = 0; k < nt; ++k) {
    const auto& t = inst.terms[k];
    if (t.kind == LemmaTerm::Kind::Leaf) {
      // Leaves with the same premorphism share their data already.
      shape[k] = leaf_shape[t.premorphism];
      canon[k] = k;
      for (int j = 0; j < k; ++j)
        if (inst.terms[j].kind == LemmaTerm::Kind::Leaf &&
            out.term_functor[j] == out.term_functor[k] && out.term_value[j] == out.term_value[k]) {
          canon[k] = canon[j];
          break;
        }
      continue;
    }
    const auto& g = out.term_gamma[k];
    auto key = std::make_tuple(canon[t.first], canon[t.second], g.r, g.s, g.gamma);
    auto [it, fresh] = seen.emplace(key, k);
    canon[k] = it->second;
    if (!fresh) {
      shape[k] = shape[it->second];
      continue;
    }
    const auto& sf = shape[t.first];
    const auto& ss = shape[t.second];
    auto& s = shape[k];
    int dst = a.tgt(g.r);
    s.star = d.object(idx("T", k), dst);
    s.src = sf.src;
    s.tgt = ss.tgt;
    auto c = d.arrow(idx("c", k), sf.star, s.star, g.r, sigma);
    auto dd = d.arrow(idx("d", k), ss.star, s.star, g.s, sigma);
    d.cell(idx("gamma", k), concat(sf.b, c), concat(ss.a, dd), g.gamma);
    s.a = concat(sf.a, c);
    s.b = concat(ss.b, dd);
  }

  // One apex per equation, carrying the homotopy cells.
  for (std::size_t q = 0; q < inst.equations.size(); ++q) {
    const auto& eq = inst.equations[q];
    const auto& w = out.equation_witness[q];
    const auto& l = shape[eq.lhs];
    const auto& r = shape[eq.rhs];
    int qi = static_cast<int>(q);
    auto h = d.object(idx("H", qi), w.d);
    auto c = d.arrow(idx("hc", qi), l.star, h, w.w1, sigma);
    auto dd = d.arrow(idx("hd", qi), r.star, h, w.w2, sigma);
    auto e = d.arrow(idx("he", qi), l.src, h, w.w_a, sigma);
    auto f = d.arrow(idx("hf", qi), l.tgt, h, w.w_b, sigma);
    d.cell(idx("alpha1_", qi), {e}, concat(l.a, c), w.alpha1);
    d.cell(idx("beta1_", qi), concat(l.b, c), {f}, w.beta1);
    d.cell(idx("alpha2_", qi), {e}, concat(r.a, dd), w.alpha2);
    d.cell(idx("beta2_", qi), concat(r.b, dd), {f}, w.beta2);
  }

  out.delta = d.finish(index);
  auto search = sigma_cone_search(out.delta.functor, sigma, opts.search);
  if (!search.found())
    throw NotSigmaFiltered(search.capped ? "lemma: cone search stopped at its node cap"
                                         : "lemma: no sigma-cone over the constructed diagram");
  out.cone = search.first();
  out.e = out.cone.vertex;
  const auto& free = out.delta.free;
  auto theta_obj = [&](const std::string& n) { return out.cone.legs[free.object_of.at(n)]; };
  auto theta_cell = [&](const std::string& src, const Path& p) {
    return out.cone.cells[delta_cell(free, src, p)];
  };

  auto lift = [&](const CatDiagram& f, const Premorphism& p, const TermShape& s, int& z,
                  int& mu, int& nu) {
    z = theta_obj(s.star);
    mu = a.inverse2(theta_cell(s.src, s.a));
    nu = theta_cell(s.tgt, s.b);
    if (mu == -1) throw InputError("lemma: cone cell over a Sigma-arrow is not invertible");
    int xi = paste(f, p, z, mu, nu);
    return Premorphism{p.source, p.target, theta_obj(s.src), theta_obj(s.tgt), xi};
  };

  for (int i = 0; i < np; ++i) {
    const auto& lp = inst.premorphisms[i];
    int z, mu, nu;
    out.tilde.push_back(lift(*inst.functors[lp.functor], lp.p, leaf_shape[i], z, mu, nu));
    out.w.push_back(theta_obj(leaf_shape[i].src));
    out.t.push_back(theta_obj(leaf_shape[i].tgt));
    out.z.push_back(z);
    out.mu.push_back(mu);
    out.nu.push_back(nu);
  }
  for (int k = 0; k < nt; ++k) {
    int z, mu, nu;
    out.term_tilde.push_back(
        lift(*inst.functors[out.term_functor[k]], out.term_value[k], shape[k], z, mu, nu));
    out.term_z.push_back(z);
    out.term_mu.push_back(mu);
    out.term_nu.push_back(nu);
  }
  return out;
}

int evaluate_in_vertex(const LemmaInstance& inst, const LemmaOutput& out, int term) {
  const auto& t = inst.terms.at(term);
  if (t.kind == LemmaTerm::Kind::Leaf) return out.tilde.at(t.premorphism).xi;
  const auto& fe = inst.functors[out.term_functor[term]]->at(out.e);
  return fe.compose(evaluate_in_vertex(inst, out, t.second),
                    evaluate_in_vertex(inst, out, t.first));
}

Violations check_lemma_output(const LemmaInstance& inst, const LemmaOutput& out) {
  Violations v;
  const auto& a = *inst.functors.front()->index;
  const int np = static_cast<int>(inst.premorphisms.size());
  auto name = [](int i) { return "xi_" + std::to_string(i); };

  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      const auto& pi = inst.premorphisms[i].p;
      const auto& pj = inst.premorphisms[j].p;
      if ((pi.source.index == pj.source.index && out.w[i] != out.w[j]) ||
          (pi.source.index == pj.target.index && out.w[i] != out.t[j]) ||
          (pi.target.index == pj.target.index && out.t[i] != out.t[j]))
        v.push_back({"LemmaSharedLeg", name(i) + ", " + name(j)});
    }
  for (int i = 0; i < np; ++i) {
    const auto& p = inst.premorphisms[i].p;
    if (!is_id_pair(a, p)) continue;
    if (out.z[i] != out.w[i] || out.z[i] != out.t[i] || !a.is_id2(out.mu[i]) ||
        !a.is_id2(out.nu[i]))
      v.push_back({"LemmaIdentityLift", name(i)});
  }
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      const auto& pi = inst.premorphisms[i].p;
      const auto& pj = inst.premorphisms[j].p;
      if (is_id_pair(a, pi) || is_id_pair(a, pj)) continue;
      if ((pi.u == pj.u && out.mu[i] != out.mu[j]) || (pi.v == pj.v && out.nu[i] != out.nu[j]) ||
          (pi.u == pj.v && out.mu[i] != a.inverse2(out.nu[j])))
        v.push_back({"LemmaSharedCell", name(i) + ", " + name(j)});
    }
  for (int i = 0; i < np; ++i) {
    const auto& f = *inst.functors[inst.premorphisms[i].functor];
    const auto& s = out.tilde[i];
    if (!validate_premorphism(f, s).empty() || a.tgt(s.u) != out.e || s.u != out.w[i] ||
        s.v != out.t[i])
      v.push_back({"LemmaTilde", name(i)});
  }

  for (std::size_t q = 0; q < inst.equations.size(); ++q) {
    const auto& eq = inst.equations[q];
    if (out.term_tilde[eq.lhs] != out.term_tilde[eq.rhs])
      v.push_back({"LemmaEquationLift", "equation " + std::to_string(q)});
  }
  for (std::size_t k = 0; k < inst.terms.size(); ++k) {
    const auto& t = inst.terms[k];
    if (t.kind != LemmaTerm::Kind::Compose) continue;
    const auto& fe = inst.functors[out.term_functor[k]]->at(out.e);
    const auto& lo = out.term_tilde[t.first];
    const auto& hi = out.term_tilde[t.second];
    Premorphism expect{lo.source, hi.target, lo.u, hi.v, fe.compose(hi.xi, lo.xi)};
    if (out.term_tilde[k] != expect) v.push_back({"LemmaCompositeLift", "term " + std::to_string(k)});
  }
  for (std::size_t q = 0; q < inst.equations.size(); ++q) {
    const auto& eq = inst.equations[q];
    int l = evaluate_in_vertex(inst, out, eq.lhs);
    int r = evaluate_in_vertex(inst, out, eq.rhs);
    if (l == -1 || l != r) v.push_back({"LemmaEquation", "equation " + std::to_string(q)});
  }
  return v;
}

HomotopyWitness tilde_homotopy(const LemmaOutput& out, int term1, int term2) {
  const auto& p = out.term_tilde.at(term1);
  const auto& q = out.term_tilde.at(term2);
  if (p.source != q.source || p.target != q.target)
    throw InputError("tilde_homotopy: terms do not share endpoints");
  return {out.e,           p.u,
          p.v,             out.term_z[term1],
          out.term_z[term2], out.term_mu[term1],
          out.term_mu[term2], out.term_nu[term1],
          out.term_nu[term2]};
}

SharedHomotopy shared_homotopy(const std::vector<DiagramRef>& functors,
                               const std::vector<Premorphism>& eta,
                               const std::vector<Premorphism>& xi, const LemmaOptions& opts) {
  if (functors.empty() || functors.size() != eta.size() || functors.size() != xi.size())
    throw InputError("shared_homotopy: one eta and one xi per functor");
  for (std::size_t k = 0; k < functors.size(); ++k) {
    if (xi[k].u != xi[0].u || xi[k].v != xi[0].v)
      throw InputError("shared_homotopy: the xi_k must share (u, v)");
    if (eta[k].u != eta[0].u || eta[k].v != eta[0].v)
      throw InputError("shared_homotopy: the eta_k must share (u, v)");
    if (eta[k].source.index != xi[0].source.index || eta[k].target.index != xi[0].target.index)
      throw InputError("shared_homotopy: endpoints must lie over the same index objects");
    if (eta[k].source != xi[k].source || eta[k].target != xi[k].target)
      throw InputError("shared_homotopy: eta_k and xi_k must share endpoints");
  }
  LemmaInstance inst;
  inst.functors = functors;
  for (std::size_t k = 0; k < functors.size(); ++k) {
    int fk = static_cast<int>(k);
    inst.premorphisms.push_back({fk, eta[k]});
    inst.premorphisms.push_back({fk, xi[k]});
    inst.terms.push_back(LemmaTerm::leaf(2 * fk));
    inst.terms.push_back(LemmaTerm::leaf(2 * fk + 1));
    inst.equations.push_back({2 * fk, 2 * fk + 1, std::nullopt});
  }
  SharedHomotopy out;
  out.lemma = lemma_engine(inst, opts);
  const auto& l = out.lemma;
  out.witness = {l.e, l.w[0], l.t[0], l.z[0], l.z[1], l.mu[0], l.mu[1], l.nu[0], l.nu[1]};
  for (std::size_t k = 0; k < functors.size(); ++k)
    if (!check_homotopy(*functors[k], eta[k], xi[k], out.witness).empty())
      throw std::logic_error("shared_homotopy: the lifted cells do not witness pair " +
                       std::to_string(k));
  return out;
}

}  // namespace sigmacolim
