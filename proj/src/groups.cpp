#include "orbicensus/groups.hpp"

#include <numeric>

#include "orbicensus/arith.hpp"
#include "orbicensus/error.hpp"

namespace orbi {

namespace {

void require_presentable(const OrbifoldSignature& sig) {
  if (sig.dim() < 2)
    throw Error(ErrorCode::DimOne, "meridian presentation needs n >= 2; dimension-1 data comes from fixtures");
  if (!sig.is_finite()) throw Error(ErrorCode::InfiniteMultiplicity, "group computation needs finite multiplicities");
}

RelationMatrix with_extra_rows(const RelationMatrix& base, const std::vector<std::vector<Integer>>& rows) {
  RelationMatrix out(base.rows() + static_cast<Eigen::Index>(rows.size()), base.cols());
  out.topRows(base.rows()) = base;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (static_cast<Eigen::Index>(rows[k].size()) != base.cols())
      throw Error(ErrorCode::Precondition, "relation vector length " + std::to_string(rows[k].size()) +
                                               " does not match component count " + std::to_string(base.cols()));
    for (Eigen::Index j = 0; j < base.cols(); ++j)
      out(base.rows() + static_cast<Eigen::Index>(k), j) = rows[k][static_cast<std::size_t>(j)];
  }
  return out;
}

Integer finite_order(const RelationMatrix& m) {
  auto g = group_from_relations(m);
  if (!g.is_finite()) throw Error(ErrorCode::InfiniteQuotient, "quotient group is infinite");
  return *g.order();
}

}  // namespace

std::optional<Integer> GroupStructure::order() const {
  if (free_rank > 0) return std::nullopt;
  Integer o = 1;
  for (const auto& f : invariant_factors) o *= f;
  return o;
}

std::vector<Integer> smith_normal_form(const RelationMatrix& m) { return smith_diagonal<Integer>(m); }

GroupStructure group_from_relations(const RelationMatrix& m) {
  GroupStructure g;
  for (const auto& d : smith_normal_form(m)) {
    if (d == 0)
      ++g.free_rank;
    else if (d != 1)
      g.invariant_factors.push_back(d);
  }
  return g;
}

RelationMatrix orb_relation_matrix(const OrbifoldSignature& sig) {
  const auto r = static_cast<Eigen::Index>(sig.size());
  RelationMatrix m = RelationMatrix::Constant(r + 1, r, Integer(0));
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& c = sig[static_cast<std::size_t>(i)];
    m(i, i) = static_cast<long>(c.multiplicity.value());
    m(r, i) = static_cast<long>(c.degree);
  }
  return m;
}

GroupStructure orb_group_structure(const OrbifoldSignature& sig) {
  require_presentable(sig);
  return group_from_relations(orb_relation_matrix(sig));
}

Integer orb_group_order_formula(const OrbifoldSignature& sig) {
  require_presentable(sig);
  Integer product = 1;
  Integer l = 1;
  const auto f = f_vector(sig);
  for (std::size_t i = 0; i < sig.size(); ++i) {
    product *= static_cast<long>(sig[i].multiplicity.value());
    l = lcm(l, Integer(static_cast<long>(f[i])));
  }
  return product / l;
}

Integer local_germ_order(const OrbifoldSignature& sig, std::span<const int> subset) {
  return stratum_b_value(sig, subset);
}

Integer quotient_order(const OrbifoldSignature& sig, const QuotientSpec& q) {
  require_presentable(sig);
  return finite_order(with_extra_rows(orb_relation_matrix(sig), q.extra_relations));
}

bool quotient_uniformizes(const OrbifoldSignature& sig, const QuotientSpec& q, bool paranoid) {
  require_presentable(sig);
  const RelationMatrix presented = with_extra_rows(orb_relation_matrix(sig), q.extra_relations);
  const Integer group_order = finite_order(presented);
  const int r = static_cast<int>(sig.size());
  const int top = std::min(sig.dim(), r);
  const int bottom = paranoid ? 1 : top;

  bool ok = true;
  for (int k = bottom; k <= top && ok; ++k) {
    for_each_subset(r, k, [&](const std::vector<int>& subset) {
      if (!ok) return;
      // |image of ⟨μ_i : i∈B⟩| = |G| / |G / ⟨μ_i : i∈B⟩|
      std::vector<std::vector<Integer>> kill;
      for (int i : subset) {
        std::vector<Integer> e(static_cast<std::size_t>(r), Integer(0));
        e[static_cast<std::size_t>(i)] = 1;
        kill.push_back(std::move(e));
      }
      const Integer cokernel = finite_order(with_extra_rows(presented, kill));
      const Integer image = group_order / cokernel;
      if (image != local_germ_order(sig, subset)) ok = false;
    });
  }
  return ok;
}

OrbifoldSignature all_two_signature(int n) {
  return OrbifoldSignature(n, std::vector<LocusComponent>(static_cast<std::size_t>(2 * n + 2),
                                                          LocusComponent{1, Multiplicity(2)}));
}

EnriquesQuotients enumerate_enriques_quotients(int n, bool paranoid) {
  if (n < 2) throw Error(ErrorCode::DimOne, "Enriques-type quotients need n >= 2");
  const auto sig = all_two_signature(n);
  const int r = 2 * n + 2;
  EnriquesQuotients out;
  // S and its complement give the same α because Σ μ_i = 0; fix 0 ∈ S
  for_each_subset(r - 1, n, [&](const std::vector<int>& rest) {
    IndexSet subset{0};
    for (int i : rest) subset.push_back(i + 1);
    std::vector<Integer> alpha(static_cast<std::size_t>(r), Integer(0));
    for (int i : subset) alpha[static_cast<std::size_t>(i)] = 1;
    QuotientSpec spec{{alpha}};
    if (!quotient_uniformizes(sig, spec, paranoid)) return;
    out.subsets.push_back(std::move(subset));
    out.specs.push_back(std::move(spec));
  });
  out.count = static_cast<unsigned long>(out.specs.size());
  return out;
}

}  // namespace orbi
