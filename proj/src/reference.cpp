#include "groupoidal/reference.hpp"

#include <algorithm>
#include <cmath>

namespace groupoidal::reference {

GFunction convolve(const GFunction& f, const GFunction& h) {
  require_same_base(f.base(), h.base(), "convolve");
  const auto& g = f.groupoid();
  std::vector<Complex> out(g.morphism_count());
  for (MorphismIndex a = 0; a < g.morphism_count(); ++a) {
    for (MorphismIndex b = 0; b < g.morphism_count(); ++b) {
      if (const auto c = g.product(a, b)) out[*c] += f(a) * h(b);
    }
  }
  return GFunction::from_dense(f.base(), out);
}

GFunction convolve_haar(const GFunction& f, const GFunction& h, const GKernel& lambda) {
  require_same_base(f.base(), h.base(), "convolve_haar");
  require_same_base(f.base(), lambda.base(), "convolve_haar kernel");
  const auto& g = f.groupoid();
  std::vector<Complex> out(g.morphism_count());
  for (MorphismIndex a = 0; a < g.morphism_count(); ++a) {
    for (MorphismIndex c = 0; c < g.morphism_count(); ++c) {
      if (g.rng(c) != g.src(a)) continue;
      out[a] += lambda.coeff(g.src(a), c) * f(g.compose(a, c)) * h(g.inv(c));
    }
  }
  return GFunction::from_dense(f.base(), out);
}

TransverseReport check_transverse(const GKernel& lambda, double tol) {
  const auto& g = *lambda.base();
  TransverseReport report;
  for (MorphismIndex a = 0; a < g.morphism_count(); ++a) {
    for (MorphismIndex eta = 0; eta < g.morphism_count(); ++eta) {
      const double lhs = lambda.coeff(g.rng(a), eta);
      double rhs = 0.0;
      for (MorphismIndex c = 0; c < g.morphism_count(); ++c) {
        if (g.rng(c) == g.src(a) && g.product(a, c) == eta) rhs += lambda.coeff(g.src(a), c);
      }
      const double r = std::abs(lhs - rhs);
      report.max_residual = std::max(report.max_residual, r);
      if (r > tol) report.violations.push_back({a, eta, lhs, rhs});
    }
  }
  return report;
}

AssociativityReport check_basis_associativity(const GroupoidPtr& g, const GKernel* lambda, double tol) {
  const auto n = g->morphism_count();
  auto product = [&](const GFunction& f, const GFunction& h) { return lambda ? reference::convolve_haar(f, h, *lambda) : reference::convolve(f, h);
  };
  AssociativityReport report;
  report.triples = n * n * n;
  for (MorphismIndex a = 0; a < n; ++a) {
    const auto fa = canonical_potential(g, a);
    for (MorphismIndex b = 0; b < n; ++b) {
      const auto fb = canonical_potential(g, b);
      for (MorphismIndex c = 0; c < n; ++c) {
        const auto fc = canonical_potential(g, c);
        const double r = product(product(fa, fb), fc).distance(product(fa, product(fb, fc)));
        report.max_residual = std::max(report.max_residual, r);
        if (r > tol && !report.witness) report.witness = std::array<MorphismIndex, 3>{a, b, c};
      }
    }
  }
  return report;
}

SeparationReport separation_check(const RepFamily& family, double tol) {
  const auto& g = *family.base();
  SeparationReport report;
  for (MorphismIndex a = 0; a < g.morphism_count(); ++a) {
    for (MorphismIndex b = a + 1; b < g.morphism_count(); ++b) {
      ++report.pairs;
      if (g.rng(a) != g.rng(b) || g.src(a) != g.src(b)) {
        ++report.separated_by_endpoints;
        continue;
      }
      bool separated = false;
      for (const auto& rep : family.members()) {
        const auto d = rep.dim(g.rng(a));
        for (Eigen::Index i = 0; i < d && !separated; ++i) {
          for (Eigen::Index j = 0; j < d && !separated; ++j) separated = std::abs(rep(a)(i, j) - rep(b)(i, j)) > tol;
        }
        if (separated) break;
      }
      if (separated) {
        ++report.separated_by_coefficients;
      } else {
        report.unseparated.emplace_back(a, b);
      }
    }
  }
  return report;
}

}  // namespace groupoidal::reference
