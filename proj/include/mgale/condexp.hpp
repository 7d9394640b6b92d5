#ifndef MGALE_CONDEXP_HPP
#define MGALE_CONDEXP_HPP

// Conditional expectation on a finite space, built two independent ways:
// blockwise averaging (the total, junk-valued operator) and the orthogonal
// projection onto sub-measurable functions via normal equations.

#include "mgale/measure.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mgale {

template <Scalar S>
struct CondexpInput {
  FiniteMeasureSpace<S> space;
  Partition ambient;  // the full sigma-algebra; singletons unless stated otherwise
  Partition sub;      // the conditioning sigma-algebra
  RandomVariable<S> f;

  CondexpInput(FiniteMeasureSpace<S> sp, Partition sub_partition, RandomVariable<S> fn)
      : space(std::move(sp)),
        ambient(Partition::singletons(space.atom_count())),
        sub(std::move(sub_partition)),
        f(std::move(fn)) {}
  CondexpInput(FiniteMeasureSpace<S> sp, Partition ambient_partition, Partition sub_partition, RandomVariable<S> fn)
      : space(std::move(sp)), ambient(std::move(ambient_partition)), sub(std::move(sub_partition)), f(std::move(fn)) {}
};

/// mu[f | sub] without the sub <= ambient guard. Returns f itself when f is
/// already sub-measurable; zero-measure blocks get the value 0.
template <Scalar S>
RandomVariable<S> block_average(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f, const Partition& sub) {
  require_same_atoms(space.atom_count(), f.atom_count(), "condexp");
  require_same_atoms(f.atom_count(), sub.atom_count(), "condexp");
  if (is_measurable_wrt(f, sub)) return f;

  std::vector<S> mass(sub.block_count(), S(0));
  std::vector<S> weighted(sub.block_count(), S(0));
  for (Atom a = 0; a < f.atom_count(); ++a) {
    const std::size_t b = sub.block_of(a);
    mass[b] += space.weight(a);
    weighted[b] += f[a] * space.weight(a);
  }
  std::vector<S> average(sub.block_count(), S(0));
  for (std::size_t b = 0; b < average.size(); ++b)
    if (mass[b] > S(0)) average[b] = weighted[b] / mass[b];

  RandomVariable<S> out(f.atom_count(), S(0));
  for (Atom a = 0; a < f.atom_count(); ++a) out[a] = average[sub.block_of(a)];
  return out;
}

/// Total conditional expectation: the zero function when sub is not coarser
/// than ambient, otherwise blockwise averages.
template <Scalar S>
RandomVariable<S> condexp(const CondexpInput<S>& in) {
  if (in.sub.atom_count() != in.space.atom_count() || in.ambient.atom_count() != in.space.atom_count() ||
      !partition_le(in.sub, in.ambient)) {
    return RandomVariable<S>(in.space.atom_count(), S(0));
  }
  return block_average(in.space, in.f, in.sub);
}

template <Scalar S>
RandomVariable<S> condexp(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f, const Partition& sub) {
  return condexp(CondexpInput<S>(space, sub, f));
}

namespace detail {

template <Scalar S>
S weighted_inner(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& u, const RandomVariable<S>& v) {
  S total(0);
  for (Atom a = 0; a < u.atom_count(); ++a) total += u[a] * v[a] * space.weight(a);
  return total;
}

/// Gaussian elimination with partial pivoting (largest magnitude). Columns
/// without a usable pivot are degenerate directions; their coefficient is 0.
template <Scalar S>
std::vector<S> solve_normal_equations(std::vector<std::vector<S>> gram, std::vector<S> rhs) {
  const std::size_t n = rhs.size();
  std::vector<std::size_t> pivot_col_of_row;
  std::vector<bool> has_pivot(n, false);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < n; ++r)
      if (abs_value(gram[r][col]) > abs_value(gram[best][col])) best = r;
    S pivot_mag = abs_value(gram[best][col]);
    bool usable = pivot_mag > S(0);
    if constexpr (!is_exact_v<S>) usable = pivot_mag > 1e-300;
    if (!usable) continue;
    std::swap(gram[row], gram[best]);
    std::swap(rhs[row], rhs[best]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || gram[r][col] == S(0)) continue;
      const S factor = gram[r][col] / gram[row][col];
      for (std::size_t c = col; c < n; ++c) gram[r][c] -= factor * gram[row][c];
      rhs[r] -= factor * rhs[row];
    }
    pivot_col_of_row.push_back(col);
    has_pivot[col] = true;
    ++row;
  }
  std::vector<S> coeff(n, S(0));
  for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
    const std::size_t col = pivot_col_of_row[r];
    coeff[col] = rhs[r] / gram[r][col];
  }
  return coeff;
}

}  // namespace detail

/// Orthogonal projection of f onto sub-measurable functions under
/// <u, v> = sum u v mu, computed from the Gram system of the block-indicator
/// basis. Throws when sub is not coarser than ambient.
template <Scalar S>
RandomVariable<S> condexp_l2(const CondexpInput<S>& in) {
  require_same_atoms(in.space.atom_count(), in.f.atom_count(), "condexp_l2");
  if (!partition_le(in.sub, in.ambient)) {
    throw std::invalid_argument("condexp_l2: conditioning partition is not coarser than the ambient one");
  }
  const std::size_t k = in.sub.block_count();
  std::vector<RandomVariable<S>> basis;
  basis.reserve(k);
  for (std::size_t b = 0; b < k; ++b) basis.push_back(indicator<S>(in.sub.block_set(b)));

  std::vector<std::vector<S>> gram(k, std::vector<S>(k, S(0)));
  std::vector<S> rhs(k, S(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      gram[i][j] = detail::weighted_inner(in.space, basis[i], basis[j]);
      gram[j][i] = gram[i][j];
    }
    rhs[i] = detail::weighted_inner(in.space, basis[i], in.f);
  }
  const std::vector<S> coeff = detail::solve_normal_equations(std::move(gram), std::move(rhs));

  RandomVariable<S> out(in.f.atom_count(), S(0));
  for (std::size_t b = 0; b < k; ++b)
    for (Atom a = 0; a < out.atom_count(); ++a) out[a] += coeff[b] * basis[b][a];
  return out;
}

template <Scalar S>
struct CharacterizationReport {
  bool holds = false;
  S worst_block_gap{0};
  std::size_t worst_block = 0;
};

/// Checks that the set integral of mu[f | sub] matches that of f on every block
/// of sub (and hence on every set of the generated algebra, Omega included).
template <Scalar S>
CharacterizationReport<S> check_set_integral_characterization(const CondexpInput<S>& in) {
  if (!partition_le(in.sub, in.ambient)) {
    throw std::invalid_argument("characterization check: conditioning partition is not coarser than the ambient one");
  }
  const RandomVariable<S> ce = condexp(in);
  CharacterizationReport<S> rep;
  for (std::size_t b = 0; b < in.sub.block_count(); ++b) {
    const AtomSet block = in.sub.block_set(b);
    const S gap = abs_value(S(set_integral(in.space, ce, block) - set_integral(in.space, in.f, block)));
    if (gap > rep.worst_block_gap) {
      rep.worst_block_gap = gap;
      rep.worst_block = b;
    }
  }
  const S total_gap = abs_value(S(integral(in.space, ce) - integral(in.space, in.f)));
  rep.holds = approx_eq(rep.worst_block_gap, S(0)) && approx_eq(total_gap, S(0));
  return rep;
}

struct CondexpPropertiesReport {
  bool linearity = false;
  bool tower = false;
  bool monotonicity_applicable = false;  // f <= g a.e. held
  bool monotonicity = false;
  bool holds() const { return linearity && tower && (!monotonicity_applicable || monotonicity); }
};

template <Scalar S>
CondexpPropertiesReport condexp_properties(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f,
                                           const RandomVariable<S>& g, const S& alpha, const S& beta,
                                           const Partition& sub_fine, const Partition& sub_coarse) {
  if (!partition_le(sub_coarse, sub_fine)) {
    throw std::invalid_argument("condexp_properties: partitions must satisfy coarse <= fine");
  }
  CondexpPropertiesReport rep;
  const RandomVariable<S> combo = alpha * f + beta * g;
  rep.linearity = ae_equal(space, condexp(space, combo, sub_fine),
                           alpha * condexp(space, f, sub_fine) + beta * condexp(space, g, sub_fine));
  rep.tower = ae_equal(space, condexp(space, condexp(space, f, sub_fine), sub_coarse), condexp(space, f, sub_coarse));
  rep.monotonicity_applicable = ae_le(space, f, g);
  rep.monotonicity = ae_le(space, condexp(space, f, sub_fine), condexp(space, g, sub_fine));
  return rep;
}

}  // namespace mgale

#endif  // MGALE_CONDEXP_HPP
