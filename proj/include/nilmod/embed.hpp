#ifndef NILMOD_EMBED_HPP
#define NILMOD_EMBED_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "nilmod/modcore.hpp"

namespace nilmod {

/// h with dh/dx_i = fs[i] for i < fs.size() <= n.
///
/// Built by integrating one variable at a time from 0, which leaves every
/// term of h divisible by one of x_1..x_k; this fixes the representative
/// among solutions differing by a polynomial in x_{k+1}..x_n.
/// Throws Incompatible with witness (i, j) for the first pair, in
/// lexicographic order, whose mixed partials differ.
Poly potential(std::span<const Poly> fs, std::size_t n);

struct EmbeddingResult {
  PolySubmodule image;
  /// images[j] is the image of the j-th standard basis vector.
  ModuleMap map;
};

struct EmbedOptions {
  /// When set, every codimension-one submodule and complement vector in the
  /// recursion is drawn at random from this seed.
  std::optional<std::uint64_t> randomize_seed;
};

/// Embeds a nilpotent module with one-dimensional socle into T_n.
/// Throws NotNilpotent or SocleNotOneDimensional (also for dim 0).
EmbeddingResult embed_nilpotent(const FDModule& v, const EmbedOptions& options = {});

/// The image of any embedding; a complete isomorphism invariant.
PolySubmodule canonical_form(const FDModule& v, const EmbedOptions& options = {});

bool is_isomorphic(const FDModule& a, const FDModule& b);

inline constexpr std::size_t kBruteForceMaxDim = 6;

/// Ground-truth isomorphism test that never embeds: computes the space of
/// intertwiners P (P S_i = S'_i P) and decides whether it holds an
/// invertible element, first by probing fixed combinations and then by
/// checking the determinant on the intertwiner space as a polynomial.
/// Throws DimensionTooLarge above max_dim.
bool brute_force_isomorphic(const FDModule& a, const FDModule& b, std::size_t max_dim = kBruteForceMaxDim);

struct GeneralEmbedding {
  ExpSubmodule image;
  /// images[j] is the polynomial part of the image of e_j; x_i acts on it as
  /// eigenvalues[i] + d/dx_i.
  ModuleMap map;
};

/// Embeds a module with one-dimensional socle into D_a via the twist by its
/// socle eigenvalues.
GeneralEmbedding embed_general(const FDModule& v);

}  // namespace nilmod

#endif  // NILMOD_EMBED_HPP
