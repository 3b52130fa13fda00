#pragma once

#include <vector>

#include "lastloop/sap/word.hpp"

namespace lastloop::sap {

/// The 2ℓ words tracing the same polygon: every starting vertex, both
/// orientations. The input word comes first.
std::vector<Word> rerootings(const Word& w);

/// Images of `w` under the 8 symmetries of the square, identity first.
std::vector<Word> dihedral_images(const Word& w);

/// Canonical polygons of length ℓ found by testing every word that starts
/// with R against is_canonical, in lexicographic order. Exponential in ℓ.
std::vector<Word> brute_force_polygons(int length);

}  // namespace lastloop::sap
