#pragma once

#include "unigeo/grassmann.hpp"
#include "unigeo/matcore.hpp"
#include "unigeo/rng.hpp"

namespace unigeo {

/// n x m matrix of i.i.d. standard complex Gaussians (real and imaginary
/// parts of variance 1/2).
ComplexMatrix sample_ginibre(Index rows, Index cols, CounterRng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of diag(R) moved into Q.
UnitaryMatrix sample_haar_unitary(Index n, CounterRng& rng);

/// Hermitian matrix with a uniformly random eigenbasis direction (GUE shape)
/// rescaled to spectral norm radius * u, u uniform on (0, 1].
HermitianMatrix sample_hermitian_ball(Index n, double radius, CounterRng& rng);

/// GUE-shaped Hermitian matrix rescaled to spectral norm exactly `norm`.
HermitianMatrix sample_hermitian_sphere(Index n, double norm, CounterRng& rng);

/// Rank-m projection onto the span of the first m columns of a Haar unitary.
Projection sample_projection(Index n, Index m, CounterRng& rng);

}  // namespace unigeo
