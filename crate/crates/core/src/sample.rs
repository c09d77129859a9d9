//! Seeded random generators for channels, Pauli mixtures and score vectors.

use nalgebra::{Complex, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{Operator, PauliMixture, QubitChannel, SimilarityScores};
use crate::scalar::{creal, Real};

/// Environment variable overriding the default seed of test generators.
pub const SEED_ENV: &str = "QECCAT_SEED";

/// RNG seeded from `QECCAT_SEED` when set and parseable, else from `default`.
pub fn rng_from_env(default: u64) -> ChaCha8Rng {
    let seed = std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default);
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform_complex<T: Real, R: Rng>(rng: &mut R) -> Complex<T> {
    Complex::new(
        T::lit(rng.random_range(-1.0..1.0)),
        T::lit(rng.random_range(-1.0..1.0)),
    )
}

/// A random CPTP channel with `kraus_count` operators, built by normalizing
/// random matrices `G_i` as `E_i = G_i S^{-1/2}`, `S = Σ G_i†G_i`.
pub fn random_channel<T: Real, R: Rng>(rng: &mut R, kraus_count: usize) -> QubitChannel<T> {
    assert!(kraus_count > 0);
    let raw: Vec<Operator<T>> = (0..kraus_count)
        .map(|_| Operator::from_fn(|_, _| uniform_complex(rng)))
        .collect();
    let s = raw
        .iter()
        .fold(Operator::<T>::zeros(), |acc, g| acc + g.adjoint() * g);
    let eig = SymmetricEigen::new((s + s.adjoint()) * creal(T::lit(0.5)));
    let inv_sqrt = Operator::from_diagonal(&eig.eigenvalues.map(|l| creal(T::one() / l.sqrt())));
    let s_inv_sqrt = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.adjoint();
    let kraus = raw.into_iter().map(|g| g * s_inv_sqrt).collect();
    QubitChannel::new(kraus).expect("normalized Kraus set is trace preserving")
}

/// A random channel with 1 to 4 Kraus operators.
pub fn random_channel_any_rank<T: Real, R: Rng>(rng: &mut R) -> QubitChannel<T> {
    let k = rng.random_range(1..=4);
    random_channel(rng, k)
}

fn simplex_point<R: Rng>(rng: &mut R) -> [f64; 4] {
    // sorted uniform spacings give a uniform point on the simplex
    let mut cuts = [rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()];
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    [cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], 1.0 - cuts[2]]
}

/// A uniformly random Pauli mixture.
pub fn random_pauli_mixture<T: Real, R: Rng>(rng: &mut R) -> PauliMixture<T> {
    let [f, px, py, pz] = simplex_point(rng);
    PauliMixture::new(T::lit(f), T::lit(px), T::lit(py), T::lit(pz)).expect("simplex point")
}

/// Random nonnegative scores summing to one.
pub fn random_scores<T: Real, R: Rng>(rng: &mut R) -> SimilarityScores<T> {
    let [i, x, z, y] = simplex_point(rng);
    SimilarityScores::new(T::lit(i), T::lit(x), T::lit(z), T::lit(y))
}
