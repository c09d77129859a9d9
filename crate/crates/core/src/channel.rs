//! Single-qubit noise channels in Kraus form, their Choi matrices, and the
//! Pauli-basis similarity scores that drive protocol selection.
//!
//! Choi convention: `C = Σ_ij |i⟩⟨j| ⊗ E(|i⟩⟨j|)`, input factor first, so
//! row/column index `2·input + output`. The identity channel has
//! `C = 2·|Φ⁺⟩⟨Φ⁺|` and `Tr C = 2` for every trace-preserving map.

use nalgebra::{Complex, ComplexField, DMatrix, Matrix2, Matrix4, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::Pauli;
use crate::scalar::{creal, Real};

pub type ComplexMatrix<T> = DMatrix<Complex<T>>;
/// A 2x2 single-qubit operator.
pub type Operator<T> = Matrix2<Complex<T>>;
pub type ChoiMatrix<T> = Matrix4<Complex<T>>;

/// Probabilities of I, X, Y, Z in a Pauli channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliMixture<T> {
    pub f: T,
    pub px: T,
    pub py: T,
    pub pz: T,
}

impl<T: Real> PauliMixture<T> {
    /// Validates and clamps tiny negative components to zero.
    pub fn new(f: T, px: T, py: T, pz: T) -> Result<Self> {
        let mut comps = [f, px, py, pz];
        for c in comps.iter_mut() {
            if *c < -T::clamp_tol() {
                return Err(Error::NegativeProbability(c.as_f64()));
            }
            if *c < T::zero() {
                *c = T::zero();
            }
        }
        let sum = comps[0] + comps[1] + comps[2] + comps[3];
        if (sum - T::one()).abs() > T::normalization_tol() {
            return Err(Error::NotNormalized(sum.as_f64()));
        }
        Ok(PauliMixture {
            f: comps[0],
            px: comps[1],
            py: comps[2],
            pz: comps[3],
        })
    }

    pub fn identity() -> Self {
        PauliMixture {
            f: T::one(),
            px: T::zero(),
            py: T::zero(),
            pz: T::zero(),
        }
    }

    /// Symmetric depolarizing mixture with identity weight `f0`.
    pub fn depolarizing(f0: T) -> Result<Self> {
        let p = (T::one() - f0) / T::lit(3.0);
        PauliMixture::new(f0, p, p, p)
    }

    pub fn get(&self, p: Pauli) -> T {
        match p {
            Pauli::I => self.f,
            Pauli::X => self.px,
            Pauli::Y => self.py,
            Pauli::Z => self.pz,
        }
    }

    /// Components in I, X, Y, Z order.
    pub fn to_array(&self) -> [T; 4] {
        [self.f, self.px, self.py, self.pz]
    }

    pub fn sum(&self) -> T {
        self.f + self.px + self.py + self.pz
    }

    pub fn swap_xy(&self) -> Self {
        PauliMixture {
            px: self.py,
            py: self.px,
            ..*self
        }
    }

    pub fn swap_yz(&self) -> Self {
        PauliMixture {
            py: self.pz,
            pz: self.py,
            ..*self
        }
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), |m, d| m.max(d))
    }
}

/// Overlap of a channel with I, X, Z, Y: `s_P = ¼ Σ_i |Tr[E_i P]|²`.
///
/// Slot order follows the classification rules (I, X, Z, Y), not the
/// I, X, Y, Z order of [`PauliMixture`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityScores<T> {
    #[serde(rename = "sI")]
    pub s_i: T,
    #[serde(rename = "sX")]
    pub s_x: T,
    #[serde(rename = "sZ")]
    pub s_z: T,
    #[serde(rename = "sY")]
    pub s_y: T,
}

impl<T: Real> SimilarityScores<T> {
    pub fn new(s_i: T, s_x: T, s_z: T, s_y: T) -> Self {
        SimilarityScores { s_i, s_x, s_z, s_y }
    }

    pub fn get(&self, p: Pauli) -> T {
        match p {
            Pauli::I => self.s_i,
            Pauli::X => self.s_x,
            Pauli::Y => self.s_y,
            Pauli::Z => self.s_z,
        }
    }

    pub fn sum(&self) -> T {
        self.s_i + self.s_x + self.s_z + self.s_y
    }
}

/// Result of twirling a channel onto the Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliProjection<T> {
    pub mixture: PauliMixture<T>,
    /// True when the channel already was a Pauli channel (Choi distance to
    /// the reconstructed Pauli channel below the structural tolerance).
    pub lossless: bool,
}

/// A completely positive trace-preserving map on one qubit, held as Kraus
/// operators. Construction checks `Σ E†E = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitChannel<T: Real> {
    kraus: Vec<Operator<T>>,
}

impl<T: Real> QubitChannel<T> {
    pub fn new(kraus: Vec<Operator<T>>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidChannel("no Kraus operators".into()));
        }
        let ch = QubitChannel { kraus };
        let dev = ch.tp_deviation();
        if !(dev <= T::structural_tol()) {
            return Err(Error::NotTracePreserving(dev.as_f64()));
        }
        Ok(ch)
    }

    pub fn identity() -> Self {
        QubitChannel {
            kraus: vec![Operator::identity()],
        }
    }

    /// `ρ ↦ fρ + px XρX + py YρY + pz ZρZ`. Zero-weight terms are omitted.
    pub fn general_pauli(f: T, px: T, py: T, pz: T) -> Result<Self> {
        for p in [f, px, py, pz] {
            if p < T::zero() {
                return Err(Error::NegativeProbability(p.as_f64()));
            }
        }
        let sum = f + px + py + pz;
        if (sum - T::one()).abs() > T::normalization_tol() {
            return Err(Error::NotNormalized(sum.as_f64()));
        }
        let kraus = Pauli::ALL
            .iter()
            .zip([f, px, py, pz])
            .filter(|(_, p)| *p > T::zero())
            .map(|(pauli, p)| pauli.matrix::<T>() * creal(p.sqrt()))
            .collect();
        QubitChannel::new(kraus)
    }

    pub fn from_mixture(m: &PauliMixture<T>) -> Result<Self> {
        QubitChannel::general_pauli(m.f, m.px, m.py, m.pz)
    }

    /// Symmetric depolarizing channel with identity weight `f0` and `(1-f0)/3`
    /// on each of X, Y, Z.
    pub fn depolarizing(f0: T) -> Result<Self> {
        if !(f0 >= T::zero() && f0 <= T::one()) {
            return Err(Error::ParameterOutOfRange {
                name: "f0",
                value: f0.as_f64(),
            });
        }
        let p = (T::one() - f0) / T::lit(3.0);
        QubitChannel::general_pauli(f0, p, p, p)
    }

    /// Kraus operators `diag(1, √(1-γ))` and `√γ |0⟩⟨1|`.
    pub fn amplitude_damping(gamma: T) -> Result<Self> {
        if !(gamma >= T::zero() && gamma <= T::one()) {
            return Err(Error::ParameterOutOfRange {
                name: "gamma",
                value: gamma.as_f64(),
            });
        }
        let (o, l) = (creal(T::zero()), creal(T::one()));
        let e0 = Operator::new(l, o, o, creal((T::one() - gamma).sqrt()));
        let e1 = Operator::new(o, creal(gamma.sqrt()), o, o);
        QubitChannel::new(vec![e0, e1])
    }

    /// Amplitude damping with γ chosen so the identity score equals `target`.
    pub fn amplitude_damping_for_fidelity(target: T) -> Result<Self> {
        QubitChannel::amplitude_damping(amplitude_damping_gamma(target)?)
    }

    pub fn kraus(&self) -> &[Operator<T>] {
        &self.kraus
    }

    pub fn kraus_count(&self) -> usize {
        self.kraus.len()
    }

    /// `max |Σ E†E − I|` over entries.
    pub fn tp_deviation(&self) -> T {
        let sum = self
            .kraus
            .iter()
            .fold(Operator::<T>::zeros(), |acc, k| acc + k.adjoint() * k);
        (sum - Operator::identity())
            .iter()
            .map(|z| z.modulus())
            .fold(T::zero(), |m, d| m.max(d))
    }

    /// Full CPTP check: trace preservation plus positivity of the Choi matrix.
    pub fn validate(&self) -> Result<()> {
        let dev = self.tp_deviation();
        if !(dev <= T::structural_tol()) {
            return Err(Error::NotTracePreserving(dev.as_f64()));
        }
        let min = min_eigenvalue(&self.choi());
        if min < -T::structural_tol() {
            return Err(Error::NotCompletelyPositive(min.as_f64()));
        }
        Ok(())
    }

    pub fn apply(&self, rho: &Operator<T>) -> Operator<T> {
        self.kraus
            .iter()
            .fold(Operator::zeros(), |acc, k| acc + k * rho * k.adjoint())
    }

    pub fn choi(&self) -> ChoiMatrix<T> {
        let mut c = ChoiMatrix::zeros();
        for k in &self.kraus {
            accumulate_choi(&mut c, k);
        }
        c
    }

    /// Rebuilds a channel from a 4x4 Choi matrix given as a dynamic matrix.
    pub fn from_choi(m: &ComplexMatrix<T>) -> Result<Self> {
        if m.nrows() != 4 || m.ncols() != 4 {
            return Err(Error::ShapeMismatch {
                expected: "4x4",
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        QubitChannel::from_choi_matrix(&ChoiMatrix::from_fn(|r, c| m[(r, c)]))
    }

    /// Minimal Kraus set from the eigendecomposition of a Choi matrix.
    pub fn from_choi_matrix(c: &ChoiMatrix<T>) -> Result<Self> {
        let herm = (c - c.adjoint())
            .iter()
            .map(|z| z.modulus())
            .fold(T::zero(), |m, d| m.max(d));
        if herm > T::structural_tol() {
            return Err(Error::NotHermitian(herm.as_f64()));
        }
        let mut pt_dev = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = creal(T::zero());
                for o in 0..2 {
                    s += c[(2 * i + o, 2 * j + o)];
                }
                let target = if i == j { T::one() } else { T::zero() };
                pt_dev = pt_dev.max((s - creal(target)).modulus());
            }
        }
        if pt_dev > T::normalization_tol() {
            return Err(Error::NotTracePreserving(pt_dev.as_f64()));
        }
        let kraus = kraus_from_choi(c)?;
        if kraus.is_empty() {
            return Err(Error::InvalidChannel("Choi matrix has no support".into()));
        }
        Ok(QubitChannel { kraus })
    }

    /// Equivalent channel with at most four Kraus operators, read off the
    /// Choi eigenvectors in decreasing eigenvalue order.
    pub fn canonicalize(&self) -> Result<Self> {
        let kraus = kraus_from_choi(&self.choi())?;
        Ok(QubitChannel { kraus })
    }

    pub fn similarity(&self) -> SimilarityScores<T> {
        let quarter = T::lit(0.25);
        let score = |p: Pauli| {
            let pm = p.matrix::<T>();
            self.kraus
                .iter()
                .map(|k| (k * pm).trace().norm_sqr())
                .fold(T::zero(), |a, b| a + b)
                * quarter
        };
        SimilarityScores::new(
            score(Pauli::I),
            score(Pauli::X),
            score(Pauli::Z),
            score(Pauli::Y),
        )
    }

    /// The identity score, i.e. the entanglement fidelity.
    pub fn fidelity(&self) -> T {
        self.similarity().s_i
    }

    /// Diagonal of the process matrix in the Pauli basis.
    pub fn pauli_projection(&self) -> PauliProjection<T> {
        let s = self.similarity();
        let total = s.sum();
        let mixture = PauliMixture {
            f: s.s_i / total,
            px: s.s_x / total,
            py: s.s_y / total,
            pz: s.s_z / total,
        };
        let lossless = QubitChannel::from_mixture(&mixture)
            .map(|pc| self.choi_distance(&pc) < T::structural_tol())
            .unwrap_or(false);
        PauliProjection { mixture, lossless }
    }

    /// Entrywise max distance between Choi matrices.
    pub fn choi_distance(&self, other: &QubitChannel<T>) -> T {
        choi_distance(&self.choi(), &other.choi())
    }
}

/// Solves `(1 + √(1−γ))²/4 = target` for γ by bisection.
pub fn amplitude_damping_gamma<T: Real>(target: T) -> Result<T> {
    let quarter = T::lit(0.25);
    if target < quarter {
        return Err(Error::TargetUnreachable(target.as_f64()));
    }
    if !(target <= T::one()) {
        return Err(Error::ParameterOutOfRange {
            name: "target_fidelity",
            value: target.as_f64(),
        });
    }
    let score = |g: T| {
        let a = T::one() + (T::one() - g).sqrt();
        a * a * quarter
    };
    let (mut lo, mut hi) = (T::zero(), T::one());
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        // score is decreasing in γ
        if score(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let gamma = if (score(lo) - target).abs() <= (score(hi) - target).abs() {
        lo
    } else {
        hi
    };
    Ok(gamma)
}

pub(crate) fn accumulate_choi<T: Real>(c: &mut ChoiMatrix<T>, k: &Operator<T>) {
    // vec index 2·input + output
    let v = [k[(0, 0)], k[(1, 0)], k[(0, 1)], k[(1, 1)]];
    for r in 0..4 {
        for s in 0..4 {
            c[(r, s)] += v[r] * v[s].conj();
        }
    }
}

pub(crate) fn choi_distance<T: Real>(a: &ChoiMatrix<T>, b: &ChoiMatrix<T>) -> T {
    (a - b)
        .iter()
        .map(|z| z.modulus())
        .fold(T::zero(), |m, d| m.max(d))
}

fn min_eigenvalue<T: Real>(c: &ChoiMatrix<T>) -> T {
    let herm = (c + c.adjoint()) * creal(T::lit(0.5));
    let ev = SymmetricEigen::new(herm).eigenvalues;
    ev.iter().skip(1).fold(ev[0], |m, &e| m.min(e))
}

fn kraus_from_choi<T: Real>(c: &ChoiMatrix<T>) -> Result<Vec<Operator<T>>> {
    let herm = (c + c.adjoint()) * creal(T::lit(0.5));
    let eig = SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let min = eig.eigenvalues[order[3]];
    if min < -T::structural_tol() {
        return Err(Error::NotCompletelyPositive(min.as_f64()));
    }
    let mut kraus = Vec::with_capacity(4);
    for idx in order {
        let lambda = eig.eigenvalues[idx];
        if lambda <= T::eigen_cutoff() {
            continue;
        }
        let u = eig.eigenvectors.column(idx);
        // fix the global phase: largest component real and positive
        let mut pivot = 0;
        for r in 1..4 {
            if u[r].modulus() > u[pivot].modulus() + T::lit(1e-12) {
                pivot = r;
            }
        }
        let phase = u[pivot].conj() / creal(u[pivot].modulus());
        let scale = phase * creal(lambda.sqrt());
        kraus.push(Operator::new(
            u[0] * scale,
            u[2] * scale,
            u[1] * scale,
            u[3] * scale,
        ));
    }
    Ok(kraus)
}
