//! Single-qubit Paulis and phase-tracked Pauli strings.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use nalgebra::{Complex, DMatrix, Matrix2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cplx, creal, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    pub const ERRORS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    /// Symplectic (x, z) bits; Y = (1, 1).
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn commutes_with(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }

    /// Product `self * other` as a phase and a letter, e.g. `X * Y = iZ`.
    pub fn product(self, other: Pauli) -> (Phase, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (Phase::ONE, p),
            (a, b) if a == b => (Phase::ONE, I),
            (X, Y) => (Phase::I, Z),
            (Y, Z) => (Phase::I, X),
            (Z, X) => (Phase::I, Y),
            (Y, X) => (Phase::MINUS_I, Z),
            (Z, Y) => (Phase::MINUS_I, X),
            (X, Z) => (Phase::MINUS_I, Y),
            _ => unreachable!(),
        }
    }

    pub fn matrix<T: Real>(self) -> Matrix2<Complex<T>> {
        let (o, l) = (T::zero(), T::one());
        match self {
            Pauli::I => Matrix2::new(creal(l), creal(o), creal(o), creal(l)),
            Pauli::X => Matrix2::new(creal(o), creal(l), creal(l), creal(o)),
            Pauli::Y => Matrix2::new(creal(o), cplx(o, -l), cplx(o, l), creal(o)),
            Pauli::Z => Matrix2::new(creal(l), creal(o), creal(o), creal(-l)),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A power of `i`: one of +1, +i, -1, -i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn power_of_i(self) -> u8 {
        self.0
    }

    pub fn value<T: Real>(self) -> Complex<T> {
        let (o, l) = (T::zero(), T::one());
        match self.0 {
            0 => cplx(l, o),
            1 => cplx(o, l),
            2 => cplx(-l, o),
            _ => cplx(o, -l),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

/// An n-qubit Pauli operator with an exact phase. Qubit 1 is the leftmost
/// letter and the most significant bit of the computational-basis index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    phase: Phase,
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(phase: Phase, letters: Vec<Pauli>) -> Self {
        PauliString { phase, letters }
    }

    pub fn identity(n: usize) -> Self {
        PauliString::new(Phase::ONE, vec![Pauli::I; n])
    }

    /// `p` on qubit `qubit` (0-based), identity elsewhere.
    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut letters = vec![Pauli::I; n];
        letters[qubit] = p;
        PauliString::new(Phase::ONE, letters)
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        PauliString::new(Phase::ONE, letters.to_vec())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Same letters with phase +1.
    pub fn unsigned(&self) -> Self {
        PauliString::new(Phase::ONE, self.letters.clone())
    }

    /// Replace every occurrence of letter `a` by `b` and vice versa.
    pub fn swap_letters(&self, a: Pauli, b: Pauli) -> Self {
        let letters = self
            .letters
            .iter()
            .map(|&p| match p {
                p if p == a => b,
                p if p == b => a,
                p => p,
            })
            .collect();
        PauliString::new(self.phase, letters)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        assert_eq!(self.len(), other.len(), "Pauli strings of unequal length");
        let anti = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(a, b)| !a.commutes_with(**b))
            .count();
        anti % 2 == 0
    }

    /// Dense `2^n x 2^n` matrix including the phase.
    pub fn matrix<T: Real>(&self) -> DMatrix<Complex<T>> {
        let mut m = DMatrix::from_element(1, 1, self.phase.value::<T>());
        for p in &self.letters {
            let pm = p.matrix::<T>();
            m = m.kronecker(&pm);
        }
        m
    }
}

impl Mul for &PauliString {
    type Output = PauliString;
    fn mul(self, rhs: &PauliString) -> PauliString {
        assert_eq!(self.len(), rhs.len(), "Pauli strings of unequal length");
        let mut phase = self.phase * rhs.phase;
        let letters = self
            .letters
            .iter()
            .zip(&rhs.letters)
            .map(|(&a, &b)| {
                let (ph, p) = a.product(b);
                phase = phase * ph;
                p
            })
            .collect();
        PauliString::new(phase, letters)
    }
}

impl Mul for PauliString {
    type Output = PauliString;
    fn mul(self, rhs: PauliString) -> PauliString {
        &self * &rhs
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts an optional phase prefix (`+`, `-`, `i`, `+i`, `-i`) followed
    /// by letters from `IXYZ`, e.g. `"XZZXI"` or `"-iXY"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPauliString(s.to_string());
        let (phase, rest) = if let Some(r) = s.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = s.strip_prefix("+i") {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::ONE, r)
        } else {
            (Phase::ONE, s)
        };
        if rest.is_empty() {
            return Err(bad());
        }
        let letters = rest
            .chars()
            .map(|c| Pauli::from_letter(c).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::new(phase, letters))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != Phase::ONE {
            write!(f, "{}", self.phase)?;
        }
        for p in &self.letters {
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}
