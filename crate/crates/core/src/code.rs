//! The two three-qubit repetition codes, the five-qubit perfect code, and the
//! syndrome -> correction tables that define the five recovery protocols.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::scalar::{creal, Real};

/// Recovery protocols.
///
/// `A` and `C` use the bit-flip code `|000⟩, |111⟩` (stabilizer
/// `⟨Z₁Z₂, Z₂Z₃⟩`) and correct X or Y respectively; `B` and `D` use the
/// phase-flip code (stabilizer `⟨X₁X₂, X₂X₃⟩`) and correct Z or Y. `Five` is
/// the five-qubit perfect code with all 15 weight-one corrections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ProtocolId {
    A,
    B,
    C,
    D,
    #[serde(rename = "FIVE")]
    Five,
}

impl ProtocolId {
    pub const THREE_QUBIT: [ProtocolId; 4] = [ProtocolId::A, ProtocolId::B, ProtocolId::C, ProtocolId::D];
    pub const ALL: [ProtocolId; 5] = [
        ProtocolId::A,
        ProtocolId::B,
        ProtocolId::C,
        ProtocolId::D,
        ProtocolId::Five,
    ];

    pub fn family(self) -> Family {
        match self {
            ProtocolId::Five => Family::FiveQubit,
            _ => Family::ThreeQubit,
        }
    }

    pub fn physical_qubits(self) -> usize {
        self.family().block_size()
    }
}

impl fmt::Display for ProtocolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProtocolId::A => "A",
            ProtocolId::B => "B",
            ProtocolId::C => "C",
            ProtocolId::D => "D",
            ProtocolId::Five => "FIVE",
        })
    }
}

impl FromStr for ProtocolId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(ProtocolId::A),
            "B" => Ok(ProtocolId::B),
            "C" => Ok(ProtocolId::C),
            "D" => Ok(ProtocolId::D),
            "FIVE" | "5" => Ok(ProtocolId::Five),
            _ => Err(Error::UnknownProtocol(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    ThreeQubit,
    FiveQubit,
}

impl Family {
    /// Physical qubits per encoded block.
    pub fn block_size(self) -> usize {
        match self {
            Family::ThreeQubit => 3,
            Family::FiveQubit => 5,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::ThreeQubit => "three_qubit",
            Family::FiveQubit => "five_qubit",
        })
    }
}

/// Generator eigenvalue pattern; bit `j` is set when the error anticommutes
/// with generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syndrome(Vec<bool>);

impl Syndrome {
    pub fn new(bits: Vec<bool>) -> Self {
        Syndrome(bits)
    }

    pub fn trivial(len: usize) -> Self {
        Syndrome(vec![false; len])
    }

    /// Syndrome with the given bits, most significant first.
    pub fn from_index(index: usize, len: usize) -> Self {
        Syndrome((0..len).map(|j| (index >> (len - 1 - j)) & 1 == 1).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|b| !b)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    name: &'static str,
    generators: Vec<PauliString>,
    logical_x: PauliString,
    logical_z: PauliString,
}

impl StabilizerCode {
    fn from_strs(name: &'static str, generators: &[&str], logical_x: &str, logical_z: &str) -> Self {
        let parse = |s: &str| s.parse::<PauliString>().expect("valid built-in Pauli string");
        StabilizerCode {
            name,
            generators: generators.iter().map(|s| parse(s)).collect(),
            logical_x: parse(logical_x),
            logical_z: parse(logical_z),
        }
    }

    /// `|0_L⟩ = |000⟩`, `|1_L⟩ = |111⟩`.
    pub fn bit_flip() -> Self {
        StabilizerCode::from_strs("bit_flip", &["ZZI", "IZZ"], "XXX", "ZII")
    }

    /// Even/odd-parity superpositions, stabilized by `⟨X₁X₂, X₂X₃⟩`.
    pub fn phase_flip() -> Self {
        StabilizerCode::from_strs("phase_flip", &["XXI", "IXX"], "XII", "ZZZ")
    }

    /// `[[5,1,3]]` code generated by `XZZXI` and its cyclic shifts.
    pub fn five_qubit() -> Self {
        StabilizerCode::from_strs(
            "five_qubit",
            &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
            "XXXXX",
            "ZZZZZ",
        )
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn n(&self) -> usize {
        self.logical_x.len()
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn logical_x(&self) -> &PauliString {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliString {
        &self.logical_z
    }

    /// Bit `j` is 1 iff `e` anticommutes with generator `j`.
    pub fn syndrome_of(&self, e: &PauliString) -> Result<Syndrome> {
        if e.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: e.len(),
            });
        }
        Ok(Syndrome(
            self.generators.iter().map(|g| !g.commutes_with(e)).collect(),
        ))
    }

    /// Logical action of an operator with trivial syndrome, phase discarded.
    pub fn logical_class(&self, residual: &PauliString) -> Result<Pauli> {
        if !self.syndrome_of(residual)?.is_trivial() {
            return Err(Error::NontrivialSyndrome);
        }
        // X component flips Z_L, Z component flips X_L
        let x = !residual.commutes_with(&self.logical_z);
        let z = !residual.commutes_with(&self.logical_x);
        Ok(Pauli::from_bits(x, z))
    }

    /// Projector onto the joint eigenspace labelled by `s`.
    pub fn syndrome_projector<T: Real>(&self, s: &Syndrome) -> DMatrix<Complex<T>> {
        let dim = 1 << self.n();
        let half = creal(T::lit(0.5));
        let id = DMatrix::<Complex<T>>::identity(dim, dim);
        self.generators
            .iter()
            .zip(s.bits())
            .fold(id.clone(), |acc, (g, &bit)| {
                let gm = g.matrix::<T>();
                let factor = if bit { &id - gm } else { &id + gm };
                acc * factor * half
            })
    }

    /// `|0_L⟩`: the normalized projection of `|0…0⟩` onto the code space.
    pub fn logical_zero<T: Real>(&self) -> DVector<Complex<T>> {
        let p = self.syndrome_projector::<T>(&Syndrome::trivial(self.generators.len()));
        let v = p.column(0).into_owned();
        let norm = v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
        v.map(|z| z / creal(norm))
    }

    /// `|1_L⟩ = X_L |0_L⟩`.
    pub fn logical_one<T: Real>(&self) -> DVector<Complex<T>> {
        self.logical_x.matrix::<T>() * self.logical_zero::<T>()
    }

    /// `V = |0_L⟩⟨0| + |1_L⟩⟨1|`, a `2^n x 2` isometry.
    pub fn encode_isometry<T: Real>(&self) -> DMatrix<Complex<T>> {
        let z = self.logical_zero::<T>();
        let o = self.logical_one::<T>();
        DMatrix::from_columns(&[z, o])
    }

    /// Is `p` (up to phase) an element of the stabilizer group?
    pub fn in_stabilizer_group(&self, p: &PauliString) -> bool {
        let m = self.generators.len();
        (0..1usize << m).any(|mask| {
            let prod = self
                .generators
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .fold(PauliString::identity(self.n()), |acc, (_, g)| &acc * g);
            prod.letters() == p.letters()
        })
    }
}

/// Syndrome -> correction lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionTable {
    entries: BTreeMap<Syndrome, PauliString>,
}

impl CorrectionTable {
    /// Table keyed by the syndromes of the given corrections, plus the
    /// trivial syndrome -> identity. Earlier corrections win on collisions.
    pub fn from_corrections(code: &StabilizerCode, corrections: &[PauliString]) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(
            Syndrome::trivial(code.generators().len()),
            PauliString::identity(code.n()),
        );
        for c in corrections {
            let s = code.syndrome_of(c).expect("correction sized for code");
            entries.entry(s).or_insert_with(|| c.clone());
        }
        CorrectionTable { entries }
    }

    pub fn get(&self, s: &Syndrome) -> Option<&PauliString> {
        self.entries.get(s)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Syndrome, &PauliString)> {
        self.entries.iter()
    }
}

/// A code plus its correction table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Protocol {
    id: ProtocolId,
    code: StabilizerCode,
    table: CorrectionTable,
}

impl Protocol {
    pub fn id(&self) -> ProtocolId {
        self.id
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn table(&self) -> &CorrectionTable {
        &self.table
    }

    /// Correction for syndrome `s`; identity when the table has no entry.
    pub fn correction(&self, s: &Syndrome) -> PauliString {
        self.table
            .get(s)
            .cloned()
            .unwrap_or_else(|| PauliString::identity(self.code.n()))
    }

    /// Residual logical error after syndrome lookup and correction of `e`.
    pub fn recover(&self, e: &PauliString) -> Result<Pauli> {
        let s = self.code.syndrome_of(e)?;
        let residual = &self.correction(&s) * e;
        self.code.logical_class(&residual)
    }

    /// Every syndrome of the code, in index order.
    pub fn syndromes(&self) -> impl Iterator<Item = Syndrome> {
        let m = self.code.generators().len();
        (0..1usize << m).map(move |i| Syndrome::from_index(i, m))
    }
}

pub fn build_protocol(id: ProtocolId) -> Protocol {
    let (code, letters): (StabilizerCode, &[Pauli]) = match id {
        ProtocolId::A => (StabilizerCode::bit_flip(), &[Pauli::X]),
        ProtocolId::C => (StabilizerCode::bit_flip(), &[Pauli::Y]),
        ProtocolId::B => (StabilizerCode::phase_flip(), &[Pauli::Z]),
        ProtocolId::D => (StabilizerCode::phase_flip(), &[Pauli::Y]),
        ProtocolId::Five => (StabilizerCode::five_qubit(), &Pauli::ERRORS),
    };
    let n = code.n();
    let corrections: Vec<PauliString> = (0..n)
        .flat_map(|q| letters.iter().map(move |&p| PauliString::single(n, q, p)))
        .collect();
    let table = CorrectionTable::from_corrections(&code, &corrections);
    Protocol { id, code, table }
}
