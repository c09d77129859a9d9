//! Qubit and gate accounting, the multiplicative gate-accuracy model, and the
//! realized fidelity of a concatenation plan.
//!
//! Gate counts per module are fixed data; the circuits they come from are
//! not modelled. The three-qubit phase-flip encoder is counted as 4 gates,
//! one below the usual CNOT+Hadamard construction.

use serde::Serialize;

use crate::code::{Family, ProtocolId};
use crate::error::{Error, Result};
use crate::planner::{sequence_family, ConcatPlan};
use crate::scalar::Real;

/// Gates in one encoding and one decoding module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub encode: u64,
    pub decode: u64,
}

impl ProtocolId {
    pub fn gate_counts(self) -> GateCounts {
        let (encode, decode) = match self {
            ProtocolId::A => (2, 3),
            ProtocolId::B => (4, 5),
            ProtocolId::C => (2, 5),
            ProtocolId::D => (4, 7),
            ProtocolId::Five => (15, 22),
        };
        GateCounts { encode, decode }
    }
}

/// Physical qubits for `level` levels of concatenation: `3^l` or `5^l`.
pub fn qubit_count(family: Family, level: u32) -> u64 {
    (family.block_size() as u64).pow(level)
}

/// Total encode/decode gates over all modules of a concatenated protocol.
///
/// Level `k` (1 = innermost) has `b^(l-k)` modules, `b` the block size.
pub fn gate_totals(sequence: &[ProtocolId]) -> Result<GateCounts> {
    let base = sequence_family(sequence)?.block_size() as u64;
    let l = sequence.len() as u32;
    let mut totals = GateCounts { encode: 0, decode: 0 };
    for (k, id) in (1..=l).zip(sequence) {
        let modules = base.pow(l - k);
        let g = id.gate_counts();
        totals.encode += g.encode * modules;
        totals.decode += g.decode * modules;
    }
    Ok(totals)
}

/// Exponent of the accuracy rate: gates along one module path, i.e. the sum
/// of per-level encode and decode counts (not the module totals).
pub fn accuracy_exponent(sequence: &[ProtocolId]) -> Result<u64> {
    sequence_family(sequence)?;
    Ok(sequence
        .iter()
        .map(|id| {
            let g = id.gate_counts();
            g.encode + g.decode
        })
        .sum())
}

/// `R = r^exponent` for per-gate accuracy `r` in (0, 1].
pub fn accuracy_rate<T: Real>(sequence: &[ProtocolId], r: T) -> Result<T> {
    check_gate_accuracy(r)?;
    let exp = accuracy_exponent(sequence)?;
    Ok(r.powi(exp as i32))
}

fn check_gate_accuracy<T: Real>(r: T) -> Result<()> {
    if !(r > T::zero() && r <= T::one()) {
        return Err(Error::ParameterOutOfRange {
            name: "gate_accuracy",
            value: r.as_f64(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelResources<T> {
    pub level: usize,
    pub protocol: ProtocolId,
    #[serde(rename = "Q")]
    pub qubits: u64,
    #[serde(rename = "N_encode")]
    pub n_encode: u64,
    #[serde(rename = "N_decode")]
    pub n_decode: u64,
    #[serde(rename = "R")]
    pub accuracy_rate: T,
    #[serde(rename = "f")]
    pub fidelity: T,
    #[serde(rename = "F")]
    pub realized_fidelity: T,
    pub fault_tolerant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceReport<T> {
    pub family: Family,
    pub gate_accuracy: T,
    /// Realized fidelity of the bare qubit (no gates, so equal to its fidelity).
    pub initial_fidelity: T,
    pub levels: Vec<LevelResources<T>>,
    /// Level with the largest realized fidelity (ties go to the lower level).
    pub best_level: usize,
}

impl<T: Real> ResourceReport<T> {
    pub fn last(&self) -> &LevelResources<T> {
        self.levels.last().expect("report has at least one level")
    }

    pub fn best(&self) -> &LevelResources<T> {
        &self.levels[self.best_level - 1]
    }

    /// CSV with header `level,protocol,Q,N_encode,N_decode,R,f,F,fault_tolerant`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.levels {
            w.serialize(row).map_err(|e| Error::Serialization(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
    }
}

/// Per-level resources, accuracy rate and realized fidelity `F_l = R_l·f_l`
/// for a plan; level `l` is fault tolerant when `F_l > F_{l-1}`.
pub fn realized_fidelity_report<T: Real>(plan: &ConcatPlan<T>, r: T) -> Result<ResourceReport<T>> {
    if plan.records.is_empty() {
        return Err(Error::EmptyPlan);
    }
    check_gate_accuracy(r)?;
    let sequence = plan.sequence();
    let initial_fidelity = plan.initial_fidelity();
    let mut previous = initial_fidelity;
    let mut levels = Vec::with_capacity(sequence.len());
    for (i, record) in plan.records.iter().enumerate() {
        let prefix = &sequence[..=i];
        let totals = gate_totals(prefix)?;
        let rate = accuracy_rate(prefix, r)?;
        let realized = rate * record.fidelity_after;
        levels.push(LevelResources {
            level: record.level,
            protocol: record.protocol,
            qubits: qubit_count(plan.family, record.level as u32),
            n_encode: totals.encode,
            n_decode: totals.decode,
            accuracy_rate: rate,
            fidelity: record.fidelity_after,
            realized_fidelity: realized,
            fault_tolerant: realized > previous,
        });
        previous = realized;
    }
    let mut best_level = 1;
    for l in &levels {
        if l.realized_fidelity > levels[best_level - 1].realized_fidelity {
            best_level = l.level;
        }
    }
    Ok(ResourceReport {
        family: plan.family,
        gate_accuracy: r,
        initial_fidelity,
        levels,
        best_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::QubitChannel;
    use crate::planner::plan;
    use approx::assert_abs_diff_eq;
    use ProtocolId::*;

    #[test]
    fn qubits() {
        assert_eq!(qubit_count(Family::ThreeQubit, 0), 1);
        assert_eq!(qubit_count(Family::ThreeQubit, 4), 81);
        assert_eq!(qubit_count(Family::FiveQubit, 3), 125);
    }

    #[test]
    fn totals() {
        assert_eq!(gate_totals(&[C, B, B, A]).unwrap(), GateCounts { encode: 104, decode: 198 });
        assert_eq!(gate_totals(&[D, A, A, B]).unwrap(), GateCounts { encode: 136, decode: 230 });
        assert_eq!(gate_totals(&[Five; 3]).unwrap(), GateCounts { encode: 465, decode: 682 });
        assert_eq!(gate_totals(&[A, Five]), Err(Error::MixedFamilies));
        assert_eq!(gate_totals(&[]), Err(Error::EmptySequence));
    }

    #[test]
    fn rates() {
        let r = 0.999f64.sqrt();
        assert_eq!(accuracy_exponent(&[C, B, B, A]).unwrap(), 30);
        assert_eq!(accuracy_exponent(&[Five; 3]).unwrap(), 111);
        assert_abs_diff_eq!(accuracy_rate(&[C, B, B, A], r).unwrap(), 0.985105, epsilon = 1e-6);
        assert_abs_diff_eq!(accuracy_rate(&[Five; 3], r).unwrap(), 0.945986, epsilon = 1e-6);
        assert_eq!(accuracy_rate(&[D, A], 1.0).unwrap(), 1.0);
        assert!(accuracy_rate(&[A], 0.0).is_err());
        assert!(accuracy_rate(&[A], 1.01).is_err());
    }

    #[test]
    fn report_for_amplitude_damping() {
        let ch = QubitChannel::amplitude_damping_for_fidelity(0.9).unwrap();
        let p = plan(&ch, 4, Family::ThreeQubit).unwrap();
        let rep = realized_fidelity_report(&p, 0.999f64.sqrt()).unwrap();
        let last = rep.last();
        assert_eq!(last.qubits, 81);
        assert_eq!((last.n_encode, last.n_decode), (136, 230));
        assert_abs_diff_eq!(last.realized_fidelity, 0.94731, epsilon = 1e-5);
        assert_eq!(rep.best_level, 4);
        // the first level lowers the fidelity
        assert!(!rep.levels[0].fault_tolerant);
    }

    #[test]
    fn ideal_gates_leave_fidelity_unchanged() {
        let ch = QubitChannel::depolarizing(0.95).unwrap();
        let p = plan(&ch, 3, Family::ThreeQubit).unwrap();
        let rep = realized_fidelity_report(&p, 1.0).unwrap();
        for l in &rep.levels {
            assert_eq!(l.accuracy_rate, 1.0);
            assert_eq!(l.realized_fidelity, l.fidelity);
        }
    }

    #[test]
    fn empty_plan_is_rejected() {
        let ch = QubitChannel::<f64>::identity();
        let mut p = plan(&ch, 1, Family::ThreeQubit).unwrap();
        p.records.clear();
        assert_eq!(realized_fidelity_report(&p, 1.0), Err(Error::EmptyPlan));
    }

    #[test]
    fn csv_header_and_rows() {
        let ch = QubitChannel::depolarizing(0.92).unwrap();
        let p = plan(&ch, 2, Family::ThreeQubit).unwrap();
        let csv = realized_fidelity_report(&p, 1.0).unwrap().to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "level,protocol,Q,N_encode,N_decode,R,f,F,fault_tolerant");
        assert!(lines.next().unwrap().starts_with("1,C,3,2,5,1.0,"));
        assert_eq!(lines.count(), 1);
    }
}
