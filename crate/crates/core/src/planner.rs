//! Greedy per-level protocol selection and channel flow through the levels.

use serde::Serialize;

use crate::channel::{QubitChannel, SimilarityScores};
use crate::code::{Family, ProtocolId};
use crate::error::{Error, Result};
use crate::level_map::ExactLevelMap;
use crate::scalar::Real;

/// Picks the three-qubit protocol for a channel from its similarity scores.
///
/// Rules are tried in order and the first match wins:
/// 1. `sY < sX ≥ sZ` -> A
/// 2. `sY < sZ > sX` -> B
/// 3. `sY ≥ sZ ≥ sX` -> C
/// 4. `sY ≥ sX > sZ` -> D
///
/// Scores are snapped to a grid of [`Real::tie_resolution`] first so that
/// exact ties (a symmetric depolarizing channel, the X/Y balance of
/// amplitude damping) are not decided by rounding noise. `sI` is ignored.
pub fn classify<T: Real>(s: &SimilarityScores<T>) -> ProtocolId {
    let snap = |v: T| (v / T::tie_resolution()).round();
    let (x, z, y) = (snap(s.s_x), snap(s.s_z), snap(s.s_y));
    if y < x && x >= z {
        ProtocolId::A
    } else if y < z && z > x {
        ProtocolId::B
    } else if y >= z && z >= x {
        ProtocolId::C
    } else {
        // the remaining region is y >= x > z
        debug_assert!(y >= x && x > z);
        ProtocolId::D
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelRecord<T: Real> {
    /// 1 is the innermost level, acting directly on physical qubits.
    pub level: usize,
    pub scores_before: SimilarityScores<T>,
    pub protocol: ProtocolId,
    pub effective_after: QubitChannel<T>,
    pub fidelity_after: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcatPlan<T: Real> {
    pub initial: QubitChannel<T>,
    pub family: Family,
    pub records: Vec<LevelRecord<T>>,
}

impl<T: Real> ConcatPlan<T> {
    pub fn levels(&self) -> usize {
        self.records.len()
    }

    pub fn sequence(&self) -> Vec<ProtocolId> {
        self.records.iter().map(|r| r.protocol).collect()
    }

    pub fn initial_fidelity(&self) -> T {
        self.initial.fidelity()
    }

    /// Fidelity after the last level, or of the bare channel for an empty plan.
    pub fn final_fidelity(&self) -> T {
        self.records
            .last()
            .map_or_else(|| self.initial_fidelity(), |r| r.fidelity_after)
    }

    pub fn summary(&self) -> PlanSummary<T> {
        PlanSummary {
            family: self.family,
            initial_fidelity: self.initial_fidelity(),
            sequence: self.sequence(),
            levels: self
                .records
                .iter()
                .map(|r| LevelSummary {
                    level: r.level,
                    protocol: r.protocol,
                    scores: r.scores_before,
                    fidelity: r.fidelity_after,
                })
                .collect(),
        }
    }
}

/// Serializable view of a plan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanSummary<T> {
    pub family: Family,
    pub initial_fidelity: T,
    pub sequence: Vec<ProtocolId>,
    pub levels: Vec<LevelSummary<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelSummary<T> {
    pub level: usize,
    pub protocol: ProtocolId,
    /// Scores of the channel this level's protocol was chosen for.
    pub scores: SimilarityScores<T>,
    /// Identity score of the channel after this level.
    pub fidelity: T,
}

/// Concatenates `levels` rounds of error correction on `ch`.
///
/// The three-qubit family classifies the current effective channel before
/// every level; the five-qubit family applies its code unconditionally.
pub fn plan<T: Real>(ch: &QubitChannel<T>, levels: usize, family: Family) -> Result<ConcatPlan<T>> {
    if levels == 0 {
        return Err(Error::ZeroLevels);
    }
    ch.validate()
        .map_err(|e| Error::InvalidChannel(e.to_string()))?;
    let maps: Vec<ExactLevelMap<T>> = match family {
        Family::ThreeQubit => ProtocolId::THREE_QUBIT.iter().map(|&id| ExactLevelMap::new(id)).collect(),
        Family::FiveQubit => vec![ExactLevelMap::new(ProtocolId::Five)],
    };
    run(ch, family, levels, |scores| match family {
        Family::ThreeQubit => {
            let id = classify(scores);
            maps.iter().find(|m| m.protocol() == id).expect("map per protocol")
        }
        Family::FiveQubit => &maps[0],
    })
}

/// Applies a fixed protocol sequence, bypassing the classifier.
pub fn plan_with_sequence<T: Real>(ch: &QubitChannel<T>, sequence: &[ProtocolId]) -> Result<ConcatPlan<T>> {
    let family = sequence_family(sequence)?;
    ch.validate()
        .map_err(|e| Error::InvalidChannel(e.to_string()))?;
    let maps: Vec<ExactLevelMap<T>> = sequence.iter().map(|&id| ExactLevelMap::new(id)).collect();
    let mut next = maps.iter();
    run(ch, family, sequence.len(), |_| next.next().expect("one map per level"))
}

/// Common family of a nonempty protocol sequence.
pub fn sequence_family(sequence: &[ProtocolId]) -> Result<Family> {
    let first = sequence.first().ok_or(Error::EmptySequence)?.family();
    if sequence.iter().any(|id| id.family() != first) {
        return Err(Error::MixedFamilies);
    }
    Ok(first)
}

fn run<'a, T: Real>(
    ch: &QubitChannel<T>,
    family: Family,
    levels: usize,
    mut choose: impl FnMut(&SimilarityScores<T>) -> &'a ExactLevelMap<T>,
) -> Result<ConcatPlan<T>> {
    let mut current = ch.clone();
    let mut records = Vec::with_capacity(levels);
    for level in 1..=levels {
        let scores_before = current.similarity();
        let map = choose(&scores_before);
        let result = map.apply(&current)?;
        let fidelity_after = result.effective.fidelity();
        records.push(LevelRecord {
            level,
            scores_before,
            protocol: map.protocol(),
            effective_after: result.effective.clone(),
            fidelity_after,
        });
        current = result.effective;
    }
    Ok(ConcatPlan {
        initial: ch.clone(),
        family,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::PauliMixture;
    use crate::level_map::pauli_level_map;
    use approx::assert_abs_diff_eq;

    fn scores(i: f64, x: f64, z: f64, y: f64) -> SimilarityScores<f64> {
        SimilarityScores::new(i, x, z, y)
    }

    #[test]
    fn rule_examples() {
        assert_eq!(classify(&scores(0.9, 0.06, 0.03, 0.01)), ProtocolId::A);
        assert_eq!(classify(&scores(0.9, 0.01, 0.06, 0.03)), ProtocolId::B);
        assert_eq!(classify(&scores(0.9, 0.01, 0.03, 0.06)), ProtocolId::C);
        assert_eq!(classify(&scores(0.9, 0.03, 0.01, 0.06)), ProtocolId::D);
    }

    #[test]
    fn tie_cases() {
        let p = 0.08 / 3.0;
        assert_eq!(classify(&scores(0.92, p, p, p)), ProtocolId::C);
        assert_eq!(classify(&scores(1.0, 0.0, 0.0, 0.0)), ProtocolId::C);
        assert_eq!(classify(&scores(0.9, 0.048683, 0.002634, 0.048683)), ProtocolId::D);
        // sX = sZ > sY: rule 1
        assert_eq!(classify(&scores(0.8, 0.08, 0.08, 0.04)), ProtocolId::A);
        // a one-ulp wobble in sY does not flip the choice
        let s = scores(0.9, 0.048683, 0.002634, 0.048683 * (1.0 - 1e-15));
        assert_eq!(classify(&s), ProtocolId::D);
    }

    #[test]
    fn depolarizing_sequence() {
        let ch = QubitChannel::depolarizing(0.92).unwrap();
        let p = plan(&ch, 4, Family::ThreeQubit).unwrap();
        assert_eq!(
            p.sequence(),
            vec![ProtocolId::C, ProtocolId::B, ProtocolId::B, ProtocolId::A]
        );
        assert_abs_diff_eq!(p.final_fidelity(), 0.960219, epsilon = 1e-6);
    }

    #[test]
    fn amplitude_damping_sequence() {
        let ch = QubitChannel::amplitude_damping_for_fidelity(0.9).unwrap();
        let p = plan(&ch, 4, Family::ThreeQubit).unwrap();
        assert_eq!(
            p.sequence(),
            vec![ProtocolId::D, ProtocolId::A, ProtocolId::A, ProtocolId::B]
        );
        assert_abs_diff_eq!(p.final_fidelity(), 0.961634, epsilon = 1e-6);
    }

    #[test]
    fn identity_channel_plan() {
        let p = plan(&QubitChannel::<f64>::identity(), 3, Family::ThreeQubit).unwrap();
        assert_eq!(p.sequence(), vec![ProtocolId::C; 3]);
        for r in &p.records {
            assert_abs_diff_eq!(r.fidelity_after, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn records_are_continuous() {
        let ch = QubitChannel::amplitude_damping(0.3).unwrap();
        let p = plan(&ch, 3, Family::ThreeQubit).unwrap();
        for (i, r) in p.records.iter().enumerate() {
            assert_eq!(r.level, i + 1);
            assert_abs_diff_eq!(r.fidelity_after, r.effective_after.similarity().s_i, epsilon = 1e-10);
        }
        for w in p.records.windows(2) {
            assert_eq!(w[1].scores_before, w[0].effective_after.similarity());
        }
    }

    #[test]
    fn fixed_sequences() {
        let ch = QubitChannel::general_pauli(0.9, 0.1, 0.0, 0.0).unwrap();
        let p = plan_with_sequence(&ch, &[ProtocolId::A]).unwrap();
        assert_abs_diff_eq!(p.final_fidelity(), 0.972, epsilon = 1e-12);

        let p = plan_with_sequence(&ch, &[ProtocolId::A, ProtocolId::A]).unwrap();
        let once = pauli_level_map(ProtocolId::A, &PauliMixture::new(0.9, 0.1, 0.0, 0.0).unwrap()).unwrap();
        let twice = pauli_level_map(ProtocolId::A, &once).unwrap();
        assert_abs_diff_eq!(p.final_fidelity(), twice.f, epsilon = 1e-12);
        assert!(p.records[1].fidelity_after > p.records[0].fidelity_after);
    }

    #[test]
    fn sequence_errors() {
        let ch = QubitChannel::<f64>::identity();
        assert_eq!(
            plan_with_sequence(&ch, &[ProtocolId::A, ProtocolId::Five]),
            Err(Error::MixedFamilies)
        );
        assert_eq!(plan_with_sequence(&ch, &[]), Err(Error::EmptySequence));
        assert_eq!(plan(&ch, 0, Family::ThreeQubit), Err(Error::ZeroLevels));
    }

    #[test]
    fn five_qubit_never_classifies() {
        let ch = QubitChannel::depolarizing(0.95).unwrap();
        let p = plan(&ch, 2, Family::FiveQubit).unwrap();
        assert_eq!(p.sequence(), vec![ProtocolId::Five; 2]);
        assert_eq!(p.family, Family::FiveQubit);
    }

    #[test]
    fn summary_serializes_deterministically() {
        let ch = QubitChannel::amplitude_damping_for_fidelity(0.9).unwrap();
        let a = serde_json::to_string(&plan(&ch, 2, Family::ThreeQubit).unwrap().summary()).unwrap();
        let b = serde_json::to_string(&plan(&ch, 2, Family::ThreeQubit).unwrap().summary()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"protocol\":\"D\""));
        assert!(a.contains("\"sI\""));
    }
}
