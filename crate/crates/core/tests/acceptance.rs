//! Acceptance run: one PASS/FAIL line per criterion, exit code 1 on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::{Complex, Matrix2, SymmetricEigen};
use qeccat::channel::{ChoiMatrix, QubitChannel as Channel};
use qeccat::reference::per_level_gate_counts;
use qeccat::sample::{random_channel_any_rank, random_pauli_mixture, random_scores, rng_from_env};
use qeccat::{
    accuracy_rate, build_protocol, classify, gate_totals, pauli_enumeration_oracle, pauli_level_map, plan,
    qubit_count, realized_fidelity_report, ExactLevelMap, Family, Pauli, PauliMixture, PauliString, ProtocolId,
    QubitChannel, SimilarityScores,
};

const FIDELITY_TOL: f64 = 1e-3;
const RATE_TOL: f64 = 1e-5;
const ORACLE_TOL: f64 = 1e-10;
const CPTP_TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-9;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn r() -> f64 {
    0.999f64.sqrt()
}

fn criterion_1() -> Outcome {
    use ProtocolId::*;
    let dep = gate_totals(&[C, B, B, A]).unwrap();
    let ad = gate_totals(&[D, A, A, B]).unwrap();
    let five = gate_totals(&[Five; 3]).unwrap();
    let got = [
        qubit_count(Family::ThreeQubit, 4),
        dep.decode,
        dep.encode,
        ad.decode,
        ad.encode,
        qubit_count(Family::FiveQubit, 3),
        five.decode,
        five.encode,
    ];
    let want = [81, 198, 104, 230, 136, 125, 682, 465];
    outcome(got == want, format!("Q4,Nd4,Ne4 / Nd4,Ne4 / Q3,Nd3,Ne3 = {got:?}"))
}

fn criterion_2() -> Outcome {
    use ProtocolId::*;
    let r4 = accuracy_rate(&[C, B, B, A], r()).unwrap();
    let r3 = accuracy_rate(&[Five; 3], r()).unwrap();
    let ok = (r4 - 0.985105).abs() <= RATE_TOL && (r3 - 0.945986).abs() <= RATE_TOL;
    outcome(ok, format!("R4={r4:.8} R3={r3:.8}"))
}

fn three_qubit_flow(ch: &QubitChannel, counts: &str, f4: f64, big_f4: f64) -> Outcome {
    let p = plan(ch, 4, Family::ThreeQubit).unwrap();
    let rep = realized_fidelity_report(&p, r()).unwrap();
    let seq = p.sequence();
    let got_counts = per_level_gate_counts(&seq);
    let last = rep.last();
    let ok = got_counts == counts
        && (last.fidelity - f4).abs() <= FIDELITY_TOL
        && (last.realized_fidelity - big_f4).abs() <= FIDELITY_TOL;
    let names: String = seq.iter().map(|id| id.to_string()).collect();
    outcome(
        ok,
        format!(
            "sequence {names} ({got_counts}) f4={:.6} F4={:.6}",
            last.fidelity, last.realized_fidelity
        ),
    )
}

fn criterion_3() -> Outcome {
    let ch = QubitChannel::depolarizing(0.92).unwrap();
    three_qubit_flow(&ch, "enc 2,4,4,2; dec 5,5,5,3", 0.960219, 0.945917)
}

fn criterion_4() -> Outcome {
    let ch = QubitChannel::amplitude_damping_for_fidelity(0.9).unwrap();
    let s_i = ch.fidelity();
    let mut o = three_qubit_flow(&ch, "enc 4,2,2,4; dec 7,3,3,5", 0.961634, 0.94731);
    o.ok &= (s_i - 0.9).abs() < 1e-12;
    o.detail = format!("sI={s_i:.12} {}", o.detail);
    o
}

fn criterion_5() -> Outcome {
    let cases = [
        (QubitChannel::depolarizing(0.92).unwrap(), 0.993991, 0.940301),
        (QubitChannel::amplitude_damping_for_fidelity(0.9).unwrap(), 0.975488, 0.922798),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (ch, f3, big_f3) in &cases {
        let p = plan(ch, 3, Family::FiveQubit).unwrap();
        let last = realized_fidelity_report(&p, r()).unwrap().last().clone();
        ok &= (last.fidelity - f3).abs() <= FIDELITY_TOL;
        ok &= (last.realized_fidelity - big_f3).abs() <= FIDELITY_TOL;
        detail.push(format!("f3={:.6} F3={:.6}", last.fidelity, last.realized_fidelity));
    }
    outcome(ok, detail.join("; "))
}

fn choi_gap(a: &ChoiMatrix<f64>, b: &ChoiMatrix<f64>) -> f64 {
    (a - b).iter().fold(0.0, |m, z| m.max(z.norm()))
}

fn mixture_gap(a: &PauliMixture, b: &PauliMixture) -> f64 {
    a.max_abs_diff(b)
}

fn criterion_6() -> Outcome {
    let mut rng = rng_from_env(0x5eed_0006);
    let three: Vec<ExactLevelMap<f64>> = ProtocolId::THREE_QUBIT.iter().map(|&id| ExactLevelMap::new(id)).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let m: PauliMixture = random_pauli_mixture(&mut rng);
        let ch = QubitChannel::from_mixture(&m).unwrap();
        for map in &three {
            let id = map.protocol();
            let closed = pauli_level_map(id, &m).unwrap();
            let enumerated = pauli_enumeration_oracle(id, &m);
            let choi = map.effective_choi(&ch);
            let exact = Channel::from_choi_matrix(&choi).unwrap().pauli_projection().mixture;
            let closed_choi = QubitChannel::from_mixture(&closed).unwrap().choi();
            worst = worst
                .max(mixture_gap(&closed, &enumerated))
                .max(mixture_gap(&closed, &exact))
                .max(mixture_gap(&enumerated, &exact))
                .max(choi_gap(&choi, &closed_choi));
        }
    }
    let five = ExactLevelMap::<f64>::new(ProtocolId::Five);
    for _ in 0..100 {
        let m: PauliMixture = random_pauli_mixture(&mut rng);
        let ch = QubitChannel::from_mixture(&m).unwrap();
        let enumerated = pauli_enumeration_oracle(ProtocolId::Five, &m);
        let choi = five.effective_choi(&ch);
        let exact = Channel::from_choi_matrix(&choi).unwrap().pauli_projection().mixture;
        let enum_choi = QubitChannel::from_mixture(&enumerated).unwrap().choi();
        worst = worst
            .max(mixture_gap(&enumerated, &exact))
            .max(choi_gap(&choi, &enum_choi));
    }
    outcome(worst <= ORACLE_TOL, format!("max componentwise gap {worst:.3e}"))
}

/// Hermiticity, trace preservation and positivity of a raw Choi matrix.
fn cptp_violation(c: &ChoiMatrix<f64>) -> f64 {
    let herm = (c - c.adjoint()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
    // partial trace over the output index (index = 2*input + output)
    let mut pt = Matrix2::<Complex<f64>>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            pt[(i, j)] = c[(2 * i, 2 * j)] + c[(2 * i + 1, 2 * j + 1)];
        }
    }
    let tp = (pt - Matrix2::identity()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let h = (c + c.adjoint()) * Complex::new(0.5, 0.0);
    let min_eig = SymmetricEigen::new(h).eigenvalues.min();
    herm.max(tp).max((-min_eig).max(0.0))
}

fn three_qubit_correctable(id: ProtocolId) -> Vec<PauliString> {
    const BIT_FLIP: [&str; 15] = [
        "XII", "IXI", "IIX", "ZZI", "ZIZ", "IZZ", "YZI", "YIZ", "IYZ", "ZYI", "ZIY", "IZY", "ZZX", "ZXZ", "XZZ",
    ];
    const PHASE_FLIP: [&str; 15] = [
        "ZII", "IZI", "IIZ", "XXI", "XIX", "IXX", "YXI", "YIX", "IYX", "XYI", "XIY", "IXY", "XXZ", "XZX", "ZXX",
    ];
    let parse = |list: &[&str]| -> Vec<PauliString> { list.iter().map(|s| s.parse().unwrap()).collect() };
    match id {
        ProtocolId::A => parse(&BIT_FLIP),
        ProtocolId::B => parse(&PHASE_FLIP),
        ProtocolId::C => parse(&BIT_FLIP).iter().map(|e| e.swap_letters(Pauli::X, Pauli::Y)).collect(),
        ProtocolId::D => parse(&PHASE_FLIP).iter().map(|e| e.swap_letters(Pauli::Z, Pauli::Y)).collect(),
        ProtocolId::Five => unreachable!(),
    }
}

/// Whether `s` satisfies the stated conditions of the rule selecting `id`.
fn rule_holds(id: ProtocolId, s: &SimilarityScores) -> bool {
    let (x, z, y) = (s.s_x, s.s_z, s.s_y);
    match id {
        ProtocolId::A => y < x && x >= z,
        ProtocolId::B => y < z && z > x,
        ProtocolId::C => y >= z && z >= x,
        ProtocolId::D => y >= x && x > z,
        ProtocolId::Five => false,
    }
}

fn criterion_7() -> Outcome {
    let mut rng = rng_from_env(0x5eed_0007);
    let maps: Vec<ExactLevelMap<f64>> = ProtocolId::THREE_QUBIT.iter().map(|&id| ExactLevelMap::new(id)).collect();
    let mut cptp: f64 = 0.0;
    let mut norm: f64 = 0.0;
    for k in 0..1000 {
        let ch: QubitChannel = random_channel_any_rank(&mut rng);
        norm = norm.max((ch.similarity().sum() - 1.0).abs());
        let map = &maps[k % maps.len()];
        let choi = map.effective_choi(&ch);
        cptp = cptp.max(cptp_violation(&choi));
        let eff = Channel::from_choi_matrix(&choi).unwrap();
        norm = norm.max((eff.similarity().sum() - 1.0).abs());
        cptp = cptp.max(eff.tp_deviation());
    }
    let five = ExactLevelMap::<f64>::new(ProtocolId::Five);
    for _ in 0..20 {
        let ch: QubitChannel = random_channel_any_rank(&mut rng);
        cptp = cptp.max(cptp_violation(&five.effective_choi(&ch)));
    }

    let mut correctable_ok = true;
    let mut listed = 0;
    for id in ProtocolId::THREE_QUBIT {
        let protocol = build_protocol(id);
        for e in three_qubit_correctable(id) {
            listed += 1;
            correctable_ok &= protocol.recover(&e).unwrap() == Pauli::I;
        }
    }

    let five_protocol = build_protocol(ProtocolId::Five);
    let mut syndromes = std::collections::BTreeSet::new();
    let mut perfect = true;
    for q in 0..5 {
        for p in Pauli::ERRORS {
            let e = PauliString::single(5, q, p);
            let s = five_protocol.code().syndrome_of(&e).unwrap();
            perfect &= !s.is_trivial() && five_protocol.recover(&e).unwrap() == Pauli::I;
            syndromes.insert(s);
        }
    }
    perfect &= syndromes.len() == 15;

    let mut total = true;
    for _ in 0..10_000 {
        let s: SimilarityScores = random_scores(&mut rng);
        let chosen = classify(&s);
        let earlier = ProtocolId::THREE_QUBIT
            .iter()
            .take_while(|&&id| id != chosen)
            .any(|&id| rule_holds(id, &s));
        total &= rule_holds(chosen, &s) && !earlier;
    }

    let ok = cptp <= CPTP_TOL && norm <= NORM_TOL && correctable_ok && listed == 60 && perfect && total;
    outcome(
        ok,
        format!(
            "cptp {cptp:.2e}, norm {norm:.2e}, correctable {listed} listed ok={correctable_ok}, \
             five-qubit perfect={perfect}, classifier total={total}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut points = 0;
    for k in 1..=20 {
        let p = 0.05 * k as f64 / 20.0;
        let m = PauliMixture::new(1.0 - 3.0 * p, p, p, p).unwrap();
        assert!(m.f >= 0.8);
        let a = pauli_level_map(ProtocolId::A, &m).unwrap();
        let b = pauli_level_map(ProtocolId::B, &m).unwrap();
        ok &= a.pz > a.px.max(a.py);
        ok &= b.px > b.py.max(b.pz);
        points += 1;
    }
    outcome(ok, format!("{points} grid points, p in (0, 0.05]"))
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "integer resources", Duration::from_millis(1), criterion_1),
        (2, "accuracy rates", Duration::from_millis(1), criterion_2),
        (3, "depolarizing flow", Duration::from_secs(1), criterion_3),
        (4, "amplitude-damping flow", Duration::from_secs(1), criterion_4),
        (5, "five-qubit comparison", Duration::from_secs(30), criterion_5),
        (6, "tri-oracle agreement", Duration::from_secs(60), criterion_6),
        (7, "invariant suites", Duration::from_secs(60), criterion_7),
        (8, "polarization direction", Duration::from_secs(1), criterion_8),
    ];
    let mut failures = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = o.ok && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {n} [{name}]: {} ({}; {:.3?} of {:?} budget{})",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed,
            budget,
            if in_time { "" } else { ", over budget" }
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
