//! Serializable command outputs and their CSV / pretty renderings.

use serde::Serialize;

use qeccat::reference::{format_significant, per_level_gate_counts, CheckValue, ReferenceCheck};
use qeccat::{ConcatPlan, Family, LevelResources, NoiseSpec, PauliMixture, ProtocolId, ResourceReport, SimilarityScores};

#[derive(Debug, Serialize)]
pub struct NoiseInfo {
    pub spec: NoiseSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub noise: NoiseInfo,
    pub kraus_operators: usize,
    pub canonical_kraus_rank: usize,
    pub tp_deviation: f64,
    pub scores: SimilarityScores,
    pub pauli_projection: PauliMixture,
    pub lossless_pauli: bool,
    pub chosen_protocol: ProtocolId,
}

#[derive(Debug, Serialize)]
pub struct LevelRow {
    #[serde(flatten)]
    pub resources: LevelResources,
    pub scores_before: SimilarityScores,
}

#[derive(Debug, Serialize)]
pub struct FamilyRun {
    pub family: Family,
    pub sequence: Vec<ProtocolId>,
    pub per_level_gate_counts: String,
    pub initial_fidelity: f64,
    pub best_level: usize,
    pub levels: Vec<LevelRow>,
    #[serde(skip)]
    csv: String,
}

impl FamilyRun {
    pub fn new(plan: &ConcatPlan, report: &ResourceReport) -> qeccat::Result<Self> {
        let sequence = plan.sequence();
        Ok(FamilyRun {
            family: plan.family,
            per_level_gate_counts: per_level_gate_counts(&sequence),
            sequence,
            initial_fidelity: report.initial_fidelity,
            best_level: report.best_level,
            levels: report
                .levels
                .iter()
                .zip(&plan.records)
                .map(|(l, r)| LevelRow {
                    resources: l.clone(),
                    scores_before: r.scores_before,
                })
                .collect(),
            csv: report.to_csv()?,
        })
    }

    fn best(&self) -> &LevelResources {
        &self.levels[self.best_level - 1].resources
    }

    fn last(&self) -> &LevelResources {
        &self.levels.last().expect("at least one level").resources
    }
}

#[derive(Debug, Serialize)]
pub struct PlanOutput {
    pub noise: NoiseInfo,
    pub gate_accuracy: f64,
    pub plans: Vec<FamilyRun>,
}

#[derive(Debug, Serialize)]
pub struct CompareRow {
    pub family: Family,
    pub levels: usize,
    pub sequence: String,
    pub best_level: usize,
    #[serde(rename = "best_F")]
    pub best_realized: f64,
    #[serde(rename = "final_f")]
    pub final_fidelity: f64,
    #[serde(rename = "final_F")]
    pub final_realized: f64,
    pub winner: bool,
}

#[derive(Debug, Serialize)]
pub struct CompareOutput {
    pub noise: NoiseInfo,
    pub gate_accuracy: f64,
    /// `three_qubit`, `five_qubit` or `tie`, by the larger best realized fidelity.
    pub winner: String,
    pub rows: Vec<CompareRow>,
    pub three_qubit: FamilyRun,
    pub five_qubit: FamilyRun,
}

impl CompareOutput {
    pub fn new(noise: NoiseInfo, gate_accuracy: f64, three: FamilyRun, five: FamilyRun) -> Self {
        let (a, b) = (three.best().realized_fidelity, five.best().realized_fidelity);
        let winner = if a > b {
            Some(Family::ThreeQubit)
        } else if b > a {
            Some(Family::FiveQubit)
        } else {
            None
        };
        let rows = [&three, &five]
            .into_iter()
            .map(|run| CompareRow {
                family: run.family,
                levels: run.levels.len(),
                sequence: sequence_text(&run.sequence),
                best_level: run.best_level,
                best_realized: run.best().realized_fidelity,
                final_fidelity: run.last().fidelity,
                final_realized: run.last().realized_fidelity,
                winner: winner == Some(run.family),
            })
            .collect();
        CompareOutput {
            noise,
            gate_accuracy,
            winner: winner.map_or_else(|| "tie".to_string(), |f| f.to_string()),
            rows,
            three_qubit: three,
            five_qubit: five,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReproduceOutput {
    pub all_pass: bool,
    pub checks: Vec<ReferenceCheck>,
}

fn sequence_text(seq: &[ProtocolId]) -> String {
    seq.iter().map(|id| id.to_string()).collect::<Vec<_>>().join(" ")
}

fn num(x: f64) -> String {
    format_significant(x, 6)
}

fn csv_rows<S: Serialize>(rows: &[S]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

fn noise_lines(noise: &NoiseInfo) -> anyhow::Result<String> {
    let mut out = format!("noise: {}\n", serde_json::to_string(&noise.spec)?);
    if let Some(g) = noise.gamma {
        out += &format!("gamma: {}\n", num(g));
    }
    Ok(out)
}

#[derive(Serialize)]
struct AnalysisRow<'a> {
    family: &'a str,
    gamma: Option<f64>,
    kraus_operators: usize,
    canonical_kraus_rank: usize,
    tp_deviation: f64,
    #[serde(rename = "sI")]
    s_i: f64,
    #[serde(rename = "sX")]
    s_x: f64,
    #[serde(rename = "sZ")]
    s_z: f64,
    #[serde(rename = "sY")]
    s_y: f64,
    lossless_pauli: bool,
    chosen_protocol: ProtocolId,
}

fn spec_family(spec: &NoiseSpec) -> &'static str {
    match spec {
        NoiseSpec::GeneralPauli { .. } => "general_pauli",
        NoiseSpec::Depolarizing { .. } => "depolarizing",
        NoiseSpec::AmplitudeDamping { .. } => "amplitude_damping",
        NoiseSpec::CustomKraus { .. } => "custom_kraus",
    }
}

impl Analysis {
    pub fn csv(&self) -> anyhow::Result<String> {
        let s = &self.scores;
        csv_rows(&[AnalysisRow {
            family: spec_family(&self.noise.spec),
            gamma: self.noise.gamma,
            kraus_operators: self.kraus_operators,
            canonical_kraus_rank: self.canonical_kraus_rank,
            tp_deviation: self.tp_deviation,
            s_i: s.s_i,
            s_x: s.s_x,
            s_z: s.s_z,
            s_y: s.s_y,
            lossless_pauli: self.lossless_pauli,
            chosen_protocol: self.chosen_protocol,
        }])
    }

    pub fn pretty(&self) -> anyhow::Result<String> {
        let s = &self.scores;
        let m = &self.pauli_projection;
        let mut out = noise_lines(&self.noise)?;
        out += &format!(
            "kraus operators: {} (canonical rank {})\n",
            self.kraus_operators, self.canonical_kraus_rank
        );
        out += &format!("tp deviation: {}\n", num(self.tp_deviation));
        out += &format!(
            "scores: sI {}  sX {}  sZ {}  sY {}\n",
            num(s.s_i),
            num(s.s_x),
            num(s.s_z),
            num(s.s_y)
        );
        out += &format!(
            "pauli projection: f {}  px {}  py {}  pz {}{}\n",
            num(m.f),
            num(m.px),
            num(m.py),
            num(m.pz),
            if self.lossless_pauli { "" } else { " (lossy)" }
        );
        out += &format!("chosen protocol: {}\n", self.chosen_protocol);
        Ok(out)
    }
}

fn run_table(run: &FamilyRun) -> String {
    let rows: Vec<Vec<String>> = run
        .levels
        .iter()
        .map(|row| {
            let l = &row.resources;
            vec![
                l.level.to_string(),
                l.protocol.to_string(),
                l.qubits.to_string(),
                l.n_encode.to_string(),
                l.n_decode.to_string(),
                num(l.accuracy_rate),
                num(l.fidelity),
                num(l.realized_fidelity),
                l.fault_tolerant.to_string(),
            ]
        })
        .collect();
    table(
        &["level", "protocol", "Q", "N_encode", "N_decode", "R", "f", "F", "fault_tolerant"],
        &rows,
    )
}

fn run_pretty(run: &FamilyRun) -> String {
    format!(
        "{}: sequence {} ({}), initial fidelity {}, best level {}\n{}",
        run.family,
        sequence_text(&run.sequence),
        run.per_level_gate_counts,
        num(run.initial_fidelity),
        run.best_level,
        run_table(run)
    )
}

impl PlanOutput {
    /// One family: the report schema as is. Both: a leading `family` column.
    pub fn csv(&self) -> String {
        if let [only] = self.plans.as_slice() {
            return only.csv.clone();
        }
        let mut out = String::new();
        for (i, run) in self.plans.iter().enumerate() {
            let mut lines = run.csv.lines();
            let header = lines.next().unwrap_or_default();
            if i == 0 {
                out += &format!("family,{header}\n");
            }
            for line in lines {
                out += &format!("{},{line}\n", run.family);
            }
        }
        out
    }

    pub fn pretty(&self) -> anyhow::Result<String> {
        let mut out = noise_lines(&self.noise)?;
        out += &format!("gate accuracy: {}\n", num(self.gate_accuracy));
        for run in &self.plans {
            out += "\n";
            out += &run_pretty(run);
        }
        Ok(out)
    }
}

impl CompareOutput {
    pub fn csv(&self) -> anyhow::Result<String> {
        csv_rows(&self.rows)
    }

    pub fn pretty(&self) -> anyhow::Result<String> {
        let mut out = noise_lines(&self.noise)?;
        out += &format!("gate accuracy: {}\n\n", num(self.gate_accuracy));
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.family.to_string(),
                    r.levels.to_string(),
                    r.sequence.clone(),
                    r.best_level.to_string(),
                    num(r.best_realized),
                    num(r.final_fidelity),
                    num(r.final_realized),
                    if r.winner { "*".to_string() } else { String::new() },
                ]
            })
            .collect();
        out += &table(
            &["family", "levels", "sequence", "best_level", "best_F", "final_f", "final_F", "winner"],
            &rows,
        );
        out += &format!("winner: {}\n", self.winner);
        for run in [&self.three_qubit, &self.five_qubit] {
            out += "\n";
            out += &run_pretty(run);
        }
        Ok(out)
    }
}

fn check_value(v: &CheckValue) -> String {
    match v {
        CheckValue::Integer(n) => n.to_string(),
        CheckValue::Real(x) => num(*x),
        CheckValue::Text(s) => s.clone(),
    }
}

impl ReproduceOutput {
    pub fn csv(&self) -> anyhow::Result<String> {
        csv_rows(&self.checks)
    }

    pub fn pretty(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.name.clone(),
                    check_value(&c.computed),
                    check_value(&c.published),
                    c.tolerance.map_or_else(|| "exact".to_string(), |t| format!("{t:e}")),
                    if c.pass { "pass" } else { "FAIL" }.to_string(),
                ]
            })
            .collect();
        let mut out = table(&["quantity", "computed", "published", "tolerance", "result"], &rows);
        out += if self.all_pass {
            "all values reproduced\n"
        } else {
            "some values were not reproduced\n"
        };
        out
    }
}
