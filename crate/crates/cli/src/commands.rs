//! The `graph`, `count` and `verify` commands.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use bbcrystal::check::is_normal;
use bbcrystal::fault::OffByOnePhi;
use bbcrystal::highest::{build_blambda, hw_sum_embedding, pi_lambda};
use bbcrystal::{
    assoc_isomorphism, build_binfty, check_axioms, explore, psi_embedding, sequence_independence,
    Crystal, CrystalError, Elementary, ElementaryElement, FactorTensor, IndexSequence,
    LabelledGraph, Report, SeqElem, SequenceCrystal, Tensor, TensorElem, Violation, Weight,
};

use crate::config::{ConfigError, Job};
use crate::doc::{CountDoc, GraphDoc};

/// Exit status of a check failure.
pub const EXIT_FAIL: i32 = 1;
/// Exit status of a configuration error.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    B(String),
    T,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Binfty,
    Blambda,
    Elementary(String),
    T,
    C,
    Tensor(Vec<Factor>),
}

impl FromStr for Target {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let bad = || ConfigError::new("--target", format!("unknown target {s:?}"));
        Ok(match s {
            "binfty" => Target::Binfty,
            "blambda" => Target::Blambda,
            "t" => Target::T,
            "c" => Target::C,
            _ => {
                if let Some(id) = s.strip_prefix("elementary:") {
                    Target::Elementary(id.to_string())
                } else if let Some(list) = s.strip_prefix("tensor:") {
                    let factors = list
                        .split(',')
                        .map(|f| match f.trim() {
                            "" => Err(bad()),
                            "t" => Ok(Factor::T),
                            "c" => Ok(Factor::C),
                            other => Ok(Factor::B(
                                other.strip_prefix("b:").unwrap_or(other).to_string(),
                            )),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Target::Tensor(factors)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Dot,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Axioms,
    Embedding,
    Assoc,
    Sum,
    Pi,
    Normal,
    Seqindep,
}

/// What a command prints and the status it exits with.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub status: i32,
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Crystal(CrystalError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "config error: {e}"),
            CliError::Crystal(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<CrystalError> for CliError {
    fn from(e: CrystalError) -> Self {
        match e {
            CrystalError::NotDominant { .. } => {
                CliError::Config(ConfigError::new("lambda", e.to_string()))
            }
            other => CliError::Crystal(other),
        }
    }
}

fn index(job: &Job, id: &str, field: &str) -> Result<usize, ConfigError> {
    job.datum
        .index_of(id)
        .map_err(|e| ConfigError::new(field, e.to_string()))
}

fn t_weight(job: &Job) -> Weight {
    job.lambda.clone().unwrap_or_default()
}

fn factor_tensor(job: &Job, factors: &[Factor]) -> Result<FactorTensor, ConfigError> {
    let d = &job.datum;
    let built = factors
        .iter()
        .map(|f| {
            Ok(match f {
                Factor::B(id) => Elementary::b(d.clone(), index(job, id, "--target")?),
                Factor::T => Elementary::t(d.clone(), t_weight(job)),
                Factor::C => Elementary::c(d.clone()),
            })
        })
        .collect::<Result<Vec<_>, ConfigError>>()?;
    Ok(FactorTensor::new(d.clone(), built))
}

/// Applies `k` to the structure and explored graph named by `target`.
fn with_target<R>(
    job: &Job,
    target: &Target,
    k: &mut dyn FnMut(&dyn ErasedGraph) -> R,
) -> Result<R, CliError> {
    let d = &job.datum;
    let h = job.height;
    Ok(match target {
        Target::Binfty => {
            let (s, g) = build_binfty(d.clone(), job.seq.clone(), h)?;
            k(&(s, g))
        }
        Target::Blambda => {
            let (s, g) = build_blambda(d.clone(), job.lambda()?, job.seq.clone(), h)?;
            k(&(s, g))
        }
        Target::Elementary(id) => {
            let s = Elementary::b(d.clone(), index(job, id, "--target")?);
            let g = explore(&s, &[s.highest()], h)?;
            k(&(s, g))
        }
        Target::T | Target::C => {
            let s = if *target == Target::T {
                Elementary::t(d.clone(), t_weight(job))
            } else {
                Elementary::c(d.clone())
            };
            let g = explore(&s, &[s.highest()], h)?;
            k(&(s, g))
        }
        Target::Tensor(factors) => {
            if factors.is_empty() {
                return Err(
                    ConfigError::new("--target", "a tensor needs at least one factor").into(),
                );
            }
            let s = factor_tensor(job, factors)?;
            let g = explore(&s, &[s.highest()], h)?;
            k(&(s, g))
        }
    })
}

/// A structure together with one of its explored windows.
trait ErasedGraph {
    fn graph_doc(&self) -> GraphDoc;
    fn count_doc(&self) -> CountDoc;
}

impl<C: Crystal> ErasedGraph for (C, LabelledGraph<C::Elem>) {
    fn graph_doc(&self) -> GraphDoc {
        GraphDoc::new(&self.0, &self.1)
    }
    fn count_doc(&self) -> CountDoc {
        CountDoc::new(self.0.datum(), &self.1)
    }
}

pub fn cmd_graph(job: &Job, target: &Target, format: Format) -> Result<Output, CliError> {
    let doc = with_target(job, target, &mut |g| g.graph_doc())?;
    let text = match format {
        Format::Dot => doc.to_dot(),
        Format::Json => doc.to_json(),
        Format::Text => {
            return Err(ConfigError::new("--format", "graph supports dot or json").into())
        }
    };
    Ok(Output { text, status: 0 })
}

pub fn cmd_count(job: &Job, target: &Target, format: Format) -> Result<Output, CliError> {
    let doc = with_target(job, target, &mut |g| g.count_doc())?;
    let text = match format {
        Format::Text => doc.to_text(),
        Format::Json => doc.to_json(),
        Format::Dot => {
            return Err(ConfigError::new("--format", "count supports text or json").into())
        }
    };
    Ok(Output { text, status: 0 })
}

const MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witnesses: Vec<Violation>,
}

impl CheckDoc {
    fn new(
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
        witnesses: &[Violation],
    ) -> Self {
        CheckDoc {
            name: name.into(),
            passed,
            detail: detail.into(),
            witnesses: witnesses.iter().take(MAX_WITNESSES).cloned().collect(),
        }
    }

    fn from_report(name: impl Into<String>, r: &Report) -> Self {
        let detail = format!("{} nodes, {} violations", r.checked, r.violations.len());
        Self::new(name, r.passed(), detail, &r.violations)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyDoc {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<CheckDoc>,
}

fn axioms_of<C: Crystal>(
    name: &str,
    s: &C,
    seeds: &[C::Elem],
    h: u32,
) -> Result<CheckDoc, CliError> {
    let g = explore(s, seeds, h)?;
    Ok(CheckDoc::from_report(name, &check_axioms(s, &g)))
}

fn suite_axioms(job: &Job, inject_fault: bool) -> Result<Vec<CheckDoc>, CliError> {
    let d = &job.datum;
    let h = job.height;
    let mut out = Vec::new();
    let binf = SequenceCrystal::new(d.clone(), job.seq.clone());
    if inject_fault {
        let faulty = OffByOnePhi {
            inner: binf.clone(),
        };
        out.push(axioms_of(
            "B(inf) with phi off by one",
            &faulty,
            &[SeqElem::zero()],
            h,
        )?);
    }
    out.push(axioms_of("B(inf)", &binf, &[SeqElem::zero()], h)?);
    if let Some(lam) = &job.lambda {
        let (hw, g) = build_blambda(d.clone(), lam, job.seq.clone(), h)?;
        out.push(CheckDoc::from_report("B(lambda)", &check_axioms(&hw, &g)));
    }
    let mut factors: Vec<(String, Elementary)> = d
        .indices()
        .map(|i| (format!("B_{}", d.id(i)), Elementary::b(d.clone(), i)))
        .collect();
    factors.push(("T".into(), Elementary::t(d.clone(), t_weight(job))));
    factors.push(("C".into(), Elementary::c(d.clone())));
    for (name, f) in &factors {
        out.push(axioms_of(name, f, &[f.highest()], h)?);
    }
    for (na, a) in &factors {
        for (nb, b) in &factors {
            let t = Tensor::new(a.clone(), b.clone());
            out.push(axioms_of(
                &format!("{na} x {nb}"),
                &t,
                &[TensorElem::new(a.highest(), b.highest())],
                h,
            )?);
        }
    }
    Ok(out)
}

fn suite_embedding(job: &Job) -> Result<Vec<CheckDoc>, CliError> {
    job.datum
        .indices()
        .map(|i| {
            let r = psi_embedding(job.datum.clone(), &job.seq, i, job.height)?;
            Ok(CheckDoc::new(
                format!("psi_{}", job.datum.id(i)),
                r.passed(),
                r.to_string(),
                &r.morphism.report.violations,
            ))
        })
        .collect()
}

fn suite_assoc(job: &Job) -> Result<Vec<CheckDoc>, CliError> {
    let d = &job.datum;
    let b = |i| Elementary::b(d.clone(), i);
    let mut triples: Vec<(String, Elementary, Elementary, Elementary)> = Vec::new();
    for i in d.indices() {
        for j in d.indices() {
            for k in d.indices() {
                triples.push((
                    format!("B_{} B_{} B_{}", d.id(i), d.id(j), d.id(k)),
                    b(i),
                    b(j),
                    b(k),
                ));
            }
        }
        let t = Elementary::t(d.clone(), t_weight(job));
        triples.push((
            format!("B_{} T C", d.id(i)),
            b(i),
            t,
            Elementary::c(d.clone()),
        ));
    }
    triples
        .into_iter()
        .map(|(name, x, y, z)| {
            let seed = (x.highest(), y.highest(), z.highest());
            let r = assoc_isomorphism(&x, &y, &z, seed, job.height)?;
            Ok(CheckDoc::new(
                name,
                r.passed(),
                r.to_string(),
                &r.morphism.report.violations,
            ))
        })
        .collect()
}

fn suite_sum(job: &Job) -> Result<Vec<CheckDoc>, CliError> {
    let r = hw_sum_embedding(
        job.datum.clone(),
        job.lambda()?,
        job.mu()?,
        job.seq.clone(),
        job.height,
    )?;
    let mut witnesses = r.iso.report.violations.clone();
    witnesses.extend(r.morphism.report.violations.iter().cloned());
    Ok(vec![CheckDoc::new(
        "B(lambda+mu) in B(lambda) x B(mu)",
        r.passed(),
        r.to_string(),
        &witnesses,
    )])
}

fn suite_pi(job: &Job) -> Result<Vec<CheckDoc>, CliError> {
    let lam = job.lambda()?;
    let (hw, gl) = build_blambda(job.datum.clone(), lam, job.seq.clone(), job.height)?;
    let (binf, gi) = build_binfty(job.datum.clone(), job.seq.clone(), job.height)?;
    let r = pi_lambda(lam, &hw, &gl, &binf, &gi);
    let mut out = vec![CheckDoc::new(
        "pi_lambda",
        r.passed(),
        r.to_string(),
        &r.report.violations,
    )];
    if !lam.is_zero() {
        out.push(CheckDoc::new(
            "pi_lambda is not a crystal morphism",
            r.flags_weight_shift(),
            format!(
                "{} violations of strictness",
                r.as_morphism.report.violations.len()
            ),
            &[],
        ));
    }
    Ok(out)
}

fn suite_normal(job: &Job) -> Result<Vec<CheckDoc>, CliError> {
    let (binf, g) = build_binfty(job.datum.clone(), job.seq.clone(), job.height)?;
    let mut out = Vec::new();
    let mut push = |name: &str, r: bbcrystal::NormalityReport| {
        let detail = if r.normal {
            "normal".to_string()
        } else {
            "not normal".to_string()
        };
        out.push(CheckDoc::new(name, r.normal, detail, r.witness.as_slice()));
    };
    push("B(inf)", is_normal(&binf, g.elems()));
    if let Some(lam) = &job.lambda {
        let (hw, g) = build_blambda(job.datum.clone(), lam, job.seq.clone(), job.height)?;
        push("B(lambda)", is_normal(&hw, g.elems()));
    }
    let c = Elementary::c(job.datum.clone());
    push("C", is_normal(&c, [&ElementaryElement::C]));
    Ok(out)
}

fn suite_seqindep(job: &Job) -> Result<Vec<CheckDoc>, CliError> {
    let mut rev = job.seq.base().to_vec();
    rev.reverse();
    let other = IndexSequence::new(&job.datum, rev)?;
    let r = sequence_independence(job.datum.clone(), job.seq.clone(), other, job.height)?;
    let detail = format!(
        "{} paired nodes, {} violations",
        r.pairs.len(),
        r.report.violations.len()
    );
    Ok(vec![CheckDoc::new(
        "sequence vs reversed",
        r.isomorphic(),
        detail,
        &r.report.violations,
    )])
}

pub fn cmd_verify(job: &Job, suite: Suite, inject_fault: bool) -> Result<Output, CliError> {
    if inject_fault && suite != Suite::Axioms {
        return Err(ConfigError::new(
            "--inject-fault",
            "only the axioms suite supports fault injection",
        )
        .into());
    }
    let checks = match suite {
        Suite::Axioms => suite_axioms(job, inject_fault)?,
        Suite::Embedding => suite_embedding(job)?,
        Suite::Assoc => suite_assoc(job)?,
        Suite::Sum => suite_sum(job)?,
        Suite::Pi => suite_pi(job)?,
        Suite::Normal => suite_normal(job)?,
        Suite::Seqindep => suite_seqindep(job)?,
    };
    let passed = checks.iter().all(|c| c.passed);
    let doc = VerifyDoc {
        suite,
        passed,
        checks,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("reports serialize");
    text.push('\n');
    Ok(Output {
        text,
        status: if passed { 0 } else { EXIT_FAIL },
    })
}
