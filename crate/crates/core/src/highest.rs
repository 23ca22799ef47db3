//! `B(λ)` as the component of `(0)_𝐢 ⊗ t_λ ⊗ c` in `B(∞) ⊗ T_λ ⊗ C`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::check::{
    check_strict_morphism, sync_isomorphism, Clause, IsoReport, MorphismReport, Report, Violation,
};
use crate::crystal::{Crystal, ExtInt, Op};
use crate::elementary::{Elementary, ElementaryElement};
use crate::error::Result;
use crate::graph::{explore, LabelledGraph};
use crate::sequence::{IndexSequence, SeqElem, SequenceCrystal};
use crate::tensor::{Tensor, TensorElem};

/// `(B_𝐢 ⊗ T_λ) ⊗ C`
pub type HighestWeightCrystal = Tensor<Tensor<SequenceCrystal, Elementary>, Elementary>;

pub type HwElem = TensorElem<TensorElem<SeqElem, ElementaryElement>, ElementaryElement>;

pub fn highest_weight_crystal(
    datum: Arc<CartanDatum>,
    seq: IndexSequence,
    lambda: &Weight,
) -> HighestWeightCrystal {
    Tensor::new(
        Tensor::new(
            SequenceCrystal::new(datum.clone(), seq),
            Elementary::t(datum.clone(), lambda.clone()),
        ),
        Elementary::c(datum),
    )
}

/// `b ⊗ t_λ ⊗ c`
pub fn hw_elem(b: SeqElem, lambda: &Weight) -> HwElem {
    TensorElem::new(
        TensorElem::new(b, ElementaryElement::T(lambda.clone())),
        ElementaryElement::C,
    )
}

/// `v_λ = (0)_𝐢 ⊗ t_λ ⊗ c`
pub fn highest_vector(lambda: &Weight) -> HwElem {
    hw_elem(SeqElem::zero(), lambda)
}

/// Explores `B(λ)` from `v_λ` under the lowering operators.
pub fn build_blambda(
    datum: Arc<CartanDatum>,
    lambda: &Weight,
    seq: IndexSequence,
    budget: u32,
) -> Result<(HighestWeightCrystal, LabelledGraph<HwElem>)> {
    datum.require_dominant(lambda)?;
    let s = highest_weight_crystal(datum, seq, lambda);
    let g = explore(&s, &[highest_vector(lambda)], budget)?;
    Ok((s, g))
}

/// `b ⊗ t_λ ⊗ c ↦ b`
pub fn pi_map(b: &HwElem) -> SeqElem {
    b.left.left.clone()
}

#[derive(Debug, Clone, Serialize)]
pub struct PiReport {
    /// Clauses (i) to (iv) and the image lying in the `B(∞)` window.
    pub report: Report,
    pub injective: bool,
    /// Outcome of treating `π_λ` as a strict morphism; expected to fail on `wt`.
    pub as_morphism: MorphismReport,
}

impl PiReport {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.injective
    }

    /// The strict-morphism check caught the shift of weights by `λ`.
    pub fn flags_weight_shift(&self) -> bool {
        self.as_morphism.report.has(Clause::PreservesWt)
    }
}

impl fmt::Display for PiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} nodes, {} violations, injective {}, weight shift flagged {}",
            self.report.checked,
            self.report.violations.len(),
            self.injective,
            self.flags_weight_shift()
        )
    }
}

/// Checks the projection `π_λ : B(λ) → B(∞)` on explored windows of both.
pub fn pi_lambda(
    lambda: &Weight,
    hw: &HighestWeightCrystal,
    g_lambda: &LabelledGraph<HwElem>,
    binf: &SequenceCrystal,
    g_inf: &LabelledGraph<SeqElem>,
) -> PiReport {
    let d = hw.datum();
    let ops = Op::all_up_to(d, g_lambda.op_bound());
    let mut found = Vec::new();
    let mut push = |clause,
                    b: &HwElem,
                    op: Option<Op>,
                    index: Option<usize>,
                    expected: String,
                    actual: String| {
        found.push(Violation {
            clause,
            node: hw.render(b),
            index: op.map(|o| o.index()).or(index).map(|i| d.id(i).to_string()),
            l: op.map(|o| o.l()),
            expected,
            actual,
        })
    };
    let render = |x: &Option<SeqElem>| {
        x.as_ref()
            .map_or_else(|| "null".to_string(), |b| binf.render(b))
    };

    let v = highest_vector(lambda);
    if pi_map(&v) != SeqElem::zero() {
        push(
            Clause::HighestWeight,
            &v,
            None,
            None,
            "(0)".into(),
            binf.render(&pi_map(&v)),
        );
    }
    let mut seen: HashMap<SeqElem, usize> = HashMap::new();
    let mut injective = true;
    for (k, b) in g_lambda.elems().enumerate() {
        let pb = pi_map(b);
        if !g_inf.contains(&pb) {
            push(
                Clause::OutsideTarget,
                b,
                None,
                None,
                "node of B(inf)".into(),
                binf.render(&pb),
            );
        }
        if seen.insert(pb.clone(), k).is_some() {
            injective = false;
        }
        for &op in &ops {
            if let Some(fb) = hw.f(op, b) {
                let lhs = Some(pi_map(&fb));
                let rhs = binf.f(op, &pb);
                if lhs != rhs {
                    push(
                        Clause::CommutesF,
                        b,
                        Some(op),
                        None,
                        render(&rhs),
                        render(&lhs),
                    );
                }
            }
            let lhs = hw.e(op, b).map(|x| pi_map(&x));
            let rhs = binf.e(op, &pb);
            if lhs != rhs {
                push(
                    Clause::CommutesE,
                    b,
                    Some(op),
                    None,
                    render(&rhs),
                    render(&lhs),
                );
            }
        }
        let want = &hw.wt(b) - lambda;
        let got = binf.wt(&pb);
        if want != got {
            push(
                Clause::PreservesWt,
                b,
                None,
                None,
                d.render_weight(&want),
                d.render_weight(&got),
            );
        }
        for i in d.indices() {
            let (ea, eb) = (hw.eps(i, b), binf.eps(i, &pb));
            if ea != eb {
                push(
                    Clause::PreservesEps,
                    b,
                    None,
                    Some(i),
                    ea.to_string(),
                    eb.to_string(),
                );
            }
        }
    }
    let report = Report {
        checked: g_lambda.len(),
        violations: found,
    };
    let as_morphism = check_strict_morphism(
        |b: &HwElem| Some(pi_map(b)),
        hw,
        g_lambda,
        binf,
        Some(g_inf),
    );
    PiReport {
        report,
        injective,
        as_morphism,
    }
}

/// For imaginary `i` with `ε_i(b) = 0` and `0 < <h_i, wt b> <= -l a_ii`,
/// `ẽ_il(b)` must be null.
pub fn check_integrability(hw: &HighestWeightCrystal, g: &LabelledGraph<HwElem>) -> Report {
    let d = hw.datum();
    let mut violations = Vec::new();
    for n in g.nodes() {
        for op in Op::all_up_to(d, g.op_bound()) {
            let i = op.index();
            if d.is_real(i) {
                continue;
            }
            let h = d.pairing(i, &n.wt);
            if n.eps[i] == ExtInt::Fin(0) && 0 < h && h <= -op.l_i64() * d.a(i, i) {
                if let Some(x) = hw.e(op, &n.elem) {
                    violations.push(Violation {
                        clause: Clause::Other,
                        node: hw.render(&n.elem),
                        index: Some(d.id(i).to_string()),
                        l: Some(op.l()),
                        expected: "null".into(),
                        actual: hw.render(&x),
                    });
                }
            }
        }
    }
    Report {
        checked: g.len(),
        violations,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SumReport {
    pub sum_nodes: usize,
    pub component_nodes: usize,
    pub iso: IsoReport,
    pub morphism: MorphismReport,
}

impl SumReport {
    pub fn passed(&self) -> bool {
        self.iso.isomorphic() && self.morphism.is_strict_embedding()
    }
}

impl fmt::Display for SumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B(lambda+mu) {} nodes, component {} nodes, iso violations {}, morphism violations {}",
            self.sum_nodes,
            self.component_nodes,
            self.iso.report.violations.len(),
            self.morphism.report.violations.len()
        )
    }
}

/// Compares `B(λ+μ)` with the component of `v_λ ⊗ v_μ` in `B(λ) ⊗ B(μ)`.
pub fn hw_sum_embedding(
    datum: Arc<CartanDatum>,
    lambda: &Weight,
    mu: &Weight,
    seq: IndexSequence,
    budget: u32,
) -> Result<SumReport> {
    datum.require_dominant(lambda)?;
    datum.require_dominant(mu)?;
    let sum = lambda + mu;
    let (s_sum, g_sum) = build_blambda(datum.clone(), &sum, seq.clone(), budget)?;
    let pair = Tensor::new(
        highest_weight_crystal(datum.clone(), seq.clone(), lambda),
        highest_weight_crystal(datum, seq, mu),
    );
    let top = TensorElem::new(highest_vector(lambda), highest_vector(mu));
    let g_pair = explore(&pair, &[top], budget)?;
    let iso = sync_isomorphism(&g_sum, &g_pair, g_sum.roots()[0], g_pair.roots()[0]);

    let table: HashMap<HwElem, TensorElem<HwElem, HwElem>> = iso
        .pairs
        .iter()
        .map(|&(a, b)| (g_sum.node(a).elem.clone(), g_pair.node(b).elem.clone()))
        .collect();
    let morphism = check_strict_morphism(
        |b: &HwElem| table.get(b).cloned(),
        &s_sum,
        &g_sum,
        &pair,
        Some(&g_pair),
    );
    Ok(SumReport {
        sum_nodes: g_sum.len(),
        component_nodes: g_pair.len(),
        iso,
        morphism,
    })
}
