//! Verification of crystal axioms, morphisms, isomorphisms and normality
//! over explored windows. Every checker is report-only: it never fails, it
//! lists what it found.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::crystal::{Crystal, ExtInt, Op};
use crate::graph::LabelledGraph;
use crate::par::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Clause {
    /// `wt(ẽ b) = wt(b) + l α_i`
    AxiomRaiseWeight,
    /// `wt(f̃ b) = wt(b) - l α_i`
    AxiomLowerWeight,
    /// `φ = ε + <h_i, wt>`
    AxiomPairing,
    /// `f̃ b = b'` iff `ẽ b' = b`
    AxiomInverse,
    /// real `ε`/`φ` steps
    AxiomRealStep,
    /// imaginary `ε` constant, `φ` shifts by `l a_ii`
    AxiomImaginaryStep,
    /// `φ = -∞` forces null operators
    AxiomNegInfNull,
    PreservesWt,
    PreservesEps,
    PreservesPhi,
    CommutesF,
    CommutesE,
    NotInjective,
    OutsideTarget,
    Unmapped,
    SizeMismatch,
    StatsMismatch,
    EdgeMismatch,
    Conflict,
    Unreached,
    NotNormal,
    HighestWeight,
    Other,
}

impl Clause {
    pub fn axiom_tag(self) -> Option<&'static str> {
        Some(match self {
            Clause::AxiomRaiseWeight => "(i)",
            Clause::AxiomLowerWeight => "(ii)",
            Clause::AxiomPairing => "(iii)",
            Clause::AxiomInverse => "(iv)",
            Clause::AxiomRealStep => "(v)",
            Clause::AxiomImaginaryStep => "(vi)",
            Clause::AxiomNegInfNull => "(vii)",
            _ => return None,
        })
    }
}

/// One failed check with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: Clause,
    pub node: String,
    pub index: Option<String>,
    pub l: Option<u32>,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {}", self.clause, self.node)?;
        if let Some(i) = &self.index {
            match self.l {
                Some(l) => write!(f, " op ({i},{l})")?,
                None => write!(f, " index {i}")?,
            }
        }
        write!(f, ": expected {}, got {}", self.expected, self.actual)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

struct Ctx<'a, C: Crystal> {
    s: &'a C,
    found: Vec<Violation>,
}

impl<C: Crystal> Ctx<'_, C> {
    fn push(
        &mut self,
        clause: Clause,
        b: &C::Elem,
        op: Option<(usize, Option<u32>)>,
        expected: String,
        actual: String,
    ) {
        let d = self.s.datum();
        self.found.push(Violation {
            clause,
            node: self.s.render(b),
            index: op.map(|(i, _)| d.id(i).to_string()),
            l: op.and_then(|(_, l)| l),
            expected,
            actual,
        });
    }
}

fn render_opt<C: Crystal>(s: &C, x: &Option<C::Elem>) -> String {
    x.as_ref()
        .map_or_else(|| "null".to_string(), |b| s.render(b))
}

fn axioms_at<C: Crystal>(s: &C, b: &C::Elem, ops: &[Op]) -> Vec<Violation> {
    let d = s.datum();
    let mut cx = Ctx {
        s,
        found: Vec::new(),
    };
    let wt = s.wt(b);

    for i in d.indices() {
        let (eps, phi) = (s.eps(i, b), s.phi(i, b));
        let want = eps + d.pairing(i, &wt);
        if phi != want {
            cx.push(
                Clause::AxiomPairing,
                b,
                Some((i, None)),
                want.to_string(),
                phi.to_string(),
            );
        }
    }

    for &op in ops {
        let (i, l) = (op.index(), op.l_i64());
        let tag = Some((i, Some(op.l())));
        let (eps, phi) = (s.eps(i, b), s.phi(i, b));
        let down = s.f(op, b);
        let up = s.e(op, b);

        if phi.is_neg_inf() && (down.is_some() || up.is_some()) {
            cx.push(
                Clause::AxiomNegInfNull,
                b,
                tag,
                "null, null".into(),
                format!("{}, {}", render_opt(s, &up), render_opt(s, &down)),
            );
            continue;
        }

        if let Some(c) = &down {
            let w = s.wt(c);
            let expected = wt.add_root(i, -l);
            if w != expected {
                cx.push(
                    Clause::AxiomLowerWeight,
                    b,
                    tag,
                    d.render_weight(&expected),
                    d.render_weight(&w),
                );
            }
            let back = s.e(op, c);
            if back.as_ref() != Some(b) {
                cx.push(
                    Clause::AxiomInverse,
                    b,
                    tag,
                    s.render(b),
                    format!("e(f(b)) = {}", render_opt(s, &back)),
                );
            }
            let (ce, cp) = (s.eps(i, c), s.phi(i, c));
            let (we, wp, clause) = if d.is_real(i) {
                (eps + 1, phi - 1, Clause::AxiomRealStep)
            } else {
                (eps, phi - l * d.a(i, i), Clause::AxiomImaginaryStep)
            };
            if (ce, cp) != (we, wp) {
                cx.push(
                    clause,
                    b,
                    tag,
                    format!("f: eps {we}, phi {wp}"),
                    format!("eps {ce}, phi {cp}"),
                );
            }
        }

        if let Some(c) = &up {
            let w = s.wt(c);
            let expected = wt.add_root(i, l);
            if w != expected {
                cx.push(
                    Clause::AxiomRaiseWeight,
                    b,
                    tag,
                    d.render_weight(&expected),
                    d.render_weight(&w),
                );
            }
            let back = s.f(op, c);
            if back.as_ref() != Some(b) {
                cx.push(
                    Clause::AxiomInverse,
                    b,
                    tag,
                    s.render(b),
                    format!("f(e(b)) = {}", render_opt(s, &back)),
                );
            }
            let (ce, cp) = (s.eps(i, c), s.phi(i, c));
            let (we, wp, clause) = if d.is_real(i) {
                (eps - 1, phi + 1, Clause::AxiomRealStep)
            } else {
                (eps, phi + l * d.a(i, i), Clause::AxiomImaginaryStep)
            };
            if (ce, cp) != (we, wp) {
                cx.push(
                    clause,
                    b,
                    tag,
                    format!("e: eps {we}, phi {wp}"),
                    format!("eps {ce}, phi {cp}"),
                );
            }
        }
    }
    cx.found
}

/// Checks the seven crystal axioms at every node of `g`, for all operators
/// with `l` up to the window bound.
pub fn check_axioms<C: Crystal>(s: &C, g: &LabelledGraph<C::Elem>) -> Report {
    check_axioms_with(s, g, Exec::default())
}

pub fn check_axioms_with<C: Crystal>(s: &C, g: &LabelledGraph<C::Elem>, exec: Exec) -> Report {
    check_axioms_on(
        s,
        g.nodes()
            .iter()
            .map(|n| n.elem.clone())
            .collect::<Vec<_>>()
            .as_slice(),
        g.op_bound(),
        exec,
    )
}

/// Axiom check on an explicit element list.
pub fn check_axioms_on<C: Crystal>(s: &C, elems: &[C::Elem], max_l: u32, exec: Exec) -> Report {
    let ops = Op::all_up_to(s.datum(), max_l.max(1));
    let violations = exec.flat_map(elems, |b| axioms_at(s, b, &ops));
    Report {
        checked: elems.len(),
        violations,
    }
}

/// Result of checking a map between two crystals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub report: Report,
    pub injective: bool,
    pub collisions: Vec<(String, String)>,
}

impl MorphismReport {
    /// Preserves `wt`, `ε`, `φ` and commutes with every `ẽ`, `f̃`.
    pub fn is_strict_morphism(&self) -> bool {
        self.report.passed()
    }

    pub fn is_strict_embedding(&self) -> bool {
        self.report.passed() && self.injective
    }
}

/// Checks that `map` preserves `wt`, `ε_i`, `φ_i` and commutes with all
/// `ẽ_il` and `f̃_il` (with `map(null) = null`) on the nodes of `ga`.
///
/// `map` returns `None` where it is undefined; commutation checks whose
/// source lands outside the map's domain are skipped. When `gb` is given,
/// images must be nodes of it.
pub fn check_strict_morphism<A, B, M>(
    map: M,
    sa: &A,
    ga: &LabelledGraph<A::Elem>,
    sb: &B,
    gb: Option<&LabelledGraph<B::Elem>>,
) -> MorphismReport
where
    A: Crystal,
    B: Crystal,
    M: Fn(&A::Elem) -> Option<B::Elem> + Sync + Send,
{
    let d = sa.datum();
    let ops = Op::all_up_to(d, ga.op_bound());
    let items: Vec<A::Elem> = ga.elems().cloned().collect();

    let per_node = Exec::default().map(&items, |a| {
        let mut out: Vec<Violation> = Vec::new();
        let node = sa.render(a);
        let mk =
            |clause, index: Option<usize>, l: Option<u32>, expected: String, actual: String| {
                Violation {
                    clause,
                    node: node.clone(),
                    index: index.map(|i| d.id(i).to_string()),
                    l,
                    expected,
                    actual,
                }
            };
        let Some(b) = map(a) else {
            out.push(mk(
                Clause::Unmapped,
                None,
                None,
                "image".into(),
                "undefined".into(),
            ));
            return (out, None);
        };
        if let Some(gb) = gb {
            if !gb.contains(&b) {
                out.push(mk(
                    Clause::OutsideTarget,
                    None,
                    None,
                    "node of target window".into(),
                    sb.render(&b),
                ));
            }
        }
        let (wa, wb) = (sa.wt(a), sb.wt(&b));
        if wa != wb {
            out.push(mk(
                Clause::PreservesWt,
                None,
                None,
                d.render_weight(&wa),
                d.render_weight(&wb),
            ));
        }
        for i in d.indices() {
            let (ea, eb) = (sa.eps(i, a), sb.eps(i, &b));
            if ea != eb {
                out.push(mk(
                    Clause::PreservesEps,
                    Some(i),
                    None,
                    ea.to_string(),
                    eb.to_string(),
                ));
            }
            let (pa, pb) = (sa.phi(i, a), sb.phi(i, &b));
            if pa != pb {
                out.push(mk(
                    Clause::PreservesPhi,
                    Some(i),
                    None,
                    pa.to_string(),
                    pb.to_string(),
                ));
            }
        }
        for &op in &ops {
            for (clause, src, dst) in [
                (Clause::CommutesF, sa.f(op, a), sb.f(op, &b)),
                (Clause::CommutesE, sa.e(op, a), sb.e(op, &b)),
            ] {
                let lhs = match &src {
                    None => None,
                    Some(x) => match map(x) {
                        Some(y) => Some(y),
                        None => continue,
                    },
                };
                if lhs != dst {
                    out.push(mk(
                        clause,
                        Some(op.index()),
                        Some(op.l()),
                        render_opt(sb, &dst),
                        render_opt(sb, &lhs),
                    ));
                }
            }
        }
        (out, Some(b))
    });

    let mut report = Report {
        checked: items.len(),
        violations: Vec::new(),
    };
    let mut seen: HashMap<B::Elem, usize> = HashMap::new();
    let mut collisions = Vec::new();
    for (k, (vs, image)) in per_node.into_iter().enumerate() {
        report.violations.extend(vs);
        if let Some(b) = image {
            if let Some(&j) = seen.get(&b) {
                collisions.push((sa.render(&items[j]), sa.render(&items[k])));
            } else {
                seen.insert(b, k);
            }
        }
    }
    MorphismReport {
        report,
        injective: collisions.is_empty(),
        collisions,
    }
}

/// A node bijection found by synchronized traversal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub report: Report,
    /// `(node of a, node of b)` pairs.
    pub pairs: Vec<(usize, usize)>,
}

impl IsoReport {
    pub fn isomorphic(&self) -> bool {
        self.report.passed()
    }

    /// The bijection as a lookup from nodes of `a` to nodes of `b`.
    pub fn forward(&self) -> HashMap<usize, usize> {
        self.pairs.iter().copied().collect()
    }
}

type Labels = Vec<(usize, u32, usize)>;

fn labelled<'a>(edges: impl Iterator<Item = &'a crate::graph::Edge>, outgoing: bool) -> Labels {
    let mut v: Labels = edges
        .map(|e| (e.index, e.l, if outgoing { e.to } else { e.from }))
        .collect();
    v.sort_unstable();
    v
}

/// Decides whether two explored windows are isomorphic by a simultaneous
/// breadth-first walk from `root_a` and `root_b`, pairing neighbours along
/// equal `(i,l)` labels in both directions. Cached `wt`, `ε`, `φ` must agree
/// on paired nodes.
pub fn sync_isomorphism<EA, EB>(
    ga: &LabelledGraph<EA>,
    gb: &LabelledGraph<EB>,
    root_a: usize,
    root_b: usize,
) -> IsoReport
where
    EA: Clone + Eq + std::hash::Hash + fmt::Debug,
    EB: Clone + Eq + std::hash::Hash + fmt::Debug,
{
    let mut violations = Vec::new();
    let mk = |clause, node: String, expected: String, actual: String| Violation {
        clause,
        node,
        index: None,
        l: None,
        expected,
        actual,
    };
    if ga.len() != gb.len() {
        violations.push(mk(
            Clause::SizeMismatch,
            "graph".into(),
            ga.len().to_string(),
            gb.len().to_string(),
        ));
    }
    if ga.edges().len() != gb.edges().len() {
        violations.push(mk(
            Clause::EdgeMismatch,
            "graph".into(),
            format!("{} edges", ga.edges().len()),
            format!("{} edges", gb.edges().len()),
        ));
    }

    let mut a_to_b: HashMap<usize, usize> = HashMap::new();
    let mut b_to_a: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    a_to_b.insert(root_a, root_b);
    b_to_a.insert(root_b, root_a);
    queue.push_back((root_a, root_b));

    while let Some((u, v)) = queue.pop_front() {
        let (na, nb) = (ga.node(u), gb.node(v));
        if na.wt != nb.wt || na.eps != nb.eps || na.phi != nb.phi {
            violations.push(mk(
                Clause::StatsMismatch,
                format!("{:?}", na.elem),
                format!("wt {:?} eps {:?} phi {:?}", na.wt, na.eps, na.phi),
                format!("wt {:?} eps {:?} phi {:?}", nb.wt, nb.eps, nb.phi),
            ));
        }
        for outgoing in [true, false] {
            let (la, lb) = if outgoing {
                (
                    labelled(ga.out_edges(u), true),
                    labelled(gb.out_edges(v), true),
                )
            } else {
                (
                    labelled(ga.in_edges(u), false),
                    labelled(gb.in_edges(v), false),
                )
            };
            let keys_a: Vec<(usize, u32)> = la.iter().map(|&(i, l, _)| (i, l)).collect();
            let keys_b: Vec<(usize, u32)> = lb.iter().map(|&(i, l, _)| (i, l)).collect();
            if keys_a != keys_b {
                violations.push(mk(
                    Clause::EdgeMismatch,
                    format!("{:?}", na.elem),
                    format!(
                        "{} labels {:?}",
                        if outgoing { "out" } else { "in" },
                        keys_a
                    ),
                    format!("{:?}", keys_b),
                ));
                continue;
            }
            for (&(_, _, x), &(_, _, y)) in la.iter().zip(&lb) {
                match (a_to_b.get(&x), b_to_a.get(&y)) {
                    (None, None) => {
                        a_to_b.insert(x, y);
                        b_to_a.insert(y, x);
                        queue.push_back((x, y));
                    }
                    (Some(&y2), Some(&x2)) if y2 == y && x2 == x => {}
                    _ => violations.push(mk(
                        Clause::Conflict,
                        format!("{:?}", ga.node(x).elem),
                        format!("{:?}", gb.node(y).elem),
                        "already paired elsewhere".into(),
                    )),
                }
            }
        }
    }
    let unreached_a = ga.len() - a_to_b.len();
    let unreached_b = gb.len() - b_to_a.len();
    if unreached_a + unreached_b > 0 {
        violations.push(mk(
            Clause::Unreached,
            "graph".into(),
            "0 unreached".into(),
            format!("{unreached_a} in first, {unreached_b} in second"),
        ));
    }
    let mut pairs: Vec<(usize, usize)> = a_to_b.into_iter().collect();
    pairs.sort_unstable();
    IsoReport {
        report: Report {
            checked: pairs.len(),
            violations,
        },
        pairs,
    }
}

/// Outcome of a normality test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub normal: bool,
    pub witness: Option<Violation>,
}

/// `ε_i = 0` and `φ_i >= 0` for every imaginary `i` at every supplied node.
pub fn is_normal<'a, C, I>(s: &C, nodes: I) -> NormalityReport
where
    C: Crystal,
    C::Elem: 'a,
    I: IntoIterator<Item = &'a C::Elem>,
{
    let d = s.datum();
    let imaginary: Vec<usize> = d.indices().filter(|&i| !d.is_real(i)).collect();
    for b in nodes {
        for &i in &imaginary {
            let (e, p) = (s.eps(i, b), s.phi(i, b));
            if e != ExtInt::Fin(0) || p < ExtInt::Fin(0) {
                return NormalityReport {
                    normal: false,
                    witness: Some(Violation {
                        clause: Clause::NotNormal,
                        node: s.render(b),
                        index: Some(d.id(i).to_string()),
                        l: None,
                        expected: "eps 0, phi >= 0".into(),
                        actual: format!("eps {e}, phi {p}"),
                    }),
                };
            }
        }
    }
    NormalityReport {
        normal: true,
        witness: None,
    }
}
