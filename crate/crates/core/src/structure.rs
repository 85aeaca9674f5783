//! Generalised structure 2-paths built by structural induction, and the
//! structure 3-cells pushing constructors through swaps, duplications and
//! erasures.

use crate::diagram::{Diagram, DiagramBuilder, Src};
use crate::engine::rule::{LitPat, Pattern, Rule, RuleKind};
use crate::signature::{CellId, Signature, SortId};

/// Which generalised structure path to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructurePathKind {
    /// `x ζ => ζ x`
    Tau(Vec<SortId>, SortId),
    /// `x => x x`
    Delta(Vec<SortId>),
    /// `x => ()`
    Eps(Vec<SortId>),
}

impl StructurePathKind {
    pub fn build(&self, sig: &Signature) -> Diagram {
        match self {
            StructurePathKind::Tau(x, z) => tau_path(sig, x, *z),
            StructurePathKind::Delta(x) => delta_path(sig, x),
            StructurePathKind::Eps(x) => eps_path(sig, x),
        }
    }
}

fn swap(sig: &Signature, b: &mut DiagramBuilder<'_>, left: Src, right: Src) -> (Src, Src) {
    let (l, r) = (b.sort_of(left).expect("live wire"), b.sort_of(right).expect("live wire"));
    let outs = b.add(sig.tau(l, r), None, &[left, right]).expect("swap is well typed");
    (outs[0], outs[1])
}

/// Moves `z` in front of the block `xs`: `x₁ … xₙ z => z x₁ … xₙ`.
///
/// `[ξ] ++ y` is `(id_ξ ⋆₀ τ_{y,ζ}) ⋆₁ (τ_{ξ,ζ} ⋆₀ id_y)`.
pub fn emit_tau_path(sig: &Signature, b: &mut DiagramBuilder<'_>, xs: &[Src], z: Src) -> Vec<Src> {
    match xs.split_first() {
        None => vec![z],
        Some((x0, rest)) => {
            let inner = emit_tau_path(sig, b, rest, z);
            let (z2, x2) = swap(sig, b, *x0, inner[0]);
            let mut out = vec![z2, x2];
            out.extend_from_slice(&inner[1..]);
            out
        }
    }
}

/// Moves `z` behind the block `xs`: `z x₁ … xₙ => x₁ … xₙ z`.
pub fn emit_cross(sig: &Signature, b: &mut DiagramBuilder<'_>, z: Src, xs: &[Src]) -> Vec<Src> {
    match xs.split_first() {
        None => vec![z],
        Some((x0, rest)) => {
            let (x2, z2) = swap(sig, b, z, *x0);
            let mut out = vec![x2];
            out.extend(emit_cross(sig, b, z2, rest));
            out
        }
    }
}

/// `x => x x`, one duplication per wire plus the crossings that regroup
/// the copies.
pub fn emit_delta_path(sig: &Signature, b: &mut DiagramBuilder<'_>, xs: &[Src]) -> Vec<Src> {
    match xs.split_first() {
        None => vec![],
        Some((x0, rest)) => {
            let s = b.sort_of(*x0).expect("live wire");
            let d = b.add(sig.delta(s), None, &[*x0]).expect("dup is well typed");
            let copies = emit_delta_path(sig, b, rest);
            let (first, second) = copies.split_at(rest.len());
            let crossed = emit_cross(sig, b, d[1], first);
            let mut out = vec![d[0]];
            out.extend(crossed);
            out.extend_from_slice(second);
            out
        }
    }
}

pub fn emit_eps_path(sig: &Signature, b: &mut DiagramBuilder<'_>, xs: &[Src]) {
    for x in xs {
        let s = b.sort_of(*x).expect("live wire");
        b.add(sig.eps(s), None, &[*x]).expect("erase is well typed");
    }
}

pub fn tau_path(sig: &Signature, x: &[SortId], z: SortId) -> Diagram {
    let mut inputs = x.to_vec();
    inputs.push(z);
    let mut b = DiagramBuilder::new(sig, &inputs);
    let ins = b.inputs();
    let outs = emit_tau_path(sig, &mut b, &ins[..x.len()], ins[x.len()]);
    b.finish(&outs)
}

pub fn delta_path(sig: &Signature, x: &[SortId]) -> Diagram {
    let mut b = DiagramBuilder::new(sig, x);
    let ins = b.inputs();
    let outs = emit_delta_path(sig, &mut b, &ins);
    b.finish(&outs)
}

pub fn eps_path(sig: &Signature, x: &[SortId]) -> Diagram {
    let mut b = DiagramBuilder::new(sig, x);
    let ins = b.inputs();
    emit_eps_path(sig, &mut b, &ins);
    b.finish(&[])
}

fn ctor_pattern(sig: &Signature, cell: CellId, first_var: usize) -> Pattern {
    let c = sig.cell(cell);
    Pattern::Ctor {
        cell,
        lit: c.literal_family.then_some(LitPat::Bind(0)),
        args: (0..c.source.len()).map(|i| Pattern::Var(first_var + i)).collect(),
    }
}

/// Adds the constructor to the builder, recording it if its literal index
/// must be copied from the matched constructor.
fn emit_ctor(
    sig: &Signature,
    b: &mut DiagramBuilder<'_>,
    cell: CellId,
    args: &[Src],
    literals: &mut Vec<(crate::diagram::NodeId, usize)>,
) -> Src {
    let lit = sig.cell(cell).literal_family.then_some(0);
    let out = b.add1(cell, lit, args).expect("constructor is well typed");
    if lit.is_some() {
        if let Src::Node(n, _) = out {
            literals.push((n, 0));
        }
    }
    out
}

/// Structure 3-cells for every constructor: duplication, erasure, and both
/// swap orientations against every sort in `used_sorts`.
pub fn generate_structure_rules(sig: &Signature, used_sorts: &[SortId]) -> Vec<Rule> {
    let mut rules = Vec::new();
    let ctors: Vec<CellId> = sig.constructors().map(|(id, _)| id).collect();
    for phi in ctors {
        let c = sig.cell(phi).clone();
        let xi = c.target[0];
        let x = c.source.clone();
        let n = x.len();

        // φ ⋆₁ δ  ⇛  δ_x ⋆₁ (φ ⋆₀ φ)
        let mut lits = Vec::new();
        let mut b = DiagramBuilder::new(sig, &x);
        let ins = b.inputs();
        let copies = emit_delta_path(sig, &mut b, &ins);
        let o1 = emit_ctor(sig, &mut b, phi, &copies[..n], &mut lits);
        let o2 = emit_ctor(sig, &mut b, phi, &copies[n..], &mut lits);
        let rhs = b.finish(&[o1, o2]);
        rules.push(
            Rule::new(
                sig,
                &format!("dup/{}", c.name),
                RuleKind::Structure,
                sig.delta(xi),
                vec![ctor_pattern(sig, phi, 0)],
                vec![],
                rhs,
                lits,
            )
            .expect("generated dup rule is well formed"),
        );

        // φ ⋆₁ ε  ⇛  ε_x
        rules.push(
            Rule::new(
                sig,
                &format!("erase/{}", c.name),
                RuleKind::Structure,
                sig.eps(xi),
                vec![ctor_pattern(sig, phi, 0)],
                vec![],
                eps_path(sig, &x),
                vec![],
            )
            .expect("generated erase rule is well formed"),
        );

        for &zeta in used_sorts {
            // (φ ⋆₀ ζ) ⋆₁ τ_{ξ,ζ}  ⇛  τ_{x,ζ} ⋆₁ (ζ ⋆₀ φ)
            let mut inputs = x.clone();
            inputs.push(zeta);
            let mut lits = Vec::new();
            let mut b = DiagramBuilder::new(sig, &inputs);
            let ins = b.inputs();
            let moved = emit_tau_path(sig, &mut b, &ins[..n], ins[n]);
            let o = emit_ctor(sig, &mut b, phi, &moved[1..], &mut lits);
            let rhs = b.finish(&[moved[0], o]);
            rules.push(
                Rule::new(
                    sig,
                    &format!("swap-left/{}/{}", c.name, sig.sort_name(zeta)),
                    RuleKind::Structure,
                    sig.tau(xi, zeta),
                    vec![ctor_pattern(sig, phi, 0), Pattern::Var(n)],
                    vec![],
                    rhs,
                    lits,
                )
                .expect("generated swap rule is well formed"),
            );

            // (ζ ⋆₀ φ) ⋆₁ τ_{ζ,ξ}  ⇛  (ζ x => x ζ) ⋆₁ (φ ⋆₀ ζ)
            let mut inputs = vec![zeta];
            inputs.extend_from_slice(&x);
            let mut lits = Vec::new();
            let mut b = DiagramBuilder::new(sig, &inputs);
            let ins = b.inputs();
            let moved = emit_cross(sig, &mut b, ins[0], &ins[1..]);
            let o = emit_ctor(sig, &mut b, phi, &moved[..n], &mut lits);
            let rhs = b.finish(&[o, moved[n]]);
            rules.push(
                Rule::new(
                    sig,
                    &format!("swap-right/{}/{}", sig.sort_name(zeta), c.name),
                    RuleKind::Structure,
                    sig.tau(zeta, xi),
                    vec![Pattern::Var(0), ctor_pattern(sig, phi, 1)],
                    vec![],
                    rhs,
                    lits,
                )
                .expect("generated swap rule is well formed"),
            );
        }
    }
    rules
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> (Signature, SortId, SortId) {
        let mut sig = Signature::new();
        let nat = sig.add_sort("nat").unwrap();
        let list = sig.add_sort("list").unwrap();
        sig.add_constructor("num", vec![], nat, true).unwrap();
        sig.add_constructor("nil", vec![], list, false).unwrap();
        sig.add_constructor("cons", vec![nat, list], list, false).unwrap();
        (sig, nat, list)
    }

    #[test]
    fn base_cases() {
        let (sig, nat, list) = sig();
        let t = tau_path(&sig, &[nat], list);
        assert_eq!(t.cell_count(), 1);
        assert_eq!(t.nodes().next().unwrap().1.cell, sig.tau(nat, list));
        assert_eq!(tau_path(&sig, &[], list).canonical_form(), Diagram::identity(&[list]).canonical_form());
        assert_eq!(delta_path(&sig, &[nat]).nodes().next().unwrap().1.cell, sig.delta(nat));
        assert_eq!(delta_path(&sig, &[]).cell_count(), 0);
        assert_eq!(eps_path(&sig, &[]).canonical_form(), Diagram::identity(&[]).canonical_form());
        assert_eq!(eps_path(&sig, &[nat]).nodes().next().unwrap().1.cell, sig.eps(nat));
    }

    #[test]
    fn boundaries_and_validity() {
        let (sig, nat, list) = sig();
        let x = vec![nat, list, nat];
        let t = tau_path(&sig, &x, list);
        assert_eq!(t.inputs(), &[nat, list, nat, list]);
        assert_eq!(t.outputs(), &[list, nat, list, nat]);
        assert!(t.validate(&sig).is_ok());
        let d = delta_path(&sig, &x);
        assert_eq!(d.outputs(), &[nat, list, nat, nat, list, nat]);
        assert!(d.validate(&sig).is_ok());
        let e = eps_path(&sig, &x);
        assert!(e.outputs().is_empty());
        assert!(e.validate(&sig).is_ok());
        assert_eq!(delta_path(&sig, &[nat, list]).cell_count(), 3);
    }

    #[test]
    fn fusion_sort_signature_rule_count() {
        let (sig, nat, list) = sig();
        let rules = generate_structure_rules(&sig, &[nat, list]);
        assert_eq!(rules.len(), 18);
        assert!(rules.iter().all(|r| r.kind == RuleKind::Structure));
        let cons_dup = rules.iter().find(|r| r.name == "dup/cons").unwrap();
        assert_eq!(cons_dup.lhs.cell_count(), 2);
        assert_eq!(cons_dup.rhs.cell_count(), 5);
        let nil_erase = rules.iter().find(|r| r.name == "erase/nil").unwrap();
        assert_eq!(nil_erase.rhs.cell_count(), 0);
        assert!(nil_erase.rhs.inputs().is_empty() && nil_erase.rhs.outputs().is_empty());
    }
}
