//! Orbits of `U` on the pattern space under the truncated column
//! operation: family classification, canonical representatives,
//! stabilizers, staircase structure, orbit characters and their inner
//! products.

use crate::cyclo::{theta_exponent, CycInt, CycRat, ZetaCounter};
use crate::field::{FieldCtx, Fq, Fq3};
use crate::group::{enumerate_u, u_order, UElem};
use crate::pattern::{act_dot, chi_exponent, f_closed_on_u, kappa_q_patterns, Pattern};
use crate::{Error, Result};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::HashSet;

/// Orbit family, determined by the leading coordinates of any member:
/// `F6 ⇔ a₁₇ ≠ 0`, then `F5 ⇔ a₁₆ ≠ 0`, `F4 ⇔ a₁₅ ≠ 0`, `F3 ⇔ a₁₃ ≠ 0`,
/// else `F12`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum Family {
    F12,
    F3,
    F4,
    F5,
    F6,
}

impl Family {
    pub fn of(a: &Pattern) -> Family {
        if !a.a17.is_zero() {
            Family::F6
        } else if !a.a16.is_zero() {
            Family::F5
        } else if !a.a15.is_zero() {
            Family::F4
        } else if !a.a13.is_zero() {
            Family::F3
        } else {
            Family::F12
        }
    }

    /// Orbit size, constant across the family.
    pub fn orbit_size(&self, ctx: &FieldCtx) -> u64 {
        let q = ctx.q();
        match self {
            Family::F12 => 1,
            Family::F3 => q,
            Family::F4 | Family::F5 => q.pow(6),
            Family::F6 => q.pow(7),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::F12 => "F12",
            Family::F3 => "F3",
            Family::F4 => "F4",
            Family::F5 => "F5",
            Family::F6 => "F6",
        }
    }
}

/// Classifies a pattern: its family and the canonical representative of
/// its orbit. Two patterns lie in the same orbit iff their canonical
/// representatives coincide.
pub fn classify(ctx: &FieldCtx, a: &Pattern) -> (Family, Pattern) {
    let family = Family::of(a);
    let canonical = match family {
        Family::F6 => {
            // A12' = A12 + (A13·A16 + A15^(q+1)) / A17*
            let inv = ctx.inv(ctx.embed(a.a17)).unwrap();
            let num = ctx.add(
                ctx.mul(a.a13, ctx.embed(a.a16)),
                ctx.mul(ctx.frob(a.a15), a.a15),
            );
            let a12 = ctx.add(a.a12, ctx.mul(num, inv));
            Pattern::new(a12, Fq3(0), Fq3(0), Fq(0), a.a17, a.a23)
        }
        Family::F5 => {
            // A13' = A13 + A15^(q+1) / A16*
            let inv = ctx.inv(ctx.embed(a.a16)).unwrap();
            let a13 = ctx.add(a.a13, ctx.mul(ctx.mul(ctx.frob(a.a15), a.a15), inv));
            Pattern::new(Fq3(0), a13, Fq3(0), a.a16, Fq(0), a.a23)
        }
        Family::F4 => Pattern::new(Fq3(0), Fq3(0), a.a15, Fq(0), Fq(0), a.a23),
        Family::F3 => {
            let a12 = ctx.coset_rep(a.a13, a.a12);
            Pattern::new(a12, a.a13, Fq3(0), Fq(0), Fq(0), a.a23)
        }
        Family::F12 => *a,
    };
    (family, canonical)
}

/// How to enumerate an orbit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrbitMode {
    /// Closure of `{A}` under the one-parameter generator actions.
    Bfs,
    /// Sweep of the parametrized entry formulas over
    /// `(t₁, t₂, t₃, t₄) ∈ F_{q³} × F_q × F_{q³} × F_{q³}`.
    Closed,
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub base: Pattern,
    pub family: Family,
    pub canonical: Pattern,
    /// Sorted by canonical pattern index.
    pub members: Vec<Pattern>,
}

pub fn orbit(ctx: &FieldCtx, a: &Pattern, mode: OrbitMode) -> Result<Orbit> {
    let budget = ctx.q().pow(7);
    let mut set: HashSet<Pattern> = HashSet::new();
    match mode {
        OrbitMode::Closed => {
            for t1 in ctx.fq3_elements() {
                for t2 in ctx.fq_elements() {
                    for t3 in ctx.fq3_elements() {
                        for t4 in ctx.fq3_elements() {
                            let u = UElem::new(t1, t2, t3, t4, Fq(0), Fq(0));
                            set.insert(act_dot(ctx, a, &u));
                        }
                    }
                }
            }
        }
        OrbitMode::Bfs => {
            let mut frontier = vec![*a];
            set.insert(*a);
            while let Some(c) = frontier.pop() {
                let mut push = |b: Pattern, set: &mut HashSet<Pattern>| {
                    if set.insert(b) {
                        frontier.push(b);
                    }
                };
                for i in [1usize, 2, 3, 4] {
                    let dom: Vec<Fq3> = if [1, 3, 4].contains(&i) {
                        ctx.fq3_elements().collect()
                    } else {
                        ctx.fq_elements().map(|c| ctx.embed(c)).collect()
                    };
                    for t in dom {
                        let g = UElem::generator(ctx, i, t).unwrap();
                        push(act_dot(ctx, &c, &g), &mut set);
                    }
                }
                if set.len() as u64 > budget {
                    return Err(Error::BudgetExceeded(format!(
                        "orbit exceeded the maximal size q^7 = {budget}"
                    )));
                }
            }
        }
    }
    let mut members: Vec<Pattern> = set.into_iter().collect();
    members.sort_by_key(|m| m.to_index(ctx));
    let (family, canonical) = classify(ctx, a);
    Ok(Orbit {
        base: *a,
        family,
        canonical,
        members,
    })
}

// ---- stabilizers ----

/// Closed-form stabilizer description, one variant per family.
#[derive(Clone, Copy, Debug)]
pub enum StabDesc {
    /// All of `U`.
    Full,
    /// `X₁X₃X₄X₅X₆ = {x(t₁, 0, t₃, t₄, t₅, t₆)}`.
    NoT2,
    /// `{x(0, t₂, c·t₂, t₄, t₅, t₆)}`, `t₃` slaved to `t₂`.
    F4 { c: Fq3 },
    /// `{x(0, t₂, t₃, (−A₁₃^{q²}t₂ − A₁₅t₃ − A₁₅^{q²}t₃^q)/A₁₆*, t₅, t₆)}`.
    F5 { a13: Fq3, a15: Fq3, a16: Fq },
    /// `{x(t₁, 0, −A₁₆t₁/A₁₇*, (A₁₅t₁ + A₁₅^{q²}t₁^q + A₁₆t₁^{q+1})/A₁₇*, t₅, t₆)}`.
    F6 { a15: Fq3, a16: Fq, a17: Fq },
}

impl StabDesc {
    pub fn size(&self, ctx: &FieldCtx) -> u64 {
        let q = ctx.q();
        match self {
            StabDesc::Full => q.pow(12),
            StabDesc::NoT2 => q.pow(11),
            StabDesc::F4 { .. } | StabDesc::F5 { .. } => q.pow(6),
            StabDesc::F6 { .. } => q.pow(5),
        }
    }

    /// The element determined by the free parameters, per variant.
    fn assemble(&self, ctx: &FieldCtx, t1: Fq3, t2: Fq, t3: Fq3, t4: Fq3, t5: Fq, t6: Fq) -> UElem {
        match *self {
            StabDesc::Full => UElem::new(t1, t2, t3, t4, t5, t6),
            StabDesc::NoT2 => UElem::new(t1, Fq(0), t3, t4, t5, t6),
            StabDesc::F4 { c } => {
                let t3 = ctx.mul(c, ctx.embed(t2));
                UElem::new(Fq3(0), t2, t3, t4, t5, t6)
            }
            StabDesc::F5 { a13, a15, a16 } => {
                let num = ctx.neg(ctx.add(
                    ctx.mul(ctx.frob2(a13), ctx.embed(t2)),
                    ctx.add(ctx.mul(a15, t3), ctx.mul(ctx.frob2(a15), ctx.frob(t3))),
                ));
                let t4 = ctx.mul(num, ctx.inv(ctx.embed(a16)).unwrap());
                UElem::new(Fq3(0), t2, t3, t4, t5, t6)
            }
            StabDesc::F6 { a15, a16, a17 } => {
                let inv17 = ctx.inv(ctx.embed(a17)).unwrap();
                let t3 = ctx.neg(ctx.mul(ctx.mul(ctx.embed(a16), t1), inv17));
                let num = ctx.add(
                    ctx.mul(a15, t1),
                    ctx.add(
                        ctx.mul(ctx.frob2(a15), ctx.frob(t1)),
                        ctx.mul(ctx.embed(a16), ctx.mul(t1, ctx.frob(t1))),
                    ),
                );
                let t4 = ctx.mul(num, inv17);
                UElem::new(t1, Fq(0), t3, t4, t5, t6)
            }
        }
    }

    /// Decodes the `idx`-th stabilizer element from the mixed-radix free
    /// parameter space (`idx < size`).
    pub fn element(&self, ctx: &FieldCtx, idx: u64) -> UElem {
        let (q, q3) = (ctx.q(), ctx.q3());
        let mut i = idx;
        let mut take = |radix: u64| -> u32 {
            let d = (i % radix) as u32;
            i /= radix;
            d
        };
        match *self {
            StabDesc::Full => {
                let t1 = Fq3(take(q3));
                let t2 = Fq(take(q));
                let t3 = Fq3(take(q3));
                let t4 = Fq3(take(q3));
                let t5 = Fq(take(q));
                let t6 = Fq(take(q));
                UElem::new(t1, t2, t3, t4, t5, t6)
            }
            StabDesc::NoT2 => {
                let t1 = Fq3(take(q3));
                let t3 = Fq3(take(q3));
                let t4 = Fq3(take(q3));
                let t5 = Fq(take(q));
                let t6 = Fq(take(q));
                self.assemble(ctx, t1, Fq(0), t3, t4, t5, t6)
            }
            StabDesc::F4 { .. } => {
                let t2 = Fq(take(q));
                let t4 = Fq3(take(q3));
                let t5 = Fq(take(q));
                let t6 = Fq(take(q));
                self.assemble(ctx, Fq3(0), t2, Fq3(0), t4, t5, t6)
            }
            StabDesc::F5 { .. } => {
                let t2 = Fq(take(q));
                let t3 = Fq3(take(q3));
                let t5 = Fq(take(q));
                let t6 = Fq(take(q));
                self.assemble(ctx, Fq3(0), t2, t3, Fq3(0), t5, t6)
            }
            StabDesc::F6 { .. } => {
                let t1 = Fq3(take(q3));
                let t5 = Fq(take(q));
                let t6 = Fq(take(q));
                self.assemble(ctx, t1, Fq(0), Fq3(0), Fq3(0), t5, t6)
            }
        }
    }

    /// Lazily iterates the stabilizer elements.
    pub fn iter<'a>(&self, ctx: &'a FieldCtx) -> impl Iterator<Item = UElem> + 'a {
        let desc = *self;
        (0..self.size(ctx)).map(move |i| desc.element(ctx, i))
    }

    pub fn contains(&self, ctx: &FieldCtx, u: &UElem) -> bool {
        match *self {
            StabDesc::Full => true,
            StabDesc::NoT2 => u.t2.is_zero(),
            StabDesc::F4 { .. } | StabDesc::F5 { .. } => {
                u.t1.is_zero() && self.assemble(ctx, u.t1, u.t2, u.t3, u.t4, u.t5, u.t6) == *u
            }
            StabDesc::F6 { .. } => {
                u.t2.is_zero() && self.assemble(ctx, u.t1, u.t2, u.t3, u.t4, u.t5, u.t6) == *u
            }
        }
    }
}

/// Closed-form stabilizer of `A` per family.
pub fn stabilizer_closed(ctx: &FieldCtx, a: &Pattern) -> StabDesc {
    match Family::of(a) {
        Family::F12 => StabDesc::Full,
        Family::F3 => StabDesc::NoT2,
        Family::F4 => {
            // c = −(A13^(q²)·A15^q + A13^q·A15 − A13·A15^(q²)) / (2·A15^(q+1))
            let a13 = a.a13;
            let a15 = a.a15;
            let num = ctx.sub(
                ctx.add(
                    ctx.mul(ctx.frob2(a13), ctx.frob(a15)),
                    ctx.mul(ctx.frob(a13), a15),
                ),
                ctx.mul(a13, ctx.frob2(a15)),
            );
            let two = ctx.embed(ctx.fq_from_int(2));
            let den = ctx.mul(two, ctx.mul(ctx.frob(a15), a15));
            StabDesc::F4 {
                c: ctx.neg(ctx.mul(num, ctx.inv(den).unwrap())),
            }
        }
        Family::F5 => StabDesc::F5 {
            a13: a.a13,
            a15: a.a15,
            a16: a.a16,
        },
        Family::F6 => StabDesc::F6 {
            a15: a.a15,
            a16: a.a16,
            a17: a.a17,
        },
    }
}

/// Brute-force stabilizer by scanning all of `U`; only for enumerable
/// group orders.
pub fn stabilizer_brute(ctx: &FieldCtx, a: &Pattern) -> Result<Vec<UElem>> {
    Ok(enumerate_u(ctx)?
        .filter(|u| act_dot(ctx, a, u) == *a)
        .collect())
}

/// Joint stabilizer `Stab_U(A) ∩ Stab_U(B)`, computed by filtering the
/// smaller closed-form side.
pub fn joint_stabilizer<'a>(
    ctx: &'a FieldCtx,
    a: &'a Pattern,
    b: &'a Pattern,
) -> Box<dyn Iterator<Item = UElem> + 'a> {
    let sa = stabilizer_closed(ctx, a);
    let sb = stabilizer_closed(ctx, b);
    if sa.size(ctx) <= sb.size(ctx) {
        Box::new(sa.iter(ctx).filter(move |u| act_dot(ctx, b, u) == *b))
    } else {
        Box::new(sb.iter(ctx).filter(move |u| act_dot(ctx, a, u) == *a))
    }
}

// ---- staircase structure ----

/// Structural data of a pattern per the main/minor/verge/core definitions.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    /// Rightmost nonzero coordinate per row.
    pub main: Vec<(usize, usize)>,
    /// Mirrors (i, 9−j) of main conditions, intersected with J.
    pub minor: Vec<(usize, usize)>,
    /// The pattern truncated to its main conditions, as coordinate/value
    /// pairs (the verge need not satisfy the V-constraint on (1,4)).
    pub verge: Vec<((usize, usize), u32)>,
    pub core: Vec<(usize, usize)>,
    pub is_staircase: bool,
    pub is_hook_separated: bool,
    pub is_core_pattern: bool,
}

/// Support of a pattern inside J ((1,4) mirrors (1,5)).
fn support(a: &Pattern) -> Vec<(usize, usize)> {
    let mut s = Vec::new();
    if !a.a12.is_zero() {
        s.push((1, 2));
    }
    if !a.a13.is_zero() {
        s.push((1, 3));
    }
    if !a.a15.is_zero() {
        s.push((1, 4));
        s.push((1, 5));
    }
    if !a.a16.is_zero() {
        s.push((1, 6));
    }
    if !a.a17.is_zero() {
        s.push((1, 7));
    }
    if !a.a23.is_zero() {
        s.push((2, 3));
    }
    s
}

pub fn structure(ctx: &FieldCtx, a: &Pattern) -> StructureReport {
    let supp = support(a);
    let mut main = Vec::new();
    if let Some(&(i, j)) = supp.iter().filter(|&&(i, _)| i == 1).max_by_key(|&&(_, j)| j) {
        main.push((i, j));
    }
    if supp.contains(&(2, 3)) {
        main.push((2, 3));
    }
    let minor: Vec<(usize, usize)> = main
        .iter()
        .filter_map(|&(i, j)| {
            let mirror = (i, 9 - j);
            (mirror.1 <= 4 && J_SET.contains(&mirror)).then_some(mirror)
        })
        .collect();
    let verge: Vec<((usize, usize), u32)> = main
        .iter()
        .map(|&(i, j)| {
            let v = match (i, j) {
                (1, 2) => a.a12.0,
                (1, 3) => a.a13.0,
                (1, 4) => a.a14(ctx).0,
                (1, 5) => a.a15.0,
                (1, 6) => a.a16.0,
                (1, 7) => a.a17.0,
                (2, 3) => a.a23.0,
                _ => unreachable!(),
            };
            ((i, j), v)
        })
        .collect();
    let mut core: Vec<(usize, usize)> = main.iter().chain(minor.iter()).copied().collect();
    core.sort_unstable();
    // staircase: main conditions in distinct columns
    let is_staircase = {
        let cols: Vec<usize> = main.iter().map(|&(_, j)| j).collect();
        let mut dedup = cols.clone();
        dedup.sort_unstable();
        dedup.dedup();
        dedup.len() == cols.len()
    };
    // hook-separated: at most one main condition per hook H_i
    let is_hook_separated = (1..=8).all(|h| {
        main.iter()
            .filter(|&&(a_, b_)| b_ == h || a_ == 9 - h)
            .count()
            <= 1
    });
    let is_core_pattern = supp.iter().all(|c| core.contains(c));
    StructureReport {
        main,
        minor,
        verge,
        core,
        is_staircase,
        is_hook_separated,
        is_core_pattern,
    }
}

const J_SET: [(usize, usize); 7] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (1, 7),
    (2, 3),
];

/// Reduces a pattern to a hook-separated staircase representative of an
/// isomorphic orbit module; the witnesses are the group elements whose
/// left multiplication realizes the isomorphisms, in application order.
pub fn staircase_reduce(ctx: &FieldCtx, a: &Pattern) -> (Pattern, Vec<UElem>) {
    let mut cur = *a;
    let mut witnesses = Vec::new();
    // (1,3) and (2,3) both main: delete (2,3) with x1(t1), π_q(t1·A13*) = A23
    if !cur.a13.is_zero()
        && cur.a15.is_zero()
        && cur.a16.is_zero()
        && cur.a17.is_zero()
        && !cur.a23.is_zero()
    {
        let t1 = ctx
            .fq3_elements()
            .find(|&t| ctx.piq(ctx.mul(t, cur.a13)) == cur.a23)
            .expect("pi_q(·A13) is onto F_q for A13 != 0");
        witnesses.push(UElem::generator(ctx, 1, t1).unwrap());
        cur.a23 = Fq(0);
    }
    // (1,7) and (2,3) both main: delete (2,3) with x5(s5), s5 = −A23/A17*
    if !cur.a17.is_zero() && !cur.a23.is_zero() {
        let s5 = ctx.fq_mul(ctx.fq_neg(cur.a23), ctx.fq_inv(cur.a17).unwrap());
        witnesses.push(UElem::generator(ctx, 5, ctx.embed(s5)).unwrap());
        cur.a23 = Fq(0);
    }
    debug_assert!(structure(ctx, &cur).is_hook_separated);
    (cur, witnesses)
}

// ---- orbit characters ----

/// ζ-exponent sum of `ψ_A(u) = Σ_{C ∈ O(A), C.u = C} χ_C(u)` over
/// precomputed orbit members.
pub fn psi_over_members(ctx: &FieldCtx, members: &[Pattern], u: &UElem) -> CycInt {
    let mut zc = ZetaCounter::new(ctx.p() as u32);
    for c in members {
        if act_dot(ctx, c, u) == *c {
            zc.add_zeta_pow(chi_exponent(ctx, c, u));
        }
    }
    zc.finish()
}

/// `ψ_A(u)`, materializing the orbit.
pub fn psi(ctx: &FieldCtx, a: &Pattern, u: &UElem) -> Result<CycInt> {
    let orb = orbit(ctx, a, OrbitMode::Closed)?;
    Ok(psi_over_members(ctx, &orb.members, u))
}

/// `⟨ψ_A, ψ_B⟩_U` by the stabilizer formula:
/// `Σ_{D ∈ O(B)} |Stab(A,D)|/|Stab(A)| · ⟨χ_A, χ_D⟩_{Stab(A,D)}` with the
/// inner product evaluated as an exact average of `ϑκ_q(A−D, f(y))`.
pub fn inner_product_psi(ctx: &FieldCtx, a: &Pattern, b: &Pattern) -> Result<CycRat> {
    let orb_b = orbit(ctx, b, OrbitMode::Closed)?;
    let stab_a = stabilizer_closed(ctx, a);
    let mut zc = ZetaCounter::new(ctx.p() as u32);
    for d in &orb_b.members {
        let diff = a.sub(ctx, d);
        for y in joint_stabilizer(ctx, a, d) {
            let e = theta_exponent(ctx, kappa_q_patterns(ctx, &diff, &f_closed_on_u(ctx, &y)));
            zc.add_zeta_pow(e);
        }
    }
    Ok(CycRat::new(zc.finish(), BigInt::from(stab_a.size(ctx))))
}

/// Direct-definition oracle `(1/|U|) Σ_u ψ_A(u)·conj(ψ_B(u))`; only viable
/// for small orbits over enumerable `U`.
pub fn inner_product_psi_direct(ctx: &FieldCtx, a: &Pattern, b: &Pattern) -> Result<CycRat> {
    let orb_a = orbit(ctx, a, OrbitMode::Closed)?;
    let orb_b = orbit(ctx, b, OrbitMode::Closed)?;
    let mut acc = CycInt::zero(ctx.p() as u32);
    for u in enumerate_u(ctx)? {
        let pa = psi_over_members(ctx, &orb_a.members, &u);
        let pb = psi_over_members(ctx, &orb_b.members, &u);
        acc = acc.add(&pa.mul(&pb.conj()));
    }
    Ok(CycRat::new(acc, BigInt::from(u_order(ctx))))
}
