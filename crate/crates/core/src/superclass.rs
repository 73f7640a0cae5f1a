//! The superclass partition of `U`: closed-form classification of
//! elements, class sizes and representatives, and exhaustive/sampled
//! partition verification.

use crate::field::{FieldCtx, Fq, Fq3};
use crate::group::{u_from_index, u_order, UElem};
use crate::Result;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// Identifier of a superclass, with the defining parameters.
///
/// `C13` carries the transversal representative of `t₃` modulo `t₁·F_q`;
/// `C2` deliberately carries only `t₂`: the finer biorbit structure inside
/// it is exposed separately as [`SubBiorbit`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum SuperclassId {
    C0,
    C6(Fq),
    C5(Fq),
    C4(Fq3),
    C3(Fq3),
    C2(Fq),
    C13(Fq3, Fq3),
    C12(Fq3, Fq),
}

impl SuperclassId {
    pub fn family_name(&self) -> &'static str {
        match self {
            SuperclassId::C0 => "C0",
            SuperclassId::C6(_) => "C6",
            SuperclassId::C5(_) => "C5",
            SuperclassId::C4(_) => "C4",
            SuperclassId::C3(_) => "C3",
            SuperclassId::C2(_) => "C2",
            SuperclassId::C13(..) => "C1",
            SuperclassId::C12(..) => "C12",
        }
    }

    /// Closed-form size of the class.
    pub fn size(&self, ctx: &FieldCtx) -> u64 {
        let q = ctx.q();
        match self {
            SuperclassId::C0 | SuperclassId::C6(_) => 1,
            SuperclassId::C5(_) => q,
            SuperclassId::C4(_) => q * q,
            SuperclassId::C3(_) => q.pow(5),
            // (q³−1) biorbits of size q⁵ plus q biorbits of size q⁴
            SuperclassId::C2(_) => (q.pow(3) - 1) * q.pow(5) + q * q.pow(4),
            SuperclassId::C13(..) => q.pow(6),
            SuperclassId::C12(..) => q.pow(8),
        }
    }

    /// The defining representative element from the partition table.
    pub fn representative(&self, ctx: &FieldCtx) -> UElem {
        let rep = match *self {
            SuperclassId::C0 => UElem::IDENTITY,
            SuperclassId::C6(t6) => UElem::new(Fq3(0), Fq(0), Fq3(0), Fq3(0), Fq(0), t6),
            SuperclassId::C5(t5) => UElem::new(Fq3(0), Fq(0), Fq3(0), Fq3(0), t5, Fq(0)),
            SuperclassId::C4(t4) => UElem::new(Fq3(0), Fq(0), Fq3(0), t4, Fq(0), Fq(0)),
            SuperclassId::C3(t3) => UElem::new(Fq3(0), Fq(0), t3, Fq3(0), Fq(0), Fq(0)),
            SuperclassId::C2(t2) => UElem::new(Fq3(0), t2, Fq3(0), Fq3(0), Fq(0), Fq(0)),
            SuperclassId::C13(t1, t3bar) => UElem::new(t1, Fq(0), t3bar, Fq3(0), Fq(0), Fq(0)),
            SuperclassId::C12(t1, t2) => UElem::new(t1, t2, Fq3(0), Fq3(0), Fq(0), Fq(0)),
        };
        debug_assert_eq!(classify_element(ctx, &rep), *self);
        rep
    }
}

/// Finer diagnostic label inside `C2(t₂*)`: the biorbit of `x₂x₄` or
/// `x₂x₅` type that the merged class retains internally.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SubBiorbit {
    /// `x₂(t₂*)x₄(t₄*)`, `t₄* ≠ 0`; size q⁵.
    X2X4(Fq, Fq3),
    /// `x₂(t₂*)x₅(t₅)`; size q⁴.
    X2X5(Fq, Fq),
}

/// Classifies an element by reading its parameter tuple. Total function.
pub fn classify_element(ctx: &FieldCtx, u: &UElem) -> SuperclassId {
    if !u.t1.is_zero() {
        if !u.t2.is_zero() {
            return SuperclassId::C12(u.t1, u.t2);
        }
        return SuperclassId::C13(u.t1, ctx.coset_rep(u.t1, u.t3));
    }
    if !u.t2.is_zero() {
        return SuperclassId::C2(u.t2);
    }
    if !u.t3.is_zero() {
        return SuperclassId::C3(u.t3);
    }
    if !u.t4.is_zero() {
        return SuperclassId::C4(u.t4);
    }
    if !u.t5.is_zero() {
        return SuperclassId::C5(u.t5);
    }
    if !u.t6.is_zero() {
        return SuperclassId::C6(u.t6);
    }
    SuperclassId::C0
}

/// Finer classification inside `C2`: recovers `t₄* = t₄ + t₃^{q+1}/t₂`
/// and labels the biorbit.
pub fn classify_element_fine(ctx: &FieldCtx, u: &UElem) -> Option<SubBiorbit> {
    if !u.t1.is_zero() || u.t2.is_zero() {
        return None;
    }
    let inv_t2 = ctx.inv(ctx.embed(u.t2)).unwrap();
    let t3_norm_q1 = ctx.mul(ctx.frob(u.t3), u.t3); // t3^(q+1)
    let t4_star = ctx.add(u.t4, ctx.mul(t3_norm_q1, inv_t2));
    if !t4_star.is_zero() {
        return Some(SubBiorbit::X2X4(u.t2, t4_star));
    }
    // t5* = t5 − t3^(q²+q+1)/t2²
    let norm = ctx.mul(ctx.frob2(u.t3), t3_norm_q1);
    let t5_star = ctx.sub(
        ctx.embed(u.t5),
        ctx.mul(norm, ctx.mul(inv_t2, inv_t2)),
    );
    let t5_star = ctx.try_subfield(t5_star).expect("t5* lies in F_q");
    Some(SubBiorbit::X2X5(u.t2, t5_star))
}

/// All superclass ids in canonical order: `C0`, then `C6, C5, C4, C3, C2,
/// C13, C12`, parameters ascending in canonical field order.
pub fn enumerate_ids(ctx: &FieldCtx) -> Vec<SuperclassId> {
    let mut ids = vec![SuperclassId::C0];
    let fq_star = || (1..ctx.q() as u32).map(Fq);
    let fq3_star = || (1..ctx.q3() as u32).map(Fq3);
    ids.extend(fq_star().map(SuperclassId::C6));
    ids.extend(fq_star().map(SuperclassId::C5));
    ids.extend(fq3_star().map(SuperclassId::C4));
    ids.extend(fq3_star().map(SuperclassId::C3));
    ids.extend(fq_star().map(SuperclassId::C2));
    for t1 in fq3_star() {
        for t3bar in ctx.transversal(t1).unwrap() {
            ids.push(SuperclassId::C13(t1, t3bar));
        }
    }
    for t1 in fq3_star() {
        for t2 in fq_star() {
            ids.push(SuperclassId::C12(t1, t2));
        }
    }
    ids
}

/// Closed-form count `q⁵ + q⁴ + q³ − q² + 2q − 3`.
pub fn expected_id_count(ctx: &FieldCtx) -> u64 {
    let q = ctx.q();
    q.pow(5) + q.pow(4) + q.pow(3) - q * q + 2 * q - 3
}

/// Iterates the members of a superclass per the partition table rows.
pub fn superclass_members<'a>(
    ctx: &'a FieldCtx,
    id: SuperclassId,
) -> Box<dyn Iterator<Item = UElem> + 'a> {
    let fq = move || ctx.fq_elements();
    let fq3 = move || ctx.fq3_elements();
    match id {
        SuperclassId::C0 => Box::new(std::iter::once(UElem::IDENTITY)),
        SuperclassId::C6(t6) => Box::new(std::iter::once(UElem::new(
            Fq3(0),
            Fq(0),
            Fq3(0),
            Fq3(0),
            Fq(0),
            t6,
        ))),
        SuperclassId::C5(t5) => Box::new(
            fq().map(move |s6| UElem::new(Fq3(0), Fq(0), Fq3(0), Fq3(0), t5, s6)),
        ),
        SuperclassId::C4(t4) => Box::new(fq().flat_map(move |s5| {
            fq().map(move |s6| UElem::new(Fq3(0), Fq(0), Fq3(0), t4, s5, s6))
        })),
        SuperclassId::C3(t3) => Box::new(fq3().flat_map(move |s4| {
            fq().flat_map(move |s5| fq().map(move |s6| UElem::new(Fq3(0), Fq(0), t3, s4, s5, s6)))
        })),
        SuperclassId::C2(t2) => {
            // all x(0, t2, s3, t4, s5, s6): the union of the x2x4 biorbits
            // over t4* ∈ F_{q³}^* and the x2x5 biorbits over t5 ∈ F_q is
            // everything with fixed t2, by the t4* recovery formula
            Box::new(fq3().flat_map(move |s3| {
                fq3().flat_map(move |t4| {
                    fq().flat_map(move |s5| {
                        fq().map(move |s6| UElem::new(Fq3(0), t2, s3, t4, s5, s6))
                    })
                })
            }))
        }
        SuperclassId::C13(t1, t3bar) => Box::new(fq().flat_map(move |s| {
            let t3 = ctx.add(t3bar, ctx.mul(t1, ctx.embed(s)));
            fq3().flat_map(move |s4| {
                fq().flat_map(move |s5| fq().map(move |s6| UElem::new(t1, Fq(0), t3, s4, s5, s6)))
            })
        })),
        SuperclassId::C12(t1, t2) => Box::new(fq3().flat_map(move |s3| {
            fq3().flat_map(move |s4| {
                fq().flat_map(move |s5| fq().map(move |s6| UElem::new(t1, t2, s3, s4, s5, s6)))
            })
        })),
    }
}

/// Outcome of a partition verification run.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub exhaustive: bool,
    pub elements_checked: u64,
    pub id_count: u64,
    pub expected_id_count: u64,
    /// Observed size per family (summed over ids), against closed forms.
    pub family_sizes: Vec<(String, u64, u64)>,
    pub size_mismatches: u64,
    pub conjugation_violations: u64,
    pub biorbit_spot_checks: u64,
    pub biorbit_violations: u64,
    pub passed: bool,
}

/// Verifies the partition: (a) total single-valued classification,
/// (b) observed sizes match the closed forms, (c) conjugation closure
/// under all generators. Exhaustive when `U` is enumerable, else `budget`
/// seeded samples.
pub fn verify_partition(ctx: &FieldCtx, budget: u64, seed: u64) -> Result<PartitionReport> {
    let exhaustive = u_order(ctx) <= 1 << 24;
    let ids = enumerate_ids(ctx);
    let id_count = ids.len() as u64;

    // generator list for conjugation closure, with matrices precomputed
    let mut gens: Vec<(crate::mat::MatQ3, crate::mat::MatQ3)> = Vec::new();
    {
        let mut push = |u: UElem| {
            let m = u.matrix(ctx);
            gens.push((m.inv_unitriangular(ctx), m));
        };
        for i in [1usize, 3, 4] {
            for t in ctx.fq3_elements().skip(1) {
                push(UElem::generator(ctx, i, t).unwrap());
            }
        }
        for i in [2usize, 5, 6] {
            for t in ctx.fq_elements().skip(1) {
                push(UElem::generator(ctx, i, ctx.embed(t)).unwrap());
            }
        }
    }

    let check_one = |u: &UElem| -> (SuperclassId, u64) {
        let id = classify_element(ctx, u);
        let m = u.matrix(ctx);
        let mut violations = 0u64;
        for (ginv, g) in &gens {
            let conj = crate::group::extract_params_unchecked(ctx, &ginv.mul(ctx, &m).mul(ctx, g));
            if classify_element(ctx, &conj) != id {
                violations += 1;
            }
        }
        (id, violations)
    };

    let (counts, conj_violations, checked) = if exhaustive {
        let total = u_order(ctx);
        let chunk = 1u64 << 14;
        let results: Vec<(HashMap<SuperclassId, u64>, u64)> = (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|c| {
                let lo = c * chunk;
                let hi = (lo + chunk).min(total);
                let mut counts: HashMap<SuperclassId, u64> = HashMap::new();
                let mut violations = 0u64;
                for i in lo..hi {
                    let u = u_from_index(ctx, i);
                    let (id, v) = check_one(&u);
                    *counts.entry(id).or_insert(0) += 1;
                    violations += v;
                }
                (counts, violations)
            })
            .collect();
        let mut counts: HashMap<SuperclassId, u64> = HashMap::new();
        let mut violations = 0u64;
        for (c, v) in results {
            for (id, n) in c {
                *counts.entry(id).or_insert(0) += n;
            }
            violations += v;
        }
        (counts, violations, total)
    } else {
        let results: Vec<(SuperclassId, u64)> = (0..budget)
            .into_par_iter()
            .map(|i| {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
                let u = crate::group::random_u(ctx, &mut rng);
                check_one(&u)
            })
            .collect();
        let mut counts: HashMap<SuperclassId, u64> = HashMap::new();
        let mut violations = 0u64;
        for (id, v) in results {
            *counts.entry(id).or_insert(0) += 1;
            violations += v;
        }
        (counts, violations, budget)
    };

    // (b) sizes: exhaustively, each id's observed count must equal its
    // closed form and every id must appear
    let mut size_mismatches = 0u64;
    let mut family_sizes: HashMap<&'static str, (u64, u64)> = HashMap::new();
    for id in &ids {
        let expected = if exhaustive { id.size(ctx) } else { 0 };
        let observed = counts.get(id).copied().unwrap_or(0);
        if exhaustive && observed != expected {
            size_mismatches += 1;
        }
        let entry = family_sizes.entry(id.family_name()).or_insert((0, 0));
        entry.0 += observed;
        entry.1 += id.size(ctx);
    }
    // ids outside the enumeration would be a classification bug
    for id in counts.keys() {
        if !ids.contains(id) {
            size_mismatches += 1;
        }
    }
    let mut family_sizes: Vec<(String, u64, u64)> = family_sizes
        .into_iter()
        .map(|(k, (o, e))| (k.to_string(), o, e))
        .collect();
    family_sizes.sort();

    // biorbit spot-check: random x, y ∈ G with 1 + x(u−1)y ∈ U must stay
    // in the same superclass
    let (bio_checks, bio_violations) = biorbit_spot_check(ctx, budget.min(20000), seed);

    let passed = size_mismatches == 0
        && conj_violations == 0
        && bio_violations == 0
        && id_count == expected_id_count(ctx);
    Ok(PartitionReport {
        exhaustive,
        elements_checked: checked,
        id_count,
        expected_id_count: expected_id_count(ctx),
        family_sizes,
        size_mismatches,
        conjugation_violations: conj_violations,
        biorbit_spot_checks: bio_checks,
        biorbit_violations: bio_violations,
        passed,
    })
}

/// Samples the defining biorbits: draws `u ∈ U`, `x, y ∈ G`, forms
/// `1 + x(u−1)y`, and whenever that lands in `U`, asserts it classifies to
/// the same superclass as `u`.
fn biorbit_spot_check(ctx: &FieldCtx, samples: u64, seed: u64) -> (u64, u64) {
    use crate::mat::MatQ3;
    use rand::SeedableRng;
    let results: Vec<(u64, u64)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ (i.wrapping_mul(0x9e3779b9)));
            let u = crate::group::random_u(ctx, &mut rng);
            let x = crate::group::random_g(ctx, &mut rng);
            let y = crate::group::random_g(ctx, &mut rng);
            let um1 = u.matrix(ctx).sub(ctx, &MatQ3::identity());
            let m = MatQ3::identity().add(ctx, &x.matrix().mul(ctx, &um1).mul(ctx, y.matrix()));
            match crate::group::extract_params(ctx, &m) {
                Ok(v) => {
                    let same = classify_element(ctx, &v) == classify_element(ctx, &u);
                    (1, u64::from(!same))
                }
                Err(_) => (0, 0),
            }
        })
        .collect();
    results
        .into_iter()
        .fold((0, 0), |(c, v), (dc, dv)| (c + dc, v + dv))
}

/// Census entry for the JSON export.
#[derive(Serialize)]
pub struct SuperclassCensusRow {
    pub family: String,
    pub params: Vec<Vec<u32>>,
    pub size: u64,
}

pub fn census(ctx: &FieldCtx) -> Vec<SuperclassCensusRow> {
    enumerate_ids(ctx)
        .into_iter()
        .map(|id| {
            let params: Vec<Vec<u32>> = match id {
                SuperclassId::C0 => vec![],
                SuperclassId::C6(t) | SuperclassId::C5(t) | SuperclassId::C2(t) => {
                    vec![vec![t.0]]
                }
                SuperclassId::C4(t) | SuperclassId::C3(t) => {
                    vec![ctx.fq3_coeffs(t).iter().map(|c| c.0).collect()]
                }
                SuperclassId::C13(t1, t3) => vec![
                    ctx.fq3_coeffs(t1).iter().map(|c| c.0).collect(),
                    ctx.fq3_coeffs(t3).iter().map(|c| c.0).collect(),
                ],
                SuperclassId::C12(t1, t2) => vec![
                    ctx.fq3_coeffs(t1).iter().map(|c| c.0).collect(),
                    vec![t2.0],
                ],
            };
            SuperclassCensusRow {
                family: id.family_name().to_string(),
                params,
                size: id.size(ctx),
            }
        })
        .collect()
}

/// Σ of closed-form sizes over all ids; must equal `|U|`.
pub fn total_size(ctx: &FieldCtx) -> u64 {
    enumerate_ids(ctx).iter().map(|id| id.size(ctx)).sum()
}
