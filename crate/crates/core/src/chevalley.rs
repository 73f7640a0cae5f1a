//! Chevalley basis matrices of type D₄, the triality permutation on the
//! twelve positive roots, and the twisted root elements `x₁, …, x₆`.

use crate::field::{FieldCtx, Fq, Fq3};
use crate::mat::MatQ3;
use crate::{Error, Result};

/// Signed two-entry support of `e_{r_i}`: (row, col, sign) pairs, 1-based.
/// The sign convention follows the chosen Chevalley basis; note the minus
/// on the whole of `e_{r₅}`.
const CHEVALLEY_SUPPORT: [[(usize, usize, i8); 2]; 12] = [
    [(1, 2, 1), (7, 8, -1)],  // r1
    [(2, 3, 1), (6, 7, -1)],  // r2
    [(3, 4, 1), (5, 6, -1)],  // r3
    [(3, 5, 1), (4, 6, -1)],  // r4
    [(1, 3, -1), (6, 8, 1)],  // r5 = −(e13 − e68)
    [(2, 4, 1), (5, 7, -1)],  // r6
    [(2, 5, 1), (4, 7, -1)],  // r7
    [(1, 4, 1), (5, 8, -1)],  // r8
    [(1, 5, 1), (4, 8, -1)],  // r9
    [(2, 6, 1), (3, 7, -1)],  // r10
    [(1, 6, 1), (3, 8, -1)],  // r11
    [(1, 7, 1), (2, 8, -1)],  // r12
];

/// Triality permutation ρ on root indices 1..=12:
/// (1 3 4)(5 6 7)(8 10 9), fixing 2, 11, 12.
pub fn rho(i: usize) -> usize {
    match i {
        1 => 3,
        3 => 4,
        4 => 1,
        5 => 6,
        6 => 7,
        7 => 5,
        8 => 10,
        10 => 9,
        9 => 8,
        2 | 11 | 12 => i,
        _ => panic!("root index out of range: {i}"),
    }
}

/// The Chevalley basis matrix `e_{r_i}`, `i ∈ 1..=12`.
pub fn chevalley_e(ctx: &FieldCtx, i: usize) -> Result<MatQ3> {
    if !(1..=12).contains(&i) {
        return Err(Error::IndexOutOfRange);
    }
    let mut m = MatQ3::zero();
    for &(r, c, s) in &CHEVALLEY_SUPPORT[i - 1] {
        let v = if s > 0 { Fq3(1) } else { ctx.neg(Fq3(1)) };
        m.set(r, c, v);
    }
    Ok(m)
}

/// Untwisted root element `x_{r_i}(t) = I₈ + t·e_{r_i}`.
pub fn untwisted_root_element(ctx: &FieldCtx, i: usize, t: Fq3) -> Result<MatQ3> {
    let mut m = chevalley_e(ctx, i)?;
    for r in 0..8 {
        for c in 0..8 {
            m.m[r][c] = ctx.mul(t, m.m[r][c]);
        }
        m.m[r][r] = ctx.add(m.m[r][r], Fq3(1));
    }
    Ok(m)
}

/// Twisted root element `x_i(t)`, `i ∈ 1..=6`.
///
/// `x₁, x₃, x₄` take `t ∈ F_{q³}` and expand into the three untwisted
/// factors of a ρ-orbit with parameters `t, t^q, t^{q²}`; `x₂, x₅, x₆`
/// require `t ∈ F_q`.
pub fn root_element(ctx: &FieldCtx, i: usize, t: Fq3) -> Result<MatQ3> {
    let triple = |a: usize, b: usize, c: usize| -> MatQ3 {
        let m1 = untwisted_root_element(ctx, a, t).unwrap();
        let m2 = untwisted_root_element(ctx, b, ctx.frob(t)).unwrap();
        let m3 = untwisted_root_element(ctx, c, ctx.frob2(t)).unwrap();
        m1.mul(ctx, &m2).mul(ctx, &m3)
    };
    match i {
        1 => Ok(triple(1, 3, 4)),
        3 => Ok(triple(5, 6, 7)),
        4 => Ok(triple(8, 10, 9)),
        2 | 5 | 6 => {
            if !ctx.in_subfield(t) {
                return Err(Error::NotInFq);
            }
            let r = match i {
                2 => 2,
                5 => 11,
                _ => 12,
            };
            untwisted_root_element(ctx, r, t)
        }
        _ => Err(Error::IndexOutOfRange),
    }
}

/// Convenience form for `x₂, x₅, x₆` taking the parameter in `F_q`.
pub fn root_element_fq(ctx: &FieldCtx, i: usize, t: Fq) -> MatQ3 {
    root_element(ctx, i, ctx.embed(t)).expect("subfield parameter is always valid")
}

/// The closed-form matrix of `x(t₁, t₂, t₃, t₄, t₅, t₆)
/// = x₂(t₂)x₁(t₁)x₃(t₃)x₄(t₄)x₅(t₅)x₆(t₆)` with all 28 upper entries
/// written out. This is the production path; tests cross-assert it against
/// the ordered generator product.
pub fn closed_form_matrix(
    ctx: &FieldCtx,
    t1: Fq3,
    t2: Fq,
    t3: Fq3,
    t4: Fq3,
    t5: Fq,
    t6: Fq,
) -> MatQ3 {
    let f = |x: Fq3| ctx.frob(x);
    let f2 = |x: Fq3| ctx.frob2(x);
    let mul = |a: Fq3, b: Fq3| ctx.mul(a, b);
    let t2e = ctx.embed(t2);
    let t5e = ctx.embed(t5);
    let t6e = ctx.embed(t6);
    let t1q = f(t1);
    let t1q2 = f2(t1);
    let t3q = f(t3);
    let t3q2 = f2(t3);
    let t4q = f(t4);
    let t4q2 = f2(t4);
    let t1_q2q = mul(t1q2, t1q); // t1^(q²+q)
    let t3_q2q = mul(t3q2, t3q);

    let mut m = MatQ3::identity();
    let mut set = |i: usize, j: usize, terms: &[Fq3]| {
        let mut acc = Fq3(0);
        for &t in terms {
            acc = ctx.add(acc, t);
        }
        m.set(i, j, acc);
    };

    // row 1
    set(1, 2, &[t1]);
    set(1, 3, &[ctx.neg(t3)]);
    set(1, 4, &[mul(t1, t3q), t4]);
    set(1, 5, &[mul(t1, t3q2), t4q2]);
    set(1, 6, &[mul(t1, t4q), t5e]);
    set(1, 7, &[ctx.neg(mul(t1, t3_q2q)), mul(t3, t4q), t6e]);
    set(
        1,
        8,
        &[
            ctx.neg(mul(t1, mul(t3q, t4q2))),
            ctx.neg(mul(t1, mul(t3q2, t4))),
            ctx.neg(mul(t1, t6e)),
            mul(t3, t5e),
            ctx.neg(mul(t4q2, t4)),
        ],
    );
    // row 2
    set(2, 3, &[t2e]);
    set(2, 4, &[mul(t1q, t2e), t3q]);
    set(2, 5, &[mul(t1q2, t2e), t3q2]);
    set(2, 6, &[ctx.neg(mul(t1_q2q, t2e)), t4q]);
    set(
        2,
        7,
        &[
            ctx.neg(mul(t1q, mul(t2e, t3q2))),
            ctx.neg(mul(t1q2, mul(t2e, t3q))),
            ctx.neg(mul(t2e, t4q)),
            ctx.neg(t3_q2q),
        ],
    );
    set(
        2,
        8,
        &[
            ctx.neg(mul(t1_q2q, mul(t2e, t3))),
            ctx.neg(mul(t1q, mul(t2e, t4q2))),
            ctx.neg(mul(t1q2, mul(t2e, t4))),
            ctx.neg(mul(t2e, t5e)),
            ctx.neg(mul(t3q, t4q2)),
            ctx.neg(mul(t3q2, t4)),
            ctx.neg(t6e),
        ],
    );
    // row 3
    set(3, 4, &[t1q]);
    set(3, 5, &[t1q2]);
    set(3, 6, &[ctx.neg(t1_q2q)]);
    set(
        3,
        7,
        &[
            ctx.neg(mul(t1q, t3q2)),
            ctx.neg(mul(t1q2, t3q)),
            ctx.neg(t4q),
        ],
    );
    set(
        3,
        8,
        &[
            ctx.neg(mul(t1_q2q, t3)),
            ctx.neg(mul(t1q, t4q2)),
            ctx.neg(mul(t1q2, t4)),
            ctx.neg(t5e),
        ],
    );
    // row 4 ((4,5) stays 0)
    set(4, 6, &[ctx.neg(t1q2)]);
    set(4, 7, &[ctx.neg(t3q2)]);
    set(4, 8, &[ctx.neg(mul(t1q2, t3)), ctx.neg(t4q2)]);
    // row 5
    set(5, 6, &[ctx.neg(t1q)]);
    set(5, 7, &[ctx.neg(t3q)]);
    set(5, 8, &[ctx.neg(mul(t1q, t3)), ctx.neg(t4)]);
    // row 6
    set(6, 7, &[ctx.neg(t2e)]);
    set(6, 8, &[mul(t1, t2e), t3]);
    // row 7
    set(7, 8, &[ctx.neg(t1)]);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::{Rng, SeedableRng};

    fn ctx3() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    #[test]
    fn chevalley_matrices_match_the_listed_supports() {
        let ctx = ctx3();
        let e1 = chevalley_e(&ctx, 1).unwrap();
        assert_eq!(e1.at(1, 2), Fq3(1));
        assert_eq!(e1.at(7, 8), ctx.neg(Fq3(1)));
        let e5 = chevalley_e(&ctx, 5).unwrap();
        assert_eq!(e5.at(1, 3), ctx.neg(Fq3(1)));
        assert_eq!(e5.at(6, 8), Fq3(1));
        let e12 = chevalley_e(&ctx, 12).unwrap();
        assert_eq!(e12.at(1, 7), Fq3(1));
        assert_eq!(e12.at(2, 8), ctx.neg(Fq3(1)));
        assert!(chevalley_e(&ctx, 0).is_err());
        assert!(chevalley_e(&ctx, 13).is_err());
        // exactly two nonzero entries each, values ±1
        for i in 1..=12 {
            let e = chevalley_e(&ctx, i).unwrap();
            let nz: Vec<Fq3> = e
                .m
                .iter()
                .flatten()
                .copied()
                .filter(|v| !v.is_zero())
                .collect();
            assert_eq!(nz.len(), 2);
            for v in nz {
                assert!(v == Fq3(1) || v == ctx.neg(Fq3(1)));
            }
        }
    }

    #[test]
    fn rho_is_the_triality_three_cycle() {
        for i in 1..=12 {
            assert_eq!(rho(rho(rho(i))), i);
        }
        assert_eq!(rho(1), 3);
        assert_eq!(rho(8), 10);
        assert_eq!(rho(2), 2);
        assert_eq!(rho(11), 11);
    }

    #[test]
    fn untwisted_roots_are_one_parameter_subgroups() {
        let ctx = ctx3();
        for i in 1..=12 {
            for s in ctx.fq3_elements() {
                for t in ctx.fq3_elements().step_by(7) {
                    let lhs = untwisted_root_element(&ctx, i, s)
                        .unwrap()
                        .mul(&ctx, &untwisted_root_element(&ctx, i, t).unwrap());
                    let rhs = untwisted_root_element(&ctx, i, ctx.add(s, t)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn root_element_basics() {
        let ctx = ctx3();
        for i in 1..=6 {
            assert_eq!(root_element(&ctx, i, Fq3(0)).unwrap(), MatQ3::identity());
        }
        // x6(1) = I + e17 − e28
        let x6 = root_element(&ctx, 6, Fq3(1)).unwrap();
        let mut expect = MatQ3::identity();
        expect.set(1, 7, Fq3(1));
        expect.set(2, 8, ctx.neg(Fq3(1)));
        assert_eq!(x6, expect);
        // parameters of x2, x5, x6 must be in F_q
        let outside = ctx.eta();
        for i in [2, 5, 6] {
            assert!(matches!(
                root_element(&ctx, i, outside),
                Err(Error::NotInFq)
            ));
        }
        assert!(root_element(&ctx, 7, Fq3(1)).is_err());
    }

    #[test]
    fn twisted_root_subgroups_are_abelian_of_the_right_order() {
        let ctx = ctx3();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let s = Fq3(rng.gen_range(0..27));
            let t = Fq3(rng.gen_range(0..27));
            let lhs = root_element(&ctx, 1, s)
                .unwrap()
                .mul(&ctx, &root_element(&ctx, 1, t).unwrap());
            assert_eq!(lhs, root_element(&ctx, 1, ctx.add(s, t)).unwrap());
        }
        for i in 1..=6 {
            let dom: Vec<Fq3> = if [1, 3, 4].contains(&i) {
                ctx.fq3_elements().collect()
            } else {
                ctx.fq_elements().map(|c| ctx.embed(c)).collect()
            };
            let subgroup: std::collections::HashSet<MatQ3> = dom
                .iter()
                .map(|&t| root_element(&ctx, i, t).unwrap())
                .collect();
            let expected = if [1, 3, 4].contains(&i) { 27 } else { 3 };
            assert_eq!(subgroup.len(), expected);
        }
    }

    #[test]
    fn closed_form_matches_generator_product_q3() {
        let ctx = ctx3();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let t1 = Fq3(rng.gen_range(0..27));
            let t2 = Fq(rng.gen_range(0..3));
            let t3 = Fq3(rng.gen_range(0..27));
            let t4 = Fq3(rng.gen_range(0..27));
            let t5 = Fq(rng.gen_range(0..3));
            let t6 = Fq(rng.gen_range(0..3));
            let product = root_element_fq(&ctx, 2, t2)
                .mul(&ctx, &root_element(&ctx, 1, t1).unwrap())
                .mul(&ctx, &root_element(&ctx, 3, t3).unwrap())
                .mul(&ctx, &root_element(&ctx, 4, t4).unwrap())
                .mul(&ctx, &root_element_fq(&ctx, 5, t5))
                .mul(&ctx, &root_element_fq(&ctx, 6, t6));
            assert_eq!(closed_form_matrix(&ctx, t1, t2, t3, t4, t5, t6), product);
        }
    }

    #[test]
    fn closed_form_row_three_entries() {
        let ctx = ctx3();
        for t1 in ctx.fq3_elements() {
            let m = closed_form_matrix(&ctx, t1, Fq(0), Fq3(0), Fq3(0), Fq(0), Fq(0));
            assert_eq!(m.at(3, 4), ctx.frob(t1));
            assert_eq!(m.at(3, 5), ctx.frob2(t1));
            assert_eq!(m.at(3, 6), ctx.neg(ctx.mul(ctx.frob2(t1), ctx.frob(t1))));
            assert!(m.at(4, 5).is_zero());
        }
        assert_eq!(
            closed_form_matrix(&ctx, Fq3(0), Fq(0), Fq3(0), Fq3(0), Fq(0), Fq(0)),
            MatQ3::identity()
        );
    }
}
