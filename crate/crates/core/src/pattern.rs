//! The 12-dimensional pattern space `V`, the projection `π`, the trace
//! forms `κ` and `κ_q`, the bijective 1-cocycle `f`, the right actions
//! `∘` and `.`, the left truncated row operation, and the character `χ_A`.

use crate::cyclo::{theta_exponent, CycInt};
use crate::field::{FieldCtx, Fq, Fq3};
use crate::group::{GElem, UElem};
use crate::mat::MatQ3;
use serde::{Deserialize, Serialize};

/// Element of `V`: support in
/// `J = {(1,2),(1,3),(1,4),(1,5),(1,6),(1,7),(2,3)}` with
/// `A₁₄ = A₁₅^q` and `A₁₆, A₁₇, A₂₃ ∈ F_q`.
///
/// `a14` is never stored; it is derived from `a15`, so the constraint can
/// not be violated by construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Pattern {
    pub a12: Fq3,
    pub a13: Fq3,
    pub a15: Fq3,
    pub a16: Fq,
    pub a17: Fq,
    pub a23: Fq,
}

impl Pattern {
    pub const ZERO: Pattern = Pattern {
        a12: Fq3(0),
        a13: Fq3(0),
        a15: Fq3(0),
        a16: Fq(0),
        a17: Fq(0),
        a23: Fq(0),
    };

    pub fn new(a12: Fq3, a13: Fq3, a15: Fq3, a16: Fq, a17: Fq, a23: Fq) -> Pattern {
        Pattern {
            a12,
            a13,
            a15,
            a16,
            a17,
            a23,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn a14(&self, ctx: &FieldCtx) -> Fq3 {
        ctx.frob(self.a15)
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Pattern) -> Pattern {
        Pattern {
            a12: ctx.add(self.a12, other.a12),
            a13: ctx.add(self.a13, other.a13),
            a15: ctx.add(self.a15, other.a15),
            a16: ctx.fq_add(self.a16, other.a16),
            a17: ctx.fq_add(self.a17, other.a17),
            a23: ctx.fq_add(self.a23, other.a23),
        }
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Pattern) -> Pattern {
        Pattern {
            a12: ctx.sub(self.a12, other.a12),
            a13: ctx.sub(self.a13, other.a13),
            a15: ctx.sub(self.a15, other.a15),
            a16: ctx.fq_sub(self.a16, other.a16),
            a17: ctx.fq_sub(self.a17, other.a17),
            a23: ctx.fq_sub(self.a23, other.a23),
        }
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Fq) -> Pattern {
        Pattern {
            a12: ctx.scale(c, self.a12),
            a13: ctx.scale(c, self.a13),
            a15: ctx.scale(c, self.a15),
            a16: ctx.fq_mul(c, self.a16),
            a17: ctx.fq_mul(c, self.a17),
            a23: ctx.fq_mul(c, self.a23),
        }
    }

    /// Embedding into an 8×8 matrix (rows 1 and 2).
    pub fn to_matrix(&self, ctx: &FieldCtx) -> MatQ3 {
        let mut m = MatQ3::zero();
        m.set(1, 2, self.a12);
        m.set(1, 3, self.a13);
        m.set(1, 4, self.a14(ctx));
        m.set(1, 5, self.a15);
        m.set(1, 6, ctx.embed(self.a16));
        m.set(1, 7, ctx.embed(self.a17));
        m.set(2, 3, ctx.embed(self.a23));
        m
    }

    /// Canonical index in `0..q¹²` (a12 fastest).
    pub fn to_index(&self, ctx: &FieldCtx) -> u64 {
        let (q, q3) = (ctx.q(), ctx.q3());
        let mut i = self.a23.0 as u64;
        i = i * q + self.a17.0 as u64;
        i = i * q + self.a16.0 as u64;
        i = i * q3 + self.a15.0 as u64;
        i = i * q3 + self.a13.0 as u64;
        i * q3 + self.a12.0 as u64
    }

    pub fn from_index(ctx: &FieldCtx, mut i: u64) -> Pattern {
        let (q, q3) = (ctx.q(), ctx.q3());
        let a12 = Fq3((i % q3) as u32);
        i /= q3;
        let a13 = Fq3((i % q3) as u32);
        i /= q3;
        let a15 = Fq3((i % q3) as u32);
        i /= q3;
        let a16 = Fq((i % q) as u32);
        i /= q;
        let a17 = Fq((i % q) as u32);
        i /= q;
        let a23 = Fq((i % q) as u32);
        Pattern::new(a12, a13, a15, a16, a17, a23)
    }

    pub fn space_size(ctx: &FieldCtx) -> u64 {
        ctx.q().pow(12)
    }

    pub fn enumerate(ctx: &FieldCtx) -> impl Iterator<Item = Pattern> + '_ {
        (0..Self::space_size(ctx)).map(|i| Pattern::from_index(ctx, i))
    }
}

/// JSON form mirroring the six stored coordinates.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PatternJson {
    pub a12: Vec<u32>,
    pub a13: Vec<u32>,
    pub a15: Vec<u32>,
    pub a16: Vec<u32>,
    pub a17: Vec<u32>,
    pub a23: Vec<u32>,
}

impl Pattern {
    pub fn to_json(&self, ctx: &FieldCtx) -> PatternJson {
        let f3 = |x: Fq3| ctx.fq3_coeffs(x).iter().map(|c| c.0).collect();
        PatternJson {
            a12: f3(self.a12),
            a13: f3(self.a13),
            a15: f3(self.a15),
            a16: vec![self.a16.0],
            a17: vec![self.a17.0],
            a23: vec![self.a23.0],
        }
    }
}

// ---- projections ----

/// Zeroes every coordinate outside `J`.
pub fn pi_j(m: &MatQ3) -> MatQ3 {
    let mut out = MatQ3::zero();
    for &(i, j) in J_COORDS.iter() {
        out.set(i, j, m.at(i, j));
    }
    out
}

pub const J_COORDS: [(usize, usize); 7] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (1, 7),
    (2, 3),
];

/// The projection `π: V₀ → V`: passes (1,2) and (1,3) through, aligns the
/// (1,4)/(1,5) pair onto the `A₁₄ = A₁₅^q` locus via the η-twisted average,
/// and applies `π_q` at (1,6), (1,7), (2,3). Idempotent, `F_q`-linear,
/// `π(I₈) = O₈`.
pub fn pi(ctx: &FieldCtx, m: &MatQ3) -> Pattern {
    let a14 = m.at(1, 4);
    let a15 = m.at(1, 5);
    // (A14^(q²) + A15·η^(1−q²)) / (1 + η^(1−q²))
    let c = ctx.mul(
        ctx.add(ctx.frob2(a14), ctx.mul(a15, ctx.eta_1mq2())),
        ctx.inv_one_plus_eta_1mq2(),
    );
    Pattern {
        a12: m.at(1, 2),
        a13: m.at(1, 3),
        a15: c,
        a16: ctx.piq(m.at(1, 6)),
        a17: ctx.piq(m.at(1, 7)),
        a23: ctx.piq(m.at(2, 3)),
    }
}

/// Membership predicate for `V⊥`: (1,2) and (1,3) vanish,
/// `A₁₄ = −A₁₅^q·η^{q−1}`, the `F_q`-slots lie in `ker π_q`, everything
/// outside `J` is free.
pub fn in_v_perp(ctx: &FieldCtx, m: &MatQ3) -> bool {
    m.at(1, 2).is_zero()
        && m.at(1, 3).is_zero()
        && m.at(1, 4) == ctx.neg(ctx.mul(ctx.frob(m.at(1, 5)), ctx.eta_qm1()))
        && ctx.piq(m.at(1, 6)).is_zero()
        && ctx.piq(m.at(1, 7)).is_zero()
        && ctx.piq(m.at(2, 3)).is_zero()
}

// ---- forms ----

/// Trace form `κ(A, B) = tr(Aᵀ B) = Σ A_{ij} B_{ij}`.
pub fn kappa(ctx: &FieldCtx, a: &MatQ3, b: &MatQ3) -> Fq3 {
    let mut acc = Fq3(0);
    for i in 0..8 {
        for j in 0..8 {
            acc = ctx.add(acc, ctx.mul(a.m[i][j], b.m[i][j]));
        }
    }
    acc
}

/// `κ_q = π_q ∘ κ`, symmetric `F_q`-bilinear on `V₀` and non-degenerate on
/// `V × V`.
pub fn kappa_q(ctx: &FieldCtx, a: &MatQ3, b: &MatQ3) -> Fq {
    ctx.piq(kappa(ctx, a, b))
}

/// `κ_q` of two patterns without materializing matrices.
pub fn kappa_q_patterns(ctx: &FieldCtx, a: &Pattern, b: &Pattern) -> Fq {
    let mut acc = ctx.mul(a.a12, b.a12);
    acc = ctx.add(acc, ctx.mul(a.a13, b.a13));
    acc = ctx.add(acc, ctx.mul(a.a14(ctx), b.a14(ctx)));
    acc = ctx.add(acc, ctx.mul(a.a15, b.a15));
    acc = ctx.add(acc, ctx.mul(ctx.embed(a.a16), ctx.embed(b.a16)));
    acc = ctx.add(acc, ctx.mul(ctx.embed(a.a17), ctx.embed(b.a17)));
    acc = ctx.add(acc, ctx.mul(ctx.embed(a.a23), ctx.embed(b.a23)));
    ctx.piq(acc)
}

/// The 12×12 Gram matrix of `κ_q` on the canonical `F_q`-basis of `V`,
/// and its rank by exact Gaussian elimination over `F_q`.
pub fn gram_rank(ctx: &FieldCtx) -> usize {
    let basis = v_basis(ctx);
    let n = basis.len();
    let mut g: Vec<Vec<Fq>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| kappa_q_patterns(ctx, &basis[i], &basis[j]))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !g[r][col].is_zero()) else {
            continue;
        };
        g.swap(rank, pivot);
        let inv = ctx.fq_inv(g[rank][col]).unwrap();
        for r in 0..n {
            if r != rank && !g[r][col].is_zero() {
                let factor = ctx.fq_mul(g[r][col], inv);
                for c in 0..n {
                    let t = ctx.fq_mul(factor, g[rank][c]);
                    g[r][c] = ctx.fq_sub(g[r][c], t);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Canonical `F_q`-basis of `V`: the F_{q³} slots (1,2), (1,3), (1,5)
/// each contribute the three power-basis vectors, the F_q slots one each.
pub fn v_basis(ctx: &FieldCtx) -> Vec<Pattern> {
    let mut basis = Vec::with_capacity(12);
    let powers = [Fq3(1), Fq3(ctx.q() as u32), {
        let x = Fq3(ctx.q() as u32);
        ctx.mul(x, x)
    }];
    for &w in &powers {
        basis.push(Pattern::new(w, Fq3(0), Fq3(0), Fq(0), Fq(0), Fq(0)));
    }
    for &w in &powers {
        basis.push(Pattern::new(Fq3(0), w, Fq3(0), Fq(0), Fq(0), Fq(0)));
    }
    for &w in &powers {
        basis.push(Pattern::new(Fq3(0), Fq3(0), w, Fq(0), Fq(0), Fq(0)));
    }
    basis.push(Pattern::new(Fq3(0), Fq3(0), Fq3(0), Fq(1), Fq(0), Fq(0)));
    basis.push(Pattern::new(Fq3(0), Fq3(0), Fq3(0), Fq(0), Fq(1), Fq(0)));
    basis.push(Pattern::new(Fq3(0), Fq3(0), Fq3(0), Fq(0), Fq(0), Fq(1)));
    basis
}

// ---- the 1-cocycle ----

/// `f = π|_G`.
pub fn cocycle_f(ctx: &FieldCtx, g: &GElem) -> Pattern {
    pi(ctx, g.matrix())
}

/// Closed form of `f` on `U` (the production path): the printed entries of
/// the bijectivity proof, cross-asserted in tests against `π` of the
/// closed-form matrix.
pub fn f_closed_on_u(ctx: &FieldCtx, u: &UElem) -> Pattern {
    let (t1, t3, t4) = (u.t1, u.t3, u.t4);
    let t1q2 = ctx.frob2(t1);
    let t3q2 = ctx.frob2(t3);
    let t3q = ctx.frob(t3);
    let t4q = ctx.frob(t4);
    // a15 = (t1^(q²)·t3 + t1·t3^(q²)·η^(1−q²)) / (1 + η^(1−q²)) + t4^(q²)
    let frac = ctx.mul(
        ctx.add(
            ctx.mul(t1q2, t3),
            ctx.mul(ctx.mul(t1, t3q2), ctx.eta_1mq2()),
        ),
        ctx.inv_one_plus_eta_1mq2(),
    );
    let a15 = ctx.add(frac, ctx.frob2(t4));
    // a16 = π_q(t1·t4^q) + t5
    let a16 = ctx.fq_add(ctx.piq(ctx.mul(t1, t4q)), u.t5);
    // a17 = π_q(−t1·t3^(q²+q) + t3·t4^q) + t6
    let a17 = ctx.fq_add(
        ctx.piq(ctx.sub(
            ctx.mul(t3, t4q),
            ctx.mul(t1, ctx.mul(t3q2, t3q)),
        )),
        u.t6,
    );
    Pattern {
        a12: t1,
        a13: ctx.neg(t3),
        a15,
        a16,
        a17,
        a23: u.t2,
    }
}

/// Inverse of `f|_U`: defined on all of `V` since `f|_U` is a bijection.
pub fn f_inverse(ctx: &FieldCtx, a: &Pattern) -> UElem {
    let a12 = a.a12;
    let a13 = a.a13;
    let a12q = ctx.frob(a12);
    let a13q = ctx.frob(a13);
    let a12q2 = ctx.frob2(a12);
    let a13q2 = ctx.frob2(a13);
    let t1 = a12;
    let t2 = a.a23;
    let t3 = ctx.neg(a13);
    // t4 = A15^q + (A12·A13^q + A12^q·A13·η^(q−1)) / (1 + η^(q−1))
    let t4 = ctx.add(
        ctx.frob(a.a15),
        ctx.mul(
            ctx.add(
                ctx.mul(a12, a13q),
                ctx.mul(ctx.mul(a12q, a13), ctx.eta_qm1()),
            ),
            ctx.inv_one_plus_eta_qm1(),
        ),
    );
    // shared inner term: A15^(q²) + (A12^q·A13^(q²) + A12^(q²)·A13^q·η^(q²−q)) / (1 + η^(q²−q))
    let inner = ctx.add(
        ctx.frob2(a.a15),
        ctx.mul(
            ctx.add(
                ctx.mul(a12q, a13q2),
                ctx.mul(ctx.mul(a12q2, a13q), ctx.eta_q2mq()),
            ),
            ctx.inv_one_plus_eta_q2mq(),
        ),
    );
    // t5 = A16 − π_q(A12·inner)
    let t5 = ctx.fq_sub(a.a16, ctx.piq(ctx.mul(a12, inner)));
    // t6 = A17 + π_q(A12·A13^(q²+q) + A13·inner)
    let t6 = ctx.fq_add(
        a.a17,
        ctx.piq(ctx.add(
            ctx.mul(a12, ctx.mul(a13q2, a13q)),
            ctx.mul(a13, inner),
        )),
    );
    UElem::new(t1, t2, t3, t4, t5, t6)
}

// ---- actions ----

/// Right action `A ∘ g = π(A·g)`.
pub fn act_circ(ctx: &FieldCtx, a: &Pattern, g: &GElem) -> Pattern {
    pi(ctx, &a.to_matrix(ctx).mul(ctx, g.matrix()))
}

/// Right action `A.g = π(A·g^{−⊤})` through the matrix route; the slow,
/// obviously-correct path.
pub fn act_dot_matrix(ctx: &FieldCtx, a: &Pattern, g: &GElem) -> Pattern {
    let ginv_t = g.matrix().inv_unitriangular(ctx).transpose();
    pi(ctx, &a.to_matrix(ctx).mul(ctx, &ginv_t))
}

/// Right action `A.u` for `u ∈ U` in parameter form (the production path):
/// the truncated column operations composed in the canonical factor order.
/// Tests pin it to `act_dot_matrix`.
pub fn act_dot(ctx: &FieldCtx, a: &Pattern, u: &UElem) -> Pattern {
    let (t1, t3, t4) = (u.t1, u.t3, u.t4);
    let t2 = ctx.embed(u.t2);
    let t1q = ctx.frob(t1);
    let t1q2 = ctx.frob2(t1);
    let t3q = ctx.frob(t3);
    let t3q2 = ctx.frob2(t3);
    let t4q = ctx.frob(t4);
    let a15q = ctx.frob(a.a15);
    let a16 = ctx.embed(a.a16);
    let a17 = ctx.embed(a.a17);
    let a17t2 = ctx.mul(a17, t2);

    // b12 = a12 − a13·t2 − a15^q·t3^q − a16·t1^(q²)·t3^q − a17·t2·t1^(q²)·t3^q
    //       − a15·t3^(q²) − a16·t1^q·t3^(q²) − a17·t2·t1^q·t3^(q²)
    //       − a17·t3^(q²+q) − a16·t4^q − a17·t2·t4^q
    let mut b12 = a.a12;
    b12 = ctx.sub(b12, ctx.mul(a.a13, t2));
    b12 = ctx.sub(b12, ctx.mul(a15q, t3q));
    b12 = ctx.sub(b12, ctx.mul(ctx.mul(a16, t1q2), t3q));
    b12 = ctx.sub(b12, ctx.mul(ctx.mul(a17t2, t1q2), t3q));
    b12 = ctx.sub(b12, ctx.mul(a.a15, t3q2));
    b12 = ctx.sub(b12, ctx.mul(ctx.mul(a16, t1q), t3q2));
    b12 = ctx.sub(b12, ctx.mul(ctx.mul(a17t2, t1q), t3q2));
    b12 = ctx.sub(b12, ctx.mul(a17, ctx.mul(t3q2, t3q)));
    b12 = ctx.sub(b12, ctx.mul(a16, t4q));
    b12 = ctx.sub(b12, ctx.mul(a17t2, t4q));

    // b13 = a13 − a15^q·t1^q − a15·t1^(q²) − a16·t1^(q²+q) − a17·t2·t1^(q²+q) + a17·t4^q
    let t1_q2q = ctx.mul(t1q2, t1q);
    let mut b13 = a.a13;
    b13 = ctx.sub(b13, ctx.mul(a15q, t1q));
    b13 = ctx.sub(b13, ctx.mul(a.a15, t1q2));
    b13 = ctx.sub(b13, ctx.mul(a16, t1_q2q));
    b13 = ctx.sub(b13, ctx.mul(a17t2, t1_q2q));
    b13 = ctx.add(b13, ctx.mul(a17, t4q));

    // b15 = a15 + a16·t1^q + a17·t2·t1^q + a17·t3^q
    let mut b15 = a.a15;
    b15 = ctx.add(b15, ctx.mul(a16, t1q));
    b15 = ctx.add(b15, ctx.mul(a17t2, t1q));
    b15 = ctx.add(b15, ctx.mul(a17, t3q));

    // b16 = a16 + a17·t2
    let b16 = ctx.fq_add(a.a16, ctx.fq_mul(a.a17, u.t2));

    Pattern {
        a12: b12,
        a13: b13,
        a15: b15,
        a16: b16,
        a17: a.a17,
        a23: a.a23,
    }
}

/// Left truncated row operation `u.A = A − π_q(t₁·A₁₃)·e₂₃` (production
/// path; `π(u^{−⊤}·A)` is the test oracle).
pub fn act_left(ctx: &FieldCtx, u: &UElem, a: &Pattern) -> Pattern {
    let mut out = *a;
    out.a23 = ctx.fq_sub(a.a23, ctx.piq(ctx.mul(u.t1, a.a13)));
    out
}

/// Matrix-route oracle for the left action.
pub fn act_left_matrix(ctx: &FieldCtx, u: &UElem, a: &Pattern) -> Pattern {
    let uinv_t = u.matrix(ctx).inv_unitriangular(ctx).transpose();
    pi(ctx, &uinv_t.mul(ctx, &a.to_matrix(ctx)))
}

// ---- the character ----

/// ζ-exponent of `χ_A(u) = ϑκ_q(A, f(u))`.
pub fn chi_exponent(ctx: &FieldCtx, a: &Pattern, u: &UElem) -> u32 {
    theta_exponent(ctx, kappa_q_patterns(ctx, a, &f_closed_on_u(ctx, u)))
}

/// `χ_A(u)` as an exact cyclotomic integer.
pub fn chi(ctx: &FieldCtx, a: &Pattern, u: &UElem) -> CycInt {
    CycInt::zeta_pow(ctx.p() as u32, chi_exponent(ctx, a, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{random_g, random_u, u_mul, UElem};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx3() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    fn random_matrix<R: Rng>(ctx: &FieldCtx, rng: &mut R) -> MatQ3 {
        let mut m = MatQ3::zero();
        for i in 1..=8 {
            for j in 1..=8 {
                m.set(i, j, Fq3(rng.gen_range(0..ctx.q3()) as u32));
            }
        }
        m
    }

    fn random_pattern<R: Rng>(ctx: &FieldCtx, rng: &mut R) -> Pattern {
        Pattern::new(
            Fq3(rng.gen_range(0..ctx.q3()) as u32),
            Fq3(rng.gen_range(0..ctx.q3()) as u32),
            Fq3(rng.gen_range(0..ctx.q3()) as u32),
            Fq(rng.gen_range(0..ctx.q()) as u32),
            Fq(rng.gen_range(0..ctx.q()) as u32),
            Fq(rng.gen_range(0..ctx.q()) as u32),
        )
    }

    #[test]
    fn pi_is_an_idempotent_projection() {
        let ctx = ctx3();
        assert_eq!(pi(&ctx, &MatQ3::identity()), Pattern::ZERO);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10_000 {
            let m = random_matrix(&ctx, &mut rng);
            let p = pi(&ctx, &m);
            // idempotent
            assert_eq!(pi(&ctx, &p.to_matrix(&ctx)), p);
            // π = π ∘ π_J
            assert_eq!(pi(&ctx, &pi_j(&m)), p);
            // complement lands in V⊥
            let diff = m.sub(&ctx, &p.to_matrix(&ctx));
            assert!(in_v_perp(&ctx, &diff));
        }
        // π restricted to V is the identity
        for _ in 0..500 {
            let a = random_pattern(&ctx, &mut rng);
            assert_eq!(pi(&ctx, &a.to_matrix(&ctx)), a);
        }
        // F_q-linearity
        for _ in 0..200 {
            let m1 = random_matrix(&ctx, &mut rng);
            let m2 = random_matrix(&ctx, &mut rng);
            let sum = pi(&ctx, &m1.add(&ctx, &m2));
            assert_eq!(sum, pi(&ctx, &m1).add(&ctx, &pi(&ctx, &m2)));
        }
    }

    #[test]
    fn kappa_q_properties() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let a = random_matrix(&ctx, &mut rng);
            let b = random_matrix(&ctx, &mut rng);
            assert_eq!(kappa_q(&ctx, &a, &b), kappa_q(&ctx, &b, &a));
        }
        // pattern shortcut agrees with the matrix route
        for _ in 0..500 {
            let a = random_pattern(&ctx, &mut rng);
            let b = random_pattern(&ctx, &mut rng);
            assert_eq!(
                kappa_q_patterns(&ctx, &a, &b),
                kappa_q(&ctx, &a.to_matrix(&ctx), &b.to_matrix(&ctx))
            );
            assert_eq!(kappa_q_patterns(&ctx, &a, &Pattern::ZERO), Fq(0));
        }
        // κ_q(e12-pattern, e12-pattern) = π_q(1) = 1
        let e12 = Pattern::new(Fq3(1), Fq3(0), Fq3(0), Fq(0), Fq(0), Fq(0));
        assert_eq!(kappa_q_patterns(&ctx, &e12, &e12), Fq(1));
    }

    #[test]
    fn gram_matrix_is_nondegenerate() {
        assert_eq!(gram_rank(&ctx3()), 12);
        assert_eq!(gram_rank(&FieldCtx::new(5, 1).unwrap()), 12);
    }

    #[test]
    fn f_closed_form_matches_pi_of_the_matrix() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..2000 {
            let u = random_u(&ctx, &mut rng);
            let f1 = f_closed_on_u(&ctx, &u);
            let f2 = pi(&ctx, &u.matrix(&ctx));
            assert_eq!(f1, f2);
        }
        assert_eq!(f_closed_on_u(&ctx, &UElem::IDENTITY), Pattern::ZERO);
    }

    #[test]
    fn f_round_trips_on_a_sample() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..2000 {
            let u = random_u(&ctx, &mut rng);
            assert_eq!(f_inverse(&ctx, &f_closed_on_u(&ctx, &u)), u);
            let a = random_pattern(&ctx, &mut rng);
            assert_eq!(f_closed_on_u(&ctx, &f_inverse(&ctx, &a)), a);
        }
    }

    #[test]
    fn cocycle_identity_sampled() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..500 {
            let x = random_g(&ctx, &mut rng);
            let g = random_g(&ctx, &mut rng);
            let lhs = cocycle_f(&ctx, &x.mul(&ctx, &g));
            let rhs = act_circ(&ctx, &cocycle_f(&ctx, &x), &g).add(&ctx, &cocycle_f(&ctx, &g));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn f_of_x_times_g_is_x_minus_one_times_g_mod_v_perp() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..500 {
            let x = random_g(&ctx, &mut rng);
            let g = random_g(&ctx, &mut rng);
            let fx_g = cocycle_f(&ctx, &x)
                .to_matrix(&ctx)
                .mul(&ctx, g.matrix());
            let xm1_g = x
                .matrix()
                .sub(&ctx, &MatQ3::identity())
                .mul(&ctx, g.matrix());
            assert!(in_v_perp(&ctx, &fx_g.sub(&ctx, &xm1_g)));
        }
    }

    #[test]
    fn pi_j_of_a_gt_stays_in_v() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..500 {
            let a = random_pattern(&ctx, &mut rng);
            let g = random_g(&ctx, &mut rng);
            let agt = a.to_matrix(&ctx).mul(&ctx, &g.matrix().transpose());
            let proj = pi_j(&agt);
            // π_J(A gᵀ) satisfies the V constraints, so π leaves it alone
            let p = pi(&ctx, &agt);
            assert_eq!(p.to_matrix(&ctx), proj);
        }
    }

    #[test]
    fn circ_and_dot_are_actions_in_duality() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10_000 {
            let a = random_pattern(&ctx, &mut rng);
            let g = random_g(&ctx, &mut rng);
            let h = random_g(&ctx, &mut rng);
            // identity acts trivially
            assert_eq!(act_circ(&ctx, &a, &GElem::identity()), a);
            assert_eq!(act_dot_matrix(&ctx, &a, &GElem::identity()), a);
            // composition
            assert_eq!(
                act_circ(&ctx, &act_circ(&ctx, &a, &g), &h),
                act_circ(&ctx, &a, &g.mul(&ctx, &h))
            );
            assert_eq!(
                act_dot_matrix(&ctx, &act_dot_matrix(&ctx, &a, &g), &h),
                act_dot_matrix(&ctx, &a, &g.mul(&ctx, &h))
            );
            // duality κ_q(A.g, B) = κ_q(A, B ∘ g⁻¹)
            let b = random_pattern(&ctx, &mut rng);
            let lhs = kappa_q_patterns(&ctx, &act_dot_matrix(&ctx, &a, &g), &b);
            let rhs = kappa_q_patterns(&ctx, &a, &act_circ(&ctx, &b, &g.inv(&ctx)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn parametrized_dot_action_matches_the_matrix_route() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..10_000 {
            let a = random_pattern(&ctx, &mut rng);
            let u = random_u(&ctx, &mut rng);
            let fast = act_dot(&ctx, &a, &u);
            let slow = act_dot_matrix(&ctx, &a, &GElem::from_u(&ctx, &u));
            assert_eq!(fast, slow);
        }
        // x5 and x6 act trivially
        for s in ctx.fq_elements() {
            let a = random_pattern(&ctx, &mut rng);
            let x5 = UElem::generator(&ctx, 5, ctx.embed(s)).unwrap();
            let x6 = UElem::generator(&ctx, 6, ctx.embed(s)).unwrap();
            assert_eq!(act_dot(&ctx, &a, &x5), a);
            assert_eq!(act_dot(&ctx, &a, &x6), a);
        }
    }

    #[test]
    fn dot_action_composes_with_group_law() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..1000 {
            let a = random_pattern(&ctx, &mut rng);
            let u = random_u(&ctx, &mut rng);
            let v = random_u(&ctx, &mut rng);
            assert_eq!(
                act_dot(&ctx, &act_dot(&ctx, &a, &u), &v),
                act_dot(&ctx, &a, &u_mul(&ctx, &u, &v))
            );
        }
    }

    #[test]
    fn truncated_column_moves_reduce_to_mirrored_elementaries() {
        // A.x1(t1) = A.(x_{34}(t1^q)·x_{35}(t1^(q²))) and the analogous
        // reductions for x2, x3, x4, where x_{i,j}(t) is the antidiagonally
        // mirrored pair x̃_{i,j}(t)·x̃_{9−j,9−i}(−t); x5 and x6 act
        // trivially.
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let mirrored = |i: usize, j: usize, t: Fq3| -> MatQ3 {
            let mut m = MatQ3::identity();
            m.set(i, j, t);
            m.set(9 - j, 9 - i, ctx.neg(t));
            m
        };
        let act_by_matrix = |a: &Pattern, m: &MatQ3| -> Pattern {
            let minv_t = m.inv_unitriangular(&ctx).transpose();
            pi(&ctx, &a.to_matrix(&ctx).mul(&ctx, &minv_t))
        };
        for _ in 0..300 {
            let a = random_pattern(&ctx, &mut rng);
            let t = Fq3(rng.gen_range(0..27));
            let tq = ctx.frob(t);
            let tq2 = ctx.frob2(t);
            // x1
            let u1 = UElem::generator(&ctx, 1, t).unwrap();
            let m = mirrored(3, 4, tq).mul(&ctx, &mirrored(3, 5, tq2));
            assert_eq!(act_dot(&ctx, &a, &u1), act_by_matrix(&a, &m));
            // x3
            let u3 = UElem::generator(&ctx, 3, t).unwrap();
            let m = mirrored(2, 4, tq).mul(&ctx, &mirrored(2, 5, tq2));
            assert_eq!(act_dot(&ctx, &a, &u3), act_by_matrix(&a, &m));
            // x4
            let u4 = UElem::generator(&ctx, 4, t).unwrap();
            let m = mirrored(2, 6, tq);
            assert_eq!(act_dot(&ctx, &a, &u4), act_by_matrix(&a, &m));
            // x2
            let s = Fq(rng.gen_range(0..3));
            let u2 = UElem::generator(&ctx, 2, ctx.embed(s)).unwrap();
            let m = mirrored(2, 3, ctx.embed(s));
            assert_eq!(act_dot(&ctx, &a, &u2), act_by_matrix(&a, &m));
        }
    }

    #[test]
    fn left_action_closed_form_matches_matrix_route() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..2000 {
            let a = random_pattern(&ctx, &mut rng);
            let u = random_u(&ctx, &mut rng);
            assert_eq!(act_left(&ctx, &u, &a), act_left_matrix(&ctx, &u, &a));
        }
        // left action is a group action
        for _ in 0..500 {
            let a = random_pattern(&ctx, &mut rng);
            let g = random_u(&ctx, &mut rng);
            let h = random_u(&ctx, &mut rng);
            assert_eq!(
                act_left(&ctx, &g, &act_left(&ctx, &h, &a)),
                act_left(&ctx, &u_mul(&ctx, &g, &h), &a)
            );
        }
    }

    #[test]
    fn chi_basics() {
        let ctx = ctx3();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let u = random_u(&ctx, &mut rng);
            assert_eq!(chi(&ctx, &Pattern::ZERO, &u), CycInt::one(3));
            let a = random_pattern(&ctx, &mut rng);
            assert_eq!(chi(&ctx, &a, &UElem::IDENTITY), CycInt::one(3));
        }
        // Σ_u χ_A(u) = 0 for the e17 pattern
        let a = Pattern::new(Fq3(0), Fq3(0), Fq3(0), Fq(0), Fq(1), Fq(0));
        let mut sum = crate::cyclo::ZetaCounter::new(3);
        for u in crate::group::enumerate_u(&ctx).unwrap() {
            sum.add_zeta_pow(chi_exponent(&ctx, &a, &u));
        }
        assert!(sum.finish().is_zero());
    }

    #[test]
    fn pattern_index_round_trip() {
        let ctx = ctx3();
        for i in (0..Pattern::space_size(&ctx)).step_by(9173) {
            let a = Pattern::from_index(&ctx, i);
            assert_eq!(a.to_index(&ctx), i);
        }
        assert_eq!(Pattern::enumerate(&ctx).count() as u64, 531441);
    }
}
