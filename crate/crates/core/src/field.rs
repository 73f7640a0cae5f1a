//! Exact arithmetic in the tower `F_p ⊂ F_q ⊂ F_{q³}` (`q = p^k`, `p` odd).
//!
//! Elements are canonical indices into precomputed tables: an `Fq` index is
//! the little-endian base-`p` value of its coefficient vector in the power
//! basis of `mod_q`, and an `Fq3` index is the little-endian base-`q` value
//! of its three `F_q` coefficients in the power basis of `mod_q3`. Index
//! order is the canonical element order used for every "first found"
//! selection (moduli, generators, η, transversal representatives).

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Element of `F_q`, as an index in `0..q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fq(pub u32);

/// Element of `F_{q³}`, as an index in `0..q³`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fq3(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Fq3 {
    pub const ZERO: Fq3 = Fq3(0);
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Conway polynomials (little-endian, monic) for the (p, n) pairs reachable
/// under the table-size bound. Everything else falls back to the
/// lexicographically first monic irreducible.
const CONWAY: &[(u64, u32, &[u64])] = &[
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
];

/// Largest q³ for which index tables are built. Construction refuses
/// anything bigger.
pub const MAX_Q3: u64 = 1 << 16;

/// Immutable description of the field tower, with all arithmetic tables.
///
/// Shareable between threads; every operation is a pure lookup.
pub struct FieldCtx {
    p: u64,
    k: u32,
    q: u64,
    q3: u64,
    /// Degree-k modulus of F_q over F_p, little-endian residues.
    mod_q: Vec<u64>,
    /// Degree-3 modulus of F_{q³} over F_q, little-endian F_q indices.
    mod_q3: Vec<Fq>,
    eta: Fq3,

    // F_q tables (q × q for the binary ones).
    fq_add: Vec<u32>,
    fq_mul: Vec<u32>,
    fq_neg: Vec<u32>,
    fq_inv: Vec<u32>,
    /// Absolute trace F_q → F_p, as residues 0..p.
    fq_trp: Vec<u32>,

    // F_{q³} tables.
    digits: Vec<[u32; 3]>,
    log: Vec<u32>,
    exp: Vec<u32>, // doubled range so mul avoids a modulo
    fq3_neg: Vec<u32>,
    fq3_inv: Vec<u32>,
    frob: Vec<u32>,
    frob2: Vec<u32>,
    phi0: Vec<u32>,
    piq: Vec<u32>,

    // η-derived constants used by the projection π and the cocycle inverse.
    inv_one_plus_eta_1mq2: Fq3,
    inv_one_plus_eta_qm1: Fq3,
    inv_one_plus_eta_q2mq: Fq3,
    eta_1mq2: Fq3,
    eta_qm1: Fq3,
    eta_q2mq: Fq3,
}

/// Serializable summary of a context: everything needed to reproduce it.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CtxMeta {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    pub mod_q: Vec<u64>,
    pub mod_q3: Vec<u32>,
    pub eta: Vec<u32>,
    pub theta: String,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- polynomial helpers over F_p (used only during construction) ----

fn poly_p_eval(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// Irreducibility over F_p for degree ≤ 3: no roots. (The tower bound keeps
/// every modulus we construct at degree ≤ 3.)
fn poly_p_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    assert!(deg <= 3, "modulus degree out of range");
    if deg == 1 {
        return true;
    }
    (0..p).all(|x| poly_p_eval(f, x, p) != 0)
}

impl FieldCtx {
    /// Builds the tower for an odd prime `p` and extension degree `k`.
    ///
    /// Deterministic: Conway moduli when tabulated, else the first monic
    /// irreducible in canonical order; η is the first element with
    /// `φ₀(η) = 1` and `η ∉ F_q`.
    pub fn new(p: u64, k: u32) -> Result<FieldCtx> {
        if !is_prime(p) || p == 2 {
            return Err(Error::BadField(format!("p = {p} is not an odd prime")));
        }
        if k == 0 {
            return Err(Error::BadField("k must be positive".into()));
        }
        let q3 = (0..3 * k).try_fold(1u64, |acc, _| {
            let n = acc.checked_mul(p)?;
            (n <= MAX_Q3).then_some(n)
        });
        let Some(q3) = q3 else {
            return Err(Error::TooLarge(format!(
                "p^(3k) = {p}^{} exceeds the table bound 2^16",
                3 * k
            )));
        };
        let q = p.pow(k);

        let mod_q = Self::pick_mod_q(p, k);
        let mut ctx = FieldCtx {
            p,
            k,
            q,
            q3,
            mod_q,
            mod_q3: Vec::new(),
            eta: Fq3(0),
            fq_add: Vec::new(),
            fq_mul: Vec::new(),
            fq_neg: Vec::new(),
            fq_inv: Vec::new(),
            fq_trp: Vec::new(),
            digits: Vec::new(),
            log: Vec::new(),
            exp: Vec::new(),
            fq3_neg: Vec::new(),
            fq3_inv: Vec::new(),
            frob: Vec::new(),
            frob2: Vec::new(),
            phi0: Vec::new(),
            piq: Vec::new(),
            inv_one_plus_eta_1mq2: Fq3(0),
            inv_one_plus_eta_qm1: Fq3(0),
            inv_one_plus_eta_q2mq: Fq3(0),
            eta_1mq2: Fq3(0),
            eta_qm1: Fq3(0),
            eta_q2mq: Fq3(0),
        };
        ctx.build_fq();
        ctx.pick_mod_q3();
        ctx.build_fq3();
        ctx.find_eta()?;
        ctx.build_eta_constants();
        Ok(ctx)
    }

    fn pick_mod_q(p: u64, k: u32) -> Vec<u64> {
        if let Some((_, _, f)) = CONWAY.iter().find(|&&(cp, cn, _)| cp == p && cn == k) {
            return f.to_vec();
        }
        // First monic irreducible of degree k, coefficient vectors compared
        // lexicographically least-significant first.
        let mut f = vec![0u64; k as usize + 1];
        f[k as usize] = 1;
        loop {
            if poly_p_irreducible(&f, p) {
                return f;
            }
            for c in f.iter_mut().take(k as usize) {
                *c += 1;
                if *c < p {
                    break;
                }
                *c = 0;
            }
        }
    }

    fn build_fq(&mut self) {
        let (p, k, q) = (self.p, self.k as usize, self.q as usize);
        let digits = |mut i: usize| -> Vec<u64> {
            let mut d = vec![0u64; k];
            for slot in d.iter_mut() {
                *slot = (i as u64) % p;
                i /= p as usize;
            }
            d
        };
        let index = |d: &[u64]| -> u32 {
            d.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
        };
        self.fq_add = vec![0; q * q];
        self.fq_mul = vec![0; q * q];
        self.fq_neg = vec![0; q];
        self.fq_inv = vec![0; q];
        for a in 0..q {
            let da = digits(a);
            let neg: Vec<u64> = da.iter().map(|&c| (p - c) % p).collect();
            self.fq_neg[a] = index(&neg);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                self.fq_add[a * q + b] = index(&sum);
                // schoolbook product, reduced mod mod_q
                let mut prod = vec![0u64; 2 * k - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for d in (k..prod.len()).rev() {
                    let c = prod[d];
                    if c != 0 {
                        prod[d] = 0;
                        for (i, &m) in self.mod_q.iter().take(k).enumerate() {
                            let t = (c * (p - m % p)) % p;
                            prod[d - k + i] = (prod[d - k + i] + t) % p;
                        }
                    }
                }
                self.fq_mul[a * q + b] = index(&prod[..k]);
            }
        }
        for a in 1..q {
            let inv = (1..q).find(|&b| self.fq_mul[a * q + b] == 1);
            self.fq_inv[a] = inv.expect("F_q is a field") as u32;
        }
        // absolute trace: x + x^p + ... + x^(p^(k-1))
        self.fq_trp = (0..q)
            .map(|a| {
                let mut acc = 0u32;
                let mut cur = a as u32;
                for _ in 0..k {
                    acc = self.fq_add[acc as usize * q + cur as usize];
                    let mut pw = 1u32;
                    for _ in 0..p {
                        pw = self.fq_mul[pw as usize * q + cur as usize];
                    }
                    cur = pw;
                }
                debug_assert!((acc as u64) < p, "trace must land in F_p");
                acc
            })
            .collect();
    }

    fn pick_mod_q3(&mut self) {
        if self.k == 1 {
            if let Some((_, _, f)) = CONWAY.iter().find(|&&(cp, cn, _)| cp == self.p && cn == 3) {
                self.mod_q3 = f.iter().map(|&c| Fq(c as u32)).collect();
                return;
            }
        }
        let q = self.q as u32;
        let mut f = [Fq(0), Fq(0), Fq(0), Fq(1)];
        loop {
            let has_root = (0..q).any(|x| {
                let x = Fq(x);
                let mut acc = Fq(0);
                for &c in f.iter().rev() {
                    acc = self.fq_add(self.fq_mul(acc, x), c);
                }
                acc.is_zero()
            });
            if !has_root {
                self.mod_q3 = f.to_vec();
                return;
            }
            for c in f.iter_mut().take(3) {
                c.0 += 1;
                if c.0 < q {
                    break;
                }
                c.0 = 0;
            }
        }
    }

    fn build_fq3(&mut self) {
        let q = self.q as usize;
        let n = self.q3 as usize;
        self.digits = (0..n)
            .map(|i| {
                let i = i as u64;
                [
                    (i % self.q) as u32,
                    ((i / self.q) % self.q) as u32,
                    ((i / (self.q * self.q)) % self.q) as u32,
                ]
            })
            .collect();

        // schoolbook product of coefficient triples, reduced mod mod_q3
        let mul_poly = |ctx: &FieldCtx, a: usize, b: usize| -> u32 {
            let da = ctx.digits[a];
            let db = ctx.digits[b];
            let mut prod = [Fq(0); 5];
            for i in 0..3 {
                for j in 0..3 {
                    let t = ctx.fq_mul(Fq(da[i]), Fq(db[j]));
                    prod[i + j] = ctx.fq_add(prod[i + j], t);
                }
            }
            for d in (3..5).rev() {
                let c = prod[d];
                if !c.is_zero() {
                    prod[d] = Fq(0);
                    for i in 0..3 {
                        let t = ctx.fq_mul(c, ctx.fq_neg(ctx.mod_q3[i]));
                        prod[d - 3 + i] = ctx.fq_add(prod[d - 3 + i], t);
                    }
                }
            }
            prod[0].0 as u32 + prod[1].0 * q as u32 + prod[2].0 * (q * q) as u32
        };

        // find a generator of F_{q³}^* (first in canonical order)
        let order = self.q3 - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        let pow_poly = |ctx: &FieldCtx, a: usize, mut e: u64| -> u32 {
            let mut base = a as u32;
            let mut acc = 1u32; // index of 1
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_poly(ctx, acc as usize, base as usize);
                }
                base = mul_poly(ctx, base as usize, base as usize);
                e >>= 1;
            }
            acc
        };
        let g = (2..n as u32)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&f| pow_poly(self, g as usize, order / f) != 1)
            })
            .expect("F_{q^3}^* is cyclic");

        self.log = vec![u32::MAX; n];
        self.exp = vec![1; 2 * order as usize];
        let mut cur = 1u32;
        for i in 0..order as usize {
            self.exp[i] = cur;
            self.log[cur as usize] = i as u32;
            cur = mul_poly(self, cur as usize, g as usize);
        }
        assert_eq!(cur, 1, "generator order mismatch");
        for i in 0..order as usize {
            self.exp[order as usize + i] = self.exp[i];
        }

        self.fq3_neg = (0..n)
            .map(|a| {
                let d = self.digits[a];
                let nd = [
                    self.fq_neg(Fq(d[0])).0,
                    self.fq_neg(Fq(d[1])).0,
                    self.fq_neg(Fq(d[2])).0,
                ];
                nd[0] + nd[1] * q as u32 + nd[2] * (q * q) as u32
            })
            .collect();
        self.fq3_inv = (0..n)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    let l = self.log[a] as u64;
                    self.exp[((order - l) % order) as usize]
                }
            })
            .collect();
        self.frob = (0..n)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    self.exp[((self.log[a] as u64 * self.q) % order) as usize]
                }
            })
            .collect();
        self.frob2 = (0..n).map(|a| self.frob[self.frob[a] as usize]).collect();
        self.phi0 = (0..n)
            .map(|a| {
                let s = self.add(
                    Fq3(a as u32),
                    self.add(Fq3(self.frob[a]), Fq3(self.frob2[a])),
                );
                let d = self.digits[s.0 as usize];
                assert!(d[1] == 0 && d[2] == 0, "phi0 must land in the subfield");
                d[0]
            })
            .collect();
    }

    fn find_eta(&mut self) -> Result<()> {
        // The subfield F_q is exactly the index range 0..q (constant digits),
        // so η ∉ F_q is an index test.
        let q = self.q as u32;
        let eta = (q..self.q3 as u32)
            .map(Fq3)
            .find(|&x| self.phi0[x.0 as usize] == 1);
        let eta = eta.ok_or(Error::NoEta)?;
        self.eta = eta;
        self.piq = (0..self.q3 as usize)
            .map(|x| self.phi0[self.mul(self.eta, Fq3(x as u32)).0 as usize])
            .collect();
        Ok(())
    }

    fn build_eta_constants(&mut self) {
        let one = Fq3(1);
        let e = self.eta;
        let eq = self.frob(e);
        let eq2 = self.frob2(e);
        self.eta_1mq2 = self.mul(e, self.inv(eq2).unwrap());
        self.eta_qm1 = self.mul(eq, self.inv(e).unwrap());
        self.eta_q2mq = self.mul(eq2, self.inv(eq).unwrap());
        let d = self.add(one, self.eta_1mq2);
        assert!(!d.is_zero(), "1 + eta^(1-q^2) must be invertible");
        self.inv_one_plus_eta_1mq2 = self.inv(d).unwrap();
        self.inv_one_plus_eta_qm1 = self.inv(self.add(one, self.eta_qm1)).unwrap();
        self.inv_one_plus_eta_q2mq = self.inv(self.add(one, self.eta_q2mq)).unwrap();
    }

    // ---- accessors ----

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn q3(&self) -> u64 {
        self.q3
    }
    pub fn eta(&self) -> Fq3 {
        self.eta
    }
    pub fn mod_q(&self) -> &[u64] {
        &self.mod_q
    }
    pub fn mod_q3(&self) -> &[Fq] {
        &self.mod_q3
    }
    pub fn eta_1mq2(&self) -> Fq3 {
        self.eta_1mq2
    }
    pub fn eta_qm1(&self) -> Fq3 {
        self.eta_qm1
    }
    pub fn eta_q2mq(&self) -> Fq3 {
        self.eta_q2mq
    }
    pub fn inv_one_plus_eta_1mq2(&self) -> Fq3 {
        self.inv_one_plus_eta_1mq2
    }
    pub fn inv_one_plus_eta_qm1(&self) -> Fq3 {
        self.inv_one_plus_eta_qm1
    }
    pub fn inv_one_plus_eta_q2mq(&self) -> Fq3 {
        self.inv_one_plus_eta_q2mq
    }

    pub fn meta(&self) -> CtxMeta {
        CtxMeta {
            p: self.p,
            k: self.k,
            q: self.q,
            mod_q: self.mod_q.clone(),
            mod_q3: self.mod_q3.iter().map(|c| c.0).collect(),
            eta: self.fq3_coeffs(self.eta).iter().map(|c| c.0).collect(),
            theta: "zeta_p^trace".into(),
        }
    }

    // ---- F_q operations ----

    pub fn fq_add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.fq_add[a.0 as usize * self.q as usize + b.0 as usize])
    }
    pub fn fq_sub(&self, a: Fq, b: Fq) -> Fq {
        self.fq_add(a, self.fq_neg(b))
    }
    pub fn fq_neg(&self, a: Fq) -> Fq {
        Fq(self.fq_neg[a.0 as usize])
    }
    pub fn fq_mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.fq_mul[a.0 as usize * self.q as usize + b.0 as usize])
    }
    pub fn fq_inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fq(self.fq_inv[a.0 as usize]))
    }
    /// Image of the rational integer `n` in `F_q` (through `F_p`).
    pub fn fq_from_int(&self, n: u64) -> Fq {
        Fq((n % self.p) as u32)
    }
    /// Absolute trace to `F_p`, as a residue `0..p`.
    pub fn tr_p(&self, a: Fq) -> u32 {
        self.fq_trp[a.0 as usize]
    }
    /// Little-endian base-p coefficient vector.
    pub fn fq_coeffs(&self, a: Fq) -> Vec<u32> {
        let mut i = a.0 as u64;
        (0..self.k)
            .map(|_| {
                let c = (i % self.p) as u32;
                i /= self.p;
                c
            })
            .collect()
    }

    // ---- F_{q³} operations ----

    pub fn add(&self, a: Fq3, b: Fq3) -> Fq3 {
        let (da, db) = (self.digits[a.0 as usize], self.digits[b.0 as usize]);
        let q = self.q as usize;
        let c0 = self.fq_add[da[0] as usize * q + db[0] as usize];
        let c1 = self.fq_add[da[1] as usize * q + db[1] as usize];
        let c2 = self.fq_add[da[2] as usize * q + db[2] as usize];
        Fq3(c0 + c1 * q as u32 + c2 * (q * q) as u32)
    }
    pub fn sub(&self, a: Fq3, b: Fq3) -> Fq3 {
        self.add(a, self.neg(b))
    }
    pub fn neg(&self, a: Fq3) -> Fq3 {
        Fq3(self.fq3_neg[a.0 as usize])
    }
    pub fn mul(&self, a: Fq3, b: Fq3) -> Fq3 {
        if a.is_zero() || b.is_zero() {
            return Fq3(0);
        }
        Fq3(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }
    pub fn inv(&self, a: Fq3) -> Result<Fq3> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fq3(self.fq3_inv[a.0 as usize]))
    }
    pub fn pow(&self, a: Fq3, e: u64) -> Fq3 {
        if a.is_zero() {
            return if e == 0 { Fq3(1) } else { Fq3(0) };
        }
        let order = self.q3 - 1;
        let l = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        Fq3(self.exp[l as usize])
    }
    pub fn frob(&self, a: Fq3) -> Fq3 {
        Fq3(self.frob[a.0 as usize])
    }
    pub fn frob2(&self, a: Fq3) -> Fq3 {
        Fq3(self.frob2[a.0 as usize])
    }
    /// `φ₀(x) = x + x^q + x^{q²}`, landing in `F_q`.
    pub fn phi0(&self, a: Fq3) -> Fq {
        Fq(self.phi0[a.0 as usize])
    }
    /// `π_q(x) = φ₀(ηx)`, the idempotent `F_q`-projection onto `F_q`.
    pub fn piq(&self, a: Fq3) -> Fq {
        Fq(self.piq[a.0 as usize])
    }
    pub fn embed(&self, a: Fq) -> Fq3 {
        Fq3(a.0)
    }
    pub fn in_subfield(&self, a: Fq3) -> bool {
        (a.0 as u64) < self.q
    }
    pub fn try_subfield(&self, a: Fq3) -> Result<Fq> {
        if self.in_subfield(a) {
            Ok(Fq(a.0))
        } else {
            Err(Error::NotInSubfield)
        }
    }
    /// Coefficients in the power basis of `mod_q3`, little-endian.
    pub fn fq3_coeffs(&self, a: Fq3) -> [Fq; 3] {
        let d = self.digits[a.0 as usize];
        [Fq(d[0]), Fq(d[1]), Fq(d[2])]
    }
    pub fn fq3_from_coeffs(&self, c: [Fq; 3]) -> Fq3 {
        let q = self.q as u32;
        Fq3(c[0].0 + c[1].0 * q + c[2].0 * q * q)
    }

    /// Scalar action of `F_q` on `F_{q³}`.
    pub fn scale(&self, c: Fq, a: Fq3) -> Fq3 {
        self.mul(self.embed(c), a)
    }

    pub fn fq_elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q as u32).map(Fq)
    }
    pub fn fq3_elements(&self) -> impl Iterator<Item = Fq3> {
        (0..self.q3 as u32).map(Fq3)
    }

    // ---- transversals ----

    /// Representative of the coset `x + a*·F_q` that is least in canonical
    /// order. The zero coset is represented by 0.
    pub fn coset_rep(&self, a_star: Fq3, x: Fq3) -> Fq3 {
        debug_assert!(!a_star.is_zero());
        self.fq_elements()
            .map(|t| self.add(x, self.mul(a_star, self.embed(t))))
            .min()
            .unwrap()
    }

    /// The ordered transversal `T^{a*}` of `a*·F_q⁺` in `F_{q³}⁺`: one
    /// representative per coset, `q²` in total, `0` representing its own
    /// coset, each the least element of its coset in canonical order.
    pub fn transversal(&self, a_star: Fq3) -> Result<Vec<Fq3>> {
        if a_star.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let reps: Vec<Fq3> = self
            .fq3_elements()
            .filter(|&x| self.coset_rep(a_star, x) == x)
            .collect();
        debug_assert_eq!(reps.len() as u64, self.q * self.q);
        Ok(reps)
    }
}
