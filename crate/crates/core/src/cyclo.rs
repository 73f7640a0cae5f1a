//! Exact arithmetic in `Z[ζ_p]` and its fraction field, and the additive
//! character `ϑ(t) = ζ_p^{Tr_{F_q/F_p}(t)}`.
//!
//! Canonical form: coordinates in the basis `1, ζ, …, ζ^{p−2}`, reduced via
//! `1 + ζ + … + ζ^{p−1} = 0`. Coefficients are arbitrary-precision, so
//! orthogonality comes out exactly 0, never "≈ 0".

use crate::field::{FieldCtx, Fq};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Element of `Z[ζ_p]` in canonical reduced coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycInt {
    p: u32,
    /// Length p−1: coordinates of 1, ζ, …, ζ^{p−2}.
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(p: u32) -> CycInt {
        CycInt {
            p,
            coeffs: vec![BigInt::zero(); (p - 1) as usize],
        }
    }

    pub fn one(p: u32) -> CycInt {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, n: i64) -> CycInt {
        let mut c = Self::zero(p);
        c.coeffs[0] = BigInt::from(n);
        c
    }

    pub fn from_bigint(p: u32, n: BigInt) -> CycInt {
        let mut c = Self::zero(p);
        c.coeffs[0] = n;
        c
    }

    /// `ζ_p^e`.
    pub fn zeta_pow(p: u32, e: u32) -> CycInt {
        let e = (e % p) as usize;
        let mut c = Self::zero(p);
        if e < (p - 1) as usize {
            c.coeffs[e] = BigInt::from(1);
        } else {
            // ζ^(p−1) = −(1 + ζ + … + ζ^(p−2))
            for slot in c.coeffs.iter_mut() {
                *slot = BigInt::from(-1);
            }
        }
        c
    }

    /// Reduces length-p exponent counts to canonical coordinates.
    pub fn from_counts(p: u32, counts: &[BigInt]) -> CycInt {
        assert_eq!(counts.len(), p as usize);
        let last = &counts[(p - 1) as usize];
        CycInt {
            p,
            coeffs: (0..(p - 1) as usize).map(|j| &counts[j] - last).collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.p, other.p);
        CycInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.p, other.p);
        let p = self.p as usize;
        // convolution of exponents mod p, then reduction
        let mut counts = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                counts[(i + j) % p] += a * b;
            }
        }
        Self::from_counts(self.p, &counts)
    }

    pub fn scale(&self, n: i64) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> CycInt {
        let p = self.p as usize;
        let mut counts = vec![BigInt::zero(); p];
        for (j, a) in self.coeffs.iter().enumerate() {
            counts[(p - j) % p] += a;
        }
        Self::from_counts(self.p, &counts)
    }

    /// Exact division by a rational integer; errors if any coordinate is
    /// not divisible.
    pub fn div_int(&self, n: &BigInt) -> Result<CycInt> {
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                if (c % n).is_zero() {
                    Ok(c / n)
                } else {
                    Err(Error::NonIntegralDivision)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CycInt { p: self.p, coeffs })
    }

    /// The rational integer this element equals, if it is rational.
    pub fn to_rational(&self) -> Result<BigInt> {
        if self.coeffs[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotRational);
        }
        Ok(self.coeffs[0].clone())
    }

    /// Decimal approximation as a complex number, for human-readable output.
    pub fn approx(&self) -> (f64, f64) {
        let p = self.p as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let c = bigint_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * (j as f64) / p;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re, im)
    }

    /// Rendering as a polynomial in ζ, e.g. `3-2z^2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() && c.is_positive() {
                s.push('+');
            }
            let unit = c.magnitude() == &1u32.into();
            match (j, unit) {
                (0, _) => s.push_str(&c.to_string()),
                (_, false) => s.push_str(&format!("{c}*")),
                (_, true) if c.is_negative() => s.push('-'),
                (_, true) => {}
            }
            match j {
                0 => {}
                1 => s.push('z'),
                _ => s.push_str(&format!("z^{j}")),
            }
        }
        s
    }
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    n.to_string().parse().unwrap_or(f64::NAN)
}

/// Element of `Q(ζ_p)` as a gcd-normalized fraction with positive integer
/// denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycRat {
    pub num: CycInt,
    pub den: BigInt,
}

impl CycRat {
    pub fn new(num: CycInt, den: BigInt) -> CycRat {
        assert!(!den.is_zero());
        let mut r = CycRat { num, den };
        r.normalize();
        r
    }

    pub fn from_int(p: u32, n: i64) -> CycRat {
        CycRat {
            num: CycInt::from_int(p, n),
            den: BigInt::from(1),
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            self.num = self.num.neg();
        }
        let mut g = self.den.clone();
        for c in &self.num.coeffs {
            g = num_bigint::BigInt::from(num_integer_gcd(&g, c));
            if g == BigInt::from(1) {
                return;
            }
        }
        if g > BigInt::from(1) {
            self.num = self.num.div_int(&g).unwrap();
            self.den = &self.den / &g;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den == BigInt::from(1)
    }

    pub fn render(&self) -> String {
        if self.is_integral() {
            self.num.render()
        } else {
            format!("({})/{}", self.num.render(), self.den)
        }
    }
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Fixed nontrivial additive character of `F_q⁺`:
/// `ϑ(t) = ζ_p^{Tr_{F_q/F_p}(t)}`.
pub fn theta(ctx: &FieldCtx, t: Fq) -> CycInt {
    CycInt::zeta_pow(ctx.p() as u32, ctx.tr_p(t))
}

/// ζ-exponent of `ϑ(t)`; the fast path behind character sums.
pub fn theta_exponent(ctx: &FieldCtx, t: Fq) -> u32 {
    ctx.tr_p(t)
}

/// Accumulator for large sums of p-th roots of unity: counts per exponent,
/// lifted to a `CycInt` once at the end.
#[derive(Clone, Debug)]
pub struct ZetaCounter {
    p: u32,
    counts: Vec<i64>,
}

impl ZetaCounter {
    pub fn new(p: u32) -> ZetaCounter {
        ZetaCounter {
            p,
            counts: vec![0; p as usize],
        }
    }

    #[inline]
    pub fn add_zeta_pow(&mut self, e: u32) {
        let slot = &mut self.counts[(e % self.p) as usize];
        *slot = slot.checked_add(1).expect("character sum overflow");
    }

    #[inline]
    pub fn add_zeta_pow_signed(&mut self, e: u32, count: i64) {
        let slot = &mut self.counts[(e % self.p) as usize];
        *slot = slot.checked_add(count).expect("character sum overflow");
    }

    pub fn merge(&mut self, other: &ZetaCounter) {
        assert_eq!(self.p, other.p);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a = a.checked_add(*b).expect("character sum overflow");
        }
    }

    pub fn finish(&self) -> CycInt {
        let counts: Vec<BigInt> = self.counts.iter().map(|&c| BigInt::from(c)).collect();
        CycInt::from_counts(self.p, &counts)
    }
}
