//! Dense 8×8 matrices over `F_{q³}`.

use crate::field::{FieldCtx, Fq3};

pub const N: usize = 8;

/// 8×8 matrix over `F_{q³}`, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MatQ3 {
    pub m: [[Fq3; N]; N],
}

impl MatQ3 {
    pub fn zero() -> MatQ3 {
        MatQ3 {
            m: [[Fq3(0); N]; N],
        }
    }

    pub fn identity() -> MatQ3 {
        let mut a = Self::zero();
        for i in 0..N {
            a.m[i][i] = Fq3(1);
        }
        a
    }

    /// Matrix unit `e_{i,j}` scaled by `v` (1-based indices).
    pub fn unit(i: usize, j: usize, v: Fq3) -> MatQ3 {
        let mut a = Self::zero();
        a.m[i - 1][j - 1] = v;
        a
    }

    pub fn at(&self, i: usize, j: usize) -> Fq3 {
        self.m[i - 1][j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq3) {
        self.m[i - 1][j - 1] = v;
    }

    pub fn add(&self, ctx: &FieldCtx, other: &MatQ3) -> MatQ3 {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = ctx.add(self.m[i][j], other.m[i][j]);
            }
        }
        out
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &MatQ3) -> MatQ3 {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = ctx.sub(self.m[i][j], other.m[i][j]);
            }
        }
        out
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &MatQ3) -> MatQ3 {
        let mut out = Self::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.m[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..N {
                    let b = other.m[k][j];
                    if b.is_zero() {
                        continue;
                    }
                    out.m[i][j] = ctx.add(out.m[i][j], ctx.mul(a, b));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> MatQ3 {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.m[j][i] = self.m[i][j];
            }
        }
        out
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        for i in 0..N {
            if self.m[i][i] != Fq3(1) {
                return false;
            }
            for j in 0..i {
                if !self.m[i][j].is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse of an upper unitriangular matrix by back substitution.
    pub fn inv_unitriangular(&self, ctx: &FieldCtx) -> MatQ3 {
        debug_assert!(self.is_upper_unitriangular());
        let mut inv = Self::identity();
        // column by column: solve self * x = e_c
        for c in 0..N {
            for i in (0..N).rev() {
                let mut acc = if i == c { Fq3(1) } else { Fq3(0) };
                for j in i + 1..N {
                    acc = ctx.sub(acc, ctx.mul(self.m[i][j], inv.m[j][c]));
                }
                inv.m[i][c] = acc;
            }
        }
        inv
    }

    /// Row-major JSON-friendly form: each entry as its coefficient array.
    pub fn to_coeff_rows(&self, ctx: &FieldCtx) -> Vec<Vec<Vec<u32>>> {
        self.m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&e| ctx.fq3_coeffs(e).iter().map(|c| c.0).collect())
                    .collect()
            })
            .collect()
    }
}
