//! Floating-point evaluation of exact matrices.

use num_complex::Complex64;
use num_traits::Zero;

use super::CMatrix;
use crate::algebra::{BiPoly, MatRF, RatFun};
use crate::error::{Error, Result};

/// Relative size below which a denominator counts as vanishing.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// A polynomial with `f64` coefficients, ready for repeated evaluation on
/// the real slice `ξ̄ = conj(ξ)`.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(usize, usize, Complex64)>,
    max_xi: usize,
    max_xibar: usize,
}

impl CompiledPoly {
    pub fn new(p: &BiPoly) -> Self {
        let terms: Vec<(usize, usize, Complex64)> = p
            .terms()
            .map(|(m, c)| (m.xi as usize, m.xibar as usize, c.to_complex64()))
            .collect();
        let max_xi = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let max_xibar = terms.iter().map(|t| t.1).max().unwrap_or(0);
        Self { terms, max_xi, max_xibar }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value and the sum of term magnitudes, used to scale pole tests.
    fn eval_with_scale(&self, pw: &Powers) -> (Complex64, f64) {
        let mut v = Complex64::zero();
        let mut scale = 0.0;
        for &(i, j, c) in &self.terms {
            let t = c * pw.xi[i] * pw.xibar[j];
            v += t;
            scale += t.norm();
        }
        (v, scale)
    }

    pub fn eval(&self, point: Complex64) -> Complex64 {
        let pw = Powers::new(point, self.max_xi, self.max_xibar);
        self.eval_with_scale(&pw).0
    }
}

struct Powers {
    xi: Vec<Complex64>,
    xibar: Vec<Complex64>,
}

impl Powers {
    fn new(point: Complex64, max_xi: usize, max_xibar: usize) -> Self {
        let table = |z: Complex64, m: usize| {
            let mut v = Vec::with_capacity(m + 1);
            v.push(Complex64::new(1.0, 0.0));
            for k in 0..m {
                v.push(v[k] * z);
            }
            v
        };
        Self { xi: table(point, max_xi), xibar: table(point.conj(), max_xibar) }
    }
}

fn checked_denominator(den: &CompiledPoly, pw: &Powers, point: Complex64) -> Result<Complex64> {
    let (d, scale) = den.eval_with_scale(pw);
    if !(d.norm() > POLE_TOLERANCE * scale.max(1.0)) {
        return Err(Error::PoleAtPoint(format!("{point}")));
    }
    Ok(d)
}

/// A rational function compiled for evaluation.
#[derive(Clone, Debug)]
pub struct CompiledRatFun {
    num: CompiledPoly,
    den: CompiledPoly,
}

impl CompiledRatFun {
    pub fn new(f: &RatFun) -> Self {
        Self { num: CompiledPoly::new(f.num()), den: CompiledPoly::new(f.den()) }
    }

    pub fn eval(&self, point: Complex64) -> Result<Complex64> {
        let deg_xi = self.num.max_xi.max(self.den.max_xi);
        let deg_xibar = self.num.max_xibar.max(self.den.max_xibar);
        let pw = Powers::new(point, deg_xi, deg_xibar);
        let d = checked_denominator(&self.den, &pw, point)?;
        Ok(self.num.eval_with_scale(&pw).0 / d)
    }
}

/// A matrix over a shared denominator compiled for evaluation.
#[derive(Clone, Debug)]
pub struct CompiledMat {
    n: usize,
    nums: Vec<CompiledPoly>,
    den: CompiledPoly,
    max_xi: usize,
    max_xibar: usize,
}

impl CompiledMat {
    pub fn new(m: &MatRF) -> Self {
        let nums: Vec<CompiledPoly> = m.nums().iter().map(CompiledPoly::new).collect();
        let den = CompiledPoly::new(m.den());
        let max_xi = nums.iter().chain([&den]).map(|p| p.max_xi).max().unwrap_or(0);
        let max_xibar = nums.iter().chain([&den]).map(|p| p.max_xibar).max().unwrap_or(0);
        Self { n: m.n(), nums, den, max_xi, max_xibar }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, point: Complex64) -> Result<CMatrix> {
        let pw = Powers::new(point, self.max_xi, self.max_xibar);
        let d = checked_denominator(&self.den, &pw, point)?;
        let inv = d.inv();
        let n = self.n;
        Ok(CMatrix::from_fn(n, n, |i, j| {
            let p = &self.nums[i * n + j];
            if p.is_zero() {
                Complex64::zero()
            } else {
                p.eval_with_scale(&pw).0 * inv
            }
        }))
    }
}

/// Entry-wise evaluation of `m` at `point`.
pub fn eval_mat(m: &MatRF, point: Complex64) -> Result<CMatrix> {
    CompiledMat::new(m).eval(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::term;
    use crate::sigma::{build_p0, HoloSeed};

    #[test]
    fn projector_values() {
        let p0 = build_p0(&HoloSeed::from_integers(&[&[1], &[0, 1]]).unwrap());
        let at0 = eval_mat(&p0, Complex64::new(0.0, 0.0)).unwrap();
        assert!((at0[(0, 0)] - 1.0).norm() < 1e-15 && at0[(1, 1)].norm() < 1e-15);
        let at1 = eval_mat(&p0, Complex64::new(1.0, 0.0)).unwrap();
        for v in at1.iter() {
            assert!((v - 0.5).norm() < 1e-15);
        }
    }

    #[test]
    fn pole_detected() {
        let inv_xi = MatRF::with_denominator(1, vec![BiPoly::one()], term(1, 1, 0));
        assert!(matches!(eval_mat(&inv_xi, Complex64::new(0.0, 0.0)), Err(Error::PoleAtPoint(_))));
        assert!(eval_mat(&inv_xi, Complex64::new(0.5, 0.0)).is_ok());
    }
}
