//! Greatest common divisors over `Q(i)`.
//!
//! Univariate gcds use Euclid's algorithm with monic remainders. Bivariate
//! gcds view a polynomial as univariate in one indeterminate with
//! coefficients in `Q(i)[other]` and run a primitive pseudo-remainder
//! sequence (Gauss' lemma: gcd = gcd of contents × gcd of primitive parts).

use num_traits::{One, Zero};

use super::{BiPoly, GaussianRational, Monomial};

/// Dense univariate polynomial, ascending powers, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<GaussianRational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self(vec![GaussianRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn lc(&self) -> Option<&GaussianRational> {
        self.0.last()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self(self.0.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = GaussianRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = GaussianRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lc_inv = divisor.lc().expect("division by zero polynomial").inv().expect("nonzero");
        let dd = divisor.degree();
        if self.0.len() < divisor.0.len() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.0.clone();
        let mut quot = vec![GaussianRational::zero(); self.0.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.0.iter().enumerate() {
                rem[shift + j] -= &(&c * b);
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

/// Monic gcd of univariate (ξ-only) polynomials; `None` if any input
/// depends on ξ̄.
pub fn gcd_holomorphic(polys: &[BiPoly]) -> Option<BiPoly> {
    let mut acc = UniPoly::zero();
    for p in polys {
        if !p.is_holomorphic() {
            return None;
        }
        let mut coeffs = vec![GaussianRational::zero(); p.degree_xi() as usize + 1];
        for (m, c) in p.terms() {
            coeffs[m.xi as usize] = c.clone();
        }
        acc = acc.gcd(&UniPoly::new(coeffs));
    }
    Some(BiPoly::from_xi_coeffs(acc.coeffs()))
}

/// Polynomial in a main variable with univariate coefficients in the other.
type Recursive = Vec<UniPoly>;

fn to_recursive(p: &BiPoly, main_is_xibar: bool) -> Recursive {
    let (outer_deg, _) = if main_is_xibar {
        (p.degree_xibar(), p.degree_xi())
    } else {
        (p.degree_xi(), p.degree_xibar())
    };
    let mut rows: Vec<Vec<GaussianRational>> = vec![Vec::new(); outer_deg as usize + 1];
    for (m, c) in p.terms() {
        let (outer, inner) = if main_is_xibar { (m.xibar, m.xi) } else { (m.xi, m.xibar) };
        let row = &mut rows[outer as usize];
        if row.len() <= inner as usize {
            row.resize(inner as usize + 1, GaussianRational::zero());
        }
        row[inner as usize] = c.clone();
    }
    trim(rows.into_iter().map(UniPoly::new).collect())
}

fn from_recursive(r: &Recursive, main_is_xibar: bool) -> BiPoly {
    BiPoly::from_terms(r.iter().enumerate().flat_map(|(outer, coeff)| {
        coeff.coeffs().iter().enumerate().map(move |(inner, c)| {
            let m = if main_is_xibar {
                Monomial::new(inner as u32, outer as u32)
            } else {
                Monomial::new(outer as u32, inner as u32)
            };
            (m, c.clone())
        })
    }))
}

fn trim(mut r: Recursive) -> Recursive {
    while r.last().is_some_and(UniPoly::is_zero) {
        r.pop();
    }
    r
}

fn content(r: &Recursive) -> UniPoly {
    let mut g = UniPoly::zero();
    for c in r {
        g = g.gcd(c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn primitive_part(r: &Recursive) -> Recursive {
    let c = content(r);
    if c.is_zero() {
        return Vec::new();
    }
    if c.is_constant() {
        let inv = c.lc().expect("nonzero").inv().expect("nonzero");
        return r.iter().map(|u| u.scale(&inv)).collect();
    }
    r.iter()
        .map(|u| u.div_exact(&c).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder of `f` by `g` in the main variable.
fn prem(f: &Recursive, g: &Recursive) -> Recursive {
    let dg = g.len() - 1;
    let lcg = g.last().expect("nonzero divisor").clone();
    let mut r = f.clone();
    while r.len() > dg {
        let shift = r.len() - 1 - dg;
        let lcr = r.last().expect("nonzero").clone();
        let mut next: Recursive = r.iter().map(|c| c.mul(&lcg)).collect();
        for (j, gc) in g.iter().enumerate() {
            next[shift + j] = next[shift + j].sub(&gc.mul(&lcr));
        }
        r = trim(next);
    }
    r
}

/// Monic (graded-lex leading coefficient one) gcd of two bivariate
/// polynomials. `gcd(0, 0) = 0`.
pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return BiPoly::one();
    }
    // run the sequence in the variable of lower degree
    let main_is_xibar = a.degree_xibar().max(b.degree_xibar()) <= a.degree_xi().max(b.degree_xi());
    let ra = to_recursive(a, main_is_xibar);
    let rb = to_recursive(b, main_is_xibar);
    let cont = content(&ra).gcd(&content(&rb));
    let mut f = primitive_part(&ra);
    let mut g = primitive_part(&rb);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    let pp = loop {
        if g.len() == 1 {
            // primitive of degree zero in the main variable: a unit
            break vec![UniPoly::one()];
        }
        let r = prem(&f, &g);
        if r.is_empty() {
            break g;
        }
        f = g;
        g = primitive_part(&r);
    };
    let joined: Recursive = pp.iter().map(|c| c.mul(&cont)).collect();
    from_recursive(&joined, main_is_xibar).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::term;

    #[test]
    fn univariate_gcd() {
        let x = |c: &[i64]| UniPoly::new(c.iter().map(|&v| GaussianRational::from_integer(v)).collect());
        // (x-1)(x+2) and (x-1)(x-3)
        let a = x(&[-2, 1, 1]);
        let b = x(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), x(&[-1, 1]));
        assert_eq!(x(&[1, 1]).gcd(&x(&[2, 1])), x(&[1]));
    }

    #[test]
    fn bivariate_gcd_recovers_common_factor() {
        let common = &(&term(1, 0, 0) + &term(1, 1, 1)) * &(&term(2, 1, 0) - &term(1, 0, 2));
        let a = &common * &(&term(1, 3, 0) + &term(1, 0, 1));
        let b = &common * &(&term(1, 0, 3) - &term(5, 1, 0));
        let g = gcd(&a, &b);
        assert_eq!(g, common.monic());
        assert!(a.div_exact(&g).is_some());
        assert!(b.div_exact(&g).is_some());
    }

    #[test]
    fn coprime_inputs_give_one() {
        let a = &term(1, 0, 0) + &term(1, 1, 1);
        let b = &term(1, 0, 0) + &term(1, 2, 0);
        assert!(gcd(&a, &b).is_one());
        assert!(gcd(&a, &BiPoly::from_integer(3)).is_one());
    }

    #[test]
    fn content_only_common_factor() {
        // common factor depends on ξ only
        let f = &term(1, 1, 0) + &term(1, 0, 0);
        let a = &f * &(&term(1, 0, 2) + &term(1, 1, 0));
        let b = &f * &term(3, 0, 1);
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn holomorphic_gcd() {
        let f = &term(1, 1, 0) - &term(1, 0, 0);
        let a = &f * &term(1, 1, 0);
        let b = &f * &(&term(1, 2, 0) + &term(1, 0, 0));
        assert_eq!(gcd_holomorphic(&[a, b]).unwrap(), f.monic());
        assert!(gcd_holomorphic(&[term(1, 0, 1)]).is_none());
    }
}
